use nalgebra::DMatrix;
use serde::Serialize;

use crate::{ElError, ElFunction};

/// A `2n × 2n` matrix in the image of the `u` generators.
#[derive(Debug, Clone, PartialEq)]
pub struct ElMatrix {
    pub n: usize,
    pub m: DMatrix<f64>,
}

impl ElMatrix {
    pub fn identity(n: usize) -> Self {
        ElMatrix { n, m: DMatrix::identity(2 * n, 2 * n) }
    }

    pub fn mul(&self, other: &ElMatrix) -> ElMatrix {
        ElMatrix { n: self.n, m: &self.m * &other.m }
    }

    pub fn distance(&self, other: &ElMatrix) -> f64 {
        (&self.m - &other.m).norm()
    }

    pub fn max_abs_diff(&self, other: &ElMatrix) -> f64 {
        (&self.m - &other.m).amax()
    }
}

fn check_index(index: usize, max: usize) -> Result<(), ElError> {
    if (1..=max).contains(&index) {
        Ok(())
    } else {
        Err(ElError::IndexOutOfRange { index, max })
    }
}

/// `u_i(a)`: odd `i = 2k−1` puts `−a` at `(k, n+k)`; even `i = 2k` subtracts `a` times the
/// Laplacian of the edge `k, k+1` (or of the single vertex `n` when `k = n`) from the lower block.
pub fn gen_u(n: usize, i: usize, a: f64) -> Result<ElMatrix, ElError> {
    if n == 0 {
        return Err(ElError::EmptyGroup);
    }
    check_index(i, 2 * n)?;
    let mut out = ElMatrix::identity(n);
    let k = (i + 1) / 2 - 1;
    if i % 2 == 1 {
        out.m[(k, n + k)] = -a;
    } else if k + 1 < n {
        out.m[(n + k, k)] = -a;
        out.m[(n + k + 1, k + 1)] = -a;
        out.m[(n + k, k + 1)] = a;
        out.m[(n + k + 1, k)] = a;
    } else {
        out.m[(n + k, k)] = -a;
    }
    Ok(out)
}

/// `x_i(a) = I + a·e_{i,i+1}` of size `2n+1`.
pub fn gen_x(n: usize, i: usize, a: f64) -> Result<DMatrix<f64>, ElError> {
    if n == 0 {
        return Err(ElError::EmptyGroup);
    }
    check_index(i, 2 * n)?;
    let mut m = DMatrix::identity(2 * n + 1, 2 * n + 1);
    m[(i - 1, i)] = a;
    Ok(m)
}

/// `J = (0, I; −I, 0)`.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(k, n + k)] = 1.0;
        j[(n + k, k)] = -1.0;
    }
    j
}

/// Largest entry of `MᵀJM − J`.
pub fn symplectic_residual(m: &ElMatrix) -> f64 {
    let j = symplectic_form(m.n);
    (m.m.transpose() * &j * &m.m - j).amax()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `u_i(f)` on `ℝ^{2n}`, coordinates `(v_1..v_n, c_1..c_n)`.
    U,
    /// `x_i(f)` on `ℝ^{2n+1}`.
    X,
    /// `y_i(f)` on `ℝ^{2n+1}`.
    Y,
    /// `h_i(f)` on `ℝ^{2n+1}`.
    H,
}

impl Family {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Family::U => 2 * n,
            _ => 2 * n + 1,
        }
    }

    fn max_index(self, n: usize) -> usize {
        match self {
            Family::H => 2 * n + 1,
            _ => 2 * n,
        }
    }
}

/// One generator acting on vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonlinearGen {
    pub family: Family,
    pub index: usize,
    pub f: ElFunction,
}

impl NonlinearGen {
    pub fn new(n: usize, family: Family, index: usize, f: ElFunction) -> Result<Self, ElError> {
        if n == 0 {
            return Err(ElError::EmptyGroup);
        }
        check_index(index, family.max_index(n))?;
        Ok(NonlinearGen { family, index, f })
    }

    pub fn apply(&self, n: usize, z: &mut [f64]) {
        let i = self.index - 1;
        let f = &self.f;
        match self.family {
            Family::U if self.index % 2 == 1 => {
                let k = i / 2;
                z[k] -= f.eval(z[n + k]);
            }
            Family::U => {
                let k = i / 2;
                if k + 1 < n {
                    let flow = f.eval(z[k] - z[k + 1]);
                    z[n + k] -= flow;
                    z[n + k + 1] += flow;
                } else {
                    z[n + k] -= f.eval(z[k]);
                }
            }
            Family::X => z[i] += f.eval(z[i + 1]),
            Family::Y => z[i + 1] += f.eval(z[i]),
            Family::H => z[i] = f.eval(z[i]),
        }
    }
}

/// `g_1 ∘ g_2 ∘ ⋯ ∘ g_l`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Composite {
    pub n: usize,
    pub gens: Vec<NonlinearGen>,
}

impl Composite {
    pub fn dim(&self) -> usize {
        self.gens.first().map_or(2 * self.n, |g| g.family.dim(self.n))
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>, ElError> {
        if v.len() != self.dim() {
            return Err(ElError::DimensionMismatch { got: v.len(), expected: self.dim() });
        }
        let mut z = v.to_vec();
        for g in self.gens.iter().rev() {
            g.apply(self.n, &mut z);
        }
        Ok(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Matrix,
    NonlinearU,
    NonlinearX,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Reals(Vec<f64>),
    Functions(Vec<ElFunction>),
}

impl Params {
    pub fn len(&self) -> usize {
        match self {
            Params::Reals(v) => v.len(),
            Params::Functions(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn functions(&self) -> Vec<ElFunction> {
        match self {
            Params::Reals(v) => v.iter().map(|&a| ElFunction::linear(a)).collect(),
            Params::Functions(v) => v.clone(),
        }
    }

    fn reals(&self) -> Result<Vec<f64>, ElError> {
        match self {
            Params::Reals(v) => Ok(v.clone()),
            Params::Functions(v) => v.iter().enumerate().map(|(k, f)| f.as_linear().ok_or(ElError::NotLinear(k))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factorization {
    Matrix(ElMatrix),
    Map(Composite),
}

/// Product of the generators named by `letters` with the given parameters.
pub fn factorize_eval(n: usize, letters: &[usize], params: &Params, mode: Mode) -> Result<Factorization, ElError> {
    if letters.len() != params.len() {
        return Err(ElError::ArityMismatch { letters: letters.len(), params: params.len() });
    }
    match mode {
        Mode::Matrix => {
            let mut out = ElMatrix::identity(n);
            for (&i, a) in letters.iter().zip(params.reals()?) {
                out = out.mul(&gen_u(n, i, a)?);
            }
            Ok(Factorization::Matrix(out))
        }
        Mode::NonlinearU | Mode::NonlinearX => {
            let family = if mode == Mode::NonlinearU { Family::U } else { Family::X };
            let gens = letters.iter().zip(params.functions()).map(|(&i, f)| NonlinearGen::new(n, family, i, f)).collect::<Result<_, _>>()?;
            Ok(Factorization::Map(Composite { n, gens }))
        }
    }
}
