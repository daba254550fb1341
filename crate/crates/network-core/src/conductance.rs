use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A zero-preserving bijection of the real line with pointwise inverse access.
pub trait Bijection {
    fn eval(&self, x: f64) -> f64;
    fn inverse(&self, y: f64) -> f64;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("linear slope must be finite and nonzero, got {0}")]
    ZeroSlope(f64),
    #[error("breakpoint {index} has x = {x}; abscissae must be positive and strictly increasing")]
    BadAbscissa { index: usize, x: f64 },
    #[error("segment {index} has slope {slope}; slopes must be finite, nonzero and of one sign")]
    BadSlope { index: usize, slope: f64 },
    #[error("non-finite value in piecewise-linear spec")]
    NonFinite,
}

/// Per-edge conductance function, odd by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConductanceSpec {
    Linear { c: f64 },
    PwlOdd { points: Vec<[f64; 2]>, terminal_slope: f64 },
}

impl ConductanceSpec {
    pub fn linear(c: f64) -> Self {
        ConductanceSpec::Linear { c }
    }

    pub fn pwl(points: Vec<[f64; 2]>, terminal_slope: f64) -> Self {
        ConductanceSpec::PwlOdd { points, terminal_slope }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            ConductanceSpec::Linear { c } => {
                if !c.is_finite() || *c == 0.0 {
                    return Err(SpecError::ZeroSlope(*c));
                }
                Ok(())
            }
            ConductanceSpec::PwlOdd { points, terminal_slope } => {
                if !terminal_slope.is_finite() || points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
                    return Err(SpecError::NonFinite);
                }
                let mut prev = [0.0, 0.0];
                let mut sign = 0.0;
                let slopes = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        if p[0] <= prev[0] {
                            return Err(SpecError::BadAbscissa { index: i, x: p[0] });
                        }
                        let s = (p[1] - prev[1]) / (p[0] - prev[0]);
                        prev = *p;
                        Ok(s)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                for (i, s) in slopes.iter().chain(std::iter::once(terminal_slope)).enumerate() {
                    if *s == 0.0 || (sign != 0.0 && s.signum() != sign) {
                        return Err(SpecError::BadSlope { index: i, slope: *s });
                    }
                    sign = s.signum();
                }
                Ok(())
            }
        }
    }

    /// Order-preserving (all slopes positive).
    pub fn is_monotone(&self) -> bool {
        match self {
            ConductanceSpec::Linear { c } => *c > 0.0,
            ConductanceSpec::PwlOdd { terminal_slope, .. } => *terminal_slope > 0.0,
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, ConductanceSpec::Linear { .. })
    }

    pub fn slope(&self) -> Option<f64> {
        match self {
            ConductanceSpec::Linear { c } => Some(*c),
            ConductanceSpec::PwlOdd { .. } => None,
        }
    }

    /// Breakpoint abscissae (empty for linear specs).
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            ConductanceSpec::Linear { .. } => Vec::new(),
            ConductanceSpec::PwlOdd { points, .. } => points.iter().map(|p| p[0]).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ConductanceSpec::Linear { c } => c * x,
            ConductanceSpec::PwlOdd { points, terminal_slope } => {
                let v = pwl_positive(points, *terminal_slope, x.abs());
                if x < 0.0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn inverse(&self, y: f64) -> f64 {
        match self {
            ConductanceSpec::Linear { c } => y / c,
            ConductanceSpec::PwlOdd { points, terminal_slope } => {
                let increasing = *terminal_slope > 0.0;
                // on x >= 0 the function takes values of sign `increasing`
                let flip = (y < 0.0) == increasing;
                let target = if flip { -y } else { y };
                let x = pwl_positive_inverse(points, *terminal_slope, target);
                if flip {
                    -x
                } else {
                    x
                }
            }
        }
    }

    /// q(x) = integral of the conductance from 0 to x.
    pub fn integral(&self, x: f64) -> f64 {
        match self {
            ConductanceSpec::Linear { c } => 0.5 * c * x * x,
            ConductanceSpec::PwlOdd { points, terminal_slope } => {
                let t = x.abs();
                let mut acc = 0.0;
                let mut prev = [0.0, 0.0];
                for p in points {
                    if t <= p[0] {
                        let y = pwl_positive(points, *terminal_slope, t);
                        return acc + 0.5 * (prev[1] + y) * (t - prev[0]);
                    }
                    acc += 0.5 * (prev[1] + p[1]) * (p[0] - prev[0]);
                    prev = *p;
                }
                let y = prev[1] + terminal_slope * (t - prev[0]);
                acc + 0.5 * (prev[1] + y) * (t - prev[0])
            }
        }
    }

    /// The inverse function as a spec of the same kind.
    pub fn inverted(&self) -> ConductanceSpec {
        match self {
            ConductanceSpec::Linear { c } => ConductanceSpec::Linear { c: 1.0 / c },
            ConductanceSpec::PwlOdd { points, terminal_slope } => {
                if *terminal_slope > 0.0 {
                    ConductanceSpec::PwlOdd {
                        points: points.iter().map(|p| [p[1], p[0]]).collect(),
                        terminal_slope: 1.0 / terminal_slope,
                    }
                } else {
                    // decreasing: reflect through oddness so abscissae stay positive
                    ConductanceSpec::PwlOdd {
                        points: points.iter().map(|p| [-p[1], -p[0]]).collect(),
                        terminal_slope: 1.0 / terminal_slope,
                    }
                }
            }
        }
    }
}

impl Bijection for ConductanceSpec {
    fn eval(&self, x: f64) -> f64 {
        ConductanceSpec::eval(self, x)
    }
    fn inverse(&self, y: f64) -> f64 {
        ConductanceSpec::inverse(self, y)
    }
}

fn pwl_positive(points: &[[f64; 2]], terminal: f64, x: f64) -> f64 {
    let mut prev = [0.0, 0.0];
    for p in points {
        if x <= p[0] {
            if x == p[0] {
                return p[1];
            }
            return prev[1] + (p[1] - prev[1]) * (x - prev[0]) / (p[0] - prev[0]);
        }
        prev = *p;
    }
    prev[1] + terminal * (x - prev[0])
}

// `y` has the sign the function takes on the positive half-line.
fn pwl_positive_inverse(points: &[[f64; 2]], terminal: f64, y: f64) -> f64 {
    let mut prev = [0.0, 0.0];
    for p in points {
        if y.abs() <= p[1].abs() {
            if y == p[1] {
                return p[0];
            }
            return prev[0] + (p[0] - prev[0]) * (y - prev[1]) / (p[1] - prev[1]);
        }
        prev = *p;
    }
    prev[0] + (y - prev[1]) / terminal
}

/// Resistance function: voltage drop as a function of current.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResistanceSpec(pub ConductanceSpec);

impl ResistanceSpec {
    pub fn linear(r: f64) -> Self {
        ResistanceSpec(ConductanceSpec::Linear { c: r })
    }

    /// ρ = γ⁻¹.
    pub fn from_conductance(spec: &ConductanceSpec) -> Self {
        ResistanceSpec(spec.inverted())
    }

    pub fn eval(&self, i: f64) -> f64 {
        self.0.eval(i)
    }

    pub fn integral(&self, i: f64) -> f64 {
        self.0.integral(i)
    }

    pub fn is_monotone(&self) -> bool {
        self.0.is_monotone()
    }
}
