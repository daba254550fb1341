use serde::Serialize;

use crate::ElError;

/// Piecewise linear bijection through the origin, extended by its end slopes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pwl {
    points: Vec<[f64; 2]>,
}

impl Pwl {
    /// `points` in any order; the origin is added when absent.
    pub fn new(mut points: Vec<[f64; 2]>) -> Result<Self, ElError> {
        if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(ElError::BadFunction("non-finite breakpoint".into()));
        }
        match points.iter().find(|p| p[0] == 0.0) {
            Some(p) if p[1] != 0.0 => return Err(ElError::BadFunction(format!("f(0) = {}", p[1]))),
            Some(_) => {}
            None => points.push([0.0, 0.0]),
        }
        points.sort_by(|a, b| a[0].total_cmp(&b[0]));
        if points.len() < 2 {
            return Err(ElError::BadFunction("need a breakpoint besides the origin".into()));
        }
        let mut sign = 0.0;
        for w in points.windows(2) {
            let (dx, dy) = (w[1][0] - w[0][0], w[1][1] - w[0][1]);
            if dx <= 0.0 {
                return Err(ElError::BadFunction(format!("repeated abscissa {}", w[0][0])));
            }
            let s = (dy / dx).signum();
            if dy == 0.0 || (sign != 0.0 && s != sign) {
                return Err(ElError::BadFunction("not strictly monotone".into()));
            }
            sign = s;
        }
        Ok(Pwl { points })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    fn slope(&self, k: usize) -> f64 {
        let (p, q) = (self.points[k], self.points[k + 1]);
        (q[1] - p[1]) / (q[0] - p[0])
    }

    fn segment(&self, t: f64, axis: usize) -> usize {
        let last = self.points.len() - 2;
        let increasing = self.slope(0) > 0.0 || axis == 0;
        let k = self.points.partition_point(|p| if increasing { p[axis] <= t } else { p[axis] >= t });
        k.saturating_sub(1).min(last)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.segment(x, 0);
        self.points[k][1] + self.slope(k) * (x - self.points[k][0])
    }

    pub fn inverse(&self, y: f64) -> f64 {
        let k = self.segment(y, 1);
        self.points[k][0] + (y - self.points[k][1]) / self.slope(k)
    }

    fn abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p[0])
    }
}

/// A bijection of ℝ fixing 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElFunction {
    Linear { a: f64 },
    Pwl(Pwl),
}

impl ElFunction {
    pub fn linear(a: f64) -> Self {
        ElFunction::Linear { a }
    }

    pub fn pwl(points: Vec<[f64; 2]>) -> Result<Self, ElError> {
        Pwl::new(points).map(ElFunction::Pwl)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ElFunction::Linear { a } => a * x,
            ElFunction::Pwl(p) => p.eval(x),
        }
    }

    pub fn inverse(&self, y: f64) -> f64 {
        match self {
            ElFunction::Linear { a } => y / a,
            ElFunction::Pwl(p) => p.inverse(y),
        }
    }

    pub fn as_linear(&self) -> Option<f64> {
        match self {
            ElFunction::Linear { a } => Some(*a),
            ElFunction::Pwl(_) => None,
        }
    }

    /// `α·f + β·g`, which must again be a bijection.
    pub fn combine(alpha: f64, f: &ElFunction, beta: f64, g: &ElFunction) -> Result<ElFunction, ElError> {
        if let (Some(a), Some(b)) = (f.as_linear(), g.as_linear()) {
            let c = alpha * a + beta * b;
            if c == 0.0 || !c.is_finite() {
                return Err(ElError::BadFunction(format!("slope {c}")));
            }
            return Ok(ElFunction::linear(c));
        }
        let mut xs: Vec<f64> = [f, g]
            .iter()
            .filter_map(|h| match h {
                ElFunction::Pwl(p) => Some(p.abscissae()),
                ElFunction::Linear { .. } => None,
            })
            .flatten()
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        // one extra point past each end fixes the end slopes
        let (lo, hi) = (xs[0].min(0.0) - 1.0, xs[xs.len() - 1].max(0.0) + 1.0);
        xs.insert(0, lo);
        xs.push(hi);
        ElFunction::pwl(xs.into_iter().map(|x| [x, alpha * f.eval(x) + beta * g.eval(x)]).collect())
    }

    pub fn is_increasing(&self) -> bool {
        self.eval(1.0) > 0.0
    }
}
