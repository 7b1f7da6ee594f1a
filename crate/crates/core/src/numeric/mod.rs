//! Lie heaps on matrix groups and Euclidean space, checked by seeded
//! sampling. Analytic formulas are primary; central finite differences and
//! integrated flows serve as the independent oracle.

mod checks;
mod chart;
mod linalg;
mod poly;

use core::fmt;

pub use checks::*;
pub use chart::{so3_basis, ChartKind, MatrixHeapChart, MEMBERSHIP_TOL, TANGENT_TOL};
pub use linalg::{Lu, Matrix, CONDITION_LIMIT};
pub use poly::ScalarField;

/// Fixed RK4 step for every flow.
pub const FLOW_STEP: f64 = 1e-3;

/// Integrate `ẋ = field(x)` from `x` for time `t` (either sign) with
/// fixed-step RK4, using `ceil(|t| / step)` equal steps.
pub fn rk4_flow(field: &dyn Fn(&Matrix) -> Matrix, x: &Matrix, t: f64, step: f64) -> Matrix {
    let steps = libm::ceil(libm::fabs(t) / step).max(1.0) as usize;
    let dt = t / steps as f64;
    let mut y = x.clone();
    for _ in 0..steps {
        let k1 = field(&y);
        let k2 = field(&y.add_scaled(dt / 2.0, &k1));
        let k3 = field(&y.add_scaled(dt / 2.0, &k2));
        let k4 = field(&y.add_scaled(dt, &k3));
        let incr = (&(&k1 + &k4) + &(&k2 + &k3).scale(2.0)).scale(dt / 6.0);
        y = &y + &incr;
    }
    y
}

/// Outcome of one sampled check.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericReport {
    pub check: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub pass: bool,
    /// First failing sample, when there is one.
    pub witness: Option<alloc::string::String>,
}

impl NumericReport {
    pub(crate) fn new(check: &'static str, seed: u64, samples: usize, tolerance: f64) -> Self {
        NumericReport { check, seed, samples, tolerance, max_residual: 0.0, pass: true, witness: None }
    }

    /// Record a residual; the first one over tolerance fails the report and
    /// becomes the witness.
    pub(crate) fn record(&mut self, residual: f64, witness: impl FnOnce() -> alloc::string::String) {
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = if residual.is_nan() { f64::INFINITY } else { residual };
        }
        if (residual.is_nan() || residual > self.tolerance) && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
    }

    pub(crate) fn fail(&mut self, witness: alloc::string::String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }
}

impl fmt::Display for NumericReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check={} max_residual={:.3e} seed={} pass={}", self.check, self.max_residual, self.seed, self.pass)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_linear_growth() {
        let x = Matrix::column(&[2.0]);
        let y = rk4_flow(&|p: &Matrix| p.clone(), &x, 0.5, FLOW_STEP);
        assert!((y[(0, 0)] - 2.0 * libm::exp(0.5)).abs() < 1e-12);
        let back = rk4_flow(&|p: &Matrix| p.clone(), &y, -0.5, FLOW_STEP);
        assert!((back[(0, 0)] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn report_line() {
        let mut r = NumericReport::new("demo", 42, 1, 1e-9);
        r.record(1e-12, || "never".into());
        assert_eq!(alloc::format!("{r}"), "check=demo max_residual=1.000e-12 seed=42 pass=true");
        r.record(f64::NAN, || "x=1".into());
        assert!(!r.pass);
        assert_eq!(r.witness.as_deref(), Some("x=1"));
    }
}
