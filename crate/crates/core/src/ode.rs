//! Dormand–Prince 5(4) with PI step control for linear matrix ODEs
//! `Y′ = F(t, Y)` over `C`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

/// Step control settings; `tol` is both the absolute and relative local tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub tol: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            initial_step: 1e-3,
            min_step: 1e-14,
            max_steps: 1_000_000,
        }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self::with_tol(1e-10)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Sum of accepted local error estimates, in absolute units.
    pub error_estimate: f64,
}

impl std::ops::AddAssign for OdeStats {
    fn add_assign(&mut self, o: Self) {
        self.accepted += o.accepted;
        self.rejected += o.rejected;
        self.error_estimate += o.error_estimate;
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const BETA: f64 = 0.04;
const ALPHA: f64 = 0.2 - 0.75 * BETA;

/// Integrates from `t0` to `t1 > t0`.
pub fn dopri5(
    rhs: &mut dyn FnMut(f64, &CMat) -> CMat,
    t0: f64,
    t1: f64,
    y0: CMat,
    opts: &OdeOptions,
) -> Result<(CMat, OdeStats)> {
    if !(opts.tol > 0.0) || !(t1 > t0) {
        return Err(Error::Precondition("need tol > 0 and t1 > t0".into()));
    }
    let mut stats = OdeStats::default();
    let mut t = t0;
    let mut y = y0;
    let mut h = opts.initial_step.min(t1 - t0);
    let mut k0 = rhs(t, &y);
    let mut err_prev = 1e-4_f64;
    let mut steps = 0;
    while t < t1 {
        if steps >= opts.max_steps {
            return Err(Error::StepUnderflow {
                t,
                detail: format!("exceeded {} steps", opts.max_steps),
            });
        }
        steps += 1;
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        let mut k: Vec<CMat> = Vec::with_capacity(7);
        k.push(k0.clone());
        for s in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = A[s][j];
                if a != 0.0 {
                    ys += kj * Complex64::new(h * a, 0.0);
                }
            }
            if s == 6 {
                // Row 7 of A is the fifth-order solution (FSAL).
                let k6 = rhs(t + C[s] * h, &ys);
                k.push(k6);
                let mut err_vec = CMat::zeros(y.nrows(), y.ncols());
                for (j, kj) in k.iter().enumerate() {
                    if E[j] != 0.0 {
                        err_vec += kj * Complex64::new(h * E[j], 0.0);
                    }
                }
                let mut err = 0.0_f64;
                let mut abs_err = 0.0_f64;
                for ((e, y_old), y_new) in err_vec.iter().zip(y.iter()).zip(ys.iter()) {
                    let sc = opts.tol * (1.0 + y_old.norm().max(y_new.norm()));
                    err = err.max(e.norm() / sc);
                    abs_err = abs_err.max(e.norm());
                }
                if !err.is_finite() {
                    return Err(Error::StepUnderflow {
                        t,
                        detail: "non-finite error estimate".into(),
                    });
                }
                if err <= 1.0 {
                    t = if last { t1 } else { t + h };
                    y = ys;
                    k0 = k.pop().expect("seven stages");
                    stats.accepted += 1;
                    stats.error_estimate += abs_err;
                    let fac = (0.9 * err.max(1e-10).powf(-ALPHA) * err_prev.powf(BETA)).clamp(0.2, 10.0);
                    err_prev = err.max(1e-4);
                    h *= fac;
                } else {
                    stats.rejected += 1;
                    h *= (0.9 * err.powf(-ALPHA)).clamp(0.2, 1.0);
                }
                if h < opts.min_step && t < t1 {
                    return Err(Error::StepUnderflow {
                        t,
                        detail: format!("step {h:e} below minimum"),
                    });
                }
                break;
            }
            let ks = rhs(t + C[s] * h, &ys);
            k.push(ks);
        }
    }
    Ok((y, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let y0 = CMat::identity(1, 1);
        let lam = Complex64::new(0.3, 2.0);
        let (y, st) = dopri5(&mut |_, y| y * lam, 0.0, 1.0, y0, &OdeOptions::with_tol(1e-11)).unwrap();
        assert!((y[(0, 0)] - lam.exp()).norm() < 1e-9);
        assert!(st.accepted > 0);
    }

    #[test]
    fn zero_field_is_identity() {
        let y0 = CMat::identity(3, 3);
        let (y, _) = dopri5(&mut |_, y| y * Complex64::new(0.0, 0.0), 0.0, 2.0, y0.clone(), &OdeOptions::default()).unwrap();
        assert_eq!(y, y0);
    }

    #[test]
    fn stiff_field_reports_underflow() {
        let y0 = CMat::identity(1, 1);
        let opts = OdeOptions {
            min_step: 1e-3,
            ..OdeOptions::with_tol(1e-10)
        };
        let r = dopri5(&mut |_, y| y * Complex64::new(-1e6, 0.0), 0.0, 1.0, y0, &opts);
        assert!(matches!(r, Err(Error::StepUnderflow { .. })));
    }

    #[test]
    fn rejects_bad_interval() {
        let y0 = CMat::identity(1, 1);
        assert!(dopri5(&mut |_, y| y.clone(), 1.0, 0.0, y0, &OdeOptions::default()).is_err());
    }
}
