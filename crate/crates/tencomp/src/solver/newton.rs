//! Damped Newton iteration for the square polynomial face systems, with
//! reflection of negative iterates and a pseudo-inverse fallback for
//! singular Jacobians.

use nalgebra::{DMatrix, DVector};

use crate::tensor::{norm2, norm_inf};

pub(crate) struct NewtonParams {
    pub max_iter: usize,
    /// Residual inf-norm at which iteration stops early; kept well below the
    /// acceptance tolerance so multiple roots (where convergence is linear)
    /// are still located to high accuracy.
    pub stop_tol: f64,
    pub divergence: f64,
}

pub(crate) struct NewtonResult {
    pub x: Vec<f64>,
    pub residual_inf: f64,
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-12;

/// Minimize `||F||` from `start >= 0`, keeping iterates nonnegative by
/// reflection. Returns the best iterate seen; the caller decides acceptance
/// by `residual_inf`.
pub(crate) fn damped_newton<F, J>(
    f: F,
    jac: J,
    start: &[f64],
    params: &NewtonParams,
) -> NewtonResult
where
    F: Fn(&[f64]) -> Vec<f64>,
    J: Fn(&[f64]) -> Vec<Vec<f64>>,
{
    let k = start.len();
    let mut x: Vec<f64> = start.iter().map(|v| v.abs()).collect();
    let mut fx = f(&x);
    let mut best = NewtonResult {
        x: x.clone(),
        residual_inf: norm_inf(&fx),
    };

    for _ in 0..params.max_iter {
        let fninf = norm_inf(&fx);
        if fninf < best.residual_inf {
            best = NewtonResult {
                x: x.clone(),
                residual_inf: fninf,
            };
        }
        if fninf <= params.stop_tol || fninf > params.divergence {
            break;
        }

        let j = DMatrix::from_fn(k, k, {
            let rows = jac(&x);
            move |r, c| rows[r][c]
        });
        let rhs = DVector::from_iterator(k, fx.iter().map(|v| -v));
        let step = match j.clone().lu().solve(&rhs) {
            Some(d) if d.iter().all(|v| v.is_finite()) => d,
            _ => {
                // singular or ill-conditioned: pseudo-inverse step
                let svd = j.svd(true, true);
                let eps = 1e-12 * svd.singular_values.max();
                match svd.solve(&rhs, eps) {
                    Ok(d) if d.iter().all(|v| v.is_finite()) => d,
                    _ => break,
                }
            }
        };
        let d: Vec<f64> = step.iter().copied().collect();
        if norm2(&d) <= 1e-16 * (1.0 + norm2(&x)) {
            break; // stagnated
        }

        let fnorm = norm2(&fx);
        let mut t = 1.0;
        let mut accepted = false;
        while t >= MIN_STEP {
            let xt: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| (xi + t * di).abs()).collect();
            let ft = f(&xt);
            if norm2(&ft) <= (1.0 - ARMIJO * t) * fnorm {
                x = xt;
                fx = ft;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break; // line search exhausted
        }
    }

    let fninf = norm_inf(&fx);
    if fninf < best.residual_inf {
        best = NewtonResult {
            x,
            residual_inf: fninf,
        };
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> NewtonParams {
        NewtonParams {
            max_iter: 100,
            stop_tol: 1e-14,
            divergence: 1e12,
        }
    }

    #[test]
    fn scalar_quadratic() {
        // x^2 - 4 = 0 from x = 3
        let r = damped_newton(
            |x| vec![x[0] * x[0] - 4.0],
            |x| vec![vec![2.0 * x[0]]],
            &[3.0],
            &params(),
        );
        assert!(r.residual_inf <= 1e-12);
        assert!((r.x[0] - 2.0).abs() < 1e-7);
    }

    #[test]
    fn double_root_polished() {
        // x (x-1)^2 = 0: the Jacobian is singular at the root x = 1, so
        // convergence is linear; polishing must still reach ~1e-8 in x.
        let r = damped_newton(
            |x| vec![x[0] * (x[0] - 1.0) * (x[0] - 1.0)],
            |x| vec![vec![3.0 * x[0] * x[0] - 4.0 * x[0] + 1.0]],
            &[1.6],
            &params(),
        );
        assert!((r.x[0] - 1.0).abs() < 1e-7, "got {}", r.x[0]);
    }

    #[test]
    fn reflection_keeps_iterates_nonnegative() {
        // root at 0.5 but unconstrained Newton from 0.1 overshoots negative
        let r = damped_newton(
            |x| vec![x[0] * x[0] - 0.25],
            |x| vec![vec![2.0 * x[0]]],
            &[0.05],
            &params(),
        );
        assert!(r.x[0] >= 0.0);
        assert!((r.x[0] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn no_real_root_reports_failure() {
        // x^2 + 1 = 0 has no real root; the residual cannot reach zero
        let r = damped_newton(
            |x| vec![x[0] * x[0] + 1.0],
            |x| vec![vec![2.0 * x[0]]],
            &[1.0],
            &params(),
        );
        assert!(r.residual_inf >= 0.9);
    }
}
