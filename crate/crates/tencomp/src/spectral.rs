//! Real Z-eigenpair checking and extremal Z-eigenvalue estimation for
//! symmetric tensors.
//!
//! A Z-eigenpair is a real pair `(lambda, x)` with `A x^{m-1} = lambda x`
//! and `x^T x = 1`. For symmetric `A` the extremes of `A x^m` over the unit
//! sphere are the extremal Z-eigenvalues, which makes them reachable by
//! projected gradient ascent/descent with the exact gradient
//! `m * A x^{m-1}`. A dense angular grid over the sphere (dimension 2 or 3)
//! serves as an independent bracketing oracle, and a positive smallest
//! Z-eigenvalue turns into a radius containing the whole TCP solution set.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::TcpInstance;
use crate::tensor::{dot, norm2, Tensor, TensorError};

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("tensor is not symmetric")]
    NotSymmetric,
    #[error("grid oracle only covers dimensions 2 and 3, got {0}")]
    DimTooLarge(usize),
    #[error("smallest Z-eigenvalue estimate {0} is not positive: bound inapplicable")]
    NotPositiveDefinite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    ProjectedGradient,
    GridOracle,
}

/// An extremal Z-eigenvalue estimate with its unit witness vector.
#[derive(Debug, Clone)]
pub struct SpectralEstimate {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub method: EstimateMethod,
}

/// Grid-scan result: bracketing estimates for both extremes plus the scan's
/// objective error bound (Lipschitz constant times covering radius).
#[derive(Debug, Clone)]
pub struct GridScan {
    pub min: SpectralEstimate,
    pub max: SpectralEstimate,
    pub error_bound: f64,
    pub points: usize,
}

#[derive(Debug, Clone)]
pub struct SpectralConfig {
    pub multistarts: usize,
    pub max_iter: usize,
    /// Convergence threshold on the Z-eigenpair residual
    /// `||A x^{m-1} - lambda x||`.
    pub residual_tol: f64,
    pub seed: u64,
    /// Resolution of the coarse seeding grid (dimensions 2 and 3 only).
    pub seed_resolution: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            multistarts: 20,
            max_iter: 500,
            residual_tol: 1e-9,
            seed: 0,
            seed_resolution: 128,
        }
    }
}

/// True iff `(lambda, x)` is a Z-eigenpair within `tol`:
/// `||A x^{m-1} - lambda x|| <= tol` and `|x^T x - 1| <= tol`.
pub fn zeig_check(a: &Tensor, lambda: f64, x: &[f64], tol: f64) -> Result<bool, SpectralError> {
    let w = a.apply_m1(x)?;
    let res: f64 = w
        .iter()
        .zip(x)
        .map(|(wi, xi)| (wi - lambda * xi).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(res <= tol && (dot(x, x) - 1.0).abs() <= tol)
}

fn normalize(x: &mut [f64]) {
    let n = norm2(x);
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

/// One projected-gradient run on the sphere. Returns (lambda, x, iterations,
/// converged).
fn project_run(
    a: &Tensor,
    start: &[f64],
    maximize: bool,
    cfg: &SpectralConfig,
) -> (f64, Vec<f64>, usize, bool) {
    let m = a.order() as f64;
    let mut x = start.to_vec();
    normalize(&mut x);
    let mut w = a.apply_m1(&x).expect("dimension");
    let mut lambda = dot(&x, &w);
    let mut step = 1.0 / (1.0 + a.inf_norm());
    for iter in 0..cfg.max_iter {
        // Riemannian gradient of A x^m at x is m * (w - lambda x)
        let r: Vec<f64> = w.iter().zip(&x).map(|(wi, xi)| wi - lambda * xi).collect();
        let rn = norm2(&r);
        if m * rn <= cfg.residual_tol * (1.0 + lambda.abs()) {
            return (lambda, x, iter, true);
        }
        let sign = if maximize { 1.0 } else { -1.0 };
        let mut t = step;
        let mut advanced = false;
        while t > 1e-18 {
            let mut xt: Vec<f64> = x.iter().zip(&r).map(|(xi, ri)| xi + sign * t * ri).collect();
            normalize(&mut xt);
            let wt = a.apply_m1(&xt).expect("dimension");
            let lt = dot(&xt, &wt);
            let improved = if maximize {
                lt >= lambda + 1e-4 * t * m * rn * rn
            } else {
                lt <= lambda - 1e-4 * t * m * rn * rn
            };
            if improved {
                x = xt;
                w = wt;
                lambda = lt;
                step = (t * 2.0).min(1e3);
                advanced = true;
                break;
            }
            t *= 0.5;
        }
        if !advanced {
            let converged = m * rn <= cfg.residual_tol * (1.0 + lambda.abs());
            return (lambda, x, iter, converged);
        }
    }
    let r: Vec<f64> = w.iter().zip(&x).map(|(wi, xi)| wi - lambda * xi).collect();
    let converged = m * norm2(&r) <= cfg.residual_tol * (1.0 + lambda.abs());
    (lambda, x, cfg.max_iter, converged)
}

fn sphere_grid(dim: usize, resolution: usize) -> Vec<Vec<f64>> {
    match dim {
        2 => (0..resolution)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / resolution as f64;
                vec![theta.cos(), theta.sin()]
            })
            .collect(),
        3 => {
            let mut pts = Vec::with_capacity((resolution + 1) * resolution);
            for i in 0..=resolution {
                let theta = std::f64::consts::PI * i as f64 / resolution as f64;
                for j in 0..resolution {
                    let phi = 2.0 * std::f64::consts::PI * j as f64 / resolution as f64;
                    pts.push(vec![
                        theta.sin() * phi.cos(),
                        theta.sin() * phi.sin(),
                        theta.cos(),
                    ]);
                }
            }
            pts
        }
        _ => unreachable!("grid restricted to dimensions 2 and 3"),
    }
}

/// Extremes of `A x^m` over a uniform angular grid of the unit sphere.
/// The objective error is at most `error_bound = L * h/2` where `L` bounds
/// the gradient norm on the sphere and `h` the grid spacing.
pub fn grid_oracle(a: &Tensor, resolution: usize) -> Result<GridScan, SpectralError> {
    if !a.is_symmetric() {
        return Err(SpectralError::NotSymmetric);
    }
    if !(a.dim() == 2 || a.dim() == 3) {
        return Err(SpectralError::DimTooLarge(a.dim()));
    }
    let resolution = resolution.max(4);
    let pts = sphere_grid(a.dim(), resolution);
    let mut min = (f64::INFINITY, 0usize);
    let mut max = (f64::NEG_INFINITY, 0usize);
    for (idx, p) in pts.iter().enumerate() {
        let f = a.form(p).expect("dimension");
        if f < min.0 {
            min = (f, idx);
        }
        if f > max.0 {
            max = (f, idx);
        }
    }
    // ||grad(A x^m)|| = m ||A x^{m-1}|| <= m ||row abs sums||_2 on the sphere
    let n = a.dim();
    let slice = a.entries().len() / n;
    let row_sums: Vec<f64> = (0..n)
        .map(|i| a.entries()[i * slice..(i + 1) * slice].iter().map(|v| v.abs()).sum())
        .collect();
    let lipschitz = a.order() as f64 * norm2(&row_sums);
    let h = std::f64::consts::PI / resolution as f64;
    let covering = if a.dim() == 2 { h } else { h * 5f64.sqrt() };
    let estimate = |(lambda, idx): (f64, usize)| SpectralEstimate {
        lambda,
        x: pts[idx].clone(),
        iterations: pts.len(),
        converged: true,
        method: EstimateMethod::GridOracle,
    };
    Ok(GridScan {
        min: estimate(min),
        max: estimate(max),
        error_bound: lipschitz * covering,
        points: pts.len(),
    })
}

fn extremal(a: &Tensor, cfg: &SpectralConfig, maximize: bool) -> Result<SpectralEstimate, SpectralError> {
    if !a.is_symmetric() {
        return Err(SpectralError::NotSymmetric);
    }
    let n = a.dim();
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if n == 2 || n == 3 {
        if let Ok(scan) = grid_oracle(a, cfg.seed_resolution) {
            starts.push(if maximize { scan.max.x } else { scan.min.x });
        }
    }
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        starts.push(e);
    }
    starts.push(vec![(1.0 / n as f64).sqrt(); n]);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while starts.len() < cfg.multistarts {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if norm2(&v) < 1e-3 {
            continue;
        }
        normalize(&mut v);
        starts.push(v);
    }
    starts.truncate(cfg.multistarts.max(1));

    let mut best: Option<SpectralEstimate> = None;
    for start in &starts {
        let (lambda, x, iterations, converged) = project_run(a, start, maximize, cfg);
        // even-order forms are sign-blind in x: canonicalize to the
        // lexicographically smaller of {x, -x}
        let x = if a.order().is_multiple_of(2) {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            if neg < x {
                neg
            } else {
                x
            }
        } else {
            x
        };
        let candidate = SpectralEstimate {
            lambda,
            x,
            iterations,
            converged,
            method: EstimateMethod::ProjectedGradient,
        };
        best = Some(match best {
            None => candidate,
            Some(cur) => {
                let better = if maximize {
                    candidate.lambda > cur.lambda + 1e-12
                } else {
                    candidate.lambda < cur.lambda - 1e-12
                };
                // ties prefer converged runs, then the lexicographically
                // smaller eigenvector (deterministic reduction)
                let tied = (candidate.lambda - cur.lambda).abs() <= 1e-12;
                let tie_win = tied
                    && ((candidate.converged && !cur.converged)
                        || (candidate.converged == cur.converged && candidate.x < cur.x));
                if better || tie_win {
                    candidate
                } else {
                    cur
                }
            }
        });
    }
    Ok(best.expect("at least one start"))
}

/// Smallest Z-eigenvalue estimate (projected-gradient multistart, grid
/// seeded when the dimension allows).
pub fn lambda_min(a: &Tensor, cfg: &SpectralConfig) -> Result<SpectralEstimate, SpectralError> {
    extremal(a, cfg, false)
}

/// Largest Z-eigenvalue estimate.
pub fn lambda_max(a: &Tensor, cfg: &SpectralConfig) -> Result<SpectralEstimate, SpectralError> {
    extremal(a, cfg, true)
}

/// Positive-definite threshold below which the norm bound is refused.
const LAMBDA_MIN_FLOOR: f64 = 1e-8;

/// Radius of the ball containing every solution of `TCP(A, q)` for a
/// symmetric positive definite `A`: `(||q|| / lambda_min)^{1/(m-1)}`, with
/// `lambda_min` the tighter of the optimizer estimate and the grid oracle
/// (when the dimension admits one).
pub fn solution_norm_bound(inst: &TcpInstance, cfg: &SpectralConfig) -> Result<f64, SpectralError> {
    let a = inst.tensor();
    let mut lam = lambda_min(a, cfg)?.lambda;
    if a.dim() == 2 || a.dim() == 3 {
        let scan = grid_oracle(a, cfg.seed_resolution.max(512))?;
        lam = lam.max(scan.min.lambda);
    }
    if lam <= LAMBDA_MIN_FLOOR {
        return Err(SpectralError::NotPositiveDefinite(lam));
    }
    let m1 = inst.order() as f64 - 1.0;
    Ok((norm2(inst.q()) / lam).powf(1.0 / m1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TcpInstance;

    fn identity_like(order: usize, dim: usize) -> Tensor {
        let items: Vec<(Vec<usize>, f64)> = (0..dim).map(|i| (vec![i; order], 1.0)).collect();
        Tensor::from_coo(order, dim, &items).unwrap()
    }

    #[test]
    fn zeig_check_matrix_pair() {
        let a = Tensor::from_coo(2, 2, &[([0, 0], 2.0), ([1, 1], 3.0)]).unwrap();
        assert!(zeig_check(&a, 2.0, &[1.0, 0.0], 1e-12).unwrap());
        assert!(!zeig_check(&a, 2.5, &[1.0, 0.0], 1e-6).unwrap());
    }

    #[test]
    fn zeig_check_identity_order4() {
        let a = identity_like(4, 2);
        let s = 0.5_f64.sqrt();
        assert!(zeig_check(&a, 0.5, &[s, s], 1e-12).unwrap());
    }

    #[test]
    fn zeig_check_rejects_zero_vector() {
        let a = identity_like(4, 2);
        assert!(!zeig_check(&a, 0.0, &[0.0, 0.0], 1e-6).unwrap());
    }

    #[test]
    fn grid_oracle_identity_order4() {
        let a = identity_like(4, 2);
        let scan = grid_oracle(&a, 10_000).unwrap();
        assert!(scan.min.lambda >= 0.4999 && scan.min.lambda <= 0.5001);
        assert!((scan.max.lambda - 1.0).abs() < 1e-3);
    }

    #[test]
    fn grid_oracle_matrix() {
        let a = Tensor::from_coo(2, 2, &[([0, 0], 2.0), ([1, 1], 3.0)]).unwrap();
        let scan = grid_oracle(&a, 10_000).unwrap();
        assert!((scan.min.lambda - 2.0).abs() < 1e-3);
        assert!((scan.max.lambda - 3.0).abs() < 1e-3);
    }

    #[test]
    fn grid_oracle_dim3_identity() {
        let a = identity_like(4, 3);
        let scan = grid_oracle(&a, 300).unwrap();
        assert!((scan.min.lambda - 1.0 / 3.0).abs() < 1e-2);
        assert!((scan.max.lambda - 1.0).abs() < 1e-2);
    }

    #[test]
    fn grid_oracle_rejects_large_dim() {
        let a = identity_like(4, 4);
        assert!(matches!(grid_oracle(&a, 100), Err(SpectralError::DimTooLarge(4))));
    }

    #[test]
    fn lambda_extremes_matrix() {
        let a = Tensor::from_coo(2, 2, &[([0, 0], 2.0), ([1, 1], 3.0)]).unwrap();
        let cfg = SpectralConfig::default();
        let lo = lambda_min(&a, &cfg).unwrap();
        let hi = lambda_max(&a, &cfg).unwrap();
        assert!(lo.converged && hi.converged);
        assert!((lo.lambda - 2.0).abs() < 1e-8);
        assert!((hi.lambda - 3.0).abs() < 1e-8);
        assert!(zeig_check(&a, lo.lambda, &lo.x, 1e-6).unwrap());
    }

    #[test]
    fn lambda_min_identity_order4() {
        let a = identity_like(4, 2);
        let cfg = SpectralConfig::default();
        let lo = lambda_min(&a, &cfg).unwrap();
        assert!(lo.converged);
        assert!((lo.lambda - 0.5).abs() < 1e-6);
        assert!(zeig_check(&a, lo.lambda, &lo.x, 1e-6).unwrap());
        assert!((norm2(&lo.x) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lambda_rejects_nonsymmetric() {
        let a = Tensor::from_coo(3, 2, &[([0, 1, 1], -1.0)]).unwrap();
        assert!(matches!(
            lambda_min(&a, &SpectralConfig::default()),
            Err(SpectralError::NotSymmetric)
        ));
    }

    #[test]
    fn odd_order_antisymmetry() {
        let a = Tensor::from_coo(
            3,
            2,
            &[
                ([0, 0, 0], 0.7),
                ([1, 1, 1], -0.3),
                ([0, 0, 1], 0.2),
                ([0, 1, 0], 0.2),
                ([1, 0, 0], 0.2),
            ],
        )
        .unwrap();
        assert!(a.is_symmetric());
        let cfg = SpectralConfig::default();
        let lo = lambda_min(&a, &cfg).unwrap().lambda;
        let hi = lambda_max(&a, &cfg).unwrap().lambda;
        assert!((lo + hi).abs() < 1e-6, "lo {lo} hi {hi}");
    }

    #[test]
    fn norm_bound_identity_case() {
        let a = identity_like(4, 2);
        let inst = TcpInstance::new(a, vec![-1.0, -1.0]).unwrap();
        let b = solution_norm_bound(&inst, &SpectralConfig::default()).unwrap();
        assert!((b - 2.0_f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn norm_bound_matrix_case() {
        let a = Tensor::from_coo(2, 2, &[([0, 0], 2.0), ([1, 1], 3.0)]).unwrap();
        let inst = TcpInstance::new(a, vec![-2.0, -3.0]).unwrap();
        let b = solution_norm_bound(&inst, &SpectralConfig::default()).unwrap();
        assert!((b - 13.0_f64.sqrt() / 2.0).abs() < 1e-6);
    }

    #[test]
    fn norm_bound_zero_q() {
        let a = identity_like(4, 2);
        let inst = TcpInstance::new(a, vec![0.0, 0.0]).unwrap();
        let b = solution_norm_bound(&inst, &SpectralConfig::default()).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn norm_bound_refused_when_not_pd() {
        // odd order: lambda_min < 0 for any nonzero symmetric tensor
        let a = Tensor::from_coo(3, 2, &[([0, 0, 0], 1.0)]).unwrap();
        let inst = TcpInstance::new(a, vec![-1.0, -1.0]).unwrap();
        assert!(matches!(
            solution_norm_bound(&inst, &SpectralConfig::default()),
            Err(SpectralError::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        // d(A x^m)/dx = m A x^{m-1} for symmetric A
        let a = identity_like(4, 3);
        let x = [0.4, -0.7, 0.2];
        let g = a.apply_m1(&x).unwrap();
        let h = 1e-6;
        for j in 0..3 {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[j] += h;
            xm[j] -= h;
            let fd = (a.form(&xp).unwrap() - a.form(&xm).unwrap()) / (2.0 * h);
            assert!((fd - 4.0 * g[j]).abs() < 1e-6, "component {j}");
        }
    }
}
