//! The mixed-integer reformulation of a TCP instance and its two
//! feasibility-certificate systems.
//!
//! The model maximizes `alpha^{m-1}` over
//!
//! ```text
//!     0 <= A y^{m-1} + alpha^{m-1} q <= e - z
//!     0 <= y <= z,   alpha >= 0,   z in {0,1}^n
//! ```
//!
//! Any feasible point with `alpha > 0` recovers a TCP solution `x = y/alpha`;
//! an optimal `alpha* = 0` proves that no solution exists. The certificate
//! systems replace the binaries by a threshold vector `u`: the relaxed form
//! allows `u in [0, tau e]`, the exact form restricts to `u in {0, tau}^n`
//! and is feasible iff the TCP is solvable.

use thiserror::Error;

use crate::model::{ModelError, TcpInstance};
use crate::tensor::norm_inf;

#[derive(Debug, Error, PartialEq)]
pub enum MipError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("alpha upper bound must be positive (or infinite), got {0}")]
    InvalidAlphaRange(f64),
    #[error("point has dimension {got}, model expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("alpha = 0: no solution is recoverable from this point")]
    ZeroAlpha,
    #[error("alpha bound is undefined for q = 0")]
    ZeroQ,
    #[error("x does not verify as a TCP solution")]
    NotASolution,
    #[error("certificate construction failed to validate")]
    CertificateConstruction,
}

/// The reformulated model: an instance plus the closed alpha range
/// `[0, alpha_hi]` (`alpha_hi` may be infinite).
#[derive(Debug, Clone)]
pub struct MipModel {
    instance: TcpInstance,
    alpha_hi: f64,
}

/// A candidate point `(alpha, y, z)` of the mixed-integer model.
#[derive(Debug, Clone, PartialEq)]
pub struct MipPoint {
    pub alpha: f64,
    pub y: Vec<f64>,
    pub z: Vec<bool>,
}

/// Which u-domain the certificate claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertVariant {
    /// `0 <= u <= tau e` (necessary condition only).
    Relaxed7,
    /// `u in {0, tau}^n` (necessary and sufficient).
    Exact8,
}

/// A feasibility certificate `(tau, x, u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasCertificate {
    pub tau: f64,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub variant: CertVariant,
}

impl MipModel {
    pub fn instance(&self) -> &TcpInstance {
        &self.instance
    }

    pub fn alpha_hi(&self) -> f64 {
        self.alpha_hi
    }
}

pub fn build_mip(inst: &TcpInstance, alpha_hi: f64) -> Result<MipModel, MipError> {
    if alpha_hi.is_nan() || alpha_hi <= 0.0 {
        return Err(MipError::InvalidAlphaRange(alpha_hi));
    }
    Ok(MipModel {
        instance: inst.clone(),
        alpha_hi,
    })
}

/// All constraints of the model within `tol`, including `alpha` in range and
/// `z` binary (exact by type).
pub fn check_mip_feasible(model: &MipModel, p: &MipPoint, tol: f64) -> Result<bool, MipError> {
    let n = model.instance.dim();
    if p.y.len() != n || p.z.len() != n {
        return Err(MipError::DimensionMismatch {
            expected: n,
            got: p.y.len().max(p.z.len()),
        });
    }
    if p.alpha < -tol || p.alpha > model.alpha_hi + tol {
        return Ok(false);
    }
    let m1 = model.instance.order() as i32 - 1;
    let af = p.alpha.powi(m1);
    let mut w = model.instance.tensor().apply_m1(&p.y).map_err(ModelError::from)?;
    for (wi, qi) in w.iter_mut().zip(model.instance.q()) {
        *wi += af * qi;
    }
    for ((&wi, &yi), &zi) in w.iter().zip(&p.y).zip(&p.z) {
        let zi = if zi { 1.0 } else { 0.0 };
        if wi < -tol || wi > 1.0 - zi + tol {
            return Ok(false);
        }
        if yi < -tol || yi > zi + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x = y / alpha`. The caller is responsible for verifying the result
/// against the instance.
pub fn recover_solution(p: &MipPoint) -> Result<Vec<f64>, MipError> {
    if p.alpha <= 0.0 {
        return Err(MipError::ZeroAlpha);
    }
    Ok(p.y.iter().map(|v| v / p.alpha).collect())
}

/// The a-priori range bound `((1 + ||A||_inf) / ||q||_inf)^{1/(m-1)}`:
/// every feasible point of the unbounded model satisfies `alpha <= bound`.
pub fn alpha_upper_bound(inst: &TcpInstance) -> Result<f64, MipError> {
    let qn = norm_inf(inst.q());
    if qn == 0.0 {
        return Err(MipError::ZeroQ);
    }
    let m1 = inst.order() as f64 - 1.0;
    Ok(((1.0 + inst.tensor().inf_norm()) / qn).powf(1.0 / m1))
}

/// Check a certificate against its system:
/// `0 <= A x^{m-1} + q <= tau e - u`, `0 <= x <= tau^{(m-2)/(1-m)} u`,
/// `tau >= 1`, plus the variant's u-domain, all within absolute `tol`.
pub fn check_certificate(
    inst: &TcpInstance,
    c: &FeasCertificate,
    tol: f64,
) -> Result<bool, MipError> {
    let n = inst.dim();
    if c.x.len() != n || c.u.len() != n {
        return Err(MipError::DimensionMismatch {
            expected: n,
            got: c.x.len().max(c.u.len()),
        });
    }
    if c.tau < 1.0 - tol {
        return Ok(false);
    }
    let m = inst.order() as f64;
    // tau >= 1 so powf is safe; the exponent is 0 at m = 2 and the factor 1.
    let x_factor = c.tau.powf((m - 2.0) / (1.0 - m));
    let w = inst.w(&c.x)?;
    for ((&wi, &xi), &ui) in w.iter().zip(&c.x).zip(&c.u) {
        if wi < -tol || wi > c.tau - ui + tol {
            return Ok(false);
        }
        if xi < -tol || xi > x_factor * ui + tol {
            return Ok(false);
        }
        let u_ok = match c.variant {
            CertVariant::Relaxed7 => ui >= -tol && ui <= c.tau + tol,
            CertVariant::Exact8 => ui.abs() <= tol || (ui - c.tau).abs() <= tol,
        };
        if !u_ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Build an exact certificate from a verified solution: take
/// `alpha = min(1, 1/(1 + ||x||_inf))`, `tau = 1/alpha^{m-1}`,
/// `u_i = tau` on the support of `x` and `0` off it. If an off-support slack
/// exceeds `tau`, shrink `alpha` (which grows `tau`) until the certificate
/// validates.
pub fn certificate_from_solution(
    inst: &TcpInstance,
    x: &[f64],
) -> Result<FeasCertificate, MipError> {
    if !inst.verify(x, 1e-6)? {
        return Err(MipError::NotASolution);
    }
    let m1 = inst.order() as f64 - 1.0;
    let mut alpha = (1.0 / (1.0 + norm_inf(x))).min(1.0);
    for _ in 0..128 {
        let tau = alpha.powf(-m1);
        let u: Vec<f64> = x.iter().map(|&v| if v > 0.0 { tau } else { 0.0 }).collect();
        let cert = FeasCertificate {
            tau,
            x: x.to_vec(),
            u,
            variant: CertVariant::Exact8,
        };
        if check_certificate(inst, &cert, 1e-8)? {
            return Ok(cert);
        }
        alpha /= 2.0;
    }
    Err(MipError::CertificateConstruction)
}
