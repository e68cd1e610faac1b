//! Problem instances `TCP(A, q)` and the residual / verification machinery,
//! the positive-scaling equivalence, and the complete closed-form theory for
//! diagonal tensors.
//!
//! A vector `x` solves `TCP(A, q)` when `x >= 0`, `w = A x^{m-1} + q >= 0`
//! and the complementarity gap `x^T w` vanishes.

use thiserror::Error;

use crate::tensor::{dot, norm2, Tensor, TensorError};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("q has length {got}, tensor dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("scale factor must be strictly positive, got {0}")]
    NonPositiveScale(f64),
    #[error("tensor is not diagonal")]
    NotDiagonal,
}

/// A tensor complementarity problem instance: the tensor `A` and the
/// constant vector `q`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TcpInstance {
    tensor: Tensor,
    q: Vec<f64>,
}

/// Joint residuals of a candidate point, computed from a single evaluation
/// of `w = A x^{m-1} + q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    /// `min_i x_i`; nonnegative at a solution.
    pub min_x: f64,
    /// `min_i w_i`; nonnegative at a solution.
    pub min_w: f64,
    /// The complementarity gap `x^T w`; zero at a solution.
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalStatus {
    /// Some index has `q_i < 0` with a non-positive diagonal entry; the
    /// instance has no solution at all.
    NoSolution,
    /// The closed form produces a solution, but uniqueness is not guaranteed
    /// (some diagonal entry is non-positive).
    HasSolution,
    /// All diagonal entries are positive: the closed form is the unique
    /// solution.
    UniqueSolution,
}

/// Outcome of the diagonal-tensor closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalVerdict {
    pub status: DiagonalStatus,
    /// Present iff status != NoSolution.
    pub witness: Option<Vec<f64>>,
    /// Zero-based index with `q_i < 0` and `a_{i..i} <= 0`; present iff
    /// status == NoSolution.
    pub blocking_index: Option<usize>,
}

impl TcpInstance {
    pub fn new(tensor: Tensor, q: Vec<f64>) -> Result<TcpInstance, ModelError> {
        if q.len() != tensor.dim() {
            return Err(ModelError::DimensionMismatch {
                expected: tensor.dim(),
                got: q.len(),
            });
        }
        Ok(TcpInstance { tensor, q })
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn order(&self) -> usize {
        self.tensor.order()
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    /// `A x^{m-1} + q`.
    pub fn w(&self, x: &[f64]) -> Result<Vec<f64>, ModelError> {
        let mut w = self.tensor.apply_m1(x)?;
        for (wi, qi) in w.iter_mut().zip(&self.q) {
            *wi += qi;
        }
        Ok(w)
    }

    pub fn residuals(&self, x: &[f64]) -> Result<Residuals, ModelError> {
        let w = self.w(x)?;
        Ok(Residuals {
            min_x: x.iter().copied().fold(f64::INFINITY, f64::min),
            min_w: w.iter().copied().fold(f64::INFINITY, f64::min),
            gap: dot(x, &w),
        })
    }

    /// Tolerance check of all three residuals. Thresholds are scaled by
    /// `1 + ||x|| * ||q||` so that large-magnitude candidates are not
    /// spuriously rejected: the raw residuals of a solution known to seven
    /// digits grow with the problem scale.
    pub fn verify(&self, x: &[f64], tol: f64) -> Result<bool, ModelError> {
        if tol <= 0.0 {
            return Err(ModelError::NonPositiveTolerance(tol));
        }
        let r = self.residuals(x)?;
        let scale = tol * (1.0 + norm2(x) * norm2(&self.q));
        Ok(r.min_x >= -scale && r.min_w >= -scale && r.gap.abs() <= scale)
    }

    /// `x = 0` solves the instance whenever `q >= 0` componentwise.
    pub fn trivial_check(&self) -> Option<Vec<f64>> {
        if self.q.iter().all(|&v| v >= 0.0) {
            Some(vec![0.0; self.dim()])
        } else {
            None
        }
    }

    /// Closed-form treatment of diagonal tensors: either a blocking index
    /// proves infeasibility, or the componentwise root
    /// `x_i = (-q_i / a_{i..i})^{1/(m-1)}` (zero where `q_i >= 0`) is a
    /// solution, unique when every diagonal entry is positive.
    pub fn diagonal_solve(&self) -> Result<DiagonalVerdict, ModelError> {
        if !self.tensor.is_diagonal() {
            return Err(ModelError::NotDiagonal);
        }
        let n = self.dim();
        let root_exp = 1.0 / (self.order() as f64 - 1.0);
        for i in 0..n {
            if self.q[i] < 0.0 && self.tensor.diagonal_entry(i) <= 0.0 {
                return Ok(DiagonalVerdict {
                    status: DiagonalStatus::NoSolution,
                    witness: None,
                    blocking_index: Some(i),
                });
            }
        }
        let mut witness = vec![0.0; n];
        let mut all_positive = true;
        for (i, slot) in witness.iter_mut().enumerate() {
            let a = self.tensor.diagonal_entry(i);
            all_positive &= a > 0.0;
            if self.q[i] < 0.0 {
                // base -q_i/a is strictly positive here by the blocking scan
                *slot = ((-self.q[i] / a).ln() * root_exp).exp();
            }
        }
        Ok(DiagonalVerdict {
            status: if all_positive {
                DiagonalStatus::UniqueSolution
            } else {
                DiagonalStatus::HasSolution
            },
            witness: Some(witness),
            blocking_index: None,
        })
    }

    /// The scaled instance `TCP(A, beta^{m-1} q)`; `x` solves `self` iff
    /// `beta * x` solves the result.
    pub fn scale(&self, beta: f64) -> Result<TcpInstance, ModelError> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(ModelError::NonPositiveScale(beta));
        }
        let factor = beta.powi(self.order() as i32 - 1);
        let q = self.q.iter().map(|v| factor * v).collect();
        Ok(TcpInstance {
            tensor: self.tensor.clone(),
            q,
        })
    }
}

/// Companion of [`TcpInstance::scale`]: maps a solution of the original
/// instance to a solution of the scaled one.
pub fn scale_solution(x: &[f64], beta: f64) -> Result<Vec<f64>, ModelError> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(ModelError::NonPositiveScale(beta));
    }
    Ok(x.iter().map(|v| beta * v).collect())
}
