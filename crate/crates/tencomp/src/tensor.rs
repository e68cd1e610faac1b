//! Dense order-`m` dimension-`n` real tensors and the small set of
//! tensor-vector operations the rest of the crate is built on.
//!
//! Vectors are plain `Vec<f64>` / `&[f64]`; all in-process indices are
//! zero-based. File formats (see [`crate::io`]) are one-based.

use thiserror::Error;

/// Hard cap on dense storage; instances past this are out of scope.
const MAX_ENTRIES: usize = 1 << 27;

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("vector has length {got}, tensor dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid tensor shape: {0}")]
    InvalidShape(String),
    #[error("coordinate {index:?} out of range for dimension {dim} (entry {position})")]
    IndexOutOfRange {
        index: Vec<usize>,
        dim: usize,
        position: usize,
    },
}

/// Dense order-`m`, dimension-`n` real tensor, stored row-major
/// (first index slowest). Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

impl Tensor {
    pub fn zeros(order: usize, dim: usize) -> Result<Tensor, TensorError> {
        if order < 2 {
            return Err(TensorError::InvalidShape(format!(
                "order must be at least 2, got {order}"
            )));
        }
        if dim < 1 {
            return Err(TensorError::InvalidShape("dimension must be at least 1".into()));
        }
        let mut len: usize = 1;
        for _ in 0..order {
            len = len
                .checked_mul(dim)
                .filter(|&l| l <= MAX_ENTRIES)
                .ok_or_else(|| {
                    TensorError::InvalidShape(format!("{dim}^{order} entries exceed dense storage cap"))
                })?;
        }
        Ok(Tensor {
            order,
            dim,
            entries: vec![0.0; len],
        })
    }

    /// Dense construction from a flat row-major entry array of length `dim^order`.
    pub fn from_entries(order: usize, dim: usize, entries: Vec<f64>) -> Result<Tensor, TensorError> {
        let t = Tensor::zeros(order, dim)?;
        if entries.len() != t.entries.len() {
            return Err(TensorError::InvalidShape(format!(
                "expected {} entries, got {}",
                t.entries.len(),
                entries.len()
            )));
        }
        Ok(Tensor { entries, ..t })
    }

    /// Sparse coordinate construction; indices are zero-based and duplicate
    /// coordinates sum. Coordinates absent from the list stay zero.
    pub fn from_coo<I: AsRef<[usize]>>(
        order: usize,
        dim: usize,
        items: &[(I, f64)],
    ) -> Result<Tensor, TensorError> {
        let mut t = Tensor::zeros(order, dim)?;
        for (position, (idx, value)) in items.iter().enumerate() {
            let idx = idx.as_ref();
            if idx.len() != order || idx.iter().any(|&i| i >= dim) {
                return Err(TensorError::IndexOutOfRange {
                    index: idx.to_vec(),
                    dim,
                    position,
                });
            }
            let flat = t.flat_index(idx);
            t.entries[flat] += value;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Entry at a zero-based index tuple. Panics if the tuple has the wrong
    /// length or an index is out of range.
    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.order, "index tuple length != order");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        self.entries[self.flat_index(idx)]
    }

    pub(crate) fn add_at(&mut self, idx: &[usize], value: f64) {
        let flat = self.flat_index(idx);
        self.entries[flat] += value;
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), TensorError> {
        if x.len() != self.dim {
            return Err(TensorError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// The degree-(m-1) homogeneous map `x -> A x^{m-1}`, with components
    /// `(A x^{m-1})_i = sum_{i2..im} a_{i i2..im} x_{i2} .. x_{im}`.
    ///
    /// Computed by contracting the trailing mode with `x` a total of `m-1`
    /// times, which keeps the evaluation exact in the homogeneity sense:
    /// scaling `x` by `t` scales the result by exactly `t^{m-1}` up to
    /// floating-point rounding.
    pub fn apply_m1(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        self.check_dim(x)?;
        let mut cur = self.entries.clone();
        for _ in 0..self.order - 1 {
            cur = cur.chunks(self.dim).map(|c| dot(c, x)).collect();
        }
        Ok(cur)
    }

    /// The degree-m homogeneous form `A x^m = x^T (A x^{m-1})`.
    pub fn form(&self, x: &[f64]) -> Result<f64, TensorError> {
        let w = self.apply_m1(x)?;
        Ok(dot(x, &w))
    }

    /// Maximum over slices `i` of the sum of absolute entries of slice `i`;
    /// reduces to the matrix infinity norm at m = 2.
    pub fn inf_norm(&self) -> f64 {
        let slice = self.entries.len() / self.dim;
        (0..self.dim)
            .map(|i| self.entries[i * slice..(i + 1) * slice].iter().map(|v| v.abs()).sum())
            .fold(0.0, f64::max)
    }

    /// True iff every entry is invariant under any permutation of its index
    /// tuple. It suffices to compare each entry with its sorted-tuple
    /// representative.
    pub fn is_symmetric(&self) -> bool {
        let mut idx = vec![0usize; self.order];
        let mut sorted = vec![0usize; self.order];
        for flat in 0..self.entries.len() {
            decode(flat, self.dim, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            if self.entries[flat] != self.entries[self.flat_index(&sorted)] {
                return false;
            }
        }
        true
    }

    /// True iff every entry off the main diagonal (all indices equal) is zero.
    pub fn is_diagonal(&self) -> bool {
        let mut idx = vec![0usize; self.order];
        for flat in 0..self.entries.len() {
            decode(flat, self.dim, &mut idx);
            let diagonal = idx.iter().all(|&i| i == idx[0]);
            if !diagonal && self.entries[flat] != 0.0 {
                return false;
            }
        }
        true
    }

    /// Diagonal entry `a_{i..i}`.
    pub fn diagonal_entry(&self, i: usize) -> f64 {
        assert!(i < self.dim);
        let idx = vec![i; self.order];
        self.entries[self.flat_index(&idx)]
    }

    /// Jacobian of `x -> A x^{m-1}` as a list of rows:
    /// `J[i][j] = d(A x^{m-1})_i / dx_j`, summed analytically over each of the
    /// m-1 trailing index positions.
    pub fn apply_m1_jacobian(&self, x: &[f64]) -> Result<Vec<Vec<f64>>, TensorError> {
        self.check_dim(x)?;
        let n = self.dim;
        let k = self.order - 1;
        let slice = self.entries.len() / n;
        let mut jac = vec![vec![0.0; n]; n];
        let mut tuple = vec![0usize; k];
        let mut prefix = vec![1.0; k + 1];
        let mut suffix = vec![1.0; k + 1];
        for (row, jac_row) in jac.iter_mut().enumerate() {
            let base = row * slice;
            for flat in 0..slice {
                let a = self.entries[base + flat];
                if a == 0.0 {
                    continue;
                }
                decode(flat, n, &mut tuple);
                // prefix[p] = x[t_0]..x[t_{p-1}], suffix[p] = x[t_p]..x[t_{k-1}]
                for p in 0..k {
                    prefix[p + 1] = prefix[p] * x[tuple[p]];
                }
                for p in (0..k).rev() {
                    suffix[p] = suffix[p + 1] * x[tuple[p]];
                }
                for p in 0..k {
                    jac_row[tuple[p]] += a * prefix[p] * suffix[p + 1];
                }
            }
        }
        Ok(jac)
    }
}

/// Decode a flat row-major index into digits (last index fastest).
fn decode(mut flat: usize, dim: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn norm_inf(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example1_tensor() -> Tensor {
        Tensor::from_coo(
            3,
            2,
            &[
                ([0, 0, 0], 1.0),
                ([0, 1, 1], -1.0),
                ([1, 0, 0], -2.0),
                ([1, 1, 1], 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn apply_m1_example1() {
        let a = example1_tensor();
        let x = [2.0, 6.0_f64.sqrt()];
        let w = a.apply_m1(&x).unwrap();
        assert!((w[0] - -2.0).abs() < 1e-12);
        assert!((w[1] - -2.0).abs() < 1e-12);
    }

    #[test]
    fn apply_m1_zero_vector() {
        let a = example1_tensor();
        let w = a.apply_m1(&[0.0, 0.0]).unwrap();
        assert_eq!(w, vec![0.0, 0.0]);
    }

    #[test]
    fn apply_m1_diagonal() {
        let a = Tensor::from_coo(3, 2, &[([0, 0, 0], 1.0), ([1, 1, 1], 1.0)]).unwrap();
        let w = a.apply_m1(&[2.0, 3.0]).unwrap();
        assert_eq!(w, vec![4.0, 9.0]);
    }

    #[test]
    fn apply_m1_dim_one() {
        // regression: dim 1 must still contract m-1 times
        let a = Tensor::from_coo(3, 1, &[([0, 0, 0], 2.0)]).unwrap();
        let w = a.apply_m1(&[3.0]).unwrap();
        assert_eq!(w, vec![18.0]);
        assert_eq!(a.form(&[3.0]).unwrap(), 54.0);
    }

    #[test]
    fn apply_m1_dimension_mismatch() {
        let a = example1_tensor();
        assert!(matches!(
            a.apply_m1(&[1.0]),
            Err(TensorError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn form_example1() {
        let a = example1_tensor();
        let x = [2.0, 6.0_f64.sqrt()];
        let f = a.form(&x).unwrap();
        assert!((f - (2.0 * -2.0 + 6.0_f64.sqrt() * -2.0)).abs() < 1e-12);
        assert!((f - -8.898979485566356).abs() < 1e-9);
        assert_eq!(a.form(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn form_identity_order4() {
        let a = Tensor::from_coo(4, 2, &[([0; 4], 1.0), ([1; 4], 1.0)]).unwrap();
        let s = 0.5_f64.sqrt();
        assert!((a.form(&[s, s]).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn inf_norm_cases() {
        assert_eq!(example1_tensor().inf_norm(), 3.0);
        assert_eq!(Tensor::zeros(3, 2).unwrap().inf_norm(), 0.0);
        let d = Tensor::from_coo(3, 2, &[([0, 0, 0], 1.0), ([1, 1, 1], 5.0)]).unwrap();
        assert_eq!(d.inf_norm(), 5.0);
    }

    #[test]
    fn symmetry_and_diagonality() {
        let a = example1_tensor();
        assert!(!a.is_symmetric()); // a122 = -1 but a212 = 0
        assert!(!a.is_diagonal());
        let d = Tensor::from_coo(3, 2, &[([0, 0, 0], 1.0), ([1, 1, 1], -4.0)]).unwrap();
        assert!(d.is_diagonal());
        assert!(d.is_symmetric());
    }

    #[test]
    fn coo_duplicates_sum() {
        let a = Tensor::from_coo(3, 2, &[([0, 0, 0], 0.5), ([0, 0, 0], 0.5)]).unwrap();
        assert_eq!(a.get(&[0, 0, 0]), 1.0);
    }

    #[test]
    fn coo_index_out_of_range() {
        let r = Tensor::from_coo(3, 2, &[([0, 2, 0], 1.0)]);
        assert!(matches!(r, Err(TensorError::IndexOutOfRange { position: 0, .. })));
    }

    #[test]
    fn jacobian_example1() {
        // w1 = x1^2 - x2^2 + ..., w2 = -2 x1^2 + x2^2 + ...
        let a = example1_tensor();
        let j = a.apply_m1_jacobian(&[1.0, 1.0]).unwrap();
        assert_eq!(j[0], vec![2.0, -2.0]);
        assert_eq!(j[1], vec![-4.0, 2.0]);
    }
}
