//! Exact desk-scale solver: branch over the binary support vector of the
//! mixed-integer model, solve each support's square polynomial face system
//! by damped multistart Newton, and keep every distinct verified solution.
//!
//! For a fixed support `I`, the model constraints force `x = 0` off `I` and
//! `(A x^{m-1} + q)_I = 0` on it; the remaining components only need the
//! sign checks `x_I >= 0` and `(A x^{m-1} + q)_{I^c} >= 0`. Exhausting all
//! `2^n` supports therefore enumerates every candidate solution structure,
//! and a no-solution claim is certified whenever each face system is proven
//! infeasible by analytic sign arguments rather than by failed numerics.

mod newton;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::mip::{alpha_upper_bound, MipPoint};
use crate::model::{DiagonalStatus, Residuals, TcpInstance};
use crate::tensor::norm_inf;
use newton::{damped_newton, NewtonParams};

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("x does not verify as a TCP solution")]
    NotVerified,
    #[error("alpha is unbounded on the scaling ray (q = 0 and no finite range given)")]
    Unbounded,
}

/// A binary support vector: the set of indices where a solution is allowed
/// to be positive (the `z` of the mixed-integer model).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    bits: Vec<bool>,
}

impl Pattern {
    pub fn new(bits: Vec<bool>) -> Pattern {
        Pattern { bits }
    }

    pub fn from_mask(mask: u64, n: usize) -> Pattern {
        Pattern {
            bits: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    /// Support of a nonnegative vector: indices with `x_i > 0`.
    pub fn of_solution(x: &[f64]) -> Pattern {
        Pattern {
            bits: x.iter().map(|&v| v > 0.0).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_set(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Indices in the support, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Acceptance tolerance for residuals and inequality checks.
    pub tol: f64,
    pub newton_max_iter: usize,
    /// Total Newton starts per face system (deterministic starts first,
    /// seeded uniform draws after).
    pub multistart: usize,
    pub seed: u64,
    /// Cap on the number of supports explored.
    pub max_patterns: usize,
    /// Optional alpha upper bounds for range-sliced reporting; does not
    /// affect which solutions exist.
    pub alpha_slices: Option<Vec<f64>>,
    /// Dimension below which all 2^n supports are visited.
    pub enumerate_threshold: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-8,
            newton_max_iter: 100,
            multistart: 8,
            seed: 0,
            max_patterns: 1 << 20,
            alpha_slices: None,
            enumerate_threshold: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    SolutionsFound,
    /// Every support was exhausted and each face system proven infeasible
    /// by a certified sub-check.
    NoSolutionCertified,
    /// The search found nothing but could not certify infeasibility.
    NoSolutionFoundNumerically,
    /// Infeasibility certified analytically without enumeration (diagonal
    /// tensor with a blocking index).
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct FoundSolution {
    pub x: Vec<f64>,
    pub residuals: Residuals,
    pub pattern: Pattern,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub solutions: Vec<FoundSolution>,
    pub patterns_explored: usize,
    pub notes: String,
}

/// Distance at which two solutions are considered the same.
const DEDUP_TOL: f64 = 1e-6;

fn close_inf(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Zero-padded extension of a support sub-vector.
fn pad(n: usize, support: &[usize], x_support: &[f64]) -> Vec<f64> {
    let mut full = vec![0.0; n];
    for (slot, &v) in support.iter().zip(x_support) {
        full[*slot] = v;
    }
    full
}

/// Face system of a support: values `(A x^{m-1} + q)_I` and the analytic
/// Jacobian restricted to the support columns, both evaluated at the
/// zero-padded extension of `x_support`.
pub fn face_system(
    inst: &TcpInstance,
    p: &Pattern,
    x_support: &[f64],
) -> (Vec<f64>, Vec<Vec<f64>>) {
    let support = p.support();
    assert_eq!(
        support.len(),
        x_support.len(),
        "x_support must be indexed by the support"
    );
    let full = pad(inst.dim(), &support, x_support);
    let w = inst.w(&full).expect("padded vector has instance dimension");
    let jac_full = inst
        .tensor()
        .apply_m1_jacobian(&full)
        .expect("padded vector has instance dimension");
    let values = support.iter().map(|&i| w[i]).collect();
    let jacobian = support
        .iter()
        .map(|&i| support.iter().map(|&j| jac_full[i][j]).collect())
        .collect();
    (values, jacobian)
}

fn face_values(inst: &TcpInstance, support: &[usize], x_support: &[f64]) -> Vec<f64> {
    let full = pad(inst.dim(), support, x_support);
    let w = inst.w(&full).expect("padded vector has instance dimension");
    support.iter().map(|&i| w[i]).collect()
}

/// Analytic infeasibility certificate for one support: restricted to
/// `x_{I^c} = 0, x_I >= 0`, a row polynomial whose monomial coefficients are
/// all non-positive with a negative constant stays strictly negative, and
/// one with all non-negative coefficients and a positive constant stays
/// strictly positive. Either kills an equality row; the negative case also
/// kills an off-support row that must be nonnegative.
fn sign_certificate(inst: &TcpInstance, p: &Pattern) -> bool {
    let n = inst.dim();
    let k = inst.order() - 1;
    let entries = inst.tensor().entries();
    let slice = entries.len() / n;
    let mut tuple = vec![0usize; k];
    for row in 0..n {
        // sum coefficients per monomial so sign cancellations are honored
        let mut coeffs: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for flat in 0..slice {
            let a = entries[row * slice + flat];
            if a == 0.0 {
                continue;
            }
            let mut rest = flat;
            for slot in tuple.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            if tuple.iter().any(|&i| !p.is_set(i)) {
                continue; // monomial vanishes on this face
            }
            let mut key = tuple.clone();
            key.sort_unstable();
            *coeffs.entry(key).or_insert(0.0) += a;
        }
        let q_row = inst.q()[row];
        let all_nonpos = coeffs.values().all(|&c| c <= 0.0);
        let all_nonneg = coeffs.values().all(|&c| c >= 0.0);
        let never_zero_negative = all_nonpos && q_row < 0.0;
        let never_zero_positive = all_nonneg && q_row > 0.0;
        if p.is_set(row) {
            if never_zero_negative || never_zero_positive {
                return true; // equality row cannot vanish on the orthant
            }
        } else if never_zero_negative {
            return true; // nonnegativity row is violated everywhere
        }
    }
    false
}

fn newton_starts(
    inst: &TcpInstance,
    support: &[usize],
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    let m1 = inst.order() as f64 - 1.0;
    let a_inf = inst.tensor().inf_norm();
    let base: Vec<f64> = support
        .iter()
        .map(|&i| (inst.q()[i].abs() / (1.0 + a_inf)).powf(1.0 / m1))
        .collect();
    let bound = 1.0 + base.iter().copied().fold(0.0, f64::max);
    let mut starts = vec![base, vec![1.0; support.len()]];
    starts.truncate(cfg.multistart.max(1));
    while starts.len() < cfg.multistart {
        starts.push(
            support
                .iter()
                .map(|_| bound - rng.random_range(0.0..bound))
                .collect(),
        );
    }
    starts
}

/// All distinct verified solutions reachable on one face, in multistart
/// order. The boolean is true when the face was certified infeasible.
fn pattern_roots(inst: &TcpInstance, p: &Pattern, cfg: &SolverConfig) -> (Vec<Vec<f64>>, bool) {
    let n = inst.dim();
    let support = p.support();
    if support.is_empty() {
        return if inst.q().iter().all(|&v| v >= 0.0) {
            (vec![vec![0.0; n]], false)
        } else {
            (Vec::new(), true) // q has a negative entry: certified
        };
    }
    if sign_certificate(inst, p) {
        return (Vec::new(), true);
    }

    let mask = support.iter().fold(0u64, |acc, &i| acc | 1 << i);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(mask);
    let scale = 1.0 + norm_inf(inst.q()) + inst.tensor().inf_norm();
    let params = NewtonParams {
        max_iter: cfg.newton_max_iter,
        stop_tol: (1e-14 * scale).min(cfg.tol),
        divergence: 1e12,
    };

    let mut roots: Vec<Vec<f64>> = Vec::new();
    for start in newton_starts(inst, &support, cfg, &mut rng) {
        let result = damped_newton(
            |xs| face_values(inst, &support, xs),
            |xs| face_system(inst, p, xs).1,
            &start,
            &params,
        );
        if result.residual_inf > cfg.tol {
            continue;
        }
        if result.x.iter().any(|&v| v < -cfg.tol) {
            continue;
        }
        let clamped: Vec<f64> = result.x.iter().map(|&v| v.max(0.0)).collect();
        let full = pad(n, &support, &clamped);
        let w = inst.w(&full).expect("dimension");
        if (0..n).any(|i| !p.is_set(i) && w[i] < -cfg.tol) {
            continue;
        }
        if !inst.verify(&full, cfg.tol).unwrap_or(false) {
            continue;
        }
        if !roots.iter().any(|r| close_inf(r, &full, DEDUP_TOL)) {
            roots.push(full);
        }
    }
    (roots, false)
}

/// First verified solution on the face of `p`, if any: `x` vanishes off the
/// support, the face equalities hold within `cfg.tol`, and the off-support
/// slacks are nonnegative within `cfg.tol`.
pub fn solve_pattern(inst: &TcpInstance, p: &Pattern, cfg: &SolverConfig) -> Option<Vec<f64>> {
    pattern_roots(inst, p, cfg).0.into_iter().next()
}

/// Next bit mask with the same popcount (Gosper).
fn next_same_popcount(v: u64) -> Option<u64> {
    let c = v & v.wrapping_neg();
    let r = v.checked_add(c)?;
    Some((((r ^ v) >> 2) / c) | r)
}

/// Support masks in increasing support-size order, capped at `cap`.
/// The boolean reports whether all 2^n masks are included.
fn pattern_masks(n: usize, cap: usize, cfg: &SolverConfig) -> (Vec<u64>, bool) {
    let total = 1u128 << n;
    if n < cfg.enumerate_threshold && total <= 1 << 22 {
        let mut masks: Vec<u64> = (0..total as u64).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let complete = masks.len() <= cap;
        masks.truncate(cap);
        return (masks, complete);
    }
    let mut masks = Vec::new();
    'outer: for size in 0..=n {
        if size == 0 {
            masks.push(0);
            if masks.len() >= cap {
                break;
            }
            continue;
        }
        let mut m = (1u64 << size) - 1;
        loop {
            if n < 64 && m >= 1u64 << n {
                break;
            }
            masks.push(m);
            if masks.len() >= cap {
                break 'outer;
            }
            match next_same_popcount(m) {
                Some(next) => m = next,
                None => break,
            }
        }
    }
    let complete = (masks.len() as u128) == total;
    (masks, complete)
}

/// Solve `TCP(A, q)` by support enumeration. Every returned solution passes
/// `verify` at `cfg.tol`; distinct solutions are deduplicated at inf-distance
/// 1e-6 and reported in (support size, lexicographic) order. The result is
/// deterministic for a fixed seed.
pub fn solve(inst: &TcpInstance, cfg: &SolverConfig) -> SolveOutcome {
    let n = inst.dim();
    let mut notes: Vec<String> = Vec::new();
    let mut solutions: Vec<FoundSolution> = Vec::new();

    let push = |solutions: &mut Vec<FoundSolution>, x: Vec<f64>| {
        if !solutions.iter().any(|s| close_inf(&s.x, &x, DEDUP_TOL)) {
            let residuals = inst.residuals(&x).expect("dimension");
            let pattern = Pattern::of_solution(&x);
            solutions.push(FoundSolution {
                x,
                residuals,
                pattern,
            });
        }
    };

    if let Some(zero) = inst.trivial_check() {
        notes.push("q >= 0: trivial solution".into());
        push(&mut solutions, zero);
    }

    if inst.tensor().is_diagonal() {
        let verdict = inst.diagonal_solve().expect("tensor is diagonal");
        match verdict.status {
            DiagonalStatus::NoSolution => {
                let i = verdict.blocking_index.unwrap();
                let analytic = format!(
                    "diagonal tensor: q[{i}] < 0 with a[{i}..{i}] <= 0 blocks feasibility"
                );
                if n >= cfg.enumerate_threshold {
                    // too large to exhaust: certify analytically instead
                    return SolveOutcome {
                        status: SolveStatus::Infeasible,
                        solutions: Vec::new(),
                        patterns_explored: 0,
                        notes: analytic,
                    };
                }
                notes.push(analytic);
            }
            DiagonalStatus::UniqueSolution => {
                push(&mut solutions, verdict.witness.unwrap());
                finalize(&mut solutions);
                return SolveOutcome {
                    status: SolveStatus::SolutionsFound,
                    solutions,
                    patterns_explored: 0,
                    notes: "diagonal positive definite: closed-form solution is unique".into(),
                };
            }
            DiagonalStatus::HasSolution => {
                notes.push("diagonal tensor: closed-form solution injected".into());
                push(&mut solutions, verdict.witness.unwrap());
            }
        }
    }

    if n > 63 {
        notes.push("dimension exceeds support-search range".into());
        let status = if solutions.is_empty() {
            SolveStatus::NoSolutionFoundNumerically
        } else {
            SolveStatus::SolutionsFound
        };
        finalize(&mut solutions);
        return SolveOutcome {
            status,
            solutions,
            patterns_explored: 0,
            notes: notes.join("; "),
        };
    }

    let (masks, complete) = pattern_masks(n, cfg.max_patterns, cfg);
    let patterns_explored = masks.len();
    if !complete {
        notes.push(format!("support search capped at {} patterns", masks.len()));
    }

    // independent work items; per-pattern RNG streams keep the outcome
    // schedule-independent
    let results: Vec<(Vec<Vec<f64>>, bool)> = masks
        .par_iter()
        .map(|&mask| pattern_roots(inst, &Pattern::from_mask(mask, n), cfg))
        .collect();

    let all_certified = results.iter().all(|(_, certified)| *certified);
    for (roots, _) in results {
        for x in roots {
            push(&mut solutions, x);
        }
    }

    let status = if !solutions.is_empty() {
        SolveStatus::SolutionsFound
    } else if complete && all_certified {
        notes.push("all face systems certified infeasible".into());
        SolveStatus::NoSolutionCertified
    } else {
        SolveStatus::NoSolutionFoundNumerically
    };
    finalize(&mut solutions);
    SolveOutcome {
        status,
        solutions,
        patterns_explored,
        notes: notes.join("; "),
    }
}

fn finalize(solutions: &mut [FoundSolution]) {
    solutions.sort_by(|a, b| {
        (a.pattern.count(), &a.x)
            .partial_cmp(&(b.pattern.count(), &b.x))
            .expect("solution components are finite")
    });
}

/// Lift a verified solution onto the scaling ray of the mixed-integer model:
/// `z` marks the support, `y = alpha x`, and `alpha` is the largest value
/// keeping `(alpha, y, z)` feasible with `alpha <= alpha_hi`. An infinite
/// `alpha_hi` falls back to the a-priori range bound.
pub fn mip_point_of(inst: &TcpInstance, x: &[f64], alpha_hi: f64) -> Result<MipPoint, SolverError> {
    if !inst.verify(x, 1e-6).map_err(|_| SolverError::NotVerified)? {
        return Err(SolverError::NotVerified);
    }
    let m1 = inst.order() as f64 - 1.0;
    let w = inst.w(x).expect("dimension checked by verify");
    let mut alpha = if alpha_hi.is_finite() {
        alpha_hi
    } else {
        alpha_upper_bound(inst).map_err(|_| SolverError::Unbounded)?
    };
    for i in 0..inst.dim() {
        if x[i] > 0.0 {
            // y_i = alpha x_i <= z_i = 1
            alpha = alpha.min(1.0 / x[i]);
        } else if w[i] > 0.0 {
            // off-support row: alpha^{m-1} w_i <= 1 - z_i = 1
            alpha = alpha.min(w[i].powf(-1.0 / m1));
        }
    }
    let y = x.iter().map(|v| alpha * v).collect();
    let z = x.iter().map(|&v| v > 0.0).collect();
    Ok(MipPoint { alpha, y, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{example1, example2, example3};
    use crate::mip::{build_mip, check_mip_feasible};

    #[test]
    fn face_system_example1() {
        let inst = example1();
        let p = Pattern::new(vec![true, true]);
        let (v, j) = face_system(&inst, &p, &[1.0, 1.0]);
        assert_eq!(v, vec![2.0, 1.0]);
        assert_eq!(j, vec![vec![2.0, -2.0], vec![-4.0, 2.0]]);
    }

    #[test]
    fn face_system_empty_support() {
        let inst = example1();
        let p = Pattern::new(vec![false, false]);
        let (v, j) = face_system(&inst, &p, &[]);
        assert!(v.is_empty());
        assert!(j.is_empty());
    }

    #[test]
    fn face_system_diagonal_scalar() {
        let t = crate::tensor::Tensor::from_coo(3, 2, &[([0, 0, 0], 1.0), ([1, 1, 1], 5.0)]).unwrap();
        let inst = TcpInstance::new(t, vec![-4.0, 1.0]).unwrap();
        let p = Pattern::new(vec![true, false]);
        let (v, j) = face_system(&inst, &p, &[2.0]);
        assert!(v[0].abs() < 1e-14);
        assert_eq!(j, vec![vec![4.0]]);
    }

    #[test]
    fn solve_pattern_example1() {
        let cfg = SolverConfig::default();
        let inst = example1();
        let x = solve_pattern(&inst, &Pattern::new(vec![true, true]), &cfg).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-9);
        assert!((x[1] - 6.0_f64.sqrt()).abs() < 1e-9);
        let zero = solve_pattern(&inst, &Pattern::new(vec![false, false]), &cfg).unwrap();
        assert_eq!(zero, vec![0.0, 0.0]);
        assert!(solve_pattern(&inst, &Pattern::new(vec![true, false]), &cfg).is_none());
    }

    #[test]
    fn solve_pattern_example3_single_support() {
        let cfg = SolverConfig::default();
        let inst = example3();
        let x = solve_pattern(&inst, &Pattern::new(vec![false, true]), &cfg).unwrap();
        assert!((x[1] - 1.0).abs() < 1e-9);
        assert_eq!(x[0], 0.0);
    }

    #[test]
    fn solve_example1_two_solutions() {
        let out = solve(&example1(), &SolverConfig::default());
        assert_eq!(out.status, SolveStatus::SolutionsFound);
        assert_eq!(out.solutions.len(), 2);
        assert_eq!(out.solutions[0].x, vec![0.0, 0.0]);
        assert!((out.solutions[1].x[0] - 2.0).abs() < 1e-7);
        assert!((out.solutions[1].x[1] - 6.0_f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn solve_example2_certified_no_solution() {
        let out = solve(&example2(), &SolverConfig::default());
        assert_eq!(out.status, SolveStatus::NoSolutionCertified);
        assert_eq!(out.patterns_explored, 4);
        assert!(out.solutions.is_empty());
    }

    #[test]
    fn solve_example3_two_solutions() {
        let out = solve(&example3(), &SolverConfig::default());
        assert_eq!(out.status, SolveStatus::SolutionsFound);
        assert_eq!(out.solutions.len(), 2);
        assert!(close_inf(&out.solutions[0].x, &[0.0, 1.0], 1e-7));
        assert!(close_inf(&out.solutions[1].x, &[1.0, 1.0], 1e-7));
    }

    #[test]
    fn sign_certificate_example2_all_patterns() {
        let inst = example2();
        for mask in 1..4u64 {
            assert!(
                sign_certificate(&inst, &Pattern::from_mask(mask, 2)),
                "pattern {mask:b} should be certified"
            );
        }
    }

    #[test]
    fn mip_point_of_table_rows() {
        let inst = example1();
        let p = mip_point_of(&inst, &[2.0, 6.0_f64.sqrt()], 0.2).unwrap();
        assert!((p.alpha - 0.2).abs() < 1e-12);
        assert!((p.y[0] - 0.4).abs() < 1e-12);
        assert!((p.y[1] - 0.4898979485566356).abs() < 1e-9);
        assert_eq!(p.z, vec![true, true]);

        let p = mip_point_of(&inst, &[0.0, 0.0], 0.6).unwrap();
        assert!((p.alpha - 0.6).abs() < 1e-12);
        assert_eq!(p.y, vec![0.0, 0.0]);
        assert_eq!(p.z, vec![false, false]);

        let inst3 = example3();
        let p = mip_point_of(&inst3, &[0.0, 1.0], 0.8).unwrap();
        assert!((p.alpha - 0.8).abs() < 1e-12);
        assert!(close_inf(&p.y, &[0.0, 0.8], 1e-12));
        assert_eq!(p.z, vec![false, true]);
    }

    #[test]
    fn mip_point_of_unbounded_range_uses_apriori_bound() {
        let inst = example1();
        let p = mip_point_of(&inst, &[0.0, 0.0], f64::INFINITY).unwrap();
        assert!((p.alpha - 0.5_f64.sqrt()).abs() < 1e-12);
        let model = build_mip(&inst, f64::INFINITY).unwrap();
        assert!(check_mip_feasible(&model, &p, 1e-9).unwrap());
    }

    #[test]
    fn mip_point_of_rejects_non_solution() {
        let inst = example1();
        assert_eq!(
            mip_point_of(&inst, &[1.0, 1.0], 0.5),
            Err(SolverError::NotVerified)
        );
    }

    #[test]
    fn pattern_masks_order_and_cap() {
        let cfg = SolverConfig::default();
        let (masks, complete) = pattern_masks(3, 1 << 20, &cfg);
        assert!(complete);
        assert_eq!(masks.len(), 8);
        let sizes: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sizes, sorted);

        let (capped, complete) = pattern_masks(3, 5, &cfg);
        assert!(!complete);
        assert_eq!(capped.len(), 5);

        // sized enumeration path (n >= threshold)
        let tight = SolverConfig {
            enumerate_threshold: 2,
            ..SolverConfig::default()
        };
        let (gosper, complete) = pattern_masks(3, 1 << 20, &tight);
        assert!(complete);
        assert_eq!(gosper.len(), 8);
        let mut sorted = gosper.clone();
        sorted.sort_by_key(|&m| (m.count_ones(), m));
        assert_eq!(gosper, sorted);
    }

    #[test]
    fn determinism_across_runs() {
        let inst = example3();
        let cfg = SolverConfig {
            seed: 42,
            ..SolverConfig::default()
        };
        let a = solve(&inst, &cfg);
        let b = solve(&inst, &cfg);
        assert_eq!(a.solutions.len(), b.solutions.len());
        for (sa, sb) in a.solutions.iter().zip(&b.solutions) {
            assert_eq!(sa.x, sb.x);
        }
    }
}
