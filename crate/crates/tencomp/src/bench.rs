//! Built-in example instances and the range-sliced benchmark reports.
//!
//! A report solves an instance once and then, for each alpha range
//! `[0, hi]`, lifts the best solution onto the scaling ray of the
//! mixed-integer model: the row shows the largest feasible `alpha`, the
//! lifted point `(y, z)` and the recovered solution. Positive scaling is an
//! exact bijection on solutions, so slicing the range never changes which
//! solutions exist; it only changes which lift is reported.

use crate::mip::{build_mip, check_mip_feasible, MipPoint};
use crate::model::TcpInstance;
use crate::solver::{mip_point_of, solve, SolveOutcome, SolverConfig};
use crate::tensor::Tensor;

/// Order 3, dimension 2, `q = (2, 2)`: two solutions, the trivial one and
/// `(2, sqrt 6)`.
pub fn example1() -> TcpInstance {
    let t = Tensor::from_coo(
        3,
        2,
        &[
            ([0, 0, 0], 1.0),
            ([0, 1, 1], -1.0),
            ([1, 0, 0], -2.0),
            ([1, 1, 1], 1.0),
        ],
    )
    .unwrap();
    TcpInstance::new(t, vec![2.0, 2.0]).unwrap()
}

/// Order 3, dimension 2, `q = (-2, -3)`: no solution (the first slack is
/// `-2 x2^2 - 2 < 0` everywhere).
pub fn example2() -> TcpInstance {
    let t = Tensor::from_coo(3, 2, &[([0, 1, 1], -2.0), ([1, 0, 0], -1.0)]).unwrap();
    TcpInstance::new(t, vec![-2.0, -3.0]).unwrap()
}

/// Order 4, dimension 2, `q = (0, -1)`: two solutions `(0, 1)` and `(1, 1)`.
pub fn example3() -> TcpInstance {
    let t = Tensor::from_coo(
        4,
        2,
        &[
            ([0, 0, 0, 0], 1.0),
            ([0, 0, 0, 1], -2.0),
            ([0, 0, 1, 1], 1.0),
            ([1, 1, 1, 1], 1.0),
        ],
    )
    .unwrap();
    TcpInstance::new(t, vec![0.0, -1.0]).unwrap()
}

pub fn paper_examples() -> Vec<(&'static str, TcpInstance)> {
    vec![
        ("example1", example1()),
        ("example2", example2()),
        ("example3", example3()),
    ]
}

/// Union of the alpha ranges used across the reference tables.
pub fn default_slices() -> Vec<f64> {
    vec![f64::INFINITY, 0.8, 0.6, 0.4, 0.2, 0.1]
}

/// One alpha-range row of a report.
#[derive(Debug, Clone)]
pub struct RangeRow {
    /// Upper bound of the range (infinite for the unbounded row).
    pub alpha_hi: f64,
    pub point: MipPoint,
    /// Solution recovered from the point, absent for no-solution rows.
    pub recovered: Option<Vec<f64>>,
    /// Feasibility of the point at tolerance 1e-7.
    pub feasible: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub outcome: SolveOutcome,
    pub rows: Vec<RangeRow>,
}

/// Lift every found solution to each alpha range and keep, per range, the
/// point with the largest alpha; ties go to the larger support and then to
/// the lexicographically smaller solution. With no solutions the row is the
/// canonical feasible point `(0, 0, 0)`.
pub fn run_report(
    name: &str,
    inst: &TcpInstance,
    slices: &[f64],
    cfg: &SolverConfig,
) -> RunReport {
    let outcome = solve(inst, cfg);
    let rows = slice_rows(inst, &outcome, slices);
    RunReport {
        name: name.to_string(),
        outcome,
        rows,
    }
}

/// The range rows for an already-computed outcome.
pub fn slice_rows(inst: &TcpInstance, outcome: &SolveOutcome, slices: &[f64]) -> Vec<RangeRow> {
    let n = inst.dim();
    slices
        .iter()
        .map(|&alpha_hi| {
            let mut best: Option<(MipPoint, &Vec<f64>, usize)> = None;
            for sol in &outcome.solutions {
                let point = match mip_point_of(inst, &sol.x, alpha_hi) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let count = sol.pattern.count();
                let replace = match &best {
                    None => true,
                    Some((cur, cur_x, cur_count)) => {
                        let tie = (point.alpha - cur.alpha).abs() <= 1e-12 * (1.0 + cur.alpha);
                        point.alpha > cur.alpha + 1e-12 * (1.0 + cur.alpha)
                            || (tie && count > *cur_count)
                            || (tie && count == *cur_count && sol.x < **cur_x)
                    }
                };
                if replace {
                    best = Some((point, &sol.x, count));
                }
            }
            let (point, recovered) = match best {
                Some((point, x, _)) => (point, Some(x.clone())),
                None => (
                    MipPoint {
                        alpha: 0.0,
                        y: vec![0.0; n],
                        z: vec![false; n],
                    },
                    None,
                ),
            };
            let feasible = build_mip(inst, if alpha_hi.is_finite() { alpha_hi } else { f64::INFINITY })
                .and_then(|model| check_mip_feasible(&model, &point, 1e-7))
                .unwrap_or(false);
            RangeRow {
                alpha_hi,
                point,
                recovered,
                feasible,
            }
        })
        .collect()
}

fn fmt_vec(v: &[f64]) -> String {
    let inner = v
        .iter()
        .map(|x| format!("{:.7}", x))
        .collect::<Vec<_>>()
        .join(", ");
    format!("({inner})")
}

/// Plain-text table in the reference layout (iteration counts omitted).
pub fn render_report(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("== {} ==\n", report.name));
    out.push_str(&format!(
        "status: {:?}  solutions: {}  patterns explored: {}\n",
        report.outcome.status,
        report.outcome.solutions.len(),
        report.outcome.patterns_explored
    ));
    for sol in &report.outcome.solutions {
        out.push_str(&format!(
            "  solution {}  pattern {}  min_x {:.3e}  min_w {:.3e}  gap {:.3e}\n",
            fmt_vec(&sol.x),
            sol.pattern,
            sol.residuals.min_x,
            sol.residuals.min_w,
            sol.residuals.gap
        ));
    }
    out.push_str(&format!(
        "{:<16} {:<12} {:<28} {:<10} {}\n",
        "range", "alpha*", "y*", "z*", "sol-tcp"
    ));
    for row in &report.rows {
        let range = if row.alpha_hi.is_finite() {
            format!("0 <= a <= {}", row.alpha_hi)
        } else {
            "0 <= a".to_string()
        };
        let z = format!(
            "({})",
            row.point
                .z
                .iter()
                .map(|&b| if b { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(",")
        );
        let sol = match &row.recovered {
            Some(x) => fmt_vec(x),
            None => "no".to_string(),
        };
        out.push_str(&format!(
            "{:<16} {:<12.7} {:<28} {:<10} {}\n",
            range,
            row.point.alpha,
            fmt_vec(&row.point.y),
            z,
            sol
        ));
    }
    out
}
