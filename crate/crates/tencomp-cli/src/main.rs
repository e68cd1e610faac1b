//! `tencomp` command-line interface.
//!
//! Exit codes: 0 solved / ok, 1 verification or bound failure, 2 certified
//! no solution, 3 numeric no-solution, 64 usage error, 66 file error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use tencomp::bench::{default_slices, paper_examples, render_report, run_report, slice_rows, RunReport};
use tencomp::io::{gen_random, parse_instance, write_instance, GenKind};
use tencomp::model::TcpInstance;
use tencomp::solver::{solve, SolveStatus, SolverConfig};
use tencomp::spectral::{grid_oracle, lambda_min, solution_norm_bound, SpectralConfig};

const EX_OK: i32 = 0;
const EX_FAIL: i32 = 1;
const EX_NO_SOLUTION: i32 = 2;
const EX_NUMERIC: i32 = 3;
const EX_USAGE: i32 = 64;
const EX_FILE: i32 = 66;

#[derive(Parser)]
#[command(name = "tencomp", version, about = "Tensor complementarity problem solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance by support enumeration
    Solve {
        file: PathBuf,
        /// Residual tolerance for accepting solutions
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Cap on the number of supports explored
        #[arg(long)]
        max_patterns: Option<usize>,
        /// Comma-separated alpha upper bounds for range-sliced reporting
        /// (use `inf` for the unbounded row)
        #[arg(long, value_delimiter = ',')]
        alpha_slices: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a candidate solution and print its residuals
    Verify {
        file: PathBuf,
        /// Candidate vector, comma-separated
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        x: Vec<f64>,
    },
    /// Estimate the smallest Z-eigenvalue and the solution-set radius
    Bound {
        file: PathBuf,
        /// Grid resolution for the bracketing oracle (dimensions 2 and 3)
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Generate a random instance file
    Gen {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Reproduce the bundled example tables
    Bench {
        /// Run the three bundled example instances
        #[arg(long, required = true)]
        paper_examples: bool,
        /// Directory for instance and report files
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    General,
    Symmetric,
    #[value(name = "diagonal_pd")]
    DiagonalPd,
    #[value(name = "symmetric_pd")]
    SymmetricPd,
}

impl From<KindArg> for GenKind {
    fn from(k: KindArg) -> GenKind {
        match k {
            KindArg::General => GenKind::General,
            KindArg::Symmetric => GenKind::Symmetric,
            KindArg::DiagonalPd => GenKind::DiagonalPd,
            KindArg::SymmetricPd => GenKind::SymmetricPd,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EX_OK,
                _ => EX_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}

fn load(path: &Path) -> Result<TcpInstance, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        EX_FILE
    })?;
    parse_instance(&text).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        EX_FILE
    })
}

fn fmt_vec(v: &[f64]) -> String {
    let inner = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    format!("({inner})")
}

fn run(cli: Cli) -> i32 {
    match cli.cmd {
        Cmd::Solve {
            file,
            tol,
            max_patterns,
            alpha_slices,
            seed,
        } => {
            let inst = match load(&file) {
                Ok(inst) => inst,
                Err(code) => return code,
            };
            let mut cfg = SolverConfig {
                tol,
                seed,
                alpha_slices,
                ..SolverConfig::default()
            };
            if let Some(cap) = max_patterns {
                cfg.max_patterns = cap;
            }
            let outcome = solve(&inst, &cfg);
            match outcome.status {
                SolveStatus::SolutionsFound => {
                    println!("status: {} solution(s) found", outcome.solutions.len());
                    for sol in &outcome.solutions {
                        println!(
                            "  x = {}  support {}  min_x {:.2e}  min_w {:.2e}  gap {:.2e}",
                            fmt_vec(&sol.x),
                            sol.pattern,
                            sol.residuals.min_x,
                            sol.residuals.min_w,
                            sol.residuals.gap
                        );
                    }
                }
                SolveStatus::NoSolutionCertified => {
                    println!("status: no solution (certified by pattern exhaustion)");
                }
                SolveStatus::Infeasible => {
                    println!("status: no solution (certified analytically)");
                }
                SolveStatus::NoSolutionFoundNumerically => {
                    println!("status: no solution found (not certified)");
                }
            }
            if !outcome.notes.is_empty() {
                println!("notes: {}", outcome.notes);
            }
            println!("patterns explored: {}", outcome.patterns_explored);
            if let Some(slices) = &cfg.alpha_slices {
                let report = RunReport {
                    name: file.display().to_string(),
                    rows: slice_rows(&inst, &outcome, slices),
                    outcome: outcome.clone(),
                };
                print!("{}", render_report(&report));
            }
            match outcome.status {
                SolveStatus::SolutionsFound => EX_OK,
                SolveStatus::NoSolutionCertified | SolveStatus::Infeasible => EX_NO_SOLUTION,
                SolveStatus::NoSolutionFoundNumerically => EX_NUMERIC,
            }
        }
        Cmd::Verify { file, x } => {
            let inst = match load(&file) {
                Ok(inst) => inst,
                Err(code) => return code,
            };
            if x.len() != inst.dim() {
                eprintln!("--x has {} components, instance dimension is {}", x.len(), inst.dim());
                return EX_USAGE;
            }
            let r = inst.residuals(&x).expect("dimension checked");
            let ok = inst.verify(&x, 1e-6).expect("dimension checked");
            println!(
                "min_x {:.6e}  min_w {:.6e}  gap {:.6e}",
                r.min_x, r.min_w, r.gap
            );
            println!("{}", if ok { "PASS" } else { "FAIL" });
            if ok {
                EX_OK
            } else {
                EX_FAIL
            }
        }
        Cmd::Bound { file, resolution } => {
            let inst = match load(&file) {
                Ok(inst) => inst,
                Err(code) => return code,
            };
            let mut cfg = SpectralConfig::default();
            if let Some(res) = resolution {
                cfg.seed_resolution = res;
            }
            let estimate = match lambda_min(inst.tensor(), &cfg) {
                Ok(e) => e,
                Err(e) => {
                    eprintln!("{e}");
                    return EX_FAIL;
                }
            };
            println!(
                "lambda_min (projected gradient): {:.9}  converged: {}",
                estimate.lambda, estimate.converged
            );
            if inst.dim() <= 3 {
                let res = resolution.unwrap_or(if inst.dim() == 2 { 10_000 } else { 300 });
                if let Ok(scan) = grid_oracle(inst.tensor(), res) {
                    println!(
                        "lambda_min (grid, {} points): {:.9}  error bound {:.3e}",
                        scan.points, scan.min.lambda, scan.error_bound
                    );
                }
            }
            match solution_norm_bound(&inst, &cfg) {
                Ok(radius) => {
                    println!("solution-set radius: {radius:.9}");
                    EX_OK
                }
                Err(e) => {
                    eprintln!("{e}");
                    EX_FAIL
                }
            }
        }
        Cmd::Gen {
            order,
            dim,
            density,
            seed,
            kind,
            out,
        } => {
            let inst = match gen_random(order, dim, density, seed, kind.into()) {
                Ok(inst) => inst,
                Err(e) => {
                    eprintln!("{e}");
                    return EX_USAGE;
                }
            };
            if let Err(e) = fs::write(&out, write_instance(&inst)) {
                eprintln!("{}: {e}", out.display());
                return EX_FILE;
            }
            println!("wrote {}", out.display());
            EX_OK
        }
        Cmd::Bench { paper_examples: _, out } => {
            let cfg = SolverConfig::default();
            let slices = default_slices();
            if let Some(dir) = &out {
                if let Err(e) = fs::create_dir_all(dir) {
                    eprintln!("{}: {e}", dir.display());
                    return EX_FILE;
                }
            }
            for (name, inst) in paper_examples() {
                let report = run_report(name, &inst, &slices, &cfg);
                let rendered = render_report(&report);
                println!("{rendered}");
                if let Some(dir) = &out {
                    let instance_path = dir.join(format!("{name}.tcp"));
                    let report_path = dir.join(format!("{name}_report.txt"));
                    if let Err(e) = fs::write(&instance_path, write_instance(&inst))
                        .and_then(|_| fs::write(&report_path, &rendered))
                    {
                        eprintln!("{}: {e}", dir.display());
                        return EX_FILE;
                    }
                }
            }
            EX_OK
        }
    }
}
