//! Solver library for tensor complementarity problems.
//!
//! Given an order-`m`, dimension-`n` real tensor `A` and a vector `q`, the
//! problem `TCP(A, q)` asks for `x >= 0` with `A x^{m-1} + q >= 0` and
//! `x^T (A x^{m-1} + q) = 0`, or a proof that no such `x` exists. At `m = 2`
//! this is the classical linear complementarity problem.
//!
//! The crate is organized around an exact mixed-integer view of the problem:
//! a binary vector `z` gates which complementarity side is active, a scaling
//! variable `alpha` turns any feasible point with `alpha > 0` into a
//! solution `x = y/alpha`, and `alpha* = 0` certifies unsolvability. At desk
//! scale the binaries are enumerated outright: each support yields a square
//! polynomial face system solved by damped multistart Newton, so the search
//! is deterministic and certificates of infeasibility are analytic rather
//! than numeric.
//!
//! Modules:
//! - [`tensor`]: dense tensors, `A x^{m-1}`, `A x^m`, norms, symmetry.
//! - [`model`]: instances, residuals, verification, scaling, diagonal
//!   closed forms.
//! - [`mip`]: the mixed-integer model, its range bound, and the two
//!   feasibility-certificate systems.
//! - [`solver`]: support enumeration with per-face Newton and analytic
//!   infeasibility certificates.
//! - [`spectral`]: Z-eigenpairs of symmetric tensors and the solution-set
//!   norm bound.
//! - [`io`]: text instance format and seeded random generation.
//! - [`bench`]: built-in example instances and range-sliced reports.
//!
//! ```
//! use tencomp::bench::example1;
//! use tencomp::solver::{solve, SolverConfig};
//!
//! let outcome = solve(&example1(), &SolverConfig::default());
//! assert_eq!(outcome.solutions.len(), 2);
//! assert_eq!(outcome.solutions[0].x, vec![0.0, 0.0]);
//! assert!((outcome.solutions[1].x[0] - 2.0).abs() < 1e-8);
//! ```

pub mod bench;
pub mod io;
pub mod mip;
pub mod model;
pub mod solver;
pub mod spectral;
pub mod tensor;

pub use model::{Residuals, TcpInstance};
pub use solver::{solve, SolveOutcome, SolveStatus, SolverConfig};
pub use tensor::Tensor;
