//! Desk-scale gate-based quantum simulation and a quantum scientific-computing
//! algorithm suite.
//!
//! The crate is organized bottom-up:
//!
//! - [`state`]: dense statevectors, encodings of classical data, inner
//!   products and fidelity.
//! - [`gates`] / [`circuit`]: gate matrices, controlled gates, circuit
//!   construction and execution, projective measurement, seeded sampling.
//! - [`subroutines`]: QFT, phase estimation, amplitude amplification and
//!   Grover search, linear combination of unitaries.
//! - [`encodings`]: Pauli decomposition, Hermitian dilation, block-encodings,
//!   simulated sparse oracles.
//! - [`poly`]: qubitization, Chebyshev matrix polynomials, quantum signal
//!   processing, polynomial fitting (matrix inverse, Jacobi-Anger).
//! - [`hamsim`]: approximations of exp(-iHt) - Suzuki-Trotter product
//!   formulas, truncated-Taylor LCU, QSP simulation.
//! - [`solvers`]: quantum linear-system algorithms (HHL, Chebyshev/LCU, QSP,
//!   positive-definite), a clock-register ODE solver, Kronecker-sum
//!   Laplacians and the wave-equation lifting.
//! - [`io`]: the shared text file formats used by the CLI.
//!
//! Everything simulates on dense vectors and matrices at desk scale; all
//! operations are pure functions over immutable values, and all sampling is
//! deterministic given a seed.

pub mod circuit;
pub mod encodings;
pub mod error;
pub mod gates;
pub mod hamsim;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod solvers;
pub mod state;
pub mod subroutines;
pub mod tol;

pub use error::{Error, Result};
