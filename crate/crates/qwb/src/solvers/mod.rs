//! End-to-end solvers: quantum linear-system algorithms (Chebyshev/LCU,
//! signal processing, positive-definite, HHL), the clock-register ODE
//! solver, and the PDE constructions (Kronecker-sum Laplacians and the
//! wave-equation lifting).
//!
//! Every route shares the same preparation pipeline: Hermitian dilation when
//! the input is not Hermitian (the solution then lands in the second block),
//! zero-padding to a power of two, and subnormalization by a caller-supplied
//! spectral-norm bound or the computed norm.

mod hhl;
mod ode;
mod pde;
mod qlsa;

pub use hhl::{hhl, HhlOptions};
pub use ode::{ode_clock_build, ode_solve, ClockIndexMap, ClockSystem, OdeProblem};
pub use pde::{
    dirichlet_difference, kron_sum_exp, kron_sum_laplacian, laplacian_1d, lift_second_order,
    wave_lift,
};
pub use qlsa::{qlsa_chebyshev, qlsa_pd, qlsa_qsp};

use num_complex::Complex64;

use crate::encodings::{hermitian_dilate, pad_matrix, pad_vector};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::StateVector;

/// A quantum linear-system problem: prepare a state proportional to the
/// solution of A x = b given a condition-number bound and a target
/// precision.
#[derive(Debug, Clone)]
pub struct LinearSystemProblem {
    pub a: CMatrix,
    pub b: Vec<Complex64>,
    /// Upper bound on the condition number of A.
    pub kappa: f64,
    /// Target precision of the solution state.
    pub eps: f64,
    /// Optional spectral-norm bound used as the subnormalization.
    pub alpha_bound: Option<f64>,
}

impl LinearSystemProblem {
    pub fn new(a: CMatrix, b: Vec<Complex64>, kappa: f64, eps: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("system matrix must be square".into()));
        }
        if a.nrows() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but rhs has {} entries",
                a.nrows(),
                a.ncols(),
                b.len()
            )));
        }
        if b.iter().map(|z| z.norm_sqr()).sum::<f64>() == 0.0 {
            return Err(Error::ZeroVector);
        }
        if !(kappa >= 1.0) {
            return Err(Error::InvalidInput(format!("kappa bound {kappa} must be >= 1")));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidInput(format!("eps {eps} must lie in (0,1)")));
        }
        Ok(LinearSystemProblem { a, b, kappa, eps, alpha_bound: None })
    }

    pub fn with_alpha_bound(mut self, bound: f64) -> Self {
        self.alpha_bound = Some(bound);
        self
    }
}

/// Output of a solver run: the normalized solution state, the overall
/// postselection probability (ancillas and extraction window combined), the
/// resource count of the route (polynomial degree or clock bits), the index
/// window the solution was extracted from, that window's weight inside the
/// postselected state, and a scale-free consistency residual
/// || A x / |A x| - b / |b| || evaluated on the original system.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: StateVector,
    pub success_prob: f64,
    pub degree_or_bits: usize,
    pub window: std::ops::Range<usize>,
    pub window_weight: f64,
    pub residual: Option<f64>,
}

/// Dilated / padded / normalized form shared by the QLSA routes.
pub(crate) struct PreparedSystem {
    pub matrix: CMatrix,
    pub rhs: StateVector,
    pub alpha: f64,
    pub window: std::ops::Range<usize>,
}

pub(crate) fn prepare(problem: &LinearSystemProblem) -> Result<PreparedSystem> {
    let n = problem.a.nrows();
    let (working, window) = if linalg::is_hermitian(&problem.a) {
        (problem.a.clone(), 0..n)
    } else {
        let (h, map) = hermitian_dilate(&problem.a)?;
        (h, map.solution_window)
    };
    let mut b_ext = problem.b.clone();
    b_ext.resize(working.nrows(), Complex64::new(0.0, 0.0));
    let padded = pad_matrix(&working);
    let b_padded = pad_vector(&b_ext);
    let rhs = StateVector::amplitude_encode(&b_padded)?;
    let alpha = match problem.alpha_bound {
        Some(v) => v,
        None => linalg::hermitian_spectral_bound(&padded)?.max(f64::MIN_POSITIVE),
    };
    Ok(PreparedSystem { matrix: padded, rhs, alpha, window })
}

/// Extract a window of a postselected state, renormalize it into a solution
/// state, and report the window weight.
pub(crate) fn extract_window(
    state: &StateVector,
    window: std::ops::Range<usize>,
) -> Result<(StateVector, f64)> {
    let amps = &state.amplitudes()[window.clone()];
    let weight: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if weight < crate::tol::POSTSELECT_MIN {
        return Err(Error::PostselectionFailed(weight));
    }
    let solution = StateVector::amplitude_encode(amps)?;
    Ok((solution, weight))
}

/// Scale-free consistency check of a claimed solution state against the
/// original system, after global-phase alignment.
pub(crate) fn consistency_residual(
    a: &CMatrix,
    b: &[Complex64],
    solution: &StateVector,
) -> Option<f64> {
    let n = a.nrows();
    if solution.dim() < n {
        return None;
    }
    let x = &solution.amplitudes()[..n];
    let mut ax = vec![Complex64::new(0.0, 0.0); n];
    for (row, slot) in ax.iter_mut().enumerate() {
        for col in 0..n {
            *slot += a[(row, col)] * x[col];
        }
    }
    let ax_norm = ax.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let b_norm = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if ax_norm == 0.0 || b_norm == 0.0 {
        return None;
    }
    let overlap: Complex64 =
        ax.iter().zip(b).map(|(u, v)| u.conj() * v).sum::<Complex64>() / (ax_norm * b_norm);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut dist = 0.0;
    for (u, v) in ax.iter().zip(b) {
        dist += (u / ax_norm * phase - v / b_norm).norm_sqr();
    }
    Some(dist.sqrt())
}
