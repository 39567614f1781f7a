//! Clock-register ODE solver for dx/dt = A x + b: discrete Taylor stepping
//! is encoded as one block lower-triangular linear system over a clock
//! register, the system is solved by the Chebyshev QLSA route, and the
//! final iterate is read out of the trailing copy window.
//!
//! Variable layout per step j: the carry-in x_j, k Taylor blocks
//! y_i = (Ah)^i/i! x_j (with y_1 also absorbing h b), and the summation row
//! assembling x_{j+1} = sum_i y_i. The final iterate is replicated p times
//! to boost the readout window.

use num_complex::Complex64;

use super::{extract_window, LinearSystemProblem, SolveReport};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::StateVector;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// An initial-value problem dx/dt = A x + b on [0, T], discretized with m
/// steps of order-k truncated Taylor stepping and p readout copies.
#[derive(Debug, Clone)]
pub struct OdeProblem {
    pub a: CMatrix,
    pub b: Vec<Complex64>,
    pub x0: Vec<Complex64>,
    pub t_final: f64,
    /// Taylor truncation order k.
    pub taylor_order: usize,
    /// Time steps m.
    pub steps: usize,
    /// Copies of the final iterate p.
    pub copies: usize,
    /// Precision handed to the inner linear solve (default 1e-4).
    pub eps: Option<f64>,
}

impl OdeProblem {
    pub fn new(
        a: CMatrix,
        b: Vec<Complex64>,
        x0: Vec<Complex64>,
        t_final: f64,
        taylor_order: usize,
        steps: usize,
        copies: usize,
    ) -> Result<Self> {
        if !a.is_square() || a.nrows() == 0 {
            return Err(Error::DimensionMismatch("A must be square and nonempty".into()));
        }
        if b.len() != a.nrows() || x0.len() != a.nrows() {
            return Err(Error::DimensionMismatch("b and x0 must match A".into()));
        }
        if taylor_order == 0 || steps == 0 || copies == 0 {
            return Err(Error::InvalidInput("k, m, p must all be >= 1".into()));
        }
        if !(t_final > 0.0) {
            return Err(Error::InvalidInput("horizon T must be positive".into()));
        }
        Ok(OdeProblem { a, b, x0, t_final, taylor_order, steps, copies, eps: None })
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn step_size(&self) -> f64 {
        self.t_final / self.steps as f64
    }
}

/// Block labels of the clock system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClockIndexMap {
    pub block_size: usize,
    pub taylor_order: usize,
    pub steps: usize,
    pub copies: usize,
}

impl ClockIndexMap {
    pub fn num_blocks(&self) -> usize {
        self.steps * (self.taylor_order + 1) + self.copies
    }

    pub fn dim(&self) -> usize {
        self.num_blocks() * self.block_size
    }

    /// Block index of the iterate x_j.
    pub fn x_block(&self, j: usize) -> usize {
        j * (self.taylor_order + 1)
    }

    /// Block index of the i-th Taylor term of step j (i in 1..=k).
    pub fn taylor_block(&self, j: usize, i: usize) -> usize {
        self.x_block(j) + i
    }

    /// Element range of one block.
    pub fn block_range(&self, block: usize) -> std::ops::Range<usize> {
        block * self.block_size..(block + 1) * self.block_size
    }

    /// Element range covering every copy of the final iterate.
    pub fn final_window(&self) -> std::ops::Range<usize> {
        self.x_block(self.steps) * self.block_size..self.dim()
    }
}

/// The assembled clock system L y = rhs.
#[derive(Debug, Clone)]
pub struct ClockSystem {
    pub matrix: CMatrix,
    pub rhs: Vec<Complex64>,
    pub index_map: ClockIndexMap,
    /// 2-norm non-growth check: largest eigenvalue of the Hermitian part
    /// of A is nonpositive. A warning flag, not an error.
    pub stable: bool,
}

/// Build the clock-register linear system: an identity row seeding x_0,
/// then per step the Taylor rows -Ah/i and the summation row of -I blocks,
/// and trailing copy rows pinning the final-iterate replicas. The right
/// side carries x_0 once and h b once per step.
pub fn ode_clock_build(problem: &OdeProblem) -> Result<ClockSystem> {
    let n = problem.a.nrows();
    let (k, m, p) = (problem.taylor_order, problem.steps, problem.copies);
    let h = problem.step_size();
    let map = ClockIndexMap { block_size: n, taylor_order: k, steps: m, copies: p };
    let dim = map.dim();
    let mut l = CMatrix::zeros(dim, dim);
    let mut rhs = vec![c(0.0, 0.0); dim];

    let put = |l: &mut CMatrix, row_block: usize, col_block: usize, mat: &CMatrix| {
        for i in 0..n {
            for j in 0..n {
                l[(row_block * n + i, col_block * n + j)] = mat[(i, j)];
            }
        }
    };
    let eye = linalg::identity(n);
    let neg_eye = &eye * c(-1.0, 0.0);

    // x_0 seed
    put(&mut l, 0, 0, &eye);
    rhs[..n].copy_from_slice(&problem.x0);

    for j in 0..m {
        let xj = map.x_block(j);
        for i in 1..=k {
            let row = map.taylor_block(j, i);
            let scale = c(-h / i as f64, 0.0);
            let coupled = &problem.a * scale;
            put(&mut l, row, row - 1, &coupled);
            put(&mut l, row, row, &eye);
            if i == 1 {
                for (idx, bv) in problem.b.iter().enumerate() {
                    rhs[row * n + idx] = h * bv;
                }
            }
        }
        // summation row: x_{j+1} = x_j + sum_i y_i
        let next = map.x_block(j + 1);
        for col in xj..=map.taylor_block(j, k) {
            put(&mut l, next, col, &neg_eye);
        }
        put(&mut l, next, next, &eye);
    }
    // copy rows
    for cpy in 1..p {
        let row = map.x_block(m) + cpy;
        put(&mut l, row, row - 1, &neg_eye);
        put(&mut l, row, row, &eye);
    }

    // non-growth check through the Hermitian part of A
    let herm_part = (&problem.a + linalg::dagger(&problem.a)) / c(2.0, 0.0);
    let (vals, _) = linalg::hermitian_eigen(&herm_part)?;
    let stable = vals.iter().all(|&v| v <= 1e-12);

    Ok(ClockSystem { matrix: l, rhs, index_map: map, stable })
}

/// Solve the initial-value problem: wrap the clock system as a linear
/// problem (condition bound from the computed singular values), run the
/// Chebyshev QLSA, postselect the clock register on the final-copy window,
/// and average the replicas into the normalized final iterate.
pub fn ode_solve(problem: &OdeProblem) -> Result<SolveReport> {
    let clock = ode_clock_build(problem)?;
    let kappa = linalg::condition_number(&clock.matrix) * 1.01;
    let eps = problem.eps.unwrap_or(1e-4);
    let lsp = LinearSystemProblem::new(clock.matrix.clone(), clock.rhs.clone(), kappa, eps)?;
    let (full, p_anc, degree, prep) = super::qlsa::solve_chebyshev_raw(&lsp)?;

    // clock vector inside the dilated/padded solve
    let (clock_state, dilation_weight) = extract_window(&full, prep.window.clone())?;
    let final_window = clock.index_map.final_window();
    let window_amps = &clock_state.amplitudes()[final_window.clone()];
    let weight: f64 = window_amps.iter().map(|z| z.norm_sqr()).sum();
    if weight < crate::tol::POSTSELECT_MIN {
        return Err(Error::PostselectionFailed(weight));
    }
    // average the p replicas of x_m
    let n = clock.index_map.block_size;
    let mut xm = vec![c(0.0, 0.0); n];
    for (i, amp) in window_amps.iter().enumerate() {
        xm[i % n] += amp / problem.copies as f64;
    }
    let solution = StateVector::amplitude_encode(&xm)?;
    Ok(SolveReport {
        solution,
        success_prob: p_anc * dilation_weight * weight,
        degree_or_bits: degree,
        window: final_window,
        window_weight: weight,
        residual: None,
    })
}
