//! Quantum linear-system routes built on block-encodings and matrix
//! polynomials: the Chebyshev/LCU inverse, the signal-processing inverse
//! with externally supplied phases, and the positive-definite shortcut.

use num_complex::Complex64;

use super::{
    consistency_residual, extract_window, prepare, LinearSystemProblem, PreparedSystem, SolveReport,
};
use crate::encodings::block_encode_hermitian;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::poly::{
    chebyshev_apply, chebyshev_fit, inverse_coeffs, qsp_apply, ChebyshevSeries, Parity,
    PhaseSequence,
};
use crate::state::StateVector;

/// Chebyshev route, returning the full postselected state before window
/// extraction (the clock-register solver needs it).
pub(crate) fn solve_chebyshev_raw(
    problem: &LinearSystemProblem,
) -> Result<(StateVector, f64, usize, PreparedSystem)> {
    let prep = prepare(problem)?;
    let inv = inverse_coeffs(problem.kappa, problem.eps)?;
    let be = block_encode_hermitian(&prep.matrix, Some(prep.alpha))?;
    let (state, p) = chebyshev_apply(&be, &inv.series, &prep.rhs)?;
    Ok((state, p, inv.series.degree(), prep))
}

/// Solve A x = b by applying an odd Chebyshev approximation of the inverse
/// to a block-encoding of the (dilated, padded) system.
pub fn qlsa_chebyshev(problem: &LinearSystemProblem) -> Result<SolveReport> {
    let (state, p, degree, prep) = solve_chebyshev_raw(problem)?;
    let (solution, weight) = extract_window(&state, prep.window.clone())?;
    let residual = consistency_residual(&problem.a, &problem.b, &solution);
    Ok(SolveReport {
        solution,
        success_prob: p * weight,
        degree_or_bits: degree,
        window: prep.window,
        window_weight: weight,
        residual,
    })
}

/// Solve A x = b through quantum signal processing with an externally
/// supplied phase sequence fitted to the inverse. The sequence is reusable
/// for any system whose condition bound does not exceed the sequence's.
pub fn qlsa_qsp(problem: &LinearSystemProblem, phases: &PhaseSequence) -> Result<SolveReport> {
    phases.validate()?;
    if phases.target != "inverse" {
        return Err(Error::PhaseMetadata(format!(
            "phase sequence targets {:?}, need \"inverse\"",
            phases.target
        )));
    }
    if phases.parity != Parity::Odd {
        return Err(Error::ParityMismatch("the inverse is odd".into()));
    }
    if problem.kappa > phases.kappa + 1e-9 {
        return Err(Error::PhaseMetadata(format!(
            "phases were fitted for kappa <= {}, problem declares {}",
            phases.kappa, problem.kappa
        )));
    }
    let prep = prepare(problem)?;
    let be = block_encode_hermitian(&prep.matrix, Some(prep.alpha))?;
    let (state, p) = qsp_apply(&be, phases, &prep.rhs, true)?;
    let (solution, weight) = extract_window(&state, prep.window.clone())?;
    let residual = consistency_residual(&problem.a, &problem.b, &solution);
    Ok(SolveReport {
        solution,
        success_prob: p * weight,
        degree_or_bits: phases.degree(),
        window: prep.window,
        window_weight: weight,
        residual,
    })
}

/// Fit Q(y) ~ 1/(1-y) on [-1, 1 - 1/kappa] at the minimal degree meeting
/// eps in relative error, then rescale so max |Q| <= 1 on [-1, 1].
/// Returns (series, gamma, degree).
pub(crate) fn pd_inverse_series(kappa: f64, eps: f64) -> Result<(ChebyshevSeries, f64)> {
    let hi = 1.0 - 1.0 / kappa;
    let try_degree = |d: usize| -> Result<(ChebyshevSeries, f64)> {
        let (series, _) = chebyshev_fit(|y| 1.0 / (1.0 - y), (-1.0, hi), d)?;
        let m = 2000;
        let resid = (0..m)
            .map(|i| -1.0 + (hi + 1.0) * i as f64 / (m - 1) as f64)
            .map(|y| (series.eval(y) * (1.0 - y) - 1.0).abs())
            .fold(0.0, f64::max);
        Ok((series, resid))
    };
    let cap = 1200usize;
    let mut d = ((kappa.sqrt() * (kappa / eps).ln() * 0.5).ceil() as usize).clamp(2, cap);
    let mut fail_below = 1usize;
    let pass;
    loop {
        let (series, resid) = try_degree(d)?;
        if resid <= eps {
            pass = (d, series);
            break;
        }
        fail_below = d;
        if d >= cap {
            return Err(Error::DegreeCapExceeded(cap));
        }
        d = (d * 3 / 2 + 1).min(cap);
    }
    let (mut best_d, mut best) = pass;
    let mut lo = fail_below;
    while best_d > lo + 1 {
        let mid = (lo + best_d) / 2;
        let (series, resid) = try_degree(mid)?;
        if resid <= eps {
            best_d = mid;
            best = series;
        } else {
            lo = mid;
        }
    }
    let peak = best.max_abs_on(-1.0, 1.0, 8001).max(1.0);
    let gamma = 1.0 / peak;
    let coeffs: Vec<f64> = best.coefficients().iter().map(|c| c * gamma).collect();
    let series = ChebyshevSeries::new(coeffs, (-1.0, hi))?;
    Ok((series, gamma))
}

/// Positive-definite route: with eta = 1/lambda_max and B = I - eta A,
/// A^{-1} b = eta (I - B)^{-1} b is approximated by a Chebyshev fit of
/// 1/(1-y) applied to B. The required degree scales with sqrt(kappa)
/// instead of kappa.
pub fn qlsa_pd(problem: &LinearSystemProblem) -> Result<SolveReport> {
    let defect = linalg::hermitian_defect(&problem.a);
    if defect > crate::tol::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let (vals, _) = linalg::hermitian_eigen(&problem.a)?;
    if vals.iter().any(|&v| v <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let lambda_max = problem
        .alpha_bound
        .unwrap_or_else(|| vals.iter().copied().fold(0.0, f64::max));
    let eta = 1.0 / lambda_max;

    let n = problem.a.nrows();
    let padded_a = crate::encodings::pad_matrix(&problem.a);
    let dim = padded_a.nrows();
    // B = I - eta A on the original block; padding rows stay zero so the
    // padded B keeps spectrum inside [0, 1 - 1/kappa] plus exact ones on
    // the padding diagonal, which the rhs never touches... the padding
    // diagonal of B would be 1, outside the fit window; zero it instead.
    let mut b_matrix = CMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            b_matrix[(i, j)] = -eta * padded_a[(i, j)]
                + if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
        }
    }
    let b_padded = crate::encodings::pad_vector(&problem.b);
    let rhs = StateVector::amplitude_encode(&b_padded)?;

    let (series, _gamma) = pd_inverse_series(problem.kappa, problem.eps)?;
    let be = block_encode_hermitian(&b_matrix, Some(1.0))?;
    let (state, p) = chebyshev_apply(&be, &series, &rhs)?;
    let (solution, weight) = extract_window(&state, 0..n)?;
    let residual = consistency_residual(&problem.a, &problem.b, &solution);
    Ok(SolveReport {
        solution,
        success_prob: p * weight,
        degree_or_bits: series.degree(),
        window: 0..n,
        window_weight: weight,
        residual,
    })
}
