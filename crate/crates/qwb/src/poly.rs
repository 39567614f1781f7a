//! Polynomial transforms of block-encoded matrices: qubitization walks for
//! Chebyshev polynomials, linear combinations of Chebyshev terms, and
//! quantum signal processing with externally supplied phase sequences.
//!
//! Polynomial application is assembled at matrix level and re-encoded as a
//! single block-encoding; postselected semantics are identical to chaining
//! the unitaries at gate level, and the ancilla bookkeeping stays flat.
//!
//! Phase sequences are input artifacts (see [`PhaseSequence`]); computing
//! optimal phase factors is out of scope for the library proper. A
//! least-squares fitter for small test fixtures lives in the test tree.

use num_complex::Complex64;

use crate::encodings::BlockEncoding;
use crate::error::{Error, Result};
use crate::gates::GateMatrix;
use crate::linalg::{self, CMatrix, CVector};
use crate::state::StateVector;
use crate::tol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Coefficient parity of a polynomial in the Chebyshev basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Result<Parity> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            "mixed" => Ok(Parity::Mixed),
            other => Err(Error::InvalidInput(format!("unknown parity {other:?}"))),
        }
    }
}

/// A polynomial sum c_k T_k(x) in the Chebyshev basis of the first kind,
/// with a parity tag and the interval the coefficients were fitted on.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevSeries {
    coefficients: Vec<f64>,
    parity: Parity,
    domain: (f64, f64),
}

impl ChebyshevSeries {
    /// Build a series, detecting parity from the coefficients.
    pub fn new(coefficients: Vec<f64>, domain: (f64, f64)) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidInput("series needs at least one coefficient".into()));
        }
        if coefficients.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = coefficients.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        let even_zero = coefficients.iter().step_by(2).all(|x| x.abs() <= 1e-13 * scale);
        let odd_zero = coefficients.iter().skip(1).step_by(2).all(|x| x.abs() <= 1e-13 * scale);
        let parity = if even_zero && !odd_zero {
            Parity::Odd
        } else if odd_zero && !even_zero {
            Parity::Even
        } else {
            Parity::Mixed
        };
        Ok(ChebyshevSeries { coefficients, parity, domain })
    }

    /// Build with a declared parity; the coefficients must agree.
    pub fn with_parity(coefficients: Vec<f64>, parity: Parity, domain: (f64, f64)) -> Result<Self> {
        let s = Self::new(coefficients, domain)?;
        let ok = match parity {
            Parity::Mixed => true,
            // an all-zero tail can be tagged either way
            p => s.parity == p || s.coefficients.iter().all(|x| *x == 0.0),
        };
        if !ok {
            return Err(Error::ParityMismatch(format!(
                "declared {} but coefficients are {}",
                parity.as_str(),
                s.parity.as_str()
            )));
        }
        Ok(ChebyshevSeries { parity, ..s })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn one_norm(&self) -> f64 {
        self.coefficients.iter().map(|x| x.abs()).sum()
    }

    /// Clenshaw evaluation of sum c_k T_k(x).
    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &ck in self.coefficients.iter().rev() {
            let b0 = 2.0 * x * b1 - b2 + ck;
            b2 = b1;
            b1 = b0;
        }
        b1 - x * b2
    }

    /// Max |P| over a uniform grid on [lo, hi].
    pub fn max_abs_on(&self, lo: f64, hi: f64, points: usize) -> f64 {
        (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .map(|x| self.eval(x).abs())
            .fold(0.0, f64::max)
    }
}

/// T_k(x) by the trigonometric form inside [-1,1] and the hyperbolic
/// continuation outside.
pub fn chebyshev_t(k: usize, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        (k as f64 * x.acos()).cos()
    } else {
        let t = x.abs().max(1.0);
        let v = (k as f64 * (t + (t * t - 1.0).sqrt()).ln()).cosh();
        if x < 0.0 && k % 2 == 1 { -v } else { v }
    }
}

/// Reflection about the ancilla all-zeros subspace:
/// (2|0^m><0^m| - I) (x) I_{2^n}.
pub fn reflection_zpi(m: usize, n: usize) -> GateMatrix {
    assert!(m >= 1);
    let sys = 1usize << n;
    let dim = sys << m;
    let mut mat = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        mat[(i, i)] = c(if i < sys { 1.0 } else { -1.0 }, 0.0);
    }
    GateMatrix::new(mat).expect("diagonal +-1 is unitary")
}

fn zpi_matrix(m: usize, n: usize) -> CMatrix {
    reflection_zpi(m, n).into_matrix()
}

/// Chebyshev polynomial of the encoded matrix by the qubitization walk:
/// alternating U_A, Z_Pi, U_A^dag, Z_Pi, ... with k applications of the
/// encoding. The result is a block-encoding whose block is T_k(A/alpha),
/// validated against the independent matrix three-term recursion.
pub fn qubitization_power(be: &BlockEncoding, k: usize) -> Result<BlockEncoding> {
    let sys = be.system_dim();
    let m = be.ancillas();
    if k == 0 {
        let dim = be.unitary().nrows();
        return BlockEncoding::new(CMatrix::identity(dim, dim), m, 1.0, &linalg::identity(sys));
    }
    let zpi = zpi_matrix(m, be.system_qubits());
    let u = be.unitary();
    let udag = linalg::dagger(u);
    let mut w = u.clone();
    for j in 2..=k {
        let next = if j % 2 == 0 { &udag } else { u };
        w = linalg::matmul(next, &linalg::matmul(&zpi, &w));
    }
    // independent reference: matrix Chebyshev recursion on the block
    let reference = chebyshev_matrix(be.block(), k);
    BlockEncoding::new(w, m, 1.0, &reference)
}

/// T_k(M) by the three-term recursion.
fn chebyshev_matrix(m: &CMatrix, k: usize) -> CMatrix {
    let dim = m.nrows();
    let mut t_prev = linalg::identity(dim);
    if k == 0 {
        return t_prev;
    }
    let mut t_cur = m.clone();
    for _ in 2..=k {
        let mut next = linalg::matmul(m, &t_cur) * c(2.0, 0.0);
        next -= &t_prev;
        t_prev = t_cur;
        t_cur = next;
    }
    t_cur
}

/// Assemble P(A/alpha) = sum c_k T_k(A/alpha) by the parity-aware
/// three-term recursion (steps of two when the series has definite parity).
fn series_matrix(block: &CMatrix, series: &ChebyshevSeries) -> CMatrix {
    let dim = block.nrows();
    let coeffs = series.coefficients();
    let mut acc = CMatrix::zeros(dim, dim);
    match series.parity() {
        Parity::Mixed => {
            let mut t_prev = linalg::identity(dim);
            let mut t_cur = block.clone();
            acc += &t_prev * c(coeffs[0], 0.0);
            for (k, &ck) in coeffs.iter().enumerate().skip(1) {
                if ck != 0.0 {
                    acc += &t_cur * c(ck, 0.0);
                }
                if k + 1 < coeffs.len() {
                    let mut next = linalg::matmul(block, &t_cur) * c(2.0, 0.0);
                    next -= &t_prev;
                    t_prev = t_cur;
                    t_cur = next;
                }
            }
        }
        parity => {
            // T_{k+2} = 2 T_2 T_k - T_{k-2}
            let t2 = {
                let mut t = linalg::matmul(block, block) * c(2.0, 0.0);
                t -= &linalg::identity(dim);
                t
            };
            let (start, mut t_cur) = match parity {
                Parity::Even => (0usize, linalg::identity(dim)),
                _ => (1usize, block.clone()),
            };
            let mut t_prev_prev: Option<CMatrix> = None;
            let mut k = start;
            while k < coeffs.len() {
                if coeffs[k] != 0.0 {
                    acc += &t_cur * c(coeffs[k], 0.0);
                }
                let next = match &t_prev_prev {
                    None => {
                        // T_{start+2} = 2 T_2 T_start - T_{2-start}
                        let mut n = linalg::matmul(&t2, &t_cur) * c(2.0, 0.0);
                        if start == 0 {
                            n -= &t2;
                        } else {
                            n -= block;
                        }
                        n
                    }
                    Some(prev2) => {
                        let mut n = linalg::matmul(&t2, &t_cur) * c(2.0, 0.0);
                        n -= prev2;
                        n
                    }
                };
                t_prev_prev = Some(t_cur);
                t_cur = next;
                k += 2;
            }
        }
    }
    acc
}

/// Apply P(A/alpha) = sum c_k T_k(A/alpha) to a state: the polynomial is
/// assembled at matrix level, block-encoded with the coefficient one-norm
/// folded into the subnormalization, and applied with postselection.
///
/// Requires |sum c_k T_k(x)| <= 1 on [-1,1] and a Hermitian encoded block.
pub fn chebyshev_apply(
    be: &BlockEncoding,
    series: &ChebyshevSeries,
    state: &StateVector,
) -> Result<(StateVector, f64)> {
    let bound = series.max_abs_on(-1.0, 1.0, 2001);
    if bound > 1.0 + 1e-9 {
        return Err(Error::SeriesBound(bound));
    }
    let norm = series.one_norm();
    if norm == 0.0 {
        return Err(Error::InvalidInput("all-zero series".into()));
    }
    let p = series_matrix(be.block(), series);
    let encoded = crate::encodings::block_encode_hermitian(&p, Some(norm))?;
    crate::encodings::apply_block_encoding(&encoded, state)
}

/// A quantum signal processing phase sequence together with the metadata of
/// the polynomial it was fitted for. d+1 angles realize a degree-d
/// polynomial whose parity is d mod 2.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSequence {
    pub angles: Vec<f64>,
    pub parity: Parity,
    /// Freeform description of the target ("inverse", "t7", ...).
    pub target: String,
    pub kappa: f64,
    pub eps: f64,
}

impl PhaseSequence {
    pub fn degree(&self) -> usize {
        self.angles.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.angles.is_empty() {
            return Err(Error::PhaseMetadata("empty phase sequence".into()));
        }
        let want = if self.degree() % 2 == 0 { Parity::Even } else { Parity::Odd };
        if self.parity != want {
            return Err(Error::ParityMismatch(format!(
                "{} angles realize a degree-{} ({}) polynomial, declared {}",
                self.angles.len(),
                self.degree(),
                want.as_str(),
                self.parity.as_str()
            )));
        }
        Ok(())
    }
}

/// One run of the signal-processing sequence on a vector in the encoding
/// space: phase gadgets exp(i phi (2 Pi - I)) interleaved with the encoding
/// unitary, rightmost angle applied first. `sign` flips every angle, which
/// realizes the conjugate polynomial.
fn qsp_sequence_apply(
    be: &BlockEncoding,
    angles: &[f64],
    sign: f64,
    initial: &[Complex64],
    hermitian_block: bool,
) -> CVector {
    let sys = be.system_dim();
    let dim = be.unitary().nrows();
    let mut v = CVector::zeros(dim);
    for (i, a) in initial.iter().enumerate() {
        v[i] = *a;
    }
    let u = be.unitary();
    let udag = if hermitian_block { None } else { Some(linalg::dagger(u)) };
    let d = angles.len() - 1;
    let mut applications = 0usize;
    for j in (0..=d).rev() {
        let phase_pos = Complex64::from_polar(1.0, sign * angles[j]);
        let phase_neg = phase_pos.conj();
        for (i, vi) in v.iter_mut().enumerate() {
            *vi *= if i < sys { phase_pos } else { phase_neg };
        }
        if j > 0 {
            applications += 1;
            let mat = match (&udag, applications % 2 == 0) {
                (Some(ud), true) => ud,
                _ => u,
            };
            v = mat * &v;
        }
    }
    v
}

/// Apply the polynomial realized by a phase sequence to a state through a
/// single-ancilla block-encoding: postselected system state proportional to
/// P(A/alpha)|psi>, or Re P with `extract_real` (the Hadamard-sandwiched
/// extra qubit realized as the average of the +Phi and -Phi runs).
pub fn qsp_apply(
    be: &BlockEncoding,
    phases: &PhaseSequence,
    state: &StateVector,
    extract_real: bool,
) -> Result<(StateVector, f64)> {
    phases.validate()?;
    if be.ancillas() != 1 {
        return Err(Error::InvalidInput(format!(
            "signal processing expects a single-ancilla encoding, got m = {}",
            be.ancillas()
        )));
    }
    if state.dim() != be.system_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs encoded system dim {}",
            state.dim(),
            be.system_dim()
        )));
    }
    let hermitian_block = linalg::is_hermitian(be.block());
    let sys = be.system_dim();
    let fwd = qsp_sequence_apply(be, &phases.angles, 1.0, state.amplitudes(), hermitian_block);
    let projected: Vec<Complex64> = if extract_real {
        let rev = qsp_sequence_apply(be, &phases.angles, -1.0, state.amplitudes(), hermitian_block);
        (0..sys).map(|i| (fwd[i] + rev[i]) / 2.0).collect()
    } else {
        (0..sys).map(|i| fwd[i]).collect()
    };
    let success: f64 = projected.iter().map(|z| z.norm_sqr()).sum();
    if success < tol::POSTSELECT_MIN {
        return Err(Error::PostselectionFailed(success));
    }
    Ok((StateVector::from_raw_normalized(state.num_qubits(), projected), success))
}

/// Least-squares Chebyshev coefficients at nodes with a weight per node.
/// `ks` selects which T_k enter the basis.
fn cheb_lstsq(nodes: &[f64], weights: &[f64], targets: &[f64], ks: &[usize]) -> Result<Vec<f64>> {
    let rows = nodes.len();
    let cols = ks.len();
    let mut b = nalgebra::DMatrix::<f64>::zeros(rows, cols);
    let mut rhs = nalgebra::DVector::<f64>::zeros(rows);
    for (i, (&x, (&w, &t))) in nodes.iter().zip(weights.iter().zip(targets)).enumerate() {
        for (j, &k) in ks.iter().enumerate() {
            b[(i, j)] = w * chebyshev_t(k, x);
        }
        rhs[i] = w * t;
    }
    let svd = nalgebra::linalg::SVD::new(b, true, true);
    let sol = svd
        .solve(&rhs, 1e-13)
        .map_err(|e| Error::InvalidInput(format!("least-squares solve failed: {e}")))?;
    Ok(sol.iter().copied().collect())
}

fn cheb_nodes(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| {
            let t = ((2 * i - 1) as f64 * std::f64::consts::PI / (2 * count) as f64).cos();
            (t + 1.0) / 2.0 * (hi - lo) + lo
        })
        .collect()
}

/// Interpolate a scalar function on an interval by least squares at
/// Chebyshev nodes in the standard T_k(x) basis. Returns the series and
/// the max node residual.
pub fn chebyshev_fit(
    f: impl Fn(f64) -> f64,
    interval: (f64, f64),
    degree: usize,
) -> Result<(ChebyshevSeries, f64)> {
    let (lo, hi) = interval;
    if !(lo < hi) || lo < -1.0 - 1e-12 || hi > 1.0 + 1e-12 {
        return Err(Error::InvalidInput(format!("bad fit interval [{lo}, {hi}]")));
    }
    let nodes = cheb_nodes(lo, hi, 2 * (degree + 1));
    let targets: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    if targets.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite);
    }
    let weights = vec![1.0; nodes.len()];
    let ks: Vec<usize> = (0..=degree).collect();
    let coeffs = cheb_lstsq(&nodes, &weights, &targets, &ks)?;
    let series = ChebyshevSeries::new(coeffs, interval)?;
    let resid = nodes
        .iter()
        .zip(&targets)
        .map(|(&x, &t)| (series.eval(x) - t).abs())
        .fold(0.0, f64::max);
    Ok((series, resid))
}

/// Odd Chebyshev approximation of gamma/x on [-1,-1/kappa] u [1/kappa,1],
/// rescaled so max |P| <= 1 on all of [-1,1].
#[derive(Debug, Clone)]
pub struct InverseSeries {
    pub series: ChebyshevSeries,
    /// The rescale factor: P(x) is approximately gamma/x on the domain.
    pub gamma: f64,
    /// Max relative deviation |x P(x)/gamma - 1| observed on a dense grid.
    pub residual: f64,
}

const INVERSE_DEGREE_CAP: usize = 3001;

fn fit_inverse_at_degree(kappa: f64, degree: usize) -> Result<(Vec<f64>, f64)> {
    let n_odd = degree / 2 + 1;
    let nodes = cheb_nodes(1.0 / kappa, 1.0, 4 * n_odd);
    // residual weighted as x P(x) - 1: relative error in 1/x
    let weights = nodes.clone();
    let targets: Vec<f64> = nodes.iter().map(|&x| 1.0 / x).collect();
    let ks: Vec<usize> = (0..n_odd).map(|j| 2 * j + 1).collect();
    let sparse = cheb_lstsq(&nodes, &weights, &targets, &ks)?;
    let mut coeffs = vec![0.0; degree + 1];
    for (j, &k) in ks.iter().enumerate() {
        coeffs[k] = sparse[j];
    }
    // dense relative-residual check on the positive branch (odd symmetry)
    let series = ChebyshevSeries::new(coeffs.clone(), (1.0 / kappa, 1.0))?;
    let m = 4000;
    let resid = (0..m)
        .map(|i| 1.0 / kappa + (1.0 - 1.0 / kappa) * i as f64 / (m - 1) as f64)
        .map(|x| (series.eval(x) * x - 1.0).abs())
        .fold(0.0, f64::max);
    Ok((coeffs, resid))
}

/// Build the odd series approximating the scalar inverse over the
/// kappa-conditioned domain with relative error at most eps, searching for
/// the minimal odd degree (galloping bracket, then bisection).
pub fn inverse_coeffs(kappa: f64, eps: f64) -> Result<InverseSeries> {
    if !(kappa > 1.0) {
        return Err(Error::InvalidInput(format!("kappa must exceed 1, got {kappa}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("eps must lie in (0,1), got {eps}")));
    }
    let guess = (0.9 * kappa * (kappa / eps).ln()).ceil() as usize;
    let mut d = (guess | 1).max(3).min(INVERSE_DEGREE_CAP);
    // gallop up to a passing degree
    let mut fail_below = 1usize;
    let pass;
    loop {
        let (coeffs, resid) = fit_inverse_at_degree(kappa, d)?;
        if resid <= eps {
            pass = (d, coeffs, resid);
            break;
        }
        fail_below = d;
        if d >= INVERSE_DEGREE_CAP {
            return Err(Error::DegreeCapExceeded(INVERSE_DEGREE_CAP));
        }
        d = ((d * 3 / 2) | 1).min(INVERSE_DEGREE_CAP);
    }
    // bisect down to the minimal passing odd degree
    let (mut best_d, mut best_coeffs, mut best_resid) = pass;
    let mut lo = fail_below; // known fail (or 1)
    let mut hi = best_d;
    while hi - lo > 2 {
        let mid = (((lo + hi) / 2) | 1).min(hi - 2).max(lo + 2);
        let (coeffs, resid) = fit_inverse_at_degree(kappa, mid)?;
        if resid <= eps {
            hi = mid;
            best_d = mid;
            best_coeffs = coeffs;
            best_resid = resid;
        } else {
            lo = mid;
        }
    }
    let _ = best_d;
    // global rescale so max |P| <= 1 on [-1,1]
    let unscaled = ChebyshevSeries::new(best_coeffs.clone(), (1.0 / kappa, 1.0))?;
    let peak = unscaled.max_abs_on(0.0, 1.0, 8001).max(1.0);
    let gamma = 1.0 / peak;
    let coeffs: Vec<f64> = best_coeffs.iter().map(|c| c * gamma).collect();
    let series = ChebyshevSeries::with_parity(coeffs, Parity::Odd, (1.0 / kappa, 1.0))?;
    Ok(InverseSeries { series, gamma, residual: best_resid })
}

/// Jacobi-Anger expansions of cos(xt) and sin(xt) in Chebyshev polynomials
/// with Bessel-function weights, truncated at the smallest order whose
/// remaining tail is below eps/4 and rescaled by 1/(1 + eps/4).
pub fn jacobi_anger(t: f64, eps: f64) -> Result<(ChebyshevSeries, ChebyshevSeries)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("eps must lie in (0,1), got {eps}")));
    }
    let ta = t.abs();
    let k_max = (std::f64::consts::E * ta).ceil() as usize + 64;
    let j = bessel::sequence(ta, k_max);
    // smallest k' with sum_{k > k'} 2|J_k| <= eps/4
    let mut kp = k_max;
    let mut tail = 0.0;
    for k in (1..=k_max).rev() {
        tail += 2.0 * j[k].abs();
        if tail > eps / 4.0 {
            kp = k;
            break;
        }
        kp = k - 1;
    }
    let kp = kp.max(1);
    let scale = 1.0 / (1.0 + eps / 4.0);
    let sin_sign = if t < 0.0 { -1.0 } else { 1.0 };
    let mut cos_coeffs = vec![0.0; 2 * kp + 1];
    cos_coeffs[0] = j[0] * scale;
    for k in 1..=kp {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        cos_coeffs[2 * k] = 2.0 * sign * j[2 * k] * scale;
    }
    let mut sin_coeffs = vec![0.0; 2 * kp + 2];
    for k in 0..=kp {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sin_coeffs[2 * k + 1] = 2.0 * sign * j[2 * k + 1] * scale * sin_sign;
    }
    let cos_series = ChebyshevSeries::with_parity(cos_coeffs, Parity::Even, (-1.0, 1.0))?;
    let sin_series = ChebyshevSeries::with_parity(sin_coeffs, Parity::Odd, (-1.0, 1.0))?;
    Ok((cos_series, sin_series))
}

/// Bessel functions of the first kind by Miller's downward recurrence.
pub(crate) mod bessel {
    /// J_0(t) ... J_k(t) for t >= 0.
    pub fn sequence(t: f64, k_max: usize) -> Vec<f64> {
        assert!(t >= 0.0);
        if t == 0.0 {
            let mut out = vec![0.0; k_max + 1];
            out[0] = 1.0;
            return out;
        }
        let start = k_max + 20 + t as usize;
        let mut j = vec![0.0f64; start + 2];
        j[start + 1] = 0.0;
        j[start] = 1e-300;
        for k in (1..=start).rev() {
            j[k - 1] = 2.0 * k as f64 / t * j[k] - j[k + 1];
            // rescale to avoid overflow on long recurrences
            if j[k - 1].abs() > 1e250 {
                let s = 1e-250;
                for v in j.iter_mut().skip(k - 1) {
                    *v *= s;
                }
            }
        }
        let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
        j.truncate(k_max + 1);
        for v in &mut j {
            *v /= norm;
        }
        j
    }
}
