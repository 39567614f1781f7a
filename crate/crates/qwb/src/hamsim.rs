//! Approximations of exp(-iHt): 1st- and 2nd-order Suzuki-Trotter product
//! formulas, the truncated-Taylor LCU route, and Jacobi-Anger / signal
//! processing simulation. The sign convention is exp(-iHt) throughout.
//!
//! First order:  exp(-iHt) ~ [prod_j exp(-i H_j t/r)]^r, error O(t^2/r).
//! Second order: symmetric half-steps per slice, error O(t^3/r^2).

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::encodings::{block_encode_hermitian, BlockEncoding, Pauli, PauliString, PauliSum};
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::linalg::{self, CMatrix};
use crate::poly::jacobi_anger;
use crate::state::StateVector;
use crate::subroutines::{lcu_assemble, postselect_top_block, UnitaryTermSum};
use crate::tol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Hamiltonian either as a weighted Pauli-string sum (the H_j
/// decomposition the product formulas act on) or as a dense matrix.
#[derive(Debug, Clone)]
pub enum HamiltonianTerms {
    Pauli(PauliSum),
    Dense(CMatrix),
}

/// A Hamiltonian-simulation task: the operator, the evolution time, and the
/// per-route accuracy knobs (Trotter steps r, Taylor truncation K, or a
/// target tolerance).
#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    terms: HamiltonianTerms,
    pub t: f64,
    /// Trotter steps / Taylor segments.
    pub steps: Option<usize>,
    /// Taylor series truncation order K.
    pub truncation: Option<usize>,
    pub eps: Option<f64>,
}

impl HamiltonianSpec {
    pub fn from_pauli_sum(sum: PauliSum, t: f64) -> Result<Self> {
        let dense = crate::encodings::pauli_reconstruct(&sum);
        let defect = linalg::hermitian_defect(&dense);
        if defect > tol::HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(HamiltonianSpec {
            terms: HamiltonianTerms::Pauli(sum),
            t,
            steps: None,
            truncation: None,
            eps: None,
        })
    }

    pub fn from_dense(m: CMatrix, t: f64) -> Result<Self> {
        let defect = linalg::hermitian_defect(&m);
        if defect > tol::HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(HamiltonianSpec { terms: HamiltonianTerms::Dense(m), t, steps: None, truncation: None, eps: None })
    }

    pub fn with_steps(mut self, r: usize) -> Self {
        self.steps = Some(r);
        self
    }

    pub fn with_truncation(mut self, k: usize) -> Self {
        self.truncation = Some(k);
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn terms(&self) -> &HamiltonianTerms {
        &self.terms
    }

    pub fn pauli_sum(&self) -> Result<&PauliSum> {
        match &self.terms {
            HamiltonianTerms::Pauli(s) => Ok(s),
            HamiltonianTerms::Dense(_) => {
                Err(Error::InvalidInput("this route needs a Pauli-sum Hamiltonian".into()))
            }
        }
    }

    pub fn matrix(&self) -> CMatrix {
        match &self.terms {
            HamiltonianTerms::Pauli(s) => crate::encodings::pauli_reconstruct(s),
            HamiltonianTerms::Dense(m) => m.clone(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        match &self.terms {
            HamiltonianTerms::Pauli(s) => s.num_qubits(),
            HamiltonianTerms::Dense(m) => linalg::log2(m.nrows()),
        }
    }
}

/// exp(-iHt) through the eigendecomposition; the reference every
/// approximate route is tested against.
pub fn exact_unitary(h: &CMatrix, t: f64) -> Result<CMatrix> {
    linalg::hermitian_func(h, |w| Complex64::from_polar(1.0, -w * t))
}

/// Circuit realizing exp(-i theta P) for a Pauli string P: basis-change
/// conjugation (H for X, Rx(+-pi/2) for Y), a CNOT ladder onto the last
/// non-identity qubit, Rz(2 theta), and the reverse. The identity string
/// is a global phase, not a gate, and is rejected.
pub fn pauli_string_exp(s: &PauliString, theta: f64) -> Result<Circuit> {
    if s.is_identity() {
        return Err(Error::IdentityPauliExp);
    }
    let n = s.len();
    let mut qc = Circuit::new(n);
    let involved: Vec<usize> = (0..n).filter(|&q| s.0[q] != Pauli::I).collect();
    // conjugate into the Z basis
    for &q in &involved {
        match s.0[q] {
            Pauli::X => {
                qc.h(q);
            }
            Pauli::Y => {
                qc.rx(std::f64::consts::FRAC_PI_2, q);
            }
            _ => {}
        }
    }
    // parity ladder onto the pivot
    let pivot = *involved.last().expect("nonidentity string");
    for w in involved.windows(2) {
        qc.cx(w[0], w[1]);
    }
    qc.rz(2.0 * theta, pivot);
    for w in involved.windows(2).rev() {
        qc.cx(w[0], w[1]);
    }
    for &q in &involved {
        match s.0[q] {
            Pauli::X => {
                qc.h(q);
            }
            Pauli::Y => {
                qc.rx(-std::f64::consts::FRAC_PI_2, q);
            }
            _ => {}
        }
    }
    Ok(qc)
}

/// One Trotter factor exp(-i coef tau P): single-qubit strings become bare
/// rotation gates, longer strings go through the ladder construction, and
/// identity terms contribute a tracked global phase.
fn append_term_exp(qc: &mut Circuit, string: &PauliString, theta: f64) -> Result<()> {
    if string.is_identity() {
        qc.gate(Gate::GlobalPhase(-theta), &[0]);
        return Ok(());
    }
    let involved: Vec<usize> = (0..string.len()).filter(|&q| string.0[q] != Pauli::I).collect();
    if involved.len() == 1 {
        let q = involved[0];
        match string.0[q] {
            Pauli::X => qc.rx(2.0 * theta, q),
            Pauli::Y => qc.ry(2.0 * theta, q),
            Pauli::Z => qc.rz(2.0 * theta, q),
            Pauli::I => unreachable!(),
        };
        return Ok(());
    }
    qc.extend(&pauli_string_exp(string, theta)?);
    Ok(())
}

fn real_coefficients(sum: &PauliSum) -> Result<Vec<(f64, &PauliString)>> {
    let mut out = Vec::with_capacity(sum.terms().len());
    for (coef, string) in sum.terms() {
        if coef.im.abs() > tol::COEFF_DROP {
            return Err(Error::NotHermitian(coef.im.abs()));
        }
        out.push((coef.re, string));
    }
    Ok(out)
}

/// First-order product formula: r repetitions of prod_j exp(-i c_j H_j t/r).
pub fn trotter1(spec: &HamiltonianSpec) -> Result<Circuit> {
    let sum = spec.pauli_sum()?;
    let terms = real_coefficients(sum)?;
    let r = spec.steps.unwrap_or(1).max(1);
    let tau = spec.t / r as f64;
    let mut qc = Circuit::new(sum.num_qubits());
    for _ in 0..r {
        for (coef, string) in &terms {
            append_term_exp(&mut qc, string, coef * tau)?;
        }
    }
    Ok(qc)
}

/// Second-order (symmetric) product formula: forward half-steps, a full
/// step on the last term, and the mirrored half-steps.
pub fn trotter2(spec: &HamiltonianSpec) -> Result<Circuit> {
    let sum = spec.pauli_sum()?;
    let terms = real_coefficients(sum)?;
    let r = spec.steps.unwrap_or(1).max(1);
    let tau = spec.t / r as f64;
    let mut qc = Circuit::new(sum.num_qubits());
    let last = terms.len() - 1;
    for _ in 0..r {
        for (coef, string) in &terms[..last] {
            append_term_exp(&mut qc, string, coef * tau / 2.0)?;
        }
        append_term_exp(&mut qc, terms[last].1, terms[last].0 * tau)?;
        for (coef, string) in terms[..last].iter().rev() {
            append_term_exp(&mut qc, string, coef * tau / 2.0)?;
        }
    }
    Ok(qc)
}

/// Default Taylor truncation: smallest K with
/// (tau ||alpha||_1)^(K+1) / (K+1)! <= eps.
fn default_truncation(tau: f64, coeff_norm: f64, eps: f64) -> usize {
    let x = (tau * coeff_norm).abs();
    let mut term = 1.0f64;
    for k in 0..=40usize {
        term *= x / (k + 1) as f64;
        if term <= eps {
            return k.max(1);
        }
    }
    40
}

/// Truncated-Taylor simulation: per segment, the series
/// sum_{k<=K} (-i t/r)^k / k! (sum_l alpha_l H_l)^k is expanded over Pauli
/// string products, merged in the Pauli algebra, and applied as one LCU;
/// segments repeat r times with the postselection probabilities multiplied.
pub fn taylor_sim(spec: &HamiltonianSpec, state: &StateVector) -> Result<(StateVector, f64)> {
    let sum = spec.pauli_sum()?;
    let terms = real_coefficients(sum)?;
    if state.num_qubits() != sum.num_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "state width {} vs Hamiltonian width {}",
            state.num_qubits(),
            sum.num_qubits()
        )));
    }
    let r = spec.steps.unwrap_or(1).max(1);
    let tau = spec.t / r as f64;
    let coeff_norm: f64 = terms.iter().map(|(a, _)| a.abs()).sum();
    let k_max = spec
        .truncation
        .unwrap_or_else(|| default_truncation(tau, coeff_norm, spec.eps.unwrap_or(1e-10)));

    // expand the series over merged Pauli products
    let identity = PauliString(vec![Pauli::I; sum.num_qubits()]);
    let mut merged: std::collections::BTreeMap<String, (Complex64, PauliString)> =
        std::collections::BTreeMap::new();
    merged.insert(identity.to_string(), (c(1.0, 0.0), identity.clone()));
    let mut layer: Vec<(Complex64, PauliString)> = vec![(c(1.0, 0.0), identity)];
    let mut scalar = c(1.0, 0.0);
    for k in 1..=k_max {
        scalar *= c(0.0, -tau) / k as f64;
        let mut next: std::collections::BTreeMap<String, (Complex64, PauliString)> =
            std::collections::BTreeMap::new();
        for (coef, string) in &layer {
            for (alpha, h) in &terms {
                let (phase, product) = string.mul(h)?;
                let entry = next
                    .entry(product.to_string())
                    .or_insert_with(|| (c(0.0, 0.0), product.clone()));
                entry.0 += coef * alpha * phase;
            }
        }
        layer = next.into_values().collect();
        for (coef, string) in &layer {
            let entry = merged
                .entry(string.to_string())
                .or_insert_with(|| (c(0.0, 0.0), string.clone()));
            entry.0 += scalar * coef;
        }
    }
    let scale: f64 = merged.values().map(|(a, _)| a.norm()).fold(0.0, f64::max);
    let lcu_terms: Vec<(Complex64, CMatrix)> = merged
        .into_values()
        .filter(|(a, _)| a.norm() > 1e-15 * scale)
        .map(|(a, s)| (a, s.matrix()))
        .collect();
    let uts = UnitaryTermSum::new(lcu_terms)?;

    let mut out = state.clone();
    let mut success = 1.0;
    for _ in 0..r {
        let (next, p) = crate::subroutines::lcu_apply(&uts, &out)?;
        out = next;
        success *= p;
    }
    Ok((out, success))
}

/// Signal-processing simulation of exp(-iHt) from a block-encoding of a
/// Hermitian H. When H is not positive definite the shifted
/// H+ = (H/alpha + I)/2 is simulated for the doubled time 2 alpha t, which
/// matches exp(-iHt) up to the global phase exp(-i alpha t); the phase is
/// restored on the returned state. The cosine and sine Jacobi-Anger series
/// are each block-encoded and combined with one LCU with coefficients
/// (1, -i).
pub fn qsp_sim(
    be: &BlockEncoding,
    t: f64,
    eps: f64,
    state: &StateVector,
) -> Result<(StateVector, f64)> {
    if state.dim() != be.system_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs encoded system dim {}",
            state.dim(),
            be.system_dim()
        )));
    }
    let block = be.block();
    let defect = linalg::hermitian_defect(block);
    if defect > tol::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let (vals, _) = linalg::hermitian_eigen(block)?;
    let positive = vals.iter().all(|&v| v > 0.0);
    let dim = block.nrows();
    let (h_sim, tau, phase_restore) = if positive {
        (block.clone(), be.alpha() * t, c(1.0, 0.0))
    } else {
        let mut shifted = block.clone();
        shifted += linalg::identity(dim);
        shifted /= c(2.0, 0.0);
        (shifted, 2.0 * be.alpha() * t, Complex64::from_polar(1.0, be.alpha() * t))
    };
    let (cos_s, sin_s) = jacobi_anger(tau, eps)?;

    let beta_cos = cos_s.one_norm();
    let beta_sin = sin_s.one_norm();
    let mut terms: Vec<(Complex64, CMatrix)> = Vec::new();
    let cos_matrix = series_matrix_public(&h_sim, &cos_s);
    let be_cos = block_encode_hermitian(&cos_matrix, Some(beta_cos))?;
    terms.push((c(beta_cos, 0.0), be_cos.unitary().clone()));
    if beta_sin > tol::COEFF_DROP {
        let sin_matrix = series_matrix_public(&h_sim, &sin_s);
        let be_sin = block_encode_hermitian(&sin_matrix, Some(beta_sin))?;
        terms.push((c(0.0, -beta_sin), be_sin.unitary().clone()));
    }
    let uts = UnitaryTermSum::new(terms)?;
    let (full, _, _) = lcu_assemble(&uts);
    let (out, success) = postselect_top_block(&full, state)?;
    let restored: Vec<Complex64> =
        out.amplitudes().iter().map(|a| a * phase_restore).collect();
    Ok((StateVector::from_raw_normalized(state.num_qubits(), restored), success))
}

/// sum c_k T_k(M) via the Clenshaw-style matrix recursion (shared with the
/// polynomial module's internal path).
fn series_matrix_public(m: &CMatrix, series: &crate::poly::ChebyshevSeries) -> CMatrix {
    let dim = m.nrows();
    let coeffs = series.coefficients();
    let mut acc = CMatrix::zeros(dim, dim);
    let mut t_prev = linalg::identity(dim);
    let mut t_cur = m.clone();
    if coeffs[0] != 0.0 {
        acc += &t_prev * c(coeffs[0], 0.0);
    }
    for (k, &ck) in coeffs.iter().enumerate().skip(1) {
        if ck != 0.0 {
            acc += &t_cur * c(ck, 0.0);
        }
        if k + 1 < coeffs.len() {
            let mut next = linalg::matmul(m, &t_cur) * c(2.0, 0.0);
            next -= &t_prev;
            t_prev = t_cur;
            t_cur = next;
        }
    }
    acc
}
