//! Algorithmic primitives: quantum Fourier transform, phase estimation,
//! amplitude amplification and Grover search, and the linear combination
//! of unitaries (PREPARE / SELECT) subroutine.

use num_complex::Complex64;

use crate::circuit::{sample_from, Circuit, GateOp, Histogram};
use crate::error::{Error, Result};
use crate::gates::{state_prep_unitary, Gate, GateMatrix};
use crate::linalg::{self, CMatrix};
use crate::state::{BasisIndex, StateVector};
use crate::tol;

/// Gate-level quantum Fourier transform on `n` qubits: Hadamards and
/// controlled phase rotations in product form, followed by the reindexing
/// swaps, so the circuit unitary equals the DFT matrix with entries
/// exp(2 pi i j k / N) / sqrt(N).
pub fn qft(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut qc = Circuit::new(n);
    for target in 0..n {
        qc.h(target);
        for k in 2..=(n - target) {
            let control = target + k - 1;
            qc.cp(2.0 * std::f64::consts::PI / (1u64 << k) as f64, control, target);
        }
    }
    for i in 0..n / 2 {
        qc.swap(i, n - 1 - i);
    }
    qc
}

/// Inverse quantum Fourier transform; `iqft(n)` composed with `qft(n)` is
/// the identity.
pub fn iqft(n: usize) -> Circuit {
    qft(n).inverse().expect("qft contains no measurements")
}

/// Result of phase estimation: the binary-fraction readout together with
/// the full sampled distribution over ancilla outcomes.
#[derive(Debug, Clone)]
pub struct PhaseEstimate {
    /// Most frequent outcome divided by 2^num_bits.
    pub phase: f64,
    pub num_bits: usize,
    pub distribution: Histogram,
}

fn qpe_circuit(u: &GateMatrix, m_bits: usize, system_qubits: usize) -> Result<Circuit> {
    let width = m_bits + system_qubits;
    let mut qc = Circuit::new(width);
    for a in 0..m_bits {
        qc.h(a);
    }
    // ancilla j (big-endian) controls U^(2^(m-1-j))
    let system: Vec<usize> = (m_bits..width).collect();
    let mut power = u.matrix().clone();
    for j in (0..m_bits).rev() {
        qc.append(GateOp::controlled(
            Gate::Unitary(GateMatrix::new(power.clone())?),
            system.clone(),
            vec![j],
            vec![true],
        ));
        if j > 0 {
            power = linalg::matmul(&power, &power);
        }
    }
    // inverse QFT on the ancilla register (qubits 0..m_bits)
    for op in iqft(m_bits).ops() {
        if let crate::circuit::CircuitOp::Gate(g) = op {
            qc.append(g.clone());
        }
    }
    Ok(qc)
}

/// Phase estimation of a unitary on an (approximate) eigenstate:
/// Hadamard-prepared ancillas, a controlled-U^(2^j) ladder, inverse QFT,
/// and ancilla readout. For a phase exactly representable in `m_bits`
/// bits the outcome is deterministic; other states give mixed
/// distributions.
pub fn phase_estimate(
    u: &GateMatrix,
    eigenstate: &StateVector,
    m_bits: usize,
    shots: u64,
    seed: u64,
) -> Result<PhaseEstimate> {
    if m_bits == 0 {
        return Err(Error::InvalidInput("phase estimation needs at least one ancilla bit".into()));
    }
    if u.dim() != eigenstate.dim() {
        return Err(Error::DimensionMismatch(format!(
            "unitary dim {} vs state dim {}",
            u.dim(),
            eigenstate.dim()
        )));
    }
    let mut qc = qpe_circuit(u, m_bits, eigenstate.num_qubits())?;
    let ancillas: Vec<usize> = (0..m_bits).collect();
    qc.measure(&ancillas);
    let initial = StateVector::zero(m_bits)?.kron(eigenstate);
    let distribution = sample_from(&qc, &initial, shots, seed)?;
    let best = distribution
        .counts
        .iter()
        .max_by_key(|(_, &c)| c)
        .map(|(k, _)| k.clone())
        .unwrap_or_default();
    let outcome = usize::from_str_radix(&best, 2)
        .map_err(|_| Error::InvalidInput("non-binary histogram key".into()))?;
    Ok(PhaseEstimate {
        phase: outcome as f64 / (1u64 << m_bits) as f64,
        num_bits: m_bits,
        distribution,
    })
}

/// Exact ancilla-outcome probabilities of the phase-estimation circuit
/// (statevector, no sampling noise).
pub fn phase_estimate_probabilities(
    u: &GateMatrix,
    eigenstate: &StateVector,
    m_bits: usize,
) -> Result<Vec<f64>> {
    let qc = qpe_circuit(u, m_bits, eigenstate.num_qubits())?;
    let initial = StateVector::zero(m_bits)?.kron(eigenstate);
    let out = crate::circuit::run(&qc, &initial)?;
    let sys_dim = eigenstate.dim();
    let mut probs = vec![0.0; 1 << m_bits];
    for (i, a) in out.amplitudes().iter().enumerate() {
        probs[i / sys_dim] += a.norm_sqr();
    }
    Ok(probs)
}

/// Diagonal reflection that flips the sign of the flagged basis states:
/// I - 2 sum_{i in good} |i><i| (Householder form).
fn reflection_about_good(n: usize, good: &dyn Fn(usize) -> bool) -> GateOp {
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(if good(i) { -1.0 } else { 1.0 }, 0.0);
    }
    GateOp::new(
        Gate::Unitary(GateMatrix::new(m).expect("diagonal +-1 is unitary")),
        (0..n).collect(),
    )
}

/// 2|0><0| - I, the zero-state reflection with the amplification sign
/// folded in.
fn reflection_about_zero(n: usize) -> GateOp {
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(if i == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    GateOp::new(
        Gate::Unitary(GateMatrix::new(m).expect("diagonal +-1 is unitary")),
        (0..n).collect(),
    )
}

/// Append `k` amplitude-amplification iterations to a preparation circuit.
///
/// Each iteration applies Q = (prep)(2|0><0| - I)(prep^dag) S_good, the
/// product of two reflections; after k iterations the success amplitude on
/// the flagged subspace follows sin((2k+1) theta) with sin(theta) = sqrt(p).
pub fn amplitude_amplify(
    prep: &Circuit,
    good: &dyn Fn(usize) -> bool,
    k: usize,
) -> Result<Circuit> {
    if prep.has_measurements() {
        return Err(Error::MeasurementInCircuit);
    }
    let n = prep.num_qubits();
    let mut qc = prep.clone();
    let prep_inv = prep.inverse()?;
    let s_good = reflection_about_good(n, good);
    let neg_s0 = reflection_about_zero(n);
    for _ in 0..k {
        qc.append(s_good.clone());
        qc.extend(&prep_inv);
        qc.append(neg_s0.clone());
        qc.extend(prep);
    }
    Ok(qc)
}

/// Grover search: amplitude amplification with a uniform-superposition
/// preparation and a single marked basis state. The returned circuit ends
/// with a full measurement; the optimal iteration count is about
/// floor(pi/4 sqrt(N)).
pub fn grover(n: usize, marked: BasisIndex, k: usize) -> Result<Circuit> {
    BasisIndex::checked(marked.0, n)?;
    let mut prep = Circuit::new(n);
    for q in 0..n {
        prep.h(q);
    }
    let mut qc = amplitude_amplify(&prep, &|i| i == marked.0, k)?;
    qc.measure_all();
    Ok(qc)
}

/// A weighted sum of same-dimension unitaries, sum_l alpha_l U_l.
/// Coefficients may be complex; phases are absorbed into the unitaries
/// before PREPARE so the prepared amplitudes use nonnegative magnitudes.
#[derive(Debug, Clone)]
pub struct UnitaryTermSum {
    terms: Vec<(Complex64, CMatrix)>,
    dim: usize,
}

impl UnitaryTermSum {
    pub fn new(terms: Vec<(Complex64, CMatrix)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("term sum must be nonempty".into()));
        }
        let dim = terms[0].1.nrows();
        if !linalg::is_power_of_two(dim) {
            return Err(Error::DimensionMismatch(format!("unitary dimension {dim}")));
        }
        for (_, u) in &terms {
            if u.nrows() != dim || u.ncols() != dim {
                return Err(Error::DimensionMismatch("all terms must share a dimension".into()));
            }
            let defect = linalg::unitarity_defect(u);
            if defect > tol::UNITARY_TOL {
                return Err(Error::NotUnitary(defect));
            }
        }
        Ok(UnitaryTermSum { terms, dim })
    }

    pub fn terms(&self) -> &[(Complex64, CMatrix)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// l1 norm of the coefficients, the LCU subnormalization.
    pub fn coeff_one_norm(&self) -> f64 {
        self.terms.iter().map(|(a, _)| a.norm()).sum()
    }
}

/// Assemble the full (PREPARE^dag x I)(SELECT)(PREPARE x I) unitary.
/// Returns (unitary, ancilla count m, subnormalization alpha).
pub(crate) fn lcu_assemble(sum: &UnitaryTermSum) -> (CMatrix, usize, f64) {
    let l = sum.terms.len();
    let m = if l <= 1 { 0 } else { (l - 1).ilog2() as usize + 1 };
    let branches = 1usize << m;
    let alpha: f64 = sum.coeff_one_norm();
    let dim = sum.dim;

    // phase absorption: branch unitary V_l = (alpha_l/|alpha_l|) U_l
    let mut amplitudes = vec![0.0f64; branches];
    let mut select = CMatrix::zeros(branches * dim, branches * dim);
    for (l_idx, (coef, u)) in sum.terms.iter().enumerate() {
        let mag = coef.norm();
        amplitudes[l_idx] = (mag / alpha).sqrt();
        let phase = if mag > 0.0 { coef / mag } else { Complex64::new(1.0, 0.0) };
        for r in 0..dim {
            for cc in 0..dim {
                select[(l_idx * dim + r, l_idx * dim + cc)] = phase * u[(r, cc)];
            }
        }
    }
    // zero-padded branches select the identity
    for l_idx in l..branches {
        for r in 0..dim {
            select[(l_idx * dim + r, l_idx * dim + r)] = Complex64::new(1.0, 0.0);
        }
    }
    if m == 0 {
        return (select, 0, alpha);
    }
    let prep = state_prep_unitary(&amplitudes);
    let eye = linalg::identity(dim);
    let prep_full = linalg::kron(&prep, &eye);
    let full = linalg::matmul(
        &linalg::matmul(&linalg::kron(&linalg::dagger(&prep), &eye), &select),
        &prep_full,
    );
    (full, m, alpha)
}

/// Apply sum_l alpha_l U_l / ||alpha||_1 to a state by PREPARE / SELECT /
/// PREPARE^dag with postselection of the ancilla register on all-zeros.
/// Returns the renormalized system state and the postselection probability.
pub fn lcu_apply(sum: &UnitaryTermSum, state: &StateVector) -> Result<(StateVector, f64)> {
    if sum.dim != state.dim() {
        return Err(Error::DimensionMismatch(format!(
            "terms are {}-dimensional, state is {}-dimensional",
            sum.dim,
            state.dim()
        )));
    }
    let (full, _m, _alpha) = lcu_assemble(sum);
    postselect_top_block(&full, state)
}

/// Apply `unitary` to |0^m> (x) |state> and postselect the ancillas on
/// all-zeros; the ancillas are the most significant qubits.
pub(crate) fn postselect_top_block(
    unitary: &CMatrix,
    state: &StateVector,
) -> Result<(StateVector, f64)> {
    let dim = state.dim();
    let full_dim = unitary.nrows();
    debug_assert_eq!(full_dim % dim, 0);
    let mut block = vec![Complex64::new(0.0, 0.0); dim];
    // only the first `dim` columns of `unitary` act on |0^m> (x) psi
    for (row, b) in block.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (col, a) in state.amplitudes().iter().enumerate() {
            acc += unitary[(row, col)] * a;
        }
        *b = acc;
    }
    let success: f64 = block.iter().map(|z| z.norm_sqr()).sum();
    if success < tol::POSTSELECT_MIN {
        return Err(Error::PostselectionFailed(success));
    }
    Ok((StateVector::from_raw_normalized(state.num_qubits(), block), success))
}
