//! Circuit construction and execution: ordered gate applications with
//! targets, controls and control states, projective measurement, and
//! seeded shot sampling.
//!
//! Gates are embedded on arbitrary (non-adjacent) qubits by bit-index
//! permutation kernels; the full 2^n x 2^n matrix is never materialized
//! on the execution path.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::linalg::CMatrix;
use crate::state::{BasisIndex, StateVector};

/// One gate application: a gate on `targets`, optionally conditioned on
/// `controls` being in the per-control `control_states` (true = filled
/// circle / control on |1>, false = empty circle / control on |0>).
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub gate: Gate,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub control_states: Vec<bool>,
}

impl GateOp {
    pub fn new(gate: Gate, targets: Vec<usize>) -> Self {
        GateOp { gate, targets, controls: Vec::new(), control_states: Vec::new() }
    }

    pub fn controlled(gate: Gate, targets: Vec<usize>, controls: Vec<usize>, control_states: Vec<bool>) -> Self {
        GateOp { gate, targets, controls, control_states }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.targets.len() != self.gate.num_targets() {
            return Err(Error::InvalidInput(format!(
                "gate {} expects {} target(s), got {}",
                self.gate.name(),
                self.gate.num_targets(),
                self.targets.len()
            )));
        }
        if self.control_states.len() != self.controls.len() {
            return Err(Error::InvalidInput("one control state per control qubit".into()));
        }
        for &q in self.targets.iter().chain(&self.controls) {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { index: q, width: num_qubits });
            }
        }
        let mut seen = vec![false; num_qubits];
        for &q in self.targets.iter().chain(&self.controls) {
            if seen[q] {
                return Err(Error::InvalidInput(format!(
                    "qubit {q} appears twice in targets/controls"
                )));
            }
            seen[q] = true;
        }
        Ok(())
    }

    pub fn dagger(&self) -> GateOp {
        GateOp {
            gate: self.gate.dagger(),
            targets: self.targets.clone(),
            controls: self.controls.clone(),
            control_states: self.control_states.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitOp {
    Gate(GateOp),
    /// Terminal measurement marker over the listed qubits.
    Measure(Vec<usize>),
}

/// An ordered sequence of operations on a fixed-width register,
/// left-to-right time order.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<CircuitOp>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        assert!(num_qubits >= 1, "circuit needs at least one qubit");
        Circuit { num_qubits, ops: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn append(&mut self, op: GateOp) -> &mut Self {
        op.validate(self.num_qubits).expect("invalid gate op");
        self.ops.push(CircuitOp::Gate(op));
        self
    }

    pub fn gate(&mut self, gate: Gate, targets: &[usize]) -> &mut Self {
        self.append(GateOp::new(gate, targets.to_vec()))
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.gate(Gate::H, &[q])
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.gate(Gate::X, &[q])
    }

    pub fn y(&mut self, q: usize) -> &mut Self {
        self.gate(Gate::Y, &[q])
    }

    pub fn z(&mut self, q: usize) -> &mut Self {
        self.gate(Gate::Z, &[q])
    }

    pub fn s(&mut self, q: usize) -> &mut Self {
        self.gate(Gate::S, &[q])
    }

    pub fn rx(&mut self, theta: f64, q: usize) -> &mut Self {
        self.gate(Gate::Rx(theta), &[q])
    }

    pub fn ry(&mut self, theta: f64, q: usize) -> &mut Self {
        self.gate(Gate::Ry(theta), &[q])
    }

    pub fn rz(&mut self, theta: f64, q: usize) -> &mut Self {
        self.gate(Gate::Rz(theta), &[q])
    }

    pub fn p(&mut self, theta: f64, q: usize) -> &mut Self {
        self.gate(Gate::P(theta), &[q])
    }

    pub fn swap(&mut self, a: usize, b: usize) -> &mut Self {
        self.gate(Gate::Swap, &[a, b])
    }

    /// CNOT controlled by `control` (on |1>) targeting `target`.
    pub fn cx(&mut self, control: usize, target: usize) -> &mut Self {
        self.append(GateOp::controlled(Gate::X, vec![target], vec![control], vec![true]))
    }

    /// Controlled phase gate.
    pub fn cp(&mut self, theta: f64, control: usize, target: usize) -> &mut Self {
        self.append(GateOp::controlled(Gate::P(theta), vec![target], vec![control], vec![true]))
    }

    pub fn toffoli(&mut self, c1: usize, c2: usize, target: usize) -> &mut Self {
        self.gate(Gate::Toffoli, &[c1, c2, target])
    }

    pub fn measure(&mut self, qubits: &[usize]) -> &mut Self {
        for &q in qubits {
            assert!(q < self.num_qubits, "measured qubit out of range");
        }
        self.ops.push(CircuitOp::Measure(qubits.to_vec()));
        self
    }

    pub fn measure_all(&mut self) -> &mut Self {
        let all: Vec<usize> = (0..self.num_qubits).collect();
        self.measure(&all)
    }

    pub fn extend(&mut self, other: &Circuit) -> &mut Self {
        assert_eq!(self.num_qubits, other.num_qubits, "circuit widths differ");
        self.ops.extend(other.ops.iter().cloned());
        self
    }

    pub fn has_measurements(&self) -> bool {
        self.ops.iter().any(|op| matches!(op, CircuitOp::Measure(_)))
    }

    /// Hermitian conjugates of the gates in reverse order. Measurements are
    /// not reversible, so circuits containing markers are rejected.
    pub fn inverse(&self) -> Result<Circuit> {
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in self.ops.iter().rev() {
            match op {
                CircuitOp::Gate(g) => ops.push(CircuitOp::Gate(g.dagger())),
                CircuitOp::Measure(_) => return Err(Error::MeasurementInCircuit),
            }
        }
        Ok(Circuit { num_qubits: self.num_qubits, ops })
    }

    /// The full unitary of a measurement-free circuit, built column by
    /// column. Desk-scale helper and test oracle; refuses very wide
    /// registers.
    pub fn unitary(&self) -> Result<CMatrix> {
        if self.num_qubits > 12 {
            return Err(Error::InvalidInput("circuit too wide to materialize".into()));
        }
        let dim = 1usize << self.num_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let s = StateVector::basis(self.num_qubits, BasisIndex(col))?;
            let out = run(self, &s)?;
            for row in 0..dim {
                m[(row, col)] = out.amplitudes()[row];
            }
        }
        Ok(m)
    }
}

/// Apply one gate operation to a state.
pub fn apply(state: &StateVector, op: &GateOp) -> Result<StateVector> {
    let n = state.num_qubits();
    op.validate(n)?;
    let mut amps = state.amplitudes().to_vec();
    apply_in_place(&mut amps, n, op);
    Ok(StateVector::from_raw_normalized(n, amps))
}

fn apply_in_place(amps: &mut [Complex64], num_qubits: usize, op: &GateOp) {
    let g = op.gate.matrix();
    let k = g.num_qubits();
    let gm = g.matrix();
    let gdim = 1usize << k;

    // big-endian: qubit q occupies bit (n-1-q) of the basis index
    let tbits: Vec<usize> = op.targets.iter().map(|&q| num_qubits - 1 - q).collect();
    let tmask: usize = tbits.iter().map(|&b| 1usize << b).sum();
    let cmask: usize = op.controls.iter().map(|&q| 1usize << (num_qubits - 1 - q)).sum();
    let cpattern: usize = op
        .controls
        .iter()
        .zip(&op.control_states)
        .filter(|(_, &s)| s)
        .map(|(&q, _)| 1usize << (num_qubits - 1 - q))
        .sum();

    let mut gathered = vec![Complex64::new(0.0, 0.0); gdim];
    let mut idx = vec![0usize; gdim];
    for base in 0..amps.len() {
        if base & tmask != 0 || base & cmask != cpattern {
            continue;
        }
        for (j, slot) in idx.iter_mut().enumerate() {
            let mut i = base;
            for (pos, &tb) in tbits.iter().enumerate() {
                if (j >> (k - 1 - pos)) & 1 == 1 {
                    i |= 1 << tb;
                }
            }
            *slot = i;
        }
        for (j, g_row) in gathered.iter_mut().enumerate() {
            *g_row = amps[idx[j]];
        }
        for (row, &i) in idx.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, &a) in gathered.iter().enumerate() {
                acc += gm[(row, col)] * a;
            }
            amps[i] = acc;
        }
    }
}

/// Run a measurement-free circuit on an initial state.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if initial.num_qubits() != circuit.num_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "circuit width {} vs state width {}",
            circuit.num_qubits(),
            initial.num_qubits()
        )));
    }
    let mut amps = initial.amplitudes().to_vec();
    for op in circuit.ops() {
        match op {
            CircuitOp::Gate(g) => {
                g.validate(circuit.num_qubits())?;
                apply_in_place(&mut amps, circuit.num_qubits(), g);
            }
            CircuitOp::Measure(_) => return Err(Error::MeasurementInCircuit),
        }
    }
    Ok(StateVector::from_raw_normalized(circuit.num_qubits(), amps))
}

/// Probability of measuring `outcome` on `qubit` together with the
/// renormalized post-measurement state. Deterministic projection.
pub fn measure_outcome(state: &StateVector, qubit: usize, outcome: u8) -> Result<(f64, StateVector)> {
    let n = state.num_qubits();
    if qubit >= n {
        return Err(Error::QubitOutOfRange { index: qubit, width: n });
    }
    let bit = n - 1 - qubit;
    let want = outcome as usize & 1;
    let mut p = 0.0;
    for (i, a) in state.amplitudes().iter().enumerate() {
        if (i >> bit) & 1 == want {
            p += a.norm_sqr();
        }
    }
    let mut amps = state.amplitudes().to_vec();
    if p > 0.0 {
        let scale = 1.0 / p.sqrt();
        for (i, a) in amps.iter_mut().enumerate() {
            if (i >> bit) & 1 == want {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok((p, StateVector::from_raw_normalized(n, amps)))
}

/// Sample one projective measurement of `qubit` in the computational basis.
/// Returns the outcome, its Born probability, and the collapsed state;
/// measuring the collapsed state again repeats the outcome with certainty.
pub fn measure(state: &StateVector, qubit: usize, rng: &mut impl RngCore) -> Result<(u8, f64, StateVector)> {
    let (p0, _) = measure_outcome(state, qubit, 0)?;
    let outcome = if rng.gen::<f64>() < p0 { 0u8 } else { 1u8 };
    let (p, post) = measure_outcome(state, qubit, outcome)?;
    Ok((outcome, p, post))
}

/// Measurement statistics over shots.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
    pub bit_order: BitOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOrder {
    BigEndian,
    LittleEndian,
}

impl BitOrder {
    pub fn as_str(&self) -> &'static str {
        match self {
            BitOrder::BigEndian => "big-endian",
            BitOrder::LittleEndian => "little-endian",
        }
    }
}

impl Histogram {
    /// Observed frequency of an outcome key.
    pub fn frequency(&self, key: &str) -> f64 {
        *self.counts.get(key).unwrap_or(&0) as f64 / self.shots as f64
    }
}

/// Reverse every outcome bitstring (counts preserved, order tag flipped).
pub fn endianness_convert(h: &Histogram) -> Histogram {
    let counts = h
        .counts
        .iter()
        .map(|(k, &v)| (k.chars().rev().collect::<String>(), v))
        .collect();
    Histogram {
        shots: h.shots,
        counts,
        bit_order: match h.bit_order {
            BitOrder::BigEndian => BitOrder::LittleEndian,
            BitOrder::LittleEndian => BitOrder::BigEndian,
        },
    }
}

/// Execute the gate prefix of `circuit` from |0...0>, then sample the
/// terminal measurement markers `shots` times.
///
/// Each shot draws from its own counter-based stream derived from
/// (seed, shot index), so the counts are reproducible bit-for-bit and
/// independent of any parallel scheduling.
pub fn sample(circuit: &Circuit, shots: u64, seed: u64) -> Result<Histogram> {
    sample_from(circuit, &StateVector::zero(circuit.num_qubits())?, shots, seed)
}

/// `sample` with an explicit initial state.
pub fn sample_from(
    circuit: &Circuit,
    initial: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidInput("shots must be >= 1".into()));
    }
    if initial.num_qubits() != circuit.num_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "circuit width {} vs state width {}",
            circuit.num_qubits(),
            initial.num_qubits()
        )));
    }
    let mut gates: Vec<&GateOp> = Vec::new();
    let mut measured: Vec<usize> = Vec::new();
    let mut seen_measure = false;
    for op in circuit.ops() {
        match op {
            CircuitOp::Gate(g) => {
                if seen_measure {
                    return Err(Error::GateAfterMeasurement);
                }
                gates.push(g);
            }
            CircuitOp::Measure(qs) => {
                seen_measure = true;
                for &q in qs {
                    if !measured.contains(&q) {
                        measured.push(q);
                    }
                }
            }
        }
    }
    if measured.is_empty() {
        return Err(Error::NoMeasurement);
    }
    measured.sort_unstable();

    let n = circuit.num_qubits();
    let mut amps = initial.amplitudes().to_vec();
    for g in gates {
        g.validate(n)?;
        apply_in_place(&mut amps, n, g);
    }

    // cumulative distribution over full basis indices
    let mut cdf = Vec::with_capacity(amps.len());
    let mut acc = 0.0;
    for a in &amps {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    let total = acc;

    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for shot in 0..shots {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shot);
        let u: f64 = rng.gen::<f64>() * total;
        let idx = cdf.partition_point(|&c| c <= u).min(amps.len() - 1);
        let key: String = measured
            .iter()
            .map(|&q| if (idx >> (n - 1 - q)) & 1 == 1 { '1' } else { '0' })
            .collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(Histogram { shots, counts, bit_order: BitOrder::BigEndian })
}
