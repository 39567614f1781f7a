//! Dense register states and the primitive linear-algebra operations on them.
//!
//! A register of n qubits is a normalized vector of 2^n complex amplitudes.
//! Bit order is big-endian throughout: qubit 0 is the leftmost position in a
//! ket and the most significant bit of a basis index.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Index of a computational basis state, big-endian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisIndex(pub usize);

impl BasisIndex {
    pub fn checked(index: usize, num_qubits: usize) -> Result<Self> {
        if index >= (1usize << num_qubits) {
            return Err(Error::InvalidInput(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        Ok(BasisIndex(index))
    }

    /// Reverse the n-bit pattern (big-endian <-> little-endian relabeling).
    pub fn endianness_convert(self, num_qubits: usize) -> Self {
        let mut out = 0usize;
        for b in 0..num_qubits {
            if self.0 >> b & 1 == 1 {
                out |= 1 << (num_qubits - 1 - b);
            }
        }
        BasisIndex(out)
    }

    /// Big-endian bitstring of width n.
    pub fn bitstring(self, num_qubits: usize) -> String {
        (0..num_qubits)
            .map(|q| if self.0 >> (num_qubits - 1 - q) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Normalized state of a register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros state |0...0>.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// A single basis state |index>.
    pub fn basis(num_qubits: usize, index: BasisIndex) -> Result<Self> {
        let mut s = Self::zero(num_qubits)?;
        BasisIndex::checked(index.0, num_qubits)?;
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[index.0] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Build from raw amplitudes; length must be a power of two and the
    /// vector must already satisfy the Born rule.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() < 2 || !crate::linalg::is_power_of_two(amps.len()) {
            return Err(Error::DimensionMismatch(format!(
                "amplitude array length {} is not a power of two >= 2",
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > tol::NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(StateVector { num_qubits: crate::linalg::log2(amps.len()), amps })
    }

    /// Amplitude encoding of an arbitrary vector: zero-pad at the tail to the
    /// next power of two, then divide by the 2-norm.
    pub fn amplitude_encode(entries: &[Complex64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroVector);
        }
        if entries.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm2: f64 = entries.iter().map(|a| a.norm_sqr()).sum();
        if norm2 == 0.0 {
            return Err(Error::ZeroVector);
        }
        let dim = entries.len().next_power_of_two().max(2);
        let norm = norm2.sqrt();
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for (i, e) in entries.iter().enumerate() {
            amps[i] = e / norm;
        }
        Ok(StateVector { num_qubits: crate::linalg::log2(dim), amps })
    }

    /// The basis state |bits> for a bitstring like "0101".
    pub fn basis_embed(bits: &str) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyRegister);
        }
        let mut index = 0usize;
        for c in bits.chars() {
            index <<= 1;
            match c {
                '0' => {}
                '1' => index |= 1,
                other => return Err(Error::InvalidBitstring(other)),
            }
        }
        Self::basis(bits.len(), BasisIndex(index))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: BasisIndex) -> Complex64 {
        self.amps[index.0]
    }

    pub fn probability(&self, index: BasisIndex) -> f64 {
        self.amps[index.0].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Kronecker product: amplitude at i*2^n2 + j is a_i * b_j.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector { num_qubits: self.num_qubits + other.num_qubits, amps }
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "inner product between {} and {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |<self|other>|^2; invariant under global phase of either argument.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Renormalize in place; absorbs float drift after long gate sequences.
    pub(crate) fn renormalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            for a in &mut self.amps {
                *a /= norm;
            }
        }
    }

    pub(crate) fn from_raw_normalized(num_qubits: usize, amps: Vec<Complex64>) -> Self {
        let mut s = StateVector { num_qubits, amps };
        s.renormalize();
        s
    }
}

/// Standalone aliases matching the operation names used elsewhere.
pub fn zero_state(num_qubits: usize) -> Result<StateVector> {
    StateVector::zero(num_qubits)
}

pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    a.fidelity(b)
}
