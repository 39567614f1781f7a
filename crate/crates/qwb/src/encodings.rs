//! Matrix access models: Pauli decomposition, zero-padding, Hermitian
//! dilation, block-encoding construction and application, and simulated
//! sparse-access oracles.
//!
//! Every Pauli-string matrix has exactly one nonzero per row, which the
//! decomposition exploits: the trace coefficient Tr(P A) / 2^n costs
//! O(2^n) per string instead of a dense product.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::StateVector;
use crate::subroutines::{lcu_assemble, postselect_top_block, UnitaryTermSum};
use crate::tol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::I => linalg::identity(2),
            Pauli::X => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
            Pauli::Y => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
            Pauli::Z => CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
        }
    }

    /// Row structure: the (column bit flip, value) of row `bit`.
    fn row_action(self, bit: usize) -> (usize, Complex64) {
        match self {
            Pauli::I => (0, c(1.0, 0.0)),
            Pauli::X => (1, c(1.0, 0.0)),
            Pauli::Y => (1, if bit == 0 { c(0.0, -1.0) } else { c(0.0, 1.0) }),
            Pauli::Z => (0, if bit == 0 { c(1.0, 0.0) } else { c(-1.0, 0.0) }),
        }
    }

    /// Group product: returns (phase, result) with a b = phase * result.
    pub fn mul(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (c(1.0, 0.0), p),
            (X, X) | (Y, Y) | (Z, Z) => (c(1.0, 0.0), I),
            (X, Y) => (c(0.0, 1.0), Z),
            (Y, X) => (c(0.0, -1.0), Z),
            (Y, Z) => (c(0.0, 1.0), X),
            (Z, Y) => (c(0.0, -1.0), X),
            (Z, X) => (c(0.0, 1.0), Y),
            (X, Z) => (c(0.0, -1.0), Y),
        }
    }

    fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis, e.g. "IXZ". The leftmost label
/// acts on qubit 0 (the most significant bit of a basis index).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|p| *p == Pauli::I)
    }

    pub fn dim(&self) -> usize {
        1usize << self.0.len()
    }

    /// For row `r`, the unique (column, value) of the string's matrix.
    pub fn row_action(&self, row: usize) -> (usize, Complex64) {
        let n = self.0.len();
        let mut col = row;
        let mut val = c(1.0, 0.0);
        for (q, p) in self.0.iter().enumerate() {
            let bitpos = n - 1 - q;
            let bit = (row >> bitpos) & 1;
            let (flip, f) = p.row_action(bit);
            col ^= flip << bitpos;
            val *= f;
        }
        (col, val)
    }

    /// Dense matrix realization, the n-fold Kronecker product.
    pub fn matrix(&self) -> CMatrix {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for row in 0..dim {
            let (col, val) = self.row_action(row);
            m[(row, col)] = val;
        }
        m
    }

    /// String product with phase tracking: a b = phase * result.
    pub fn mul(&self, other: &PauliString) -> Result<(Complex64, PauliString)> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch("Pauli string lengths differ".into()));
        }
        let mut phase = c(1.0, 0.0);
        let mut labels = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let (f, p) = a.mul(*b);
            phase *= f;
            labels.push(p);
        }
        Ok((phase, PauliString(labels)))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.label())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidBitstring(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// A weighted list of Pauli strings, all of the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    terms: Vec<(Complex64, PauliString)>,
    num_qubits: usize,
}

impl PauliSum {
    pub fn new(terms: Vec<(Complex64, PauliString)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("Pauli sum must be nonempty".into()));
        }
        let num_qubits = terms[0].1.len();
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if terms.iter().any(|(_, s)| s.len() != num_qubits) {
            return Err(Error::DimensionMismatch("Pauli string lengths differ".into()));
        }
        Ok(PauliSum { terms, num_qubits })
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.num_qubits
    }

    pub fn coeff_one_norm(&self) -> f64 {
        self.terms.iter().map(|(a, _)| a.norm()).sum()
    }

    /// True when every coefficient is real (the Hermitian case).
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(a, _)| a.im.abs() <= tol::COEFF_DROP)
    }
}

/// Zero-pad a matrix to the next power-of-two square dimension
/// (tail rows and columns).
pub fn pad_matrix(m: &CMatrix) -> CMatrix {
    let side = m.nrows().max(m.ncols()).max(1);
    let dim = side.next_power_of_two();
    if dim == m.nrows() && dim == m.ncols() {
        return m.clone();
    }
    let mut out = CMatrix::zeros(dim, dim);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = m[(i, j)];
        }
    }
    out
}

/// Zero-pad a vector to the next power-of-two length.
pub fn pad_vector(v: &[Complex64]) -> Vec<Complex64> {
    let dim = v.len().next_power_of_two().max(2);
    let mut out = vec![c(0.0, 0.0); dim];
    out[..v.len()].copy_from_slice(v);
    out
}

/// Decompose a 2^n x 2^n matrix in the Pauli basis: coefficient of string P
/// is Tr(P A) / 2^n; terms below the drop tolerance are discarded. Works for
/// non-Hermitian input too (the strings are a complete basis).
pub fn pauli_decompose(m: &CMatrix) -> Result<PauliSum> {
    if !m.is_square() || !linalg::is_power_of_two(m.nrows()) || m.nrows() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "Pauli decomposition needs a square 2^n matrix, got {}x{} (pad first)",
            m.nrows(),
            m.ncols()
        )));
    }
    let dim = m.nrows();
    let n = linalg::log2(dim);
    let mut terms = Vec::new();
    let mut labels = vec![Pauli::I; n];
    loop {
        let string = PauliString(labels.clone());
        // Tr(P A) = sum_r P[r, col(r)] A[col(r), r]
        let mut tr = c(0.0, 0.0);
        for row in 0..dim {
            let (col, val) = string.row_action(row);
            tr += val * m[(col, row)];
        }
        let coef = tr / dim as f64;
        if coef.norm() > tol::COEFF_DROP {
            terms.push((coef, string));
        }
        // next label combination (base-4 counter, leftmost fastest)
        let mut pos = n;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            labels[pos] = match labels[pos] {
                Pauli::I => Pauli::X,
                Pauli::X => Pauli::Y,
                Pauli::Y => Pauli::Z,
                Pauli::Z => {
                    labels[pos] = Pauli::I;
                    continue;
                }
            };
            break;
        }
        if labels.iter().all(|p| *p == Pauli::I) {
            break;
        }
    }
    PauliSum::new(terms)
}

/// Rebuild the dense matrix sum_i coef_i * kron(labels_i).
pub fn pauli_reconstruct(sum: &PauliSum) -> CMatrix {
    let dim = sum.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for (coef, string) in sum.terms() {
        for row in 0..dim {
            let (col, val) = string.row_action(row);
            m[(row, col)] += coef * val;
        }
    }
    m
}

/// Where solver output lands inside a dilated system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationMap {
    /// Original (pre-dilation) dimension.
    pub original_dim: usize,
    /// Index range of the dilated vector holding the linear-system solution.
    pub solution_window: std::ops::Range<usize>,
}

/// Hermitian dilation [[0, A], [A^dag, 0]]. Eigenvalues come in pairs
/// +-sigma_i of the singular values of A; for a linear solve the |x>
/// content lands in the second block.
pub fn hermitian_dilate(a: &CMatrix) -> Result<(CMatrix, DilationMap)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("dilation needs a square matrix".into()));
    }
    let n = a.nrows();
    let mut h = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            h[(i, n + j)] = a[(i, j)];
            h[(n + i, j)] = a[(j, i)].conj();
        }
    }
    Ok((h, DilationMap { original_dim: n, solution_window: n..2 * n }))
}

/// A unitary housing A/alpha in its top-left block (ancillas are the most
/// significant qubits). Construction validates unitarity, the block
/// extraction identity against the stored reference, and the
/// subnormalization bound; a violated construction fails loudly.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    unitary: CMatrix,
    ancillas: usize,
    system_qubits: usize,
    alpha: f64,
    block: CMatrix,
}

impl BlockEncoding {
    /// Wrap and validate: `block_reference` is the matrix A itself (not yet
    /// divided by alpha).
    pub fn new(unitary: CMatrix, ancillas: usize, alpha: f64, block_reference: &CMatrix) -> Result<Self> {
        if alpha <= 0.0 {
            return Err(Error::InvalidInput("subnormalization must be positive".into()));
        }
        let sys_dim = block_reference.nrows();
        if !block_reference.is_square() || !linalg::is_power_of_two(sys_dim) {
            return Err(Error::DimensionMismatch("encoded block must be square 2^n".into()));
        }
        if unitary.nrows() != sys_dim << ancillas {
            return Err(Error::DimensionMismatch(format!(
                "unitary dim {} does not match {} ancillas over a {}-dim block",
                unitary.nrows(),
                ancillas,
                sys_dim
            )));
        }
        let defect = linalg::unitarity_defect(&unitary);
        if defect > tol::UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        let block = block_reference / c(alpha, 0.0);
        let norm = if linalg::is_hermitian(&block) {
            linalg::hermitian_spectral_bound(&block)?
        } else {
            linalg::spectral_norm(&block)
        };
        if norm > 1.0 + tol::BLOCK_TOL {
            return Err(Error::SubnormalizationBound(norm));
        }
        let extracted = unitary.view((0, 0), (sys_dim, sys_dim)).into_owned();
        let diff = linalg::max_abs(&(&extracted - &block));
        if diff > tol::BLOCK_TOL {
            return Err(Error::InvalidInput(format!(
                "block extraction mismatch: max deviation {diff:e}"
            )));
        }
        let system_qubits = linalg::log2(sys_dim);
        Ok(BlockEncoding { unitary, ancillas, system_qubits, alpha, block })
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    pub fn ancillas(&self) -> usize {
        self.ancillas
    }

    pub fn system_qubits(&self) -> usize {
        self.system_qubits
    }

    pub fn system_dim(&self) -> usize {
        1usize << self.system_qubits
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The encoded block A/alpha.
    pub fn block(&self) -> &CMatrix {
        &self.block
    }

    /// (<0^m| (x) I) U (|0^m> (x) I), read off the unitary.
    pub fn extract_block(&self) -> CMatrix {
        let d = self.system_dim();
        self.unitary.view((0, 0), (d, d)).into_owned()
    }
}

/// Single-ancilla block-encoding of a Hermitian matrix:
/// U = [[A/alpha, -sqrt(I-(A/alpha)^2)], [sqrt(I-(A/alpha)^2), A/alpha]].
/// The square root is taken through the eigendecomposition with tiny
/// negative eigenvalues of I-(A/alpha)^2 clipped to zero.
pub fn block_encode_hermitian(a: &CMatrix, alpha: Option<f64>) -> Result<BlockEncoding> {
    let defect = linalg::hermitian_defect(a);
    if defect > tol::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let alpha = match alpha {
        Some(v) => v,
        None => linalg::hermitian_spectral_bound(a)?.max(f64::MIN_POSITIVE),
    };
    let scaled = a / c(alpha, 0.0);
    let (vals, vecs) = linalg::hermitian_eigen(&scaled)?;
    if let Some(bad) = vals.iter().find(|v| v.abs() > 1.0 + tol::BLOCK_TOL) {
        return Err(Error::SubnormalizationBound(bad.abs()));
    }
    let n = a.nrows();
    // sqrt(I - S^2) in the same eigenbasis
    let mut root = vecs.clone();
    for j in 0..n {
        let s = (1.0 - vals[j] * vals[j]).max(0.0).sqrt();
        for i in 0..n {
            root[(i, j)] *= c(s, 0.0);
        }
    }
    let root = linalg::matmul(&root, &linalg::dagger(&vecs));
    let mut u = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            u[(i, j)] = scaled[(i, j)];
            u[(n + i, n + j)] = scaled[(i, j)];
            u[(i, n + j)] = -root[(i, j)];
            u[(n + i, j)] = root[(i, j)];
        }
    }
    BlockEncoding::new(u, 1, alpha, a)
}

/// Block-encode a Pauli sum through PREPARE / SELECT / PREPARE^dag with
/// alpha = sum |coefficients| and ceil(log2 L) ancillas.
pub fn block_encode_from_pauli_sum(sum: &PauliSum) -> Result<BlockEncoding> {
    let terms: Vec<(Complex64, CMatrix)> =
        sum.terms().iter().map(|(a, s)| (*a, s.matrix())).collect();
    let uts = UnitaryTermSum::new(terms)?;
    let (full, m, alpha) = lcu_assemble(&uts);
    let reference = pauli_reconstruct(sum);
    BlockEncoding::new(full, m, alpha, &reference)
}

/// Prepare the ancillas in |0^m>, apply the encoding unitary, postselect the
/// ancillas on 0^m. Success probability is |A b|^2 / alpha^2; the returned
/// state is proportional to A|b> renormalized.
pub fn apply_block_encoding(be: &BlockEncoding, state: &StateVector) -> Result<(StateVector, f64)> {
    if state.dim() != be.system_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs encoded system dim {}",
            state.dim(),
            be.system_dim()
        )));
    }
    postselect_top_block(&be.unitary, state)
}

/// Simulated sparse-access oracle over a stored sparse structure: a
/// position query enumerating the nonzero columns of each row and a value
/// query returning entries (zero for structural zeros).
#[derive(Debug, Clone)]
pub struct SparseOracle {
    dim: usize,
    sparsity: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOracle {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Max number of nonzeros in any row.
    pub fn sparsity(&self) -> usize {
        self.sparsity
    }

    /// Column of the v-th nonzero of row i (v counts from 1); None past the
    /// row's population (the sentinel branch).
    pub fn position(&self, row: usize, v: usize) -> Result<Option<usize>> {
        if row >= self.dim {
            return Err(Error::InvalidInput(format!("row {row} out of range")));
        }
        if v == 0 || v > self.sparsity {
            return Err(Error::InvalidInput(format!("enumeration index {v} out of 1..=d")));
        }
        Ok(self.rows[row].get(v - 1).map(|(col, _)| *col))
    }

    pub fn value(&self, row: usize, col: usize) -> Result<Complex64> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::InvalidInput(format!("entry ({row}, {col}) out of range")));
        }
        Ok(self.rows[row]
            .iter()
            .find(|(cc, _)| *cc == col)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| c(0.0, 0.0)))
    }
}

pub fn sparse_oracle_from_matrix(m: &CMatrix) -> SparseOracle {
    let dim = m.nrows();
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::new();
        for j in 0..m.ncols() {
            if m[(i, j)].norm() > 0.0 {
                row.push((j, m[(i, j)]));
            }
        }
        rows.push(row);
    }
    let sparsity = rows.iter().map(Vec::len).max().unwrap_or(0);
    SparseOracle { dim, sparsity, rows }
}

/// Dirichlet 1D Laplacian: 2 on the diagonal, -1 off.
pub fn laplacian_1d(n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c(2.0, 0.0);
        if i + 1 < n {
            m[(i, i + 1)] = c(-1.0, 0.0);
            m[(i + 1, i)] = c(-1.0, 0.0);
        }
    }
    m
}
