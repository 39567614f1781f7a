//! Dense complex linear-algebra support shared by the higher-level modules.
//!
//! Everything here operates on `nalgebra::DMatrix<Complex64>` at desk scale
//! (dimensions up to a few hundred). Complex matrix products are split into
//! four real GEMMs so the fast f64 kernels are used.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn identity(dim: usize) -> CMatrix {
    DMatrix::identity(dim, dim)
}

pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// log2 of a power of two.
pub fn log2(n: usize) -> usize {
    debug_assert!(is_power_of_two(n));
    n.trailing_zeros() as usize
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |M - M^dag|`
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            d = d.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    d
}

pub fn is_hermitian(m: &CMatrix) -> bool {
    m.is_square() && hermitian_defect(m) <= tol::HERMITIAN_TOL
}

/// `max |U^dag U - I|`
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let p = matmul(&dagger(u), u);
    let mut d = 0.0_f64;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let expect = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            d = d.max((p[(i, j)] - expect).norm());
        }
    }
    d
}

/// Complex matrix product. Splits into four real GEMMs above a small-size
/// cutoff; nalgebra's generic complex path is the bottleneck otherwise.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape");
    if a.nrows() * a.ncols() < 32 * 32 {
        return a * b;
    }
    let ar = a.map(|z| z.re);
    let ai = a.map(|z| z.im);
    let br = b.map(|z| z.re);
    let bi = b.map(|z| z.im);
    let rr = &ar * &br - &ai * &bi;
    let ri = &ar * &bi + &ai * &br;
    DMatrix::from_fn(a.nrows(), b.ncols(), |i, j| Complex64::new(rr[(i, j)], ri[(i, j)]))
}

pub fn matvec(a: &CMatrix, v: &CVector) -> CVector {
    a * v
}

/// Eigendecomposition of a Hermitian matrix: `M = V diag(w) V^dag` with real `w`.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(DVector<f64>, CMatrix)> {
    let defect = hermitian_defect(m);
    if defect > tol::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let se = nalgebra::linalg::SymmetricEigen::new(m.clone());
    Ok((se.eigenvalues, se.eigenvectors))
}

/// Apply a scalar function to a Hermitian matrix through its eigenvalues.
pub fn hermitian_func(m: &CMatrix, f: impl Fn(f64) -> Complex64) -> Result<CMatrix> {
    let (vals, vecs) = hermitian_eigen(m)?;
    let n = m.nrows();
    let mut scaled = vecs.clone();
    for j in 0..n {
        let fj = f(vals[j]);
        for i in 0..n {
            scaled[(i, j)] *= fj;
        }
    }
    Ok(matmul(&scaled, &dagger(&vecs)))
}

pub fn singular_values(m: &CMatrix) -> DVector<f64> {
    nalgebra::linalg::SVD::new(m.clone(), false, false).singular_values
}

/// Largest |eigenvalue| of a Hermitian matrix. Subnormalization bounds for
/// Hermitian encodings use this rather than the SVD so that the downstream
/// eigendecomposition of A/alpha sees a spectrum inside [-1, 1] up to
/// rounding: the two solvers can disagree at the 1e-10 level on degenerate
/// spectra.
pub fn hermitian_spectral_bound(m: &CMatrix) -> Result<f64> {
    let (vals, _) = hermitian_eigen(m)?;
    Ok(vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).iter().copied().fold(0.0, f64::max)
}

/// Ratio of extreme singular values.
pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = singular_values(m);
    let max = sv.iter().copied().fold(0.0_f64, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}
