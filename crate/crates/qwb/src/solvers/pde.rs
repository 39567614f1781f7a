//! Separable PDE constructions: the Kronecker-sum Laplacian, its factored
//! exponential, and the wave-equation lifting L = B B^dag that turns the
//! second-order wave equation into a Hermitian first-order evolution.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dirichlet 1D Laplacian: tridiagonal (2, -1).
pub fn laplacian_1d(n: usize) -> CMatrix {
    crate::encodings::laplacian_1d(n)
}

/// Kronecker sum over d dimensions: sum_i I (x) ... (x) L (x) ... (x) I.
pub fn kron_sum_laplacian(l: &CMatrix, d: usize) -> CMatrix {
    assert!(d >= 1);
    let n = l.nrows();
    let dim = n.pow(d as u32);
    let mut acc = CMatrix::zeros(dim, dim);
    for pos in 0..d {
        let mut factor = CMatrix::identity(1, 1);
        for i in 0..d {
            let next = if i == pos { l.clone() } else { CMatrix::identity(n, n) };
            factor = linalg::kron(&factor, &next);
        }
        acc += factor;
    }
    acc
}

/// exp(i (kron sum) t) as the tensor product of the factor exponentials
/// exp(i L t) (x) ... (x) exp(i L t).
pub fn kron_sum_exp(l: &CMatrix, d: usize, t: f64) -> Result<CMatrix> {
    assert!(d >= 1);
    let factor = linalg::hermitian_func(l, |w| Complex64::from_polar(1.0, w * t))?;
    let mut acc = CMatrix::identity(1, 1);
    for _ in 0..d {
        acc = linalg::kron(&acc, &factor);
    }
    Ok(acc)
}

/// The n x (n+1) Dirichlet difference matrix B with B B^T equal to the 1D
/// Laplacian.
pub fn dirichlet_difference(n: usize) -> CMatrix {
    let mut b = CMatrix::zeros(n, n + 1);
    for i in 0..n {
        b[(i, i)] = c(1.0, 0.0);
        b[(i, i + 1)] = c(-1.0, 0.0);
    }
    b
}

/// Lift the wave equation with Laplacian `l` into the Hermitian first-order
/// generator (1/h) [[0, B], [B^dag, 0]], verifying the factorization
/// l = B B^dag against the constructed difference matrix. Returns the
/// generator and B.
pub fn wave_lift(l: &CMatrix, h: f64) -> Result<(CMatrix, CMatrix)> {
    if !l.is_square() {
        return Err(Error::DimensionMismatch("Laplacian must be square".into()));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidInput("grid spacing must be positive".into()));
    }
    let n = l.nrows();
    let b = dirichlet_difference(n);
    let product = linalg::matmul(&b, &linalg::dagger(&b));
    let resid = linalg::max_abs(&(&product - l));
    if resid > 1e-10 {
        return Err(Error::FactorizationResidual(resid));
    }
    let dim = n + (n + 1);
    let mut gen = CMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n + 1 {
            gen[(i, n + j)] = b[(i, j)] / h;
            gen[(n + j, i)] = b[(i, j)].conj() / h;
        }
    }
    Ok((gen, b))
}

/// Lift a second-order system u'' = (A + c I) u + b to first order:
/// d/dt (u, v) = [[0, I], [A + cI, 0]] (u, v) + (0, b).
pub fn lift_second_order(
    a: &CMatrix,
    shift: f64,
    b: &[Complex64],
) -> Result<(CMatrix, Vec<Complex64>)> {
    if !a.is_square() || a.nrows() != b.len() {
        return Err(Error::DimensionMismatch("A square and b matching required".into()));
    }
    let n = a.nrows();
    let mut gen = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        gen[(i, n + i)] = c(1.0, 0.0);
        for j in 0..n {
            gen[(n + i, j)] = a[(i, j)] + if i == j { c(shift, 0.0) } else { c(0.0, 0.0) };
        }
    }
    let mut rhs = vec![c(0.0, 0.0); 2 * n];
    rhs[n..].copy_from_slice(b);
    Ok((gen, rhs))
}
