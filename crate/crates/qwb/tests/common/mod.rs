//! Shared test oracles: classical reference computations kept independent
//! of the library's implementation paths.

#![allow(dead_code)]

pub mod fitter;

use nalgebra::DVector;
use num_complex::Complex64;
use qwb::linalg::CMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense LU solve, the classical oracle for every linear-system route.
pub fn classical_solve(a: &CMatrix, b: &[Complex64]) -> Vec<Complex64> {
    let lu = nalgebra::linalg::LU::new(a.clone());
    let rhs = DVector::from_vec(b.to_vec());
    let x = lu.solve(&rhs).expect("oracle system is nonsingular");
    x.iter().copied().collect()
}

pub fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / n).collect()
}

/// |<a|b>|^2 for raw vectors.
pub fn fidelity_raw(a: &[Complex64], b: &[Complex64]) -> f64 {
    let an = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let bn = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (ip.norm() / (an * bn)).powi(2)
}

/// Adaptive Runge-Kutta-Fehlberg 4(5) integration of dx/dt = A x + b,
/// the classical oracle for the clock-register ODE solver.
pub fn integrate_ode(
    a: &CMatrix,
    b: &[Complex64],
    x0: &[Complex64],
    t_final: f64,
    tol: f64,
) -> Vec<Complex64> {
    let n = x0.len();
    let f = |x: &[Complex64]| -> Vec<Complex64> {
        let mut out = b.to_vec();
        for (r, slot) in out.iter_mut().enumerate() {
            for col in 0..n {
                *slot += a[(r, col)] * x[col];
            }
        }
        out
    };
    let mut x = x0.to_vec();
    let mut t = 0.0;
    let mut h = t_final / 100.0;
    while t < t_final {
        if t + h > t_final {
            h = t_final - t;
        }
        let (x5, err) = rkf45_step(&f, &x, h);
        if err <= tol || h < 1e-12 {
            t += h;
            x = x5;
            if err > 0.0 {
                h *= (tol / err).powf(0.2).min(2.0).max(0.2);
            }
        } else {
            h *= (tol / err).powf(0.25).max(0.1);
        }
    }
    x
}

fn rkf45_step(
    f: &impl Fn(&[Complex64]) -> Vec<Complex64>,
    x: &[Complex64],
    h: f64,
) -> (Vec<Complex64>, f64) {
    let n = x.len();
    let lincomb = |base: &[Complex64], terms: &[(f64, &Vec<Complex64>)]| -> Vec<Complex64> {
        let mut out = base.to_vec();
        for (w, k) in terms {
            for i in 0..n {
                out[i] += k[i] * c(h * w, 0.0);
            }
        }
        out
    };
    let k1 = f(x);
    let k2 = f(&lincomb(x, &[(0.25, &k1)]));
    let k3 = f(&lincomb(x, &[(3.0 / 32.0, &k1), (9.0 / 32.0, &k2)]));
    let k4 = f(&lincomb(
        x,
        &[(1932.0 / 2197.0, &k1), (-7200.0 / 2197.0, &k2), (7296.0 / 2197.0, &k3)],
    ));
    let k5 = f(&lincomb(
        x,
        &[
            (439.0 / 216.0, &k1),
            (-8.0, &k2),
            (3680.0 / 513.0, &k3),
            (-845.0 / 4104.0, &k4),
        ],
    ));
    let k6 = f(&lincomb(
        x,
        &[
            (-8.0 / 27.0, &k1),
            (2.0, &k2),
            (-3544.0 / 2565.0, &k3),
            (1859.0 / 4104.0, &k4),
            (-11.0 / 40.0, &k5),
        ],
    ));
    let x5 = lincomb(
        x,
        &[
            (16.0 / 135.0, &k1),
            (6656.0 / 12825.0, &k3),
            (28561.0 / 56430.0, &k4),
            (-9.0 / 50.0, &k5),
            (2.0 / 55.0, &k6),
        ],
    );
    let x4 = lincomb(
        x,
        &[
            (25.0 / 216.0, &k1),
            (1408.0 / 2565.0, &k3),
            (2197.0 / 4104.0, &k4),
            (-0.2, &k5),
        ],
    );
    let err = x5
        .iter()
        .zip(&x4)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (x5, err)
}

/// Leapfrog integration of phi'' = -(L/h^2) phi, the classical oracle for
/// the lifted wave evolution. Returns phi(t_final).
pub fn leapfrog_wave(
    l: &CMatrix,
    h: f64,
    phi0: &[f64],
    phi_dot0: &[f64],
    t_final: f64,
    dt: f64,
) -> Vec<f64> {
    let n = phi0.len();
    let acc = |phi: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (r, slot) in out.iter_mut().enumerate() {
            for col in 0..n {
                *slot -= l[(r, col)].re * phi[col] / (h * h);
            }
        }
        out
    };
    let steps = (t_final / dt).round() as usize;
    let dt = t_final / steps as f64;
    let mut phi = phi0.to_vec();
    let mut a0 = acc(&phi);
    // half-step velocity
    let mut vel: Vec<f64> =
        phi_dot0.iter().zip(&a0).map(|(v, a)| v + 0.5 * dt * a).collect();
    for _ in 0..steps {
        for i in 0..n {
            phi[i] += dt * vel[i];
        }
        a0 = acc(&phi);
        for i in 0..n {
            vel[i] += dt * a0[i];
        }
    }
    phi
}

/// Literal brute-force Pauli decomposition: dense Kronecker products and
/// matrix-product traces for every string, the oracle for the sparse path.
pub fn brute_force_pauli_coefficients(
    m: &CMatrix,
) -> std::collections::BTreeMap<String, Complex64> {
    let dim = m.nrows();
    let n = dim.trailing_zeros() as usize;
    let singles = [
        ('I', qwb::encodings::Pauli::I.matrix()),
        ('X', qwb::encodings::Pauli::X.matrix()),
        ('Y', qwb::encodings::Pauli::Y.matrix()),
        ('Z', qwb::encodings::Pauli::Z.matrix()),
    ];
    let mut out = std::collections::BTreeMap::new();
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let mut label = String::with_capacity(n);
        let mut dense = CMatrix::identity(1, 1);
        let mut rem = code;
        for _ in 0..n {
            let (ch, mat) = &singles[rem % 4];
            rem /= 4;
            label.push(*ch);
            dense = dense.kronecker(mat);
        }
        // Tr(P M) / 2^n
        let mut tr = c(0.0, 0.0);
        for r in 0..dim {
            for k in 0..dim {
                tr += dense[(r, k)] * m[(k, r)];
            }
        }
        let coef = tr / dim as f64;
        if coef.norm() > 1e-12 {
            out.insert(label, coef);
        }
    }
    out
}

/// Matrix-vector product helper for expectation building in tests.
pub fn matvec(a: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0); a.nrows()];
    for (r, slot) in out.iter_mut().enumerate() {
        for col in 0..a.ncols() {
            *slot += a[(r, col)] * v[col];
        }
    }
    out
}

/// The anti-diagonal benchmark system: values -1, -0.95, ..., -0.05,
/// 0.05, ..., 1.0 placed on the anti-diagonal (non-Hermitian, kappa = 20),
/// with a uniform right-hand side.
pub fn anti_diagonal_system() -> (CMatrix, Vec<Complex64>) {
    let mut values = Vec::new();
    for i in 0..20 {
        values.push(-1.0 + 0.05 * i as f64);
    }
    for i in 1..=20 {
        values.push(0.05 * i as f64);
    }
    let n = values.len();
    let mut a = CMatrix::zeros(n, n);
    for (col, v) in values.iter().enumerate() {
        a[(n - 1 - col, col)] = c(*v, 0.0);
    }
    let b = vec![c(1.0 / (n as f64).sqrt(), 0.0); n];
    (a, b)
}
