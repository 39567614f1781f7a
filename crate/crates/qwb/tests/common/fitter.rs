//! Numerical phase-factor fitter for test fixtures.
//!
//! Finds symmetric angle sequences whose signal-processing polynomial
//! matches a scalar target at Chebyshev nodes, by Levenberg-Marquardt on
//! the real part. This is a test oracle for producing fixtures; phase
//! sequences are normally input artifacts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qwb::poly::{Parity, PhaseSequence};

#[derive(Clone, Copy)]
struct M2 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl M2 {
    fn id() -> Self {
        M2 {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }
}

/// P(x) = <0| E_0 R(x) E_1 R(x) ... R(x) E_d |0> with the reflection signal
/// R(x) = [[x, -s], [s, x]], s = sqrt(1-x^2), and E_j = diag(e^{i phi_j},
/// e^{-i phi_j}); exactly the sequence `qsp_apply` runs.
pub fn qsp_scalar(angles: &[f64], x: f64) -> Complex64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let e: Vec<Complex64> = angles.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    let d = angles.len() - 1;
    let mut m = M2 { a: e[d], b: Complex64::new(0.0, 0.0), c: Complex64::new(0.0, 0.0), d: e[d].conj() };
    for j in (0..d).rev() {
        // left-multiply R then the phase
        let (ra, rb) = (x * m.a - s * m.c, x * m.b - s * m.d);
        let (rc, rd) = (s * m.a + x * m.c, s * m.b + x * m.d);
        m = M2 { a: e[j] * ra, b: e[j] * rb, c: e[j].conj() * rc, d: e[j].conj() * rd };
    }
    m.a
}

/// Values and the Jacobian of Re P with respect to every angle, one node at
/// a time via prefix rows and suffix products.
fn value_and_grad(angles: &[f64], x: f64) -> (Complex64, Vec<f64>) {
    let dd = angles.len() - 1;
    let s = (1.0 - x * x).max(0.0).sqrt();
    let e: Vec<Complex64> = angles.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    // suffix[j] = E_j R ... R E_d
    let mut suffix = vec![M2::id(); dd + 1];
    suffix[dd] = M2 {
        a: e[dd],
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: e[dd].conj(),
    };
    for j in (0..dd).rev() {
        let m = suffix[j + 1];
        let (ra, rb) = (x * m.a - s * m.c, x * m.b - s * m.d);
        let (rc, rd) = (s * m.a + x * m.c, s * m.b + x * m.d);
        suffix[j] = M2 { a: e[j] * ra, b: e[j] * rb, c: e[j].conj() * rc, d: e[j].conj() * rd };
    }
    let value = suffix[0].a;
    // prefix row vector (v0, v1) = e_0^T E_0 R E_1 R ... (consumed so far)
    let mut v0 = Complex64::new(1.0, 0.0);
    let mut v1 = Complex64::new(0.0, 0.0);
    let mut grad = vec![0.0; dd + 1];
    for j in 0..=dd {
        // W = R suffix[j+1] (or identity past the end)
        let (w00, w10) = if j < dd {
            let m = suffix[j + 1];
            (x * m.a - s * m.c, s * m.a + x * m.c)
        } else {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        };
        // dE_j = diag(i e_j, -i conj(e_j))
        let dp = v0 * Complex64::new(0.0, 1.0) * e[j] * w00
            + v1 * Complex64::new(0.0, -1.0) * e[j].conj() * w10;
        grad[j] = dp.re;
        // extend the prefix with E_j R
        let a0 = v0 * e[j];
        let a1 = v1 * e[j].conj();
        v0 = a0 * x + a1 * s;
        v1 = -a0 * s + a1 * x;
    }
    (value, grad)
}

pub struct FitResult {
    pub angles: Vec<f64>,
    pub max_residual: f64,
    pub iterations: usize,
}

/// Levenberg-Marquardt over symmetric phases: minimize
/// sum_i (Re P(x_i) - f_i)^2.
pub fn fit_phases(
    nodes: &[f64],
    targets: &[f64],
    degree: usize,
    max_iterations: usize,
    tol: f64,
) -> FitResult {
    let d = degree;
    let npar = (d + 2) / 2;
    let mut angles = vec![0.0; d + 1];
    angles[0] = std::f64::consts::FRAC_PI_4;
    angles[d] = std::f64::consts::FRAC_PI_4;
    let mut lambda = 1e-2;
    let cost_of = |ang: &[f64]| -> f64 {
        nodes
            .iter()
            .zip(targets)
            .map(|(&x, &f)| {
                let r = qsp_scalar(ang, x).re - f;
                r * r
            })
            .sum()
    };
    let mut cost = cost_of(&angles);
    let mut iterations = 0;
    for it in 0..max_iterations {
        iterations = it + 1;
        let mut jtj = DMatrix::<f64>::zeros(npar, npar);
        let mut jtr = DVector::<f64>::zeros(npar);
        for (&x, &f) in nodes.iter().zip(targets) {
            let (value, grad) = value_and_grad(&angles, x);
            let r = value.re - f;
            let mut folded = vec![0.0; npar];
            for (j, slot) in folded.iter_mut().enumerate() {
                *slot = grad[j] + if d - j != j { grad[d - j] } else { 0.0 };
            }
            for a in 0..npar {
                jtr[a] += folded[a] * r;
                for b in a..npar {
                    jtj[(a, b)] += folded[a] * folded[b];
                }
            }
        }
        for a in 0..npar {
            for b in 0..a {
                jtj[(a, b)] = jtj[(b, a)];
            }
        }
        for a in 0..npar {
            jtj[(a, a)] += lambda;
        }
        let step = match nalgebra::linalg::Cholesky::new(jtj) {
            Some(ch) => ch.solve(&jtr),
            None => break,
        };
        let mut trial = angles.clone();
        for j in 0..npar {
            trial[j] -= step[j];
            if d - j != j {
                trial[d - j] -= step[j];
            }
        }
        let trial_cost = cost_of(&trial);
        if trial_cost < cost {
            angles = trial;
            cost = trial_cost;
            lambda = (lambda * 0.33).max(1e-14);
            if cost <= nodes.len() as f64 * tol * tol {
                break;
            }
        } else {
            lambda *= 3.0;
            if lambda > 1e14 {
                break;
            }
        }
    }
    let max_residual = nodes
        .iter()
        .zip(targets)
        .map(|(&x, &f)| (qsp_scalar(&angles, x).re - f).abs())
        .fold(0.0, f64::max);
    FitResult { angles, max_residual, iterations }
}

/// Chebyshev nodes mapped into [lo, hi].
pub fn nodes_on(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| {
            let t = ((2 * i - 1) as f64 * std::f64::consts::PI / (4 * count) as f64).cos();
            lo + (hi - lo) * t
        })
        .collect()
}

/// Fit a sequence realizing the rescaled inverse gamma/x for a condition
/// bound, reusing the library's minimal-degree series as the target.
///
/// The fit matches the polynomial itself over all of (0, 1) (parity covers
/// the negative branch), which is exactly representable; a 0.999 safety
/// scale keeps the target strictly inside the unit sup-norm ball. The
/// overall scale drops out of the solver, which only uses the direction
/// of P(A)|b>.
pub fn fit_inverse_phases(kappa: f64, series_eps: f64, fit_tol: f64, max_iterations: usize)
    -> (PhaseSequence, f64)
{
    let inv = qwb::poly::inverse_coeffs(kappa, series_eps).expect("series fit");
    let d = inv.series.degree();
    let nodes = nodes_on(0.0, 1.0, d + 30);
    let targets: Vec<f64> = nodes.iter().map(|&x| 0.999 * inv.series.eval(x)).collect();
    let fit = fit_phases(&nodes, &targets, d, max_iterations, fit_tol);
    (
        PhaseSequence {
            angles: fit.angles,
            parity: Parity::Odd,
            target: "inverse".into(),
            kappa,
            eps: series_eps,
        },
        fit.max_residual,
    )
}
