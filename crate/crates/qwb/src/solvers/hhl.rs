//! The phase-estimation linear solver: controlled Hamiltonian-simulation
//! powers kick eigenvalues of exp(iAt0) back onto a clock register, a
//! controlled rotation writes C/lambda onto an ancilla, the estimation is
//! uncomputed, and the ancilla is postselected on |1>.

use num_complex::Complex64;

use super::{consistency_residual, LinearSystemProblem, SolveReport};
use crate::circuit::{run, Circuit, CircuitOp, GateOp};
use crate::error::{Error, Result};
use crate::gates::{Gate, GateMatrix};
use crate::hamsim::exact_unitary;
use crate::linalg;
use crate::state::StateVector;
use crate::subroutines::{iqft, qft};

/// Knobs for the phase-estimation solver. Defaults: t0 = 2 pi / lambda_max
/// (nudged below the wrap-around point when the bound is tight) and
/// C = 1 / kappa.
#[derive(Debug, Clone)]
pub struct HhlOptions {
    pub clock_bits: usize,
    pub t0: Option<f64>,
    pub c: Option<f64>,
}

impl HhlOptions {
    pub fn new(clock_bits: usize) -> Self {
        HhlOptions { clock_bits, t0: None, c: None }
    }

    pub fn with_t0(mut self, t0: f64) -> Self {
        self.t0 = Some(t0);
        self
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = Some(c);
        self
    }
}

/// Solve A x = b for Hermitian A with eigenvalues inside (0, 2 pi / t0).
pub fn hhl(problem: &LinearSystemProblem, opts: &HhlOptions) -> Result<SolveReport> {
    let a = &problem.a;
    let defect = linalg::hermitian_defect(a);
    if defect > crate::tol::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let m = opts.clock_bits;
    if m == 0 {
        return Err(Error::InvalidInput("need at least one clock bit".into()));
    }
    let n_dim = a.nrows();
    if !linalg::is_power_of_two(n_dim) || n_dim < 2 {
        return Err(Error::DimensionMismatch(
            "phase-estimation route needs a 2^n-dimensional Hermitian system (pad first)".into(),
        ));
    }
    let (vals, _) = linalg::hermitian_eigen(a)?;
    let lambda_max = vals.iter().copied().fold(0.0_f64, f64::max);
    let t0 = match opts.t0 {
        Some(v) => v,
        None => {
            let bound = problem.alpha_bound.unwrap_or(lambda_max);
            let base = 2.0 * std::f64::consts::PI / bound;
            if lambda_max * base / (2.0 * std::f64::consts::PI) < 1.0 - 1e-12 {
                base
            } else {
                // the computed bound is tight; keep every phase below 1
                base * (1.0 - (0.5f64).powi(m as i32))
            }
        }
    };
    // eigenvalues must sit strictly inside (0, 2 pi / t0)
    for &v in vals.iter() {
        let phase = v * t0 / (2.0 * std::f64::consts::PI);
        if !(phase > 0.0 && phase < 1.0 - 1e-15) {
            return Err(Error::InvalidInput(format!(
                "eigenvalue {v} maps to phase {phase}, outside (0, 1) at t0 = {t0}"
            )));
        }
    }
    let clock_dim = 1usize << m;
    let lambda_tilde = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / (clock_dim as f64 * t0);
    let c_rot = opts.c.unwrap_or(1.0 / problem.kappa);
    let min_est = lambda_tilde(1);
    if c_rot > min_est + 1e-12 || c_rot <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "rotation constant C = {c_rot} exceeds the smallest eigenvalue estimate {min_est}"
        )));
    }

    let n = linalg::log2(n_dim);
    let width = m + n + 1;
    let ancilla = m + n;
    let system: Vec<usize> = (m..m + n).collect();

    let mut qc = Circuit::new(width);
    for q in 0..m {
        qc.h(q);
    }
    // clock qubit j controls U^(2^(m-1-j)) with U = exp(+i A t0)
    let u = exact_unitary(a, -t0)?;
    let mut power = u.clone();
    let mut ladder: Vec<GateOp> = Vec::new();
    for j in (0..m).rev() {
        ladder.push(GateOp::controlled(
            Gate::Unitary(GateMatrix::new(power.clone())?),
            system.clone(),
            vec![j],
            vec![true],
        ));
        if j > 0 {
            power = linalg::matmul(&power, &power);
        }
    }
    for op in &ladder {
        qc.append(op.clone());
    }
    let clock_iqft = embed(&iqft(m), width);
    qc.extend(&clock_iqft);

    // eigenvalue inversion: rotate the ancilla by 2 asin(C / lambda(k))
    // conditioned on each nonzero clock pattern (zeros use the
    // empty-circle convention)
    for k in 1..clock_dim {
        let theta = 2.0 * (c_rot / lambda_tilde(k)).min(1.0).asin();
        let pattern: Vec<bool> = (0..m).map(|j| (k >> (m - 1 - j)) & 1 == 1).collect();
        qc.append(GateOp::controlled(
            Gate::Ry(theta),
            vec![ancilla],
            (0..m).collect(),
            pattern,
        ));
    }

    // uncompute the estimate
    qc.extend(&embed(&qft(m), width));
    for op in ladder.iter().rev() {
        qc.append(op.dagger());
    }
    for q in 0..m {
        qc.h(q);
    }

    let b_state = StateVector::amplitude_encode(&problem.b)?;
    let initial = StateVector::zero(m)?.kron(&b_state).kron(&StateVector::zero(1)?);
    let out = run(&qc, &initial)?;

    // postselect ancilla |1>, clock |0^m>; extract the system register
    let amps = out.amplitudes();
    let anc_one: f64 = amps
        .iter()
        .enumerate()
        .filter(|(i, _)| i & 1 == 1)
        .map(|(_, z)| z.norm_sqr())
        .sum();
    let mut window_amps = vec![Complex64::new(0.0, 0.0); n_dim];
    for (sys_idx, slot) in window_amps.iter_mut().enumerate() {
        // clock bits zero: index = sys_idx * 2 + 1 within the clock-0 block
        *slot = amps[sys_idx * 2 + 1];
    }
    let success: f64 = window_amps.iter().map(|z| z.norm_sqr()).sum();
    if success < crate::tol::POSTSELECT_MIN {
        return Err(Error::PostselectionFailed(success));
    }
    let solution = StateVector::amplitude_encode(&window_amps)?;
    let residual = consistency_residual(&problem.a, &problem.b, &solution);
    Ok(SolveReport {
        solution,
        success_prob: success,
        degree_or_bits: m,
        window: 0..n_dim,
        window_weight: if anc_one > 0.0 { success / anc_one } else { 0.0 },
        residual,
    })
}

/// Re-target a circuit's ops onto the low qubits of a wider register.
fn embed(circuit: &Circuit, width: usize) -> Circuit {
    let mut out = Circuit::new(width);
    for op in circuit.ops() {
        if let CircuitOp::Gate(g) = op {
            out.append(g.clone());
        }
    }
    out
}
