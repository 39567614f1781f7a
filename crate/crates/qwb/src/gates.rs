//! Gate matrices: the standard single- and multi-qubit gates, rotation gates,
//! and controlled versions with per-control on/off states.
//!
//! Rotation convention: Rx(t) = exp(-i t X / 2), Ry and Rz analogous, so
//! rx(2t) realizes exp(-i t X) exactly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::tol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A validated unitary of power-of-two dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    matrix: CMatrix,
}

impl GateMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || !linalg::is_power_of_two(matrix.nrows()) {
            return Err(Error::DimensionMismatch(format!(
                "gate matrix must be square with power-of-two dimension, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let defect = linalg::unitarity_defect(&matrix);
        if defect > tol::UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(GateMatrix { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        linalg::log2(self.dim())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dagger(&self) -> GateMatrix {
        GateMatrix { matrix: linalg::dagger(&self.matrix) }
    }
}

/// A named gate or a raw unitary.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    /// Phase gate diag(1, e^{i theta}).
    P(f64),
    Swap,
    Toffoli,
    /// e^{i theta} on every amplitude; realized as a 1-qubit diagonal.
    GlobalPhase(f64),
    Unitary(GateMatrix),
}

impl Gate {
    pub fn num_targets(&self) -> usize {
        match self {
            Gate::Swap => 2,
            Gate::Toffoli => 3,
            Gate::Unitary(u) => u.num_qubits(),
            _ => 1,
        }
    }

    pub fn matrix(&self) -> GateMatrix {
        let m = match self {
            Gate::I => CMatrix::identity(2, 2),
            Gate::X => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
            Gate::Y => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
            Gate::Z => CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
            Gate::H => {
                let r = 1.0 / 2f64.sqrt();
                CMatrix::from_row_slice(2, 2, &[c(r, 0.), c(r, 0.), c(r, 0.), c(-r, 0.)])
            }
            Gate::S => CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)]),
            Gate::Sdg => {
                CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., -1.)])
            }
            Gate::Rx(t) => {
                let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
                CMatrix::from_row_slice(2, 2, &[c(co, 0.), c(0., -si), c(0., -si), c(co, 0.)])
            }
            Gate::Ry(t) => {
                let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
                CMatrix::from_row_slice(2, 2, &[c(co, 0.), c(-si, 0.), c(si, 0.), c(co, 0.)])
            }
            Gate::Rz(t) => CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                Complex64::from_polar(1.0, -t / 2.0),
                Complex64::from_polar(1.0, t / 2.0),
            ])),
            Gate::P(t) => CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(1.0, 0.0),
                Complex64::from_polar(1.0, *t),
            ])),
            Gate::Swap => {
                let mut m = CMatrix::zeros(4, 4);
                m[(0, 0)] = c(1., 0.);
                m[(1, 2)] = c(1., 0.);
                m[(2, 1)] = c(1., 0.);
                m[(3, 3)] = c(1., 0.);
                m
            }
            Gate::Toffoli => {
                return controlled(&Gate::X.matrix(), 2, &[true, true]);
            }
            Gate::GlobalPhase(t) => {
                let p = Complex64::from_polar(1.0, *t);
                CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![p, p]))
            }
            Gate::Unitary(u) => return u.clone(),
        };
        GateMatrix { matrix: m }
    }

    pub fn dagger(&self) -> Gate {
        match self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::Rx(t) => Gate::Rx(-t),
            Gate::Ry(t) => Gate::Ry(-t),
            Gate::Rz(t) => Gate::Rz(-t),
            Gate::P(t) => Gate::P(-t),
            Gate::GlobalPhase(t) => Gate::GlobalPhase(-t),
            Gate::Unitary(u) => Gate::Unitary(u.dagger()),
            // I, X, Y, Z, H, Swap, Toffoli are self-inverse
            other => other.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::S => "S",
            Gate::Sdg => "Sdg",
            Gate::Rx(_) => "Rx",
            Gate::Ry(_) => "Ry",
            Gate::Rz(_) => "Rz",
            Gate::P(_) => "P",
            Gate::Swap => "SWAP",
            Gate::Toffoli => "Toffoli",
            Gate::GlobalPhase(_) => "GlobalPhase",
            Gate::Unitary(_) => "Unitary",
        }
    }
}

/// Look up a standard gate by name; angles are in radians.
pub fn standard_gate(name: &str, params: &[f64]) -> Result<GateMatrix> {
    let gate = gate_by_name(name, params)?;
    Ok(gate.matrix())
}

pub(crate) fn gate_by_name(name: &str, params: &[f64]) -> Result<Gate> {
    let want = |n: usize| -> Result<()> {
        if params.len() != n {
            Err(Error::InvalidInput(format!(
                "gate {name} expects {n} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    let g = match name {
        "I" => Gate::I,
        "X" => Gate::X,
        "Y" => Gate::Y,
        "Z" => Gate::Z,
        "H" => Gate::H,
        "S" => Gate::S,
        "Sdg" => Gate::Sdg,
        "Rx" => {
            want(1)?;
            Gate::Rx(params[0])
        }
        "Ry" => {
            want(1)?;
            Gate::Ry(params[0])
        }
        "Rz" => {
            want(1)?;
            Gate::Rz(params[0])
        }
        "P" => {
            want(1)?;
            Gate::P(params[0])
        }
        "SWAP" => Gate::Swap,
        "Toffoli" => Gate::Toffoli,
        "GlobalPhase" => {
            want(1)?;
            Gate::GlobalPhase(params[0])
        }
        other => return Err(Error::UnknownGate(other.to_string())),
    };
    if !matches!(g, Gate::Rx(_) | Gate::Ry(_) | Gate::Rz(_) | Gate::P(_) | Gate::GlobalPhase(_)) {
        want(0)?;
    }
    Ok(g)
}

/// Controlled version of a gate: block-diagonal, acting as `g` on the block
/// where the control pattern matches and as identity elsewhere. Controls are
/// the most significant qubits; `control_states[i] = false` is the
/// empty-circle (control-on-0) convention.
pub fn controlled(g: &GateMatrix, num_controls: usize, control_states: &[bool]) -> GateMatrix {
    assert!(num_controls >= 1, "need at least one control");
    assert_eq!(control_states.len(), num_controls, "one state bit per control");
    let gd = g.dim();
    let dim = gd << num_controls;
    let mut pattern = 0usize;
    for (i, on) in control_states.iter().enumerate() {
        if *on {
            pattern |= 1 << (num_controls - 1 - i);
        }
    }
    let mut m = CMatrix::identity(dim, dim);
    let base = pattern * gd;
    for r in 0..gd {
        for col in 0..gd {
            m[(base + r, base + col)] = g.matrix()[(r, col)];
        }
    }
    GateMatrix { matrix: m }
}

/// Build an exact state-preparation unitary whose first column is `target`
/// (a real, nonnegative, normalized amplitude vector), via a Householder
/// reflection.
pub(crate) fn state_prep_unitary(target: &[f64]) -> CMatrix {
    let dim = target.len();
    let mut v = DMatrix::<f64>::zeros(dim, 1);
    for (i, t) in target.iter().enumerate() {
        v[(i, 0)] = *t;
    }
    let mut w = v.clone();
    w[(0, 0)] -= 1.0; // w = target - e0
    let wn = w.norm();
    if wn < 1e-14 {
        return CMatrix::identity(dim, dim);
    }
    w /= wn;
    let h = DMatrix::<f64>::identity(dim, dim) - 2.0 * &w * w.transpose();
    h.map(|x| c(x, 0.0))
}
