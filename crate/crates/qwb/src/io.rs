//! Shared text file formats (JSON documents).
//!
//! Numbers may be written either as plain reals or as [re, im] pairs;
//! serialized basis labels are big-endian and tagged with a "bit_order"
//! field.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{BitOrder, Circuit, CircuitOp, GateOp, Histogram};
use crate::encodings::{PauliString, PauliSum};
use crate::error::{Error, Result};
use crate::gates::gate_by_name;
use crate::linalg::CMatrix;
use crate::poly::{ChebyshevSeries, Parity, PhaseSequence};
use crate::solvers::{OdeProblem, SolveReport};

/// A real number or an [re, im] pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Scalar> for Complex64 {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Real(x) => Complex64::new(x, 0.0),
            Scalar::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

fn to_scalar(z: &Complex64) -> Scalar {
    if z.im == 0.0 {
        Scalar::Real(z.re)
    } else {
        Scalar::Pair([z.re, z.im])
    }
}

// ---------------------------------------------------------------- vectors

#[derive(Serialize, Deserialize)]
struct VectorFile {
    entries: Vec<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bit_order: Option<String>,
}

pub fn parse_vector(text: &str) -> Result<Vec<Complex64>> {
    let f: VectorFile = serde_json::from_str(text)?;
    if let Some(order) = &f.bit_order {
        if order != "big-endian" {
            return Err(Error::InvalidInput(format!(
                "vector files use big-endian labels, got {order:?}"
            )));
        }
    }
    Ok(f.entries.into_iter().map(Complex64::from).collect())
}

pub fn vector_to_json(entries: &[Complex64]) -> String {
    let f = VectorFile {
        entries: entries.iter().map(to_scalar).collect(),
        bit_order: Some("big-endian".into()),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

// ---------------------------------------------------------------- matrices

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    format: String,
    data: serde_json::Value,
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let f: MatrixFile = serde_json::from_str(text)?;
    match f.format.as_str() {
        "dense" => {
            let data: Vec<Scalar> = serde_json::from_value(f.data)?;
            if data.len() != f.n * f.n {
                return Err(Error::DimensionMismatch(format!(
                    "dense matrix of n = {} needs {} entries, got {}",
                    f.n,
                    f.n * f.n,
                    data.len()
                )));
            }
            Ok(CMatrix::from_fn(f.n, f.n, |i, j| data[i * f.n + j].into()))
        }
        "coo" => {
            let data: Vec<(usize, usize, Scalar)> = serde_json::from_value(f.data)?;
            let mut m = CMatrix::zeros(f.n, f.n);
            for (i, j, v) in data {
                if i >= f.n || j >= f.n {
                    return Err(Error::InvalidInput(format!("coo entry ({i}, {j}) out of range")));
                }
                m[(i, j)] += Complex64::from(v);
            }
            Ok(m)
        }
        other => Err(Error::InvalidInput(format!("unknown matrix format {other:?}"))),
    }
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    let n = m.nrows();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(to_scalar(&m[(i, j)]));
        }
    }
    let f = MatrixFile {
        n,
        format: "dense".into(),
        data: serde_json::to_value(data).expect("serializable"),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

// ---------------------------------------------------------------- Pauli sums

#[derive(Serialize, Deserialize)]
struct PauliTermFile {
    coefficient: [f64; 2],
    label: String,
}

#[derive(Serialize, Deserialize)]
struct PauliSumFile {
    terms: Vec<PauliTermFile>,
}

pub fn parse_pauli_sum(text: &str) -> Result<PauliSum> {
    let f: PauliSumFile = serde_json::from_str(text)?;
    let mut terms = Vec::with_capacity(f.terms.len());
    for t in f.terms {
        let string: PauliString = t.label.parse()?;
        terms.push((Complex64::new(t.coefficient[0], t.coefficient[1]), string));
    }
    PauliSum::new(terms)
}

pub fn pauli_sum_to_json(sum: &PauliSum) -> String {
    let f = PauliSumFile {
        terms: sum
            .terms()
            .iter()
            .map(|(c, s)| PauliTermFile { coefficient: [c.re, c.im], label: s.to_string() })
            .collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

// ---------------------------------------------------------------- phases

#[derive(Serialize, Deserialize)]
struct PhaseFile {
    phases: Vec<f64>,
    parity: String,
    target: String,
    kappa: f64,
    eps: f64,
}

pub fn parse_phase_sequence(text: &str) -> Result<PhaseSequence> {
    let f: PhaseFile = serde_json::from_str(text)?;
    let seq = PhaseSequence {
        angles: f.phases,
        parity: Parity::parse(&f.parity)?,
        target: f.target,
        kappa: f.kappa,
        eps: f.eps,
    };
    seq.validate()?;
    Ok(seq)
}

pub fn phase_sequence_to_json(seq: &PhaseSequence) -> String {
    let f = PhaseFile {
        phases: seq.angles.clone(),
        parity: seq.parity.as_str().into(),
        target: seq.target.clone(),
        kappa: seq.kappa,
        eps: seq.eps,
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

// ---------------------------------------------------------------- series

#[derive(Serialize, Deserialize)]
struct SeriesFile {
    coefficients: Vec<f64>,
    parity: String,
    domain: [f64; 2],
}

pub fn parse_series(text: &str) -> Result<ChebyshevSeries> {
    let f: SeriesFile = serde_json::from_str(text)?;
    ChebyshevSeries::with_parity(f.coefficients, Parity::parse(&f.parity)?, (f.domain[0], f.domain[1]))
}

pub fn series_to_json(series: &ChebyshevSeries) -> String {
    let f = SeriesFile {
        coefficients: series.coefficients().to_vec(),
        parity: series.parity().as_str().into(),
        domain: [series.domain().0, series.domain().1],
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

// ---------------------------------------------------------------- histograms

#[derive(Serialize, Deserialize)]
struct HistogramFile {
    shots: u64,
    counts: BTreeMap<String, u64>,
    bit_order: String,
}

pub fn histogram_to_json(h: &Histogram) -> String {
    let f = HistogramFile {
        shots: h.shots,
        counts: h.counts.clone(),
        bit_order: h.bit_order.as_str().into(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn parse_histogram(text: &str) -> Result<Histogram> {
    let f: HistogramFile = serde_json::from_str(text)?;
    let bit_order = match f.bit_order.as_str() {
        "big-endian" => BitOrder::BigEndian,
        "little-endian" => BitOrder::LittleEndian,
        other => return Err(Error::InvalidInput(format!("unknown bit order {other:?}"))),
    };
    Ok(Histogram { shots: f.shots, counts: f.counts, bit_order })
}

// ---------------------------------------------------------------- circuits

#[derive(Serialize, Deserialize)]
struct CircuitOpFile {
    name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<f64>,
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    controls: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    control_states: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct CircuitFile {
    num_qubits: usize,
    ops: Vec<CircuitOpFile>,
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let f: CircuitFile = serde_json::from_str(text)?;
    if f.num_qubits == 0 {
        return Err(Error::EmptyRegister);
    }
    let mut qc = Circuit::new(f.num_qubits);
    for op in f.ops {
        if op.name == "measure" {
            for &q in &op.targets {
                if q >= f.num_qubits {
                    return Err(Error::QubitOutOfRange { index: q, width: f.num_qubits });
                }
            }
            qc.measure(&op.targets);
            continue;
        }
        let gate = gate_by_name(&op.name, &op.params)?;
        let gate_op = GateOp::controlled(
            gate,
            op.targets,
            op.controls,
            op.control_states.iter().map(|&b| b != 0).collect(),
        );
        gate_op.validate(f.num_qubits)?;
        qc.append(gate_op);
    }
    Ok(qc)
}

pub fn circuit_to_json(circuit: &Circuit) -> Result<String> {
    let mut ops = Vec::new();
    for op in circuit.ops() {
        match op {
            CircuitOp::Measure(qs) => ops.push(CircuitOpFile {
                name: "measure".into(),
                params: vec![],
                targets: qs.clone(),
                controls: vec![],
                control_states: vec![],
            }),
            CircuitOp::Gate(g) => {
                let params = match &g.gate {
                    crate::gates::Gate::Rx(t)
                    | crate::gates::Gate::Ry(t)
                    | crate::gates::Gate::Rz(t)
                    | crate::gates::Gate::P(t)
                    | crate::gates::Gate::GlobalPhase(t) => vec![*t],
                    crate::gates::Gate::Unitary(_) => {
                        return Err(Error::InvalidInput(
                            "raw-unitary gates have no named serialization".into(),
                        ))
                    }
                    _ => vec![],
                };
                ops.push(CircuitOpFile {
                    name: g.gate.name().into(),
                    params,
                    targets: g.targets.clone(),
                    controls: g.controls.clone(),
                    control_states: g.control_states.iter().map(|&b| u8::from(b)).collect(),
                });
            }
        }
    }
    Ok(serde_json::to_string_pretty(&CircuitFile { num_qubits: circuit.num_qubits(), ops })
        .expect("serializable"))
}

// ---------------------------------------------------------------- reports

#[derive(Serialize, Deserialize)]
struct SolveReportFile {
    solution: Vec<Scalar>,
    success_prob: f64,
    degree_or_bits: usize,
    window: [usize; 2],
    window_weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check_fidelity: Option<f64>,
}

/// Comparison of a solution state against a reference vector:
/// max elementwise relative error after phase alignment, and fidelity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CheckResult {
    pub error: f64,
    pub fidelity: f64,
}

pub fn solve_report_to_json(report: &SolveReport, check: Option<CheckResult>) -> String {
    let f = SolveReportFile {
        solution: report.solution.amplitudes().iter().map(to_scalar).collect(),
        success_prob: report.success_prob,
        degree_or_bits: report.degree_or_bits,
        window: [report.window.start, report.window.end],
        window_weight: report.window_weight,
        residual: report.residual,
        check_error: check.map(|c| c.error),
        check_fidelity: check.map(|c| c.fidelity),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

/// Compare the leading entries of a solution state against a reference.
pub fn check_against_reference(solution: &[Complex64], reference: &[Complex64]) -> CheckResult {
    let got = &solution[..reference.len().min(solution.len())];
    let gn = got.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let rn = reference.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let overlap: Complex64 =
        got.iter().zip(reference).map(|(g, r)| g.conj() * r).sum::<Complex64>() / (gn * rn);
    let fidelity = overlap.norm_sqr();
    let phase =
        if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    let mut error: f64 = 0.0;
    for (g, r) in got.iter().zip(reference) {
        let rr = r / rn;
        if rr.norm() > 0.0 {
            error = error.max((g / gn * phase - rr).norm() / rr.norm());
        }
    }
    CheckResult { error, fidelity }
}

// ---------------------------------------------------------------- ODE spec

#[derive(Serialize, Deserialize)]
struct OdeFile {
    matrix: serde_json::Value,
    b: Vec<Scalar>,
    x0: Vec<Scalar>,
    t_final: f64,
    taylor_order: usize,
    steps: usize,
    copies: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
}

pub fn parse_ode_problem(text: &str) -> Result<OdeProblem> {
    let f: OdeFile = serde_json::from_str(text)?;
    let a = parse_matrix(&serde_json::to_string(&f.matrix)?)?;
    let problem = OdeProblem::new(
        a,
        f.b.into_iter().map(Complex64::from).collect(),
        f.x0.into_iter().map(Complex64::from).collect(),
        f.t_final,
        f.taylor_order,
        f.steps,
        f.copies,
    )?;
    Ok(match f.eps {
        Some(e) => problem.with_eps(e),
        None => problem,
    })
}

pub fn ode_problem_to_json(p: &OdeProblem) -> Result<String> {
    let f = OdeFile {
        matrix: serde_json::from_str(&matrix_to_json(&p.a))?,
        b: p.b.iter().map(to_scalar).collect(),
        x0: p.x0.iter().map(to_scalar).collect(),
        t_final: p.t_final,
        taylor_order: p.taylor_order,
        steps: p.steps,
        copies: p.copies,
        eps: p.eps,
    };
    Ok(serde_json::to_string_pretty(&f).expect("serializable"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::sample;

    #[test]
    fn vector_roundtrip_and_mixed_entries() {
        let v = parse_vector(r#"{"entries": [1, 2.5, [0.5, -0.5]]}"#).unwrap();
        assert_eq!(v[0], Complex64::new(1.0, 0.0));
        assert_eq!(v[2], Complex64::new(0.5, -0.5));
        let text = vector_to_json(&v);
        assert_eq!(parse_vector(&text).unwrap(), v);
        assert!(text.contains("big-endian"));
    }

    #[test]
    fn matrix_dense_and_coo() {
        let dense = parse_matrix(
            r#"{"n": 2, "format": "dense", "data": [2, -1, [0, 1], 2]}"#,
        )
        .unwrap();
        assert_eq!(dense[(1, 0)], Complex64::new(0.0, 1.0));

        let coo = parse_matrix(
            r#"{"n": 2, "format": "coo", "data": [[0, 0, 2], [0, 1, -1], [1, 0, [0, 1]], [1, 1, 2]]}"#,
        )
        .unwrap();
        assert_eq!(dense, coo);

        let text = matrix_to_json(&dense);
        assert_eq!(parse_matrix(&text).unwrap(), dense);

        assert!(parse_matrix(r#"{"n": 2, "format": "dense", "data": [1]}"#).is_err());
        assert!(parse_matrix(r#"{"n": 2, "format": "csr", "data": []}"#).is_err());
    }

    #[test]
    fn pauli_sum_roundtrip() {
        let text = r#"{"terms": [{"coefficient": [2, 0], "label": "II"},
                                 {"coefficient": [-0.5, 0], "label": "XX"}]}"#;
        let sum = parse_pauli_sum(text).unwrap();
        assert_eq!(sum.terms().len(), 2);
        let back = pauli_sum_to_json(&sum);
        assert_eq!(parse_pauli_sum(&back).unwrap(), sum);
    }

    #[test]
    fn phase_file_parity_is_checked() {
        let ok = r#"{"phases": [0.1, 0.2], "parity": "odd", "target": "inverse",
                     "kappa": 4.0, "eps": 1e-4}"#;
        assert!(parse_phase_sequence(ok).is_ok());
        let bad = r#"{"phases": [0.1, 0.2], "parity": "even", "target": "inverse",
                      "kappa": 4.0, "eps": 1e-4}"#;
        assert!(parse_phase_sequence(bad).is_err());
    }

    #[test]
    fn series_roundtrip() {
        let s = ChebyshevSeries::new(vec![0.0, 0.5, 0.0, -0.25], (-1.0, 1.0)).unwrap();
        let text = series_to_json(&s);
        let back = parse_series(&text).unwrap();
        assert_eq!(back.coefficients(), s.coefficients());
        assert_eq!(back.parity(), s.parity());
    }

    #[test]
    fn circuit_roundtrip_preserves_semantics() {
        let mut qc = Circuit::new(3);
        qc.h(0).cx(0, 1).rz(0.4, 2).toffoli(0, 1, 2);
        qc.append(GateOp::controlled(
            crate::gates::Gate::X,
            vec![2],
            vec![0, 1],
            vec![false, true],
        ));
        qc.measure_all();
        let text = circuit_to_json(&qc).unwrap();
        let back = parse_circuit(&text).unwrap();
        assert_eq!(&qc, &back);
        // samples agree bit for bit
        let a = sample(&qc, 64, 11).unwrap();
        let b = sample(&back, 64, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn histogram_roundtrip() {
        let mut qc = Circuit::new(2);
        qc.h(0).cx(0, 1).measure_all();
        let h = sample(&qc, 128, 5).unwrap();
        let text = histogram_to_json(&h);
        assert_eq!(parse_histogram(&text).unwrap(), h);
    }

    #[test]
    fn ode_file_roundtrip() {
        let p = OdeProblem::new(
            CMatrix::identity(2, 2) * Complex64::new(-0.5, 0.0),
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            1.0,
            4,
            10,
            10,
        )
        .unwrap();
        let text = ode_problem_to_json(&p).unwrap();
        let back = parse_ode_problem(&text).unwrap();
        assert_eq!(back.a, p.a);
        assert_eq!(back.steps, 10);
        assert_eq!(back.copies, 10);
    }
}
