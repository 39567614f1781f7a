//! Command-line workbench: canned demonstrations writing histogram and
//! table files, the solver routes over user-supplied problem files, and an
//! input validator.
//!
//! Exit codes: 0 success, 2 input error, 3 postselection/probability
//! failure, 4 tolerance not met.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qwb::circuit::{sample, Circuit};
use qwb::io;
use qwb::linalg::CMatrix;
use qwb::solvers::{
    hhl, kron_sum_laplacian, laplacian_1d, ode_solve, qlsa_chebyshev, qlsa_pd, qlsa_qsp,
    wave_lift, HhlOptions, LinearSystemProblem,
};
use qwb::state::BasisIndex;

#[derive(Parser)]
#[command(name = "qwb", version, about = "Desk-scale quantum simulation and solver workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a canned demonstration and write its data file.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Output path (JSON, or flat CSV with --csv).
        #[arg(long)]
        out: PathBuf,
        /// Sampling seed; QWB_SEED overrides the default.
        #[arg(long, env = "QWB_SEED", default_value_t = 7)]
        seed: u64,
        /// Write a flat CSV table instead of JSON.
        #[arg(long)]
        csv: bool,
        /// Shot override where a demo samples.
        #[arg(long)]
        shots: Option<u64>,
        /// Grover: register width.
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        /// Grover: marked basis index.
        #[arg(long, default_value_t = 5)]
        marked: usize,
        /// Grover: amplification iterations.
        #[arg(long, default_value_t = 2)]
        iterations: usize,
        /// qlsa-figure: reference solution to compare against.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Run a solver route on problem files and write the report.
    Solve {
        #[arg(value_enum)]
        route: RouteName,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        rhs: Option<PathBuf>,
        /// ODE problem file (route: ode).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Phase-sequence file (route: qlsa-qsp).
        #[arg(long)]
        phases: Option<PathBuf>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        alpha_bound: Option<f64>,
        /// Clock bits (route: hhl).
        #[arg(long, default_value_t = 3)]
        m_bits: usize,
        #[arg(long)]
        t0: Option<f64>,
        /// Rotation constant C (route: hhl).
        #[arg(long)]
        c: Option<f64>,
        /// Dimensions (route: poisson).
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// 1D grid size (routes: poisson, wave).
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Grid spacing (route: wave).
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        /// Evolution time (route: wave).
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Initial state file (route: wave).
        #[arg(long)]
        initial: Option<PathBuf>,
        /// Reference solution for the check fields.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Fail (exit 4) when the check error exceeds this.
        #[arg(long)]
        check_tol: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check input files against the solver invariants; always exits 0
    /// and prints the diagnostics.
    Validate {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        rhs: Option<PathBuf>,
        #[arg(long)]
        phases: Option<PathBuf>,
        /// Route the inputs are meant for (adds route-specific checks).
        #[arg(long)]
        route: Option<String>,
        /// Write the diagnostics here as JSON (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Bell,
    Superposition,
    Qft,
    Trotter,
    PauliGrowth,
    Grover,
    QlsaFigure,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteName {
    QlsaCheb,
    QlsaQsp,
    QlsaPd,
    Hhl,
    Ode,
    Poisson,
    Wave,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(qwb::Error),
    Input(String),
    Tolerance { got: f64, tol: f64 },
    Write { path: String, source: std::io::Error },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Tolerance { got, tol } => {
                write!(f, "check error {got:e} exceeds tolerance {tol:e}")
            }
            CliError::Write { path, source } => write!(f, "cannot write {path}: {source}"),
        }
    }
}

impl From<qwb::Error> for CliError {
    fn from(e: qwb::Error) -> Self {
        CliError::Lib(e)
    }
}

fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Lib(qwb::Error::PostselectionFailed(_)) => 3,
        CliError::Lib(qwb::Error::DegreeCapExceeded(_)) => 4,
        CliError::Tolerance { .. } => 4,
        _ => 2,
    }
}

/// Atomic write: temp file in the target directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let wrap =
        |source: std::io::Error| CliError::Write { path: path.display().to_string(), source };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    std::io::Write::write_all(&mut tmp, contents.as_bytes()).map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn histogram_out(h: &qwb::circuit::Histogram, csv: bool) -> String {
    if csv {
        let mut s = String::from("outcome,count\n");
        for (k, v) in &h.counts {
            s.push_str(&format!("{k},{v}\n"));
        }
        s
    } else {
        io::histogram_to_json(h)
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Demo { name, out, seed, csv, shots, qubits, marked, iterations, check } => {
            demo(name, &out, seed, csv, shots, qubits, marked, iterations, check.as_deref())
        }
        Command::Solve {
            route,
            matrix,
            rhs,
            spec,
            phases,
            kappa,
            eps,
            alpha_bound,
            m_bits,
            t0,
            c,
            dim,
            n,
            h,
            t,
            initial,
            check,
            check_tol,
            out,
        } => solve(SolveArgs {
            route,
            matrix,
            rhs,
            spec,
            phases,
            kappa,
            eps,
            alpha_bound,
            m_bits,
            t0,
            c,
            dim,
            n,
            h,
            t,
            initial,
            check,
            check_tol,
            out,
        }),
        Command::Validate { matrix, rhs, phases, route, out } => validate(
            matrix.as_deref(),
            rhs.as_deref(),
            phases.as_deref(),
            route.as_deref(),
            out.as_deref(),
        ),
    }
}

// ------------------------------------------------------------------ demos

#[allow(clippy::too_many_arguments)]
fn demo(
    name: DemoName,
    out: &Path,
    seed: u64,
    csv: bool,
    shots: Option<u64>,
    qubits: usize,
    marked: usize,
    iterations: usize,
    check: Option<&Path>,
) -> Result<(), CliError> {
    match name {
        DemoName::Bell => {
            let mut qc = Circuit::new(2);
            qc.h(0).cx(0, 1).measure_all();
            let h = sample(&qc, shots.unwrap_or(5120), seed)?;
            write_atomic(out, &histogram_out(&h, csv))
        }
        DemoName::Superposition => {
            let mut qc = Circuit::new(3);
            qc.h(0).h(1).h(2).measure_all();
            let h = sample(&qc, shots.unwrap_or(1 << 15), seed)?;
            write_atomic(out, &histogram_out(&h, csv))
        }
        DemoName::Qft => {
            let shots = shots.unwrap_or(1 << 20);
            let mut before = Circuit::new(5);
            for q in 0..5 {
                before.h(q);
            }
            let mut after = before.clone();
            before.measure_all();
            after.extend(&qwb::subroutines::qft(5));
            after.measure_all();
            let hb = sample(&before, shots, seed)?;
            let ha = sample(&after, shots, seed)?;
            if csv {
                let mut s = String::from("outcome,before,after\n");
                for i in 0..32usize {
                    let key = BasisIndex(i).bitstring(5);
                    s.push_str(&format!(
                        "{key},{},{}\n",
                        hb.counts.get(&key).unwrap_or(&0),
                        ha.counts.get(&key).unwrap_or(&0)
                    ));
                }
                write_atomic(out, &s)
            } else {
                let doc = format!(
                    "{{\n\"before\": {},\n\"after\": {}\n}}\n",
                    io::histogram_to_json(&hb),
                    io::histogram_to_json(&ha)
                );
                write_atomic(out, &doc)
            }
        }
        DemoName::Trotter => {
            let grid: [usize; 13] =
                [10, 20, 40, 80, 100, 200, 400, 800, 1000, 2000, 4000, 8000, 10000];
            let sum = qwb::encodings::PauliSum::new(vec![
                (Complex64::new(1.0, 0.0), "X".parse().map_err(CliError::Lib)?),
                (Complex64::new(1.0, 0.0), "Z".parse().map_err(CliError::Lib)?),
            ])?;
            let h = qwb::encodings::pauli_reconstruct(&sum);
            let mut rows = Vec::new();
            for order in [1usize, 2] {
                for t in 1..=5usize {
                    let exact = qwb::hamsim::exact_unitary(&h, t as f64)?;
                    for &r in &grid {
                        let spec =
                            qwb::hamsim::HamiltonianSpec::from_pauli_sum(sum.clone(), t as f64)?
                                .with_steps(r);
                        let qc = if order == 1 {
                            qwb::hamsim::trotter1(&spec)?
                        } else {
                            qwb::hamsim::trotter2(&spec)?
                        };
                        let err = qwb::linalg::spectral_norm(&(qc.unitary()? - &exact));
                        rows.push((t, r, order, err));
                    }
                }
            }
            if csv {
                let mut s = String::from("t,r,order,error\n");
                for (t, r, order, err) in rows {
                    s.push_str(&format!("{t},{r},{order},{err:e}\n"));
                }
                write_atomic(out, &s)
            } else {
                let json: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(t, r, order, err)| {
                        serde_json::json!({"t": t, "r": r, "order": order, "error": err})
                    })
                    .collect();
                write_atomic(out, &serde_json::to_string_pretty(&json).unwrap())
            }
        }
        DemoName::PauliGrowth => {
            let mut rows = Vec::new();
            for n in 1..=7usize {
                let size = 1usize << n;
                let sum = qwb::encodings::pauli_decompose(&laplacian_1d(size))?;
                rows.push((size, sum.terms().len()));
            }
            if csv {
                let mut s = String::from("n,terms\n");
                for (n, terms) in rows {
                    s.push_str(&format!("{n},{terms}\n"));
                }
                write_atomic(out, &s)
            } else {
                let json: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(n, terms)| serde_json::json!({"n": n, "terms": terms}))
                    .collect();
                write_atomic(out, &serde_json::to_string_pretty(&json).unwrap())
            }
        }
        DemoName::Grover => {
            let index = BasisIndex::checked(marked, qubits)?;
            let qc = qwb::subroutines::grover(qubits, index, iterations)?;
            let h = sample(&qc, shots.unwrap_or(1024), seed)?;
            write_atomic(out, &histogram_out(&h, csv))
        }
        DemoName::QlsaFigure => {
            let (a, b, xs) = anti_diagonal_fixture();
            let problem = LinearSystemProblem::new(a, b, 20.0, 1e-6)?;
            let report = qlsa_chebyshev(&problem)?;
            let solution = &report.solution.amplitudes()[..40];
            let reference = match check {
                Some(path) => Some(io::parse_vector(&read(path)?)?),
                None => None,
            };
            if csv {
                let mut s = String::from(match reference {
                    Some(_) => "x,amplitude,reference,rel_error\n",
                    None => "x,amplitude\n",
                });
                for (i, x) in xs.iter().enumerate() {
                    match &reference {
                        Some(rf) => {
                            let rel = (solution[i].re - rf[i].re).abs() / rf[i].norm();
                            s.push_str(&format!("{x},{},{},{rel:e}\n", solution[i].re, rf[i].re));
                        }
                        None => s.push_str(&format!("{x},{}\n", solution[i].re)),
                    }
                }
                write_atomic(out, &s)
            } else {
                let check_result =
                    reference.as_ref().map(|rf| io::check_against_reference(solution, rf));
                let doc = serde_json::json!({
                    "x": xs,
                    "amplitudes": solution.iter().map(|z| z.re).collect::<Vec<f64>>(),
                    "success_prob": report.success_prob,
                    "degree": report.degree_or_bits,
                    "check_error": check_result.map(|c| c.error),
                });
                write_atomic(out, &serde_json::to_string_pretty(&doc).unwrap())
            }
        }
    }
}

/// The anti-diagonal benchmark: values +-0.05..1 on the anti-diagonal,
/// uniform right-hand side. Returns (A, b, diagonal values).
fn anti_diagonal_fixture() -> (CMatrix, Vec<Complex64>, Vec<f64>) {
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
        a[(n - 1 - col, col)] = Complex64::new(*v, 0.0);
    }
    let b = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    (a, b, values)
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
    route: RouteName,
    matrix: Option<PathBuf>,
    rhs: Option<PathBuf>,
    spec: Option<PathBuf>,
    phases: Option<PathBuf>,
    kappa: Option<f64>,
    eps: Option<f64>,
    alpha_bound: Option<f64>,
    m_bits: usize,
    t0: Option<f64>,
    c: Option<f64>,
    dim: usize,
    n: usize,
    h: f64,
    t: f64,
    initial: Option<PathBuf>,
    check: Option<PathBuf>,
    check_tol: Option<f64>,
    out: PathBuf,
}

fn linear_problem(args: &SolveArgs) -> Result<LinearSystemProblem, CliError> {
    let matrix_path = args
        .matrix
        .as_ref()
        .ok_or_else(|| CliError::Input("--matrix is required for this route".into()))?;
    let rhs_path = args
        .rhs
        .as_ref()
        .ok_or_else(|| CliError::Input("--rhs is required for this route".into()))?;
    let a = io::parse_matrix(&read(matrix_path)?)?;
    let b = io::parse_vector(&read(rhs_path)?)?;
    let kappa = args
        .kappa
        .ok_or_else(|| CliError::Input("--kappa is required for this route".into()))?;
    let mut problem = LinearSystemProblem::new(a, b, kappa, args.eps.unwrap_or(1e-6))?;
    if let Some(bound) = args.alpha_bound {
        problem = problem.with_alpha_bound(bound);
    }
    Ok(problem)
}

fn finish_report(report: qwb::solvers::SolveReport, args: &SolveArgs) -> Result<(), CliError> {
    let check = match &args.check {
        Some(path) => {
            let reference = io::parse_vector(&read(path)?)?;
            Some(io::check_against_reference(report.solution.amplitudes(), &reference))
        }
        None => None,
    };
    write_atomic(&args.out, &io::solve_report_to_json(&report, check))?;
    if let (Some(result), Some(tol)) = (check, args.check_tol) {
        if result.error > tol {
            return Err(CliError::Tolerance { got: result.error, tol });
        }
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    match args.route {
        RouteName::QlsaCheb => {
            let problem = linear_problem(&args)?;
            let report = qlsa_chebyshev(&problem)?;
            finish_report(report, &args)
        }
        RouteName::QlsaQsp => {
            let problem = linear_problem(&args)?;
            let phase_path = args
                .phases
                .as_ref()
                .ok_or_else(|| CliError::Input("--phases is required for qlsa-qsp".into()))?;
            let phases = io::parse_phase_sequence(&read(phase_path)?)?;
            let report = qlsa_qsp(&problem, &phases)?;
            finish_report(report, &args)
        }
        RouteName::QlsaPd => {
            let problem = linear_problem(&args)?;
            let report = qlsa_pd(&problem)?;
            finish_report(report, &args)
        }
        RouteName::Hhl => {
            let problem = linear_problem(&args)?;
            let mut opts = HhlOptions::new(args.m_bits);
            if let Some(t0) = args.t0 {
                opts = opts.with_t0(t0);
            }
            if let Some(c) = args.c {
                opts = opts.with_c(c);
            }
            let report = hhl(&problem, &opts)?;
            finish_report(report, &args)
        }
        RouteName::Ode => {
            let spec_path = args
                .spec
                .as_ref()
                .ok_or_else(|| CliError::Input("--spec is required for ode".into()))?;
            let problem = io::parse_ode_problem(&read(spec_path)?)?;
            let report = ode_solve(&problem)?;
            finish_report(report, &args)
        }
        RouteName::Poisson => {
            let rhs_path = args
                .rhs
                .as_ref()
                .ok_or_else(|| CliError::Input("--rhs is required for poisson".into()))?;
            let b = io::parse_vector(&read(rhs_path)?)?;
            let a = kron_sum_laplacian(&laplacian_1d(args.n), args.dim);
            if b.len() != a.nrows() {
                return Err(CliError::Input(format!(
                    "rhs has {} entries but the {}-d Laplacian on {} points is {}-dimensional",
                    b.len(),
                    args.dim,
                    args.n,
                    a.nrows()
                )));
            }
            let kappa = match args.kappa {
                Some(k) => k,
                None => qwb::linalg::condition_number(&a) * 1.01,
            };
            let problem = LinearSystemProblem::new(a, b, kappa, args.eps.unwrap_or(1e-4))?;
            let report = qlsa_pd(&problem)?;
            finish_report(report, &args)
        }
        RouteName::Wave => {
            let l = laplacian_1d(args.n);
            let (gen, bmat) = wave_lift(&l, args.h)?;
            let dim = gen.nrows();
            let psi0: Vec<Complex64> = match &args.initial {
                Some(path) => {
                    let v = io::parse_vector(&read(path)?)?;
                    if v.len() != dim {
                        return Err(CliError::Input(format!(
                            "initial state needs {dim} entries (phi_V then phi_E), got {}",
                            v.len()
                        )));
                    }
                    v
                }
                None => {
                    let mut v = vec![Complex64::new(0.0, 0.0); dim];
                    v[args.n / 2] = Complex64::new(1.0, 0.0);
                    v
                }
            };
            let norm0 = psi0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm0 == 0.0 {
                return Err(CliError::Input("initial state is all-zero".into()));
            }
            let psi0: Vec<Complex64> = psi0.iter().map(|z| z / norm0).collect();
            let u = qwb::hamsim::exact_unitary(&gen, args.t)?;
            let mut psi = vec![Complex64::new(0.0, 0.0); dim];
            for (row, slot) in psi.iter_mut().enumerate() {
                for col in 0..dim {
                    *slot += u[(row, col)] * psi0[col];
                }
            }
            let norm_drift = (psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs();
            let fact = qwb::linalg::max_abs(
                &(qwb::linalg::matmul(&bmat, &qwb::linalg::dagger(&bmat)) - &l),
            );
            let doc = serde_json::json!({
                "n": args.n,
                "h": args.h,
                "t": args.t,
                "factorization_residual": fact,
                "norm_drift": norm_drift,
                "phi_v": psi[..args.n].iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "phi_e": psi[args.n..].iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            });
            write_atomic(&args.out, &serde_json::to_string_pretty(&doc).unwrap())
        }
    }
}

// --------------------------------------------------------------- validate

fn validate(
    matrix: Option<&Path>,
    rhs: Option<&Path>,
    phases: Option<&Path>,
    route: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut diagnostics: Vec<String> = Vec::new();
    let mut parsed_matrix: Option<CMatrix> = None;

    if let Some(path) = matrix {
        match read(path).and_then(|t| io::parse_matrix(&t).map_err(CliError::from)) {
            Ok(m) => {
                if !m.is_square() {
                    diagnostics.push("matrix is not square".into());
                }
                parsed_matrix = Some(m);
            }
            Err(e) => diagnostics.push(format!("matrix file: {e}")),
        }
    }
    if let Some(path) = rhs {
        match read(path).and_then(|t| io::parse_vector(&t).map_err(CliError::from)) {
            Ok(v) => {
                if v.iter().map(|z| z.norm_sqr()).sum::<f64>() == 0.0 {
                    diagnostics.push("right-hand side is all-zero".into());
                }
                if let Some(m) = &parsed_matrix {
                    if m.nrows() != v.len() {
                        diagnostics.push(format!(
                            "matrix is {}x{} but rhs has {} entries",
                            m.nrows(),
                            m.ncols(),
                            v.len()
                        ));
                    }
                }
            }
            Err(e) => diagnostics.push(format!("rhs file: {e}")),
        }
    }
    if let Some(path) = phases {
        match read(path) {
            Ok(text) => {
                if let Err(e) = io::parse_phase_sequence(&text) {
                    diagnostics.push(format!("phase file: {e}"));
                }
            }
            Err(e) => diagnostics.push(format!("phase file: {e}")),
        }
    }
    if let (Some(m), Some(route)) = (&parsed_matrix, route) {
        match route {
            "hhl" => {
                let defect = qwb::linalg::hermitian_defect(m);
                if defect > qwb::tol::HERMITIAN_TOL {
                    diagnostics
                        .push(format!("route hhl needs a Hermitian matrix (defect {defect:e})"));
                }
            }
            "qlsa-pd" | "poisson" => {
                if !qwb::linalg::is_hermitian(m) {
                    diagnostics.push("route needs a Hermitian matrix".into());
                } else if let Ok((vals, _)) = qwb::linalg::hermitian_eigen(m) {
                    if vals.iter().any(|&v| v <= 0.0) {
                        diagnostics.push("route needs a positive-definite matrix".into());
                    }
                }
            }
            _ => {}
        }
    }

    let doc = serde_json::json!({ "diagnostics": diagnostics });
    let text = serde_json::to_string_pretty(&doc).unwrap();
    match out {
        Some(path) => write_atomic(path, &text)?,
        None => println!("{text}"),
    }
    Ok(())
}
