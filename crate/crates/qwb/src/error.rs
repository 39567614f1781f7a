use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("register must contain at least one qubit")]
    EmptyRegister,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("amplitudes are not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("cannot amplitude-encode an all-zero vector")]
    ZeroVector,
    #[error("invalid bitstring character {0:?}")]
    InvalidBitstring(char),
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("qubit index {index} out of range for {width} qubits")]
    QubitOutOfRange { index: usize, width: usize },
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("subnormalization bound violated: |A/alpha|_2 = {0}")]
    SubnormalizationBound(f64),
    #[error("circuit contains measurement markers; use sample instead")]
    MeasurementInCircuit,
    #[error("circuit has no terminal measurements to sample")]
    NoMeasurement,
    #[error("gate operations found after measurement markers")]
    GateAfterMeasurement,
    #[error("postselection probability {0:e} is degenerate")]
    PostselectionFailed(f64),
    #[error("degree cap {0} exceeded before reaching target accuracy")]
    DegreeCapExceeded(usize),
    #[error("series magnitude exceeds 1 on [-1,1] (max |P| = {0})")]
    SeriesBound(f64),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("phase sequence incompatible: {0}")]
    PhaseMetadata(String),
    #[error("identity Pauli string exponentiates to a global phase, not a circuit")]
    IdentityPauliExp,
    #[error("factorization residual {0:e} exceeds tolerance")]
    FactorizationResidual(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
