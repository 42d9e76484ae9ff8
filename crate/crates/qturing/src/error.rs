use thiserror::Error;

/// Errors produced by the simulator core and the CLI plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: need at least one memory cell, got M = {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("subsystem index {id} out of range (0..={max})")]
    InvalidSubsystem { id: usize, max: usize },

    #[error("basis occupation must be 0 or 1, got {0}")]
    InvalidBit(u8),

    #[error("generator index must be in 0..=3, got {0}")]
    InvalidGenerator(u8),

    #[error("cluster index has length {got}, state has {want} subsystems")]
    ClusterLengthMismatch { got: usize, want: usize },

    #[error("step number {0} out of range 1..={1}")]
    InvalidStep(usize, usize),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("transform entry has non-negligible imaginary part {0:.3e}")]
    NonRealTransform(f64),

    #[error("operator support includes subsystem other than {0}")]
    SupportOutsideSubsystem(usize),

    #[error("measurement outcome has probability {0:.3e}: branch is impossible")]
    ImpossibleOutcome(f64),

    #[error("branch probabilities sum to {0}, expected 1")]
    BranchNormalization(f64),

    #[error("coupling constant must be positive, got {0}")]
    InvalidCoupling(f64),

    #[error("M = {0} exceeds the supported cap of {1}")]
    SizeCap(usize, usize),

    #[error("dense path requires M <= {max}, got M = {got}")]
    DenseCap { got: usize, max: usize },

    #[error("angle list is empty")]
    EmptyAngles,

    #[error("memory index {0} out of range 1..={1}")]
    InvalidMemoryCell(usize, usize),

    #[error("closed forms are only defined for uniform-angle cycles")]
    NonUniformAngles,

    #[error("operation supported for cycle 1 only")]
    BeyondFirstCycle,

    #[error("missing correlation record for index {0} at ({1},{2})")]
    MissingRecord(String, u64, usize),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
