use thiserror::Error;

/// Errors produced by plan construction, propagation, analytics and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid frequency plan: {0}")]
    InvalidPlan(String),

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("{kind} index {index} is outside [{lo}, {hi}]")]
    IndexOutOfSet {
        kind: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },

    #[error("unknown frame `{0}` (expected lab, rotating or rwa)")]
    UnknownFrame(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("steps per fastest period must be at least 16, got {0}")]
    TooFewSteps(u32),

    #[error("propagation needs {needed} steps, above the cap of {cap}")]
    StepBudget { needed: u64, cap: u64 },

    #[error("operator is not unitary (max deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("pulse width tau = {tau_over_tau0} tau0 is not a multiple of tau0/2")]
    NonOrthogonalWidth { tau_over_tau0: f64 },

    #[error("closed form requires the default amplitude alpha = -phi/tau")]
    NonDefaultAmplitude,

    #[error("qubit {k_q} has no resonant drive tone in the comb")]
    NoResonantTone { k_q: i64 },

    #[error("large-N_d approximation needs N_d > 4(|k_q| + 1); got N_d = {n_d}, k_q = {k_q}")]
    ValidityGate { n_d: u32, k_q: i64 },

    #[error("quadrature did not converge (estimated error {0:.3e})")]
    Quadrature(f64),

    #[error("need at least 3 positive points in range to fit a slope, found {0}")]
    InsufficientPoints(usize),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
