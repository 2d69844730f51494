use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Subsets in error messages are printed 1-based, matching the usual
/// `v_1, ..., v_n` labelling of a configuration.
fn one_based(subset: &[usize]) -> String {
    let labels: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

fn one_based_list(subsets: &[Vec<usize>]) -> String {
    let parts: Vec<String> = subsets.iter().map(|s| one_based(s)).collect();
    parts.join(", ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("configuration is not in general position: columns {} are linearly dependent", one_based(.subset))]
    NotGeneralPosition { subset: Vec<usize> },

    #[error("polynomial is identically zero")]
    DegeneratePolynomial,

    #[error("polynomial has a root at the interval endpoint {0}")]
    BoundaryRoot(String),

    #[error("Gale dual of a configuration with n = r is empty")]
    EmptyDual,

    #[error("index {index} out of range for a configuration of {n} vectors")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parameters must be strictly increasing")]
    NonIncreasingParams,

    #[error("could not produce a configuration in general position after {0} attempts")]
    ResamplingExhausted(usize),

    #[error("straight-line motion is not generic: {reason} (subsets {})", one_based_list(.subsets))]
    NotGeneric {
        reason: String,
        subsets: Vec<Vec<usize>>,
    },

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
