use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An integer argument fell outside its closed valid interval.
    #[error("{name} = {value} is out of range; valid interval is [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("invalid ring model: {0}")]
    InvalidModel(String),

    /// The ring is too small for the requested structure to exist.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("capacity exceeded: {what} = {value}, limit is {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("qubit index {index} is invalid for a {n_qubits}-qubit register")]
    InvalidQubit { index: usize, n_qubits: usize },

    #[error("gate {0} needs distinct qubits")]
    RepeatedQubit(&'static str),

    #[error("controlled phase order p = {0} must be at least 2")]
    InvalidPhaseOrder(u32),

    #[error("subgroup order {sub_order} does not divide group order {group_order}")]
    Divisibility {
        group_order: usize,
        sub_order: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub(crate) fn check_range(name: &'static str, value: i64, min: i64, max: i64) -> Result<()> {
    if value < min || value > max {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    } else {
        Ok(())
    }
}
