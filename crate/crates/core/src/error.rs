use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("slot {slot} out of range for register of width {width}")]
    SlotOutOfRange { slot: usize, width: usize },

    #[error("register needs {required} qubits, cap is {cap}")]
    Capacity { required: usize, cap: usize },

    #[error("enumeration budget exceeded ({budget} visited nodes)")]
    BudgetExceeded { budget: u64 },

    #[error("live monomial count exceeded cap of {cap}")]
    MonomialCap { cap: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    /// Resource exhaustion, as opposed to bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::Capacity { .. } | Error::BudgetExceeded { .. } | Error::MonomialCap { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
