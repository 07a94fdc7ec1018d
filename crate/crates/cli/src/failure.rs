use quditc_core::circuit_ir::TopologyError;
use quditc_core::decomp::DecompError;
use quditc_core::embed::{EmbedError, QubitCircuitError};
use quditc_core::mrsim::SimError;
use std::fmt;

pub const NOT_EQUIVALENT: u8 = 1;
pub const INVALID: u8 = 2;
pub const DIMENSION: u8 = 3;
pub const VERIFY_BUDGET: u8 = 4;
pub const MAPPING: u8 = 5;

/// A diagnostic together with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(INVALID, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        let code = if matches!(e, DecompError::DimensionTooSmall { .. }) { DIMENSION } else { INVALID };
        Self::new(code, e.to_string())
    }
}

impl From<EmbedError> for Failure {
    fn from(e: EmbedError) -> Self {
        let code = match e {
            EmbedError::InsufficientDimension { .. } => DIMENSION,
            EmbedError::Capacity { .. } | EmbedError::BudgetExceeded { .. } | EmbedError::Overflow => MAPPING,
            _ => INVALID,
        };
        Self::new(code, e.to_string())
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<TopologyError> for Failure {
    fn from(e: TopologyError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<QubitCircuitError> for Failure {
    fn from(e: QubitCircuitError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::invalid(format!("malformed JSON: {e}"))
    }
}
