use thiserror::Error;

use crate::diagram::{EdgeId, NodeId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("rule not applicable: {0}")]
    RuleNotApplicable(String),

    #[error("unsupported phase {quarter_turns}·π/2 on spider {spider:?}: webs require phases in {{0, π}}")]
    UnsupportedPhase { spider: NodeId, quarter_turns: u8 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("diagram too large to contract: {ports} boundary ports (limit {limit})")]
    TooManyPorts { ports: usize, limit: usize },

    #[error("unknown edge {0:?}")]
    UnknownEdge(EdgeId),

    #[error("unknown gadget name: {0}")]
    UnknownGadget(String),

    #[error("invalid patch spec: {0}")]
    InvalidSpec(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),
}
