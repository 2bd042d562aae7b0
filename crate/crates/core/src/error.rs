use thiserror::Error;

use crate::responsiveness::Witness;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown instance `{instance}` for variable `{variable}`")]
    UnknownInstance { variable: String, instance: String },

    #[error("`{0}` is a decision variable; only chance variables may be tested for responsiveness")]
    DecisionNotAllowed(String),

    #[error("`{0}` is a chance variable where a decision variable was expected")]
    ChanceNotAllowed(String),

    #[error("instance assignment is not total over the limiting set: missing `{0}`")]
    PartialInstance(String),

    #[error("`{0}` cannot be a member of its own cause set")]
    ReflexiveCause(String),

    #[error("enumeration of {requested} items exceeds the budget of {budget}")]
    Budget { requested: u128, budget: u128 },

    #[error("mapping is ill-defined: {witness}")]
    Inconsistent { witness: Box<Witness> },

    #[error("model inconsistency: {0}")]
    Model(String),

    #[error("invalid problem: {0}")]
    Invalid(#[from] crate::model::Violation),

    #[error("variable sets do not align: {0}")]
    Misaligned(String),

    #[error("diagram is not in canonical form: {0}")]
    NotCanonical(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
