use thiserror::Error;

use crate::boolexpr::Var;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable {0} has no value in the assignment")]
    UnassignedVariable(Var),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element {0} is not invertible")]
    NotInvertible(String),

    #[error("ring {0} is not a field")]
    NotAField(String),

    #[error("ring {0} has characteristic 2; the field theory divides by 2")]
    CharacteristicTwo(String),

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("ring {ring} does not contain {what}")]
    UnsupportedConstant { ring: String, what: String },

    #[error("unsupported root of unity order {0}")]
    UnsupportedRootOrder(u32),

    #[error("ring sum found in a multiplicative expression")]
    AddInMultiplicativeMode,

    #[error("{bits} variables exceed the table cap of {cap}")]
    SizeCap { bits: usize, cap: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("matrix of size {rows}x{cols} is not a power-of-two shape")]
    NonPowerOfTwo { rows: usize, cols: usize },

    #[error("sum has free variables; close it with to_state first")]
    NotClosed,

    #[error("ill-formed sum: {0}")]
    IllFormed(String),

    #[error("rule {rule} does not match: {reason}")]
    NoMatch { rule: String, reason: String },

    #[error("rule {rule} is unavailable over {ring}")]
    RuleUnavailable { rule: String, ring: String },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
