use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {0} out of range (expected 1 or 2)")]
    IndexOutOfRange(usize),
    #[error("order must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("kernel expects {expected} arguments, got {got}")]
    SlotMismatch { expected: usize, got: usize },
    #[error("invalid kernel pair ({0}, {1})")]
    InvalidPair(usize, usize),
    #[error("integrand uses variable x{var} outside a domain of {available} variables")]
    UnknownVariable { var: usize, available: usize },
    #[error("linear form is degenerate: directional derivative vanishes on an edge at vertex {vertex}")]
    DegenerateForm { vertex: usize },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
