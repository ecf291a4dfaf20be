//! Error type shared across the crate.
//!
//! Programmer errors (mismatched variable tables, out-of-range internal
//! indices) panic via `assert!` like the rest of the codebase; `Error` is for
//! conditions a caller can trigger with well-formed code: division by zero,
//! invalid group data, size guards, unparseable input.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by zero in the scalar field or in a rational function.
    #[error("division by zero")]
    DivisionByZero,

    /// Group element data violating the `G(m,p,n)` membership constraints.
    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    /// An enumeration or search refused to run because it would exceed the
    /// configured size guard.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// Out-of-range argument (variable index, symmetric degree, row, ...).
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// Malformed algebra signature (p must divide m, rows must be positive).
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),

    /// Text that does not belong to the accepted grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// A verification routine was handed input outside its contract, e.g. a
    /// non-invariant element where an invariant one is required.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
