//! Shared error type for all algebra and analysis routines.

use thiserror::Error;

/// Errors are reported, never wrapped into panics or silently clamped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exponent arithmetic overflowed the machine word")]
    ExponentOverflow,
    #[error("all inputs are zero")]
    AllZero,
    #[error("variable index {var} out of range for {nvars} variables")]
    VarOutOfRange { var: usize, nvars: usize },
    #[error("zero input where a nonzero polynomial is required")]
    ZeroInput,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("component degrees do not match")]
    DegreeMismatch,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("pre-cancellation degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u64, cap: u64 },
    #[error("map is not dominant")]
    NotDominant,
    #[error("map is not regular")]
    NotRegular,
    #[error("matrix determinant is zero")]
    ZeroDeterminant,
    #[error("fan is not complete")]
    IncompleteFan,
    #[error("closed form requires a != c^j; use the direct sum instead")]
    ClosedFormInvalid,
    #[error(
        "counterexample: dominant non-invertible map has first regular iterate {index}, \
         outside {{1,2,3,4,6,8,12}}"
    )]
    UnexpectedRegularIndex { index: usize },
}
