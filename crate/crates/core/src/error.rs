use thiserror::Error;

/// Errors surfaced by operations whose contracts admit failure. Precondition
/// violations on infallible operations panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition sizes differ: |lambda| = {0}, |mu| = {1}")]
    SizeMismatch(usize, usize),

    #[error("expansion degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree ({got_q}, {got_t}) exceeds reflection bound ({bound_q}, {bound_t})")]
    DegreeExceedsBound {
        got_q: usize,
        got_t: usize,
        bound_q: usize,
        bound_t: usize,
    },

    #[error("coefficient beyond the truncation cap: q^{0} t^{1}")]
    CapOverflow(usize, usize),

    #[error("coefficient is not an integer: {0}")]
    NonIntegerCoefficient(String),

    #[error("partition has {0} parts, more than the {1} variables available")]
    TooManyParts(usize, usize),

    #[error("move not permitted: {0}")]
    MoveNotPermitted(String),

    #[error("diagram has repeated cell ({0}, {1})")]
    RepeatedCell(usize, usize),

    #[error("polynomial is not diagonally symmetric (fails under {0})")]
    NotDiagonallySymmetric(String),

    #[error("zero polynomial has no leading monomial")]
    ZeroPolynomial,

    #[error("desk-scale guard exceeded: n = {n} is above the limit {limit} for {what}")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
