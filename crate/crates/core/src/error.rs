use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("malformed cycle text at byte {pos}: {msg}")]
    CycleSyntax { pos: usize, msg: String },
    #[error("point {0} appears more than once in cycle text")]
    RepeatedPoint(usize),
    #[error("point {0} is not in the orbit")]
    NotInOrbit(usize),
    #[error("dummy pair slots overlap or are invalid: {0}")]
    BadPairs(String),
    #[error("point {0} belongs to no dummy pair")]
    NotInPair(usize),
    #[error("search exceeded the table cap of {0} entries")]
    TableCap(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Parse(#[from] crate::frontend::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
