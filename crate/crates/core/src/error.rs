use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input (diagram code, graph code, matrix file, ...).
    /// `pos` is a 0-based token or character position when one is known.
    Parse { msg: String, pos: Option<usize> },
    /// Vertex count exceeds the configured canonicalization bound.
    VertexBound { n: usize, bound: usize },
    /// An edge operation referred to an edge that is not present.
    MissingEdge { u: usize, v: usize },
    /// A chord index was outside `0..order`.
    ChordIndex { index: usize, order: usize },
    /// The left factor of a module product must be a black diagram/graph.
    NonBlackFactor,
    /// An operation restricted to all-black input received a framed one.
    FramedInput,
    /// A modular rank was requested for a prime dividing some denominator.
    BadPrime { p: u64 },
    /// Remoteness is only defined at endpoints of oriented chords.
    NotOrientedEndpoint { position: usize },
    /// Requested order exceeds the configured maximum.
    OrderBound { n: usize, bound: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { msg, pos: Some(p) } => write!(f, "parse error at position {p}: {msg}"),
            Error::Parse { msg, pos: None } => write!(f, "parse error: {msg}"),
            Error::VertexBound { n, bound } => {
                write!(f, "vertex count {n} exceeds canonicalization bound {bound}")
            }
            Error::MissingEdge { u, v } => write!(f, "edge {}-{} not present", u + 1, v + 1),
            Error::ChordIndex { index, order } => {
                write!(f, "chord index {index} out of range for order {order}")
            }
            Error::NonBlackFactor => write!(f, "left factor of a module product must be black"),
            Error::FramedInput => write!(f, "operation requires an all-black input"),
            Error::BadPrime { p } => write!(f, "prime {p} divides a matrix denominator"),
            Error::NotOrientedEndpoint { position } => {
                write!(f, "position {position} is not an oriented-chord endpoint")
            }
            Error::OrderBound { n, bound } => {
                write!(f, "order {n} exceeds configured bound {bound}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
