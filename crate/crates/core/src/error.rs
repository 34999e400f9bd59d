use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rank outside the family bounds (B: r >= 2, C: r >= 3, D: r >= 4).
    RankOutOfBounds { family: char, rank: usize },
    /// A weight had the wrong number of coordinates.
    WrongRank { expected: usize, actual: usize },
    /// The zero vector was passed where a nonzero root or normal is required.
    ZeroVector,
    /// The weight does not lie in the weight lattice P of the system.
    NotInWeightLattice,
    /// The vector is not a root of the ambient system.
    NotARoot,
    /// The zero weight was passed where a nonzero dominant weight is required.
    ZeroWeight,
    /// The diagram is not covered by the boundary-subset table (type A or
    /// unrecognized shape).
    UnsupportedDiagram,
    /// A spanning set had the wrong rank (expected r - 1 for a hyperplane).
    SpanRank { expected: usize, actual: usize },
    /// A subset operation received a weight outside the orbit it must lie in.
    NotInOrbit(String),
    /// A subset operation received a weight outside the weight support.
    NotInSupport(String),
    /// Two subset elements violate a separation constraint; both are named.
    SubsetPair {
        constraint: &'static str,
        first: String,
        second: String,
    },
    /// A single element violates a constraint; the element is named.
    Violates {
        constraint: &'static str,
        witness: String,
    },
    /// The k-th exterior power needs k <= n.
    ExteriorPower { n: u64, k: u64 },
    /// Text input failed to parse; `pos` is the byte offset of the failure.
    Parse { pos: usize, msg: String },
    /// A brute-force oracle was asked to exceed its size limits.
    OracleScale(String),
    /// The combination of system and weight is not handled by this check.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankOutOfBounds { family, rank } => {
                write!(f, "rank {rank} is out of bounds for type {family}")
            }
            Error::WrongRank { expected, actual } => {
                write!(f, "expected a weight of rank {expected}, got {actual}")
            }
            Error::ZeroVector => write!(f, "the zero vector is not allowed here"),
            Error::NotInWeightLattice => write!(f, "weight is not in the weight lattice P"),
            Error::NotARoot => write!(f, "vector is not a root of the system"),
            Error::ZeroWeight => write!(f, "the zero weight is excluded"),
            Error::UnsupportedDiagram => {
                write!(f, "boundary subset is tabulated only for types B, C, and D")
            }
            Error::SpanRank { expected, actual } => {
                write!(f, "span has rank {actual}, expected {expected}")
            }
            Error::NotInOrbit(w) => write!(f, "weight {w} is not in the orbit"),
            Error::NotInSupport(w) => write!(f, "weight {w} is not in the weight support"),
            Error::SubsetPair {
                constraint,
                first,
                second,
            } => write!(f, "{constraint} violated by pair ({first}) and ({second})"),
            Error::Violates {
                constraint,
                witness,
            } => write!(f, "{constraint} violated by ({witness})"),
            Error::ExteriorPower { n, k } => {
                write!(f, "exterior power degree {k} exceeds dimension {n}")
            }
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
            Error::OracleScale(msg) => write!(f, "oracle scale exceeded: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
