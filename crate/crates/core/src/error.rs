use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::hamming::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("the last nonzero coordinate is undefined for the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {left} vs {right} coordinates")]
    DimensionMismatch { left: usize, right: usize },
    #[error("rank {rank} is out of range for a graph with {count} vertices")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("{k}^{n} vertices exceeds the 2^63 enumeration bound")]
    Overflow { n: usize, k: u32 },
    #[error("t must be a nonzero residue mod {k}, got {t}")]
    InvalidT { t: u32, k: u32 },
    #[error("residue {value} is not in [0, {k})")]
    InvalidResidue { value: u32, k: u32 },
    #[error("coordinate index {index} is not in [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(
        "the witness construction does not hold when k = 2: it needs Y(2,2) but 2 is not a \
         residue mod 2, and Y(1,1) alone has only 2^(n-1) vertices (got k = {k}, need k >= 3)"
    )]
    KTooSmall { k: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("vertex {0} is not a member of the set")]
    NotAMember(String),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(String, String),
    #[error("budget exceeded: {required} {unit} required, budget is {budget}")]
    BudgetExceeded {
        required: BigUint,
        budget: u64,
        unit: &'static str,
    },
    #[error("graph too large: {vertices} vertices, cap is {cap}")]
    TooLarge { vertices: BigUint, cap: u64 },
    #[error("verification failed: {0}")]
    VerificationFailed(Box<Counterexample>),
    #[error("parse error: {0}")]
    Parse(String),
}

/// First violation found by an audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub vertex: Option<Vertex>,
    pub other: Option<Vertex>,
    pub observed_degree: Option<usize>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(detail: impl Into<String>) -> Self {
        Counterexample {
            vertex: None,
            other: None,
            observed_degree: None,
            detail: detail.into(),
        }
    }

    pub fn at(mut self, vertex: &Vertex) -> Self {
        self.vertex = Some(vertex.clone());
        self
    }

    pub fn with_other(mut self, other: &Vertex) -> Self {
        self.other = Some(other.clone());
        self
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.observed_degree = Some(degree);
        self
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detail)?;
        if let Some(v) = &self.vertex {
            write!(f, "; vertex {v}")?;
        }
        if let Some(w) = &self.other {
            write!(f, "; other {w}")?;
        }
        if let Some(d) = self.observed_degree {
            write!(f, "; observed degree {d}")?;
        }
        Ok(())
    }
}
