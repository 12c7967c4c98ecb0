use thiserror::Error;

/// Structural and input errors. Axiom violations are never reported through
/// this type; checkers return them as data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range for {what} of size {len}")]
    Index {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("weight {weight} is not on the lattice (1/{t})N")]
    Lattice { weight: String, t: i64 },
    #[error("mode {mode} is not in the lattice of generator {generator}")]
    ModeLattice { generator: String, mode: String },
    #[error("state does not belong to the ambient algebra: {0}")]
    Ambient(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("invalid correspondence: {0}")]
    Correspondence(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("dual algebra is not commutative (witness {0}); check cocommutativity first")]
    NotCocommutative(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("closure did not stabilize after {0} rounds")]
    NoClosure(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
