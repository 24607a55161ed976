use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("subset out of range")]
    SubsetOutOfRange,

    #[error("not a flag")]
    NotAFlag,

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("incidence graph is disconnected ({} components)", components.len())]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("residues disagree: flag {first:?} and flag {second:?}")]
    NonUniform {
        first: Vec<usize>,
        second: Vec<usize>,
    },

    #[error("not a geometry: maximal flag {witness:?} is not a chamber")]
    NotAGeometry { witness: Vec<usize> },

    #[error("rank {rank} not supported here: {reason}")]
    Rank { rank: usize, reason: String },
}
