use thiserror::Error;

/// Errors surfaced by presentation validation, ball construction and the
/// bounded algebra built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coxeter matrix is malformed: {0}")]
    BadShape(String),

    #[error("coxeter matrix is not symmetric at ({s},{t})")]
    NonSymmetric { s: usize, t: usize },

    #[error("coxeter matrix diagonal entry at {s} must be 1")]
    BadDiagonal { s: usize },

    #[error("off-diagonal order m({s},{t}) = {value} must be >= 2 (or 0 for infinity)")]
    BadOffDiagonal { s: usize, t: usize, value: i64 },

    #[error("star map is not an involutive permutation of the generators")]
    StarNotInvolutive,

    #[error("star map does not preserve the coxeter matrix: m({s}*,{t}*) != m({s},{t})")]
    StarNotCompatible { s: usize, t: usize },

    #[error("rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("element limit {limit} exceeded while enumerating the ball")]
    ResourceLimit { limit: usize },

    #[error(
        "operation leaves the stored ball: needs elements of length {required}, \
         store holds lengths <= {bound}; rebuild with a ball of at least {required}"
    )]
    OutOfRange { required: u32, bound: u32 },

    #[error("series inversion needs a unit constant term (+1 or -1)")]
    NonUnitConstantTerm,

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("preset {preset:?} has no star named {star:?}")]
    UnknownStar { preset: String, star: String },
}

pub type Result<T> = std::result::Result<T, Error>;
