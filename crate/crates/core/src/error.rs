use thiserror::Error;

use crate::word::Generator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator {generator} exceeds rank {rank}")]
    SubscriptExceedsRank { generator: Generator, rank: u32 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("no image given for generator {0}")]
    MissingImage(Generator),
    #[error("exponents must be all positive or all negative")]
    MixedSigns,
    #[error("exponents must all equal the same negative value")]
    NonuniformExponents,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("verification failed: {0}")]
    Unverified(String),
    #[error("malformed schedule: {0}")]
    MalformedSchedule(String),
    #[error("enumeration of {estimate} tuples exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
