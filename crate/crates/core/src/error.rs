//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("q must be at least 3 (got {0})")]
    InvalidQ(u32),

    #[error("ring elements belong to different rings: q={0} vs q={1}")]
    RingMismatch(u32, u32),

    #[error("ball radius must be at least 1 (got {0})")]
    EmptyInterior(String),

    #[error("orbit set radius {radius} is insufficient: need at least {needed} for {what}")]
    InsufficientRadius {
        radius: String,
        needed: String,
        what: String,
    },

    #[error("vector {0} is not a member of the orbit set")]
    NotAMember(String),

    #[error("pair is degenerate: determinant is zero")]
    DegeneratePair,

    #[error("the zero vector cannot be reduced")]
    ZeroVector,

    #[error("budget exceeded after {processed} items (limit {limit})")]
    BudgetExceeded { processed: u64, limit: u64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("membership verification inconclusive for {0}")]
    Inconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
