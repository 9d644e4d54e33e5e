//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Cartan data does not define a finite root system.
    #[error("not finite type: {0}")]
    NotFiniteType(String),
    /// Type label outside the supported families.
    #[error("unknown type: {0}")]
    UnknownType(String),
    /// Weyl group enumeration exceeded the element bound.
    #[error("group too large: exceeds {0} elements")]
    GroupTooLarge(usize),
    /// Elements of different Weyl groups mixed in one operation.
    #[error("group mismatch")]
    GroupMismatch,
    /// Classes of different spaces mixed in one operation.
    #[error("space mismatch")]
    SpaceMismatch,
    /// Polynomial operands disagree on the number of indeterminates.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    /// Exact polynomial division left a remainder.
    #[error("not divisible")]
    NotDivisible,
    /// A localization step required a division that does not come out exact.
    #[error("GKM recursion failure: {0}")]
    GkmRecursionFailure(String),
    /// Fixed-point class is not a combination of Schubert classes.
    #[error("not in span")]
    NotInSpan,
    /// Product of minimal-representative classes left the parabolic basis.
    #[error("parabolic closure failure: {0}")]
    ParabolicClosureFailure(String),
    /// Cell index is not a minimal coset representative.
    #[error("not a minimal representative: {0}")]
    NotMinimalRep(String),
    /// Class has no inverse (constant term zero).
    #[error("not invertible")]
    NotInvertible,
    /// Operator defined only on the full flag variety.
    #[error("G/B only")]
    FullFlagOnly,
    /// Nonzero intersection number against a negative expected dimension.
    #[error("dimension contradiction: {0}")]
    DimensionContradiction(String),
    /// Internal consistency check failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    /// Malformed input text (words, subsets, Cartan JSON).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
