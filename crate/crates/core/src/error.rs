//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when driving the library with bad input.
///
/// Internal invariant violations (broken canonical forms, partner vertices
/// missing from a bucket, non-integer stratum counts) are bugs and panic
/// instead of returning one of these variants.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("word is not reduced")]
    NotReduced,

    #[error("invalid one-line permutation data")]
    InvalidPermutation,

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("sign vector has length {got}, expected {expected}")]
    SignLengthMismatch { got: usize, expected: usize },

    #[error("sign entries must be +1 or -1")]
    BadSignEntry,

    #[error("element is odd; it has no expansion over the even basis")]
    OddElement,

    #[error("element is not a unit of the even Clifford algebra")]
    NotUnit,

    #[error("element does not project to a signed permutation matrix")]
    NotSignedPermutation,

    #[error("element lies outside the coset of the given word")]
    OutsideCoset,

    #[error("ancestry entry {value} at position {position} is not allowed here")]
    BadAncestryEntry { value: i8, position: usize },

    #[error("ancestry vector has unbalanced -2/+2 entries")]
    UnbalancedAncestry,

    #[error("vertex cannot be clicked on this face (equal signs at its endpoints)")]
    NotClickable,

    #[error("edge label requires -1 at the opening position of the face")]
    NotLabelable,

    #[error("malformed dimension-2 quadruple")]
    MalformedQuadruple,

    #[error("external cell counts disagree with the computed skeleton: {0}")]
    CountMismatch(String),

    #[error("parameter vector has length {got}, expected {expected}")]
    ParamLengthMismatch { got: usize, expected: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix dimensions {0}x{1} do not match")]
    MatrixShape(usize, usize),

    #[error("no factorization with all parameters nonzero")]
    NotFactorizable,

    #[error("orbit index {index} out of range (coset has {count} orbits)")]
    OrbitIndexOutOfRange { index: usize, count: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
