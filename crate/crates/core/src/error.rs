use thiserror::Error;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid rational literal `{0}`")]
    InvalidScalar(String),

    #[error("polynomial parse error at byte {position}: {message}")]
    PolyParse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),

    #[error("group closure exceeded the order cap of {0}")]
    GroupNotFiniteWithinCap(usize),

    #[error("element set is not a subgroup of the parent group")]
    NotASubgroup,

    #[error("subgroup is not normal in the given overgroup")]
    NotNormal,

    #[error("matrix is not an element of the group")]
    NotAGroupElement,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generator {0} is not orthogonal")]
    NonOrthogonalGenerator(usize),

    #[error("representation validation failed: {0}")]
    InvalidRepresentation(String),

    #[error("representation has no Lie algebra action")]
    NoLieAction,

    #[error("subgroup is not an isotropy subgroup")]
    NotAnIsotropyClass,

    #[error("combinatorial size {size} exceeds the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("target is not invariant under the monodromy element {0}")]
    TargetNotMonodromyInvariant(usize),

    #[error("no rational expression found within weighted degree {0}")]
    NoSolutionWithinBound(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
