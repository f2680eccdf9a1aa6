use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("duplicate simplex id {id:?} at dimension {dim}")]
    DuplicateId { dim: usize, id: String },

    #[error("unknown simplex id {id:?} at dimension {dim}")]
    UnknownId { dim: usize, id: String },

    #[error("simplex {id:?} at dimension {dim} has {got} faces, expected {expected}")]
    FaceArity {
        dim: usize,
        id: String,
        expected: usize,
        got: usize,
    },

    #[error("face index {index} of simplex {id:?} at dimension {dim} is out of range")]
    FaceOutOfRange { dim: usize, id: String, index: usize },

    #[error("complex violates the semi-simplicial identities ({count} violations, first at dimension {first_dim})")]
    IdentityViolations { count: usize, first_dim: usize },

    #[error("map does not cover level {dim}: {got} components for {expected} simplices")]
    ComponentMismatch {
        dim: usize,
        expected: usize,
        got: usize,
    },

    #[error("map component at dimension {dim}, simplex {simplex} points outside the target level")]
    ComponentOutOfRange { dim: usize, simplex: usize },

    #[error("map does not commute with face {face} of simplex {simplex} at dimension {dim}")]
    NotCommuting {
        dim: usize,
        simplex: usize,
        face: usize,
    },

    #[error("maps are not composable: intermediate complexes differ")]
    NotComposable,

    #[error("lifting square does not commute")]
    SquareNotCommuting,

    #[error("expected a levelwise injective map")]
    NotInjective,

    #[error("marked edge {edge} at the source is not sent to a marked edge")]
    MarkingNotPreserved { edge: usize },

    #[error("marking names simplex {index}, which is not a 1-simplex of the carrier")]
    MarkingOutOfRange { index: usize },

    #[error("operation needs truncation at least {required}, but the complex is truncated at {actual}")]
    InsufficientTruncation { required: usize, actual: usize },

    #[error("there is no horn with n = {n}, i = {i}")]
    InvalidHorn { n: usize, i: usize },

    #[error("terminal extension stops at dimension {actual}, but dimension {required} is needed")]
    ExtensionTooShort { required: usize, actual: usize },

    #[error("vertex {vertex} has no chosen idempotent equivalence")]
    MissingUnit { vertex: usize },

    #[error("invalid category: {0}")]
    Category(String),

    #[error("invalid document: {0}")]
    Document(String),
}
