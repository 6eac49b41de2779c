use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),

    #[error("invalid Coxeter type {0:?}")]
    InvalidType(String),

    #[error("simple generator index {index} out of range 1..={rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("reflection index {index} out of range 1..={count}")]
    ReflectionOutOfRange { index: usize, count: usize },

    #[error("element is not an involution")]
    NotAnInvolution,

    #[error("group of order {order} exceeds the size guard {guard}; raise the guard to proceed")]
    GroupTooLarge { order: u128, guard: u128 },

    #[error("invalid reflection order: {0}")]
    InvalidOrder(String),

    #[error("word {0:?} is not strictly increasing")]
    NotIncreasing(Vec<u16>),

    #[error("elements belong to different algebras")]
    AmbientMismatch,

    #[error("element is not homogeneous of degree {0}")]
    Inhomogeneous(usize),

    #[error("evaluation point lies on the hyperplane of reflection {0}")]
    PointOnHyperplane(u16),

    #[error("operation needs explicit root coordinates, unavailable for dihedral factor {0}")]
    NoCoordinates(String),

    #[error("graph cache: {0}")]
    Cache(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
