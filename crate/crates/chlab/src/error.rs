use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero vector has no type")]
    ZeroVector,
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("form does not have signature (2,1)")]
    InvalidSignature,
    #[error("degenerate configuration: a defining inner product vanishes")]
    DegenerateConfiguration,
    #[error("point is not inside the complex hyperbolic plane")]
    NotInBall,
    #[error("matrix has no eigenbasis within tolerance (parabolic)")]
    DefectiveMatrix,
    #[error("matrix does not preserve the Hermitian form projectively")]
    NotFormPreserving,
    #[error("determinant differs from 1 beyond tolerance")]
    NotUnimodular,
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("element is not regular elliptic")]
    NotRegularElliptic,
    #[error("polar vector is null for the form")]
    NullPolarVector,
    #[error("rotation factor must be a unit complex different from 1")]
    TrivialRotation,
    #[error("rotation factor is not of unit modulus")]
    NotUnitModulus,
    #[error("triangle with these angles and invariant does not exist")]
    NonRealizable,
    #[error("Gram matrix does not have signature (2,1)")]
    SignatureError,
    #[error("vectors are not polar vectors of complex lines")]
    NotPolarVectors,
    #[error("degenerate triple of polar vectors")]
    DegenerateTriple,
    #[error("triple is reducible: the elements share an eigenvector")]
    ReducibleTriple,
    #[error("no irreducible configuration with the requested types")]
    TypeUnavailable,
    #[error("triple is not decomposable for this configuration")]
    NotDecomposable,
    #[error("degenerate geometry in the decomposition construction")]
    DegenerateGeometry,
    #[error("mixed decompositions are detected but not constructed")]
    MixedNotSupported,
    #[error("classes do not satisfy the decomposability condition")]
    NotDecomposableClasses,
    #[error("chart parameter domain is empty")]
    EmptyDomain,
    #[error("parameters are outside the chart domain")]
    OutOfChart,
    #[error("point is not strictly inside the deltoid")]
    NotInsideDeltoid,
    #[error("invalid mirror relation parameter")]
    InvalidRelation,
}

pub type Result<T> = std::result::Result<T, Error>;
