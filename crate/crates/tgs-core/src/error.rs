use alloc::string::String;

/// Every failure mode of the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    #[error("argument has radical terms; a rational value is required")]
    NotRationalTerm,
    #[error("value is not expressible over sqrt 2, 3, 5, 7")]
    Inexpressible,
    #[error("scalar is not real")]
    NotReal,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("root {0} is not in the ambient root system")]
    NotSubset(String),
    #[error("structure constants violate the Jacobi identity at {0}")]
    SignSolveFailure(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("no sign assignment lifts the root involution to an automorphism")]
    LiftFailure,
    #[error("vector has a component outside m")]
    NotInM,
    #[error("space carries no invariant complex structure")]
    NotHermitian,
    #[error("zero vector")]
    ZeroVector,
    #[error("no abelian candidate flat found within the sampling budget")]
    FlatSearchInconclusive,
    #[error("subspace is not a maximal flat of the Lie triple system")]
    NotAFlat,
    #[error("ambient space has no complex structure")]
    NoComplexStructure,
    #[error("root subset is not closed")]
    NotClosed,
    #[error("ad(Z)^2 has an eigenvalue outside {{0, -1}} on the support of v")]
    NotQuarterTurnCompatible,
    #[error("unknown type label: {0}")]
    UnknownLabel(String),
    #[error("unknown host label: {0}")]
    UnknownHost(String),
    #[error("vector does not lie in the span of the lattice")]
    NotInLatticeSpan,
    #[error("zero element")]
    ZeroElement,
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("element is not a unit")]
    NotUnit,
    #[error("basis is not orthonormal")]
    NotOrthonormal,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
