use thiserror::Error;

/// A fan file that cannot be parsed or violates a fan invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("fan has no rays")]
    NoRays,
    #[error("ray {ray} has length {len}, expected rank {rank}")]
    RayLength { ray: usize, len: usize, rank: usize },
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("rays {0} and {1} lie on the same ray")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} has {len} rays, expected {rank}")]
    ConeSize { cone: usize, len: usize, rank: usize },
    #[error("cone {cone} references ray {ray}, which does not exist")]
    ConeIndex { cone: usize, ray: usize },
    #[error("cone {0} repeats a ray")]
    ConeRepeatsRay(usize),
    #[error("cones {0} and {1} are identical")]
    DuplicateCone(usize, usize),
    #[error("cone {0} is not simplicial: its rays are linearly dependent")]
    NotSimplicial(usize),
    #[error("ray {0} lies in no maximal cone")]
    UnusedRay(usize),
    #[error("facet unpaired: facet {facet:?} lies in {count} maximal cones, expected 2")]
    FacetUnpaired { facet: Vec<usize>, count: usize },
    #[error("facet {facet:?}: the opposite rays do not lie strictly on opposite sides")]
    FacetSameSide { facet: Vec<usize> },
    #[error("direction {direction:?} lies in no maximal cone (fan is not complete)")]
    NotComplete { direction: Vec<i64> },
    #[error("link of ray {ray} is not a single cycle")]
    LinkNotCycle { ray: usize },
    #[error("unknown catalog fan {0:?}")]
    UnknownCatalog(String),
}

/// A computation that hit a guardrail or a violated precondition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComputeError {
    #[error("lattice-point enumeration exceeded the cap of {cap} candidates")]
    CapExceeded { cap: u64 },
    #[error("infinite-dimensional contribution: fan violates properness assumptions (index set {index_set:?})")]
    InfiniteContribution { index_set: Vec<usize> },
    #[error("delta enumeration needs n <= {cap}, fan has n = {n}")]
    DeltaCap { n: usize, cap: usize },
    #[error("coefficient vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
