use std::fmt;

use thiserror::Error;

use crate::finspace::Subset;

/// Which topology axiom a candidate family of open sets breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    MissingEmpty,
    MissingFull,
    /// The union of the two members is not in the family.
    Union(Subset, Subset),
    /// The intersection of the two members is not in the family.
    Intersection(Subset, Subset),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::MissingEmpty => write!(f, "empty set missing"),
            AxiomViolation::MissingFull => write!(f, "full set missing"),
            AxiomViolation::Union(a, b) => write!(f, "union of {a} and {b} missing"),
            AxiomViolation::Intersection(a, b) => {
                write!(f, "intersection of {a} and {b} missing")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum TopoError {
    #[error("not a topology: {0}")]
    NotATopology(AxiomViolation),

    #[error("ground set of {size} points exceeds the limit of {max}")]
    GroundTooLarge { size: usize, max: usize },

    #[error("subset {subset} does not fit a ground set of {ground} points")]
    OutOfGround { subset: Subset, ground: usize },

    #[error("cover enumeration over {opens} open sets exceeds the budget of {max}")]
    CoverEnumerationBudgetExceeded { opens: usize, max: usize },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("{0} is not a member of O_Z(Y)")]
    NotZRepresentable(Subset),

    #[error("{0} is not open")]
    NotOpen(Subset),

    #[error("qualifying families of {construction} do not form a topology: {violation}")]
    AxiomsViolated {
        construction: &'static str,
        violation: AxiomViolation,
    },

    #[error("finite-scale collapse check failed for {0}")]
    CollapseMismatch(&'static str),

    #[error("base spaces do not match: {0}")]
    MismatchedBase(String),

    #[error("topologies live on different grounds")]
    MismatchedGround,

    #[error("map table {0:?} is not a continuous map between the given spaces")]
    NotContinuous(Vec<usize>),

    #[error("unknown question id {0:?}")]
    UnknownQuestion(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = TopoError> = std::result::Result<T, E>;
