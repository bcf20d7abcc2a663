use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element {elem} in set {set}")]
    DuplicateElement { set: String, elem: String },
    #[error("element {elem} is not a member of {set}")]
    NotMember { set: String, elem: String },
    #[error("map is not total: {elem} has no image")]
    NotTotal { elem: String },
    #[error("{elem} has more than one image")]
    MultipleImages { elem: String },
    #[error("maps are not composable: target {left} differs from source {right}")]
    NotComposable { left: String, right: String },
    #[error("incompatible cospan: targets {left} and {right} differ")]
    IncompatibleCospan { left: String, right: String },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("not a pullback square: {0}")]
    NotPullbackSquare(String),
    #[error("not an endo-cell: source {src} differs from target {dst}")]
    NotEndo { src: String, dst: String },
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("invalid 2-cell: {0}")]
    InvalidCell2(String),
    #[error("search budget exceeded ({0} candidates)")]
    BudgetExceeded(u64),
    #[error("unknown diagram or suite {0:?}")]
    UnknownDiagram(String),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not equivariant: {0}")]
    NotEquivariant(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("category error: {0}")]
    Category(String),
    #[error("invalid deformation: {0}")]
    InvalidDeformation(String),
    #[error("invalid input: {0}")]
    Input(String),
}
