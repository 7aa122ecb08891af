use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate cone: generators do not span a pointed full-dimensional cone in their lattice")]
    DegenerateCone,
    #[error("functional vanishes on every generator")]
    ZeroFunctional,
    #[error("no fraction-field witness for coordinate {coordinate}: input is not normal or the cone is degenerate")]
    WitnessNotFound { coordinate: usize },
    #[error("signature region is unbounded: embedding is not injective")]
    Unbounded,
    #[error("ideal is not primary to the maximal ideal: its colength is infinite")]
    NotPrimary,
    #[error("enumeration budget of {cap} points exceeded")]
    BudgetExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
