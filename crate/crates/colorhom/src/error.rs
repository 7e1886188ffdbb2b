use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar: {0}")]
    Scalar(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid bi-character: {0}")]
    BiCharacter(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("not Hom-associative at basis triple {0:?}")]
    NotHomAssociative((usize, usize, usize)),
    #[error("not multiplicative at basis pair {0:?}")]
    NotMultiplicative((usize, usize)),
    #[error("not an algebra morphism at basis pair {0:?}")]
    NotMorphism((usize, usize)),
    #[error("enumeration budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("singular twist map: {0}")]
    Singular(String),
    #[error("condition refused: {0}")]
    Refused(String),
    #[error("not an endomorphism modulo t^{{k+1}}: first failure at t-order {order}")]
    NotEndomorphism { order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
