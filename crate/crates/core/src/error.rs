use thiserror::Error;

use crate::exactpoly::QPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division is not exact; remainder {remainder}")]
    NotDivisible { remainder: QPoly },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expected a polynomial in q, found {0}")]
    NotPolynomial(QPoly),

    #[error("t-degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    #[error("enumeration needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("board does not have the NE property")]
    NotNe,

    #[error("cell ({0}, {1}) is not in the board")]
    CellNotInBoard(usize, usize),

    #[error("cell ({0}, {1}) is not a SW corner of the diagram")]
    NotSwCorner(usize, usize),

    #[error("identity failed: {0}")]
    IdentityFailure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("coefficient does not fit in 64 bits")]
    CoefficientOverflow,

    #[error("memo cache integrity check failed: {0}")]
    MemoIntegrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that signal a violated theorem or an arithmetic bug rather
    /// than bad input or resource limits.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotDivisible { .. } | Error::NotPolynomial(_) | Error::IdentityFailure(_)
        )
    }
}
