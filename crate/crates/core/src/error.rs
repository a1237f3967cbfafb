use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A constructor would exceed the configured element cap.
    #[error("ring of {requested} elements exceeds the size cap of {cap}")]
    SizeLimit { requested: u128, cap: usize },

    #[error("bimodule Z{m_mod} is not compatible with Z{s_mod} and Z{r_mod}: {m_mod} must divide both")]
    BimoduleIncompatible { s_mod: usize, r_mod: usize, m_mod: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("subset of length {got} does not belong to a ring of {expected} elements")]
    LengthMismatch { expected: usize, got: usize },

    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,

    #[error("ideal must be proper")]
    NotProper,

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("ideal enumeration exceeded the bound of {bound} ideals")]
    IdealCountExceeded { bound: usize },

    #[error("{what}: {needed} work units exceeds the budget of {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },

    #[error("ring has the wrong structure: expected {expected}")]
    WrongStructure { expected: &'static str },

    #[error("invalid structured ideal: {0}")]
    InvalidStructuredIdeal(String),

    #[error("parse error in {input:?} at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn parse(input: &str, pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors that stem from a resource bound rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SizeLimit { .. } | Error::IdealCountExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}
