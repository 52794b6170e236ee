use std::time::Duration;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must lie in 2..=256, got {0}")]
    InvalidBase(u32),

    #[error("zero has no canonical digit string")]
    Zero,

    #[error("empty digit string")]
    EmptyDigits,

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("target {0} is too large for the carry automaton")]
    TargetTooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The search hit its state or wall-clock cap before reaching a verdict.
    #[error("search budget exhausted after {states_visited} states in {elapsed:?}")]
    BudgetExhausted {
        states_visited: u64,
        elapsed: Duration,
    },
}
