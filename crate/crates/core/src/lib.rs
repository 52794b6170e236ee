//! Deciding whether a natural number, or a rational, is a quotient of two
//! palindromic (or antipalindromic) numbers in a given base.
//!
//! The decision runs over a lazily evaluated automaton whose states track
//! the carries of `q * A - p * B` from both ends of the digit strings. The
//! same graph yields the smallest representation, the number of
//! representations, and a proof of infiniteness when the count is unbounded.
//!
//! ```
//! use palquot::{smallest, Base, Budget, Shape, Target};
//!
//! let target = Target::integer(19, Base::BINARY, Shape::Palindrome).unwrap();
//! let rep = smallest(&target, Budget::default()).unwrap().unwrap();
//! assert_eq!((rep.numerator.to_string(), rep.denominator.to_string()), ("513".into(), "27".into()));
//! ```

pub mod analysis;
pub mod automaton;
pub mod error;
pub mod heuristic;
pub mod numerals;
pub mod search;

pub use automaton::{QuotientAutomaton, SearchState, Shape, Target};
pub use error::{Error, Result};
pub use numerals::{Base, DigitString, Natural};
pub use search::{
    classify, count, decide, enumerate, smallest, Budget, Decision, Representation, Search,
    SearchStats, SolutionClass,
};
