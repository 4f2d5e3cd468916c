//! Export to Prolog clauses and Lean theorem statements.

mod lean;
mod prolog;

use thiserror::Error;

use crate::dictionary::DictionaryError;

pub use lean::{to_lean_skeleton, to_lean_skeleton_with, LeanOptions};
pub use prolog::{to_prolog, PrologNames};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("sentence {sentence} is not a Horn clause: unexpected {connective}")]
    NotHorn { sentence: usize, connective: &'static str },
    #[error("sentence {sentence} has an existential quantifier")]
    Existential { sentence: usize },
    #[error("function `{0}` has no result sort")]
    UntypedFunction(String),
    #[error("`{name}` is used at both {first} and {second}")]
    TypeClash { name: String, first: String, second: String },
    #[error("free variable `{0}`")]
    FreeVariable(String),
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
}
