//! The PaRa numeration: every positive integer names exactly one symbol.
//!
//! Codes 1–6 are the terminal letters. Odd codes from 7 index formalized
//! sentences. Every other code is classified by its 2-adic valuation `v`:
//!
//! | valuation        | category                 | first codes          |
//! |------------------|--------------------------|----------------------|
//! | 1                | predicate                | 10, 14, 18, …        |
//! | 2                | function                 | 12, 20, 28, …        |
//! | 3                | sort                     | 8, 24, 40, …         |
//! | `2n+2` (n ≥ 1)   | constant of sort `n`     | 16, 48, … (n = 1)    |
//! | `2n+3` (n ≥ 1)   | variable of sort `n`     | 32, 96, … (n = 1)    |
//!
//! Ordinals are 1-based and count only the members of a class, so the
//! terminal codes 2, 4 and 6 are skipped by the predicate and function
//! classes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::CodeInt;

/// Terminal letters and their fixed codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Terminal {
    Exists = 1,
    Forall = 2,
    Not = 3,
    And = 4,
    Or = 5,
    Implies = 6,
}

impl Terminal {
    pub const ALL: [Terminal; 6] = [
        Terminal::Exists,
        Terminal::Forall,
        Terminal::Not,
        Terminal::And,
        Terminal::Or,
        Terminal::Implies,
    ];

    pub fn code(self) -> u32 {
        self as u32
    }

    pub fn from_code(code: u32) -> Option<Terminal> {
        Terminal::ALL.get((code as usize).checked_sub(1)?).copied()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Terminal::Exists => "∃",
            Terminal::Forall => "∀",
            Terminal::Not => "¬",
            Terminal::And => "∧",
            Terminal::Or => "∨",
            Terminal::Implies => "⊃",
        }
    }
}

/// The class a code belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    Terminal(Terminal),
    SentenceText,
    Predicate,
    Function,
    Sort,
    /// Constants of the sort with the given 1-based index.
    Constant(u32),
    /// Variables of the sort with the given 1-based index.
    VariableName(u32),
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Terminal(t) => write!(f, "terminal {}", t.symbol()),
            Category::SentenceText => f.write_str("sentence"),
            Category::Predicate => f.write_str("predicate"),
            Category::Function => f.write_str("function"),
            Category::Sort => f.write_str("sort"),
            Category::Constant(n) => write!(f, "constant of sort {n}"),
            Category::VariableName(n) => write!(f, "variable of sort {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerationError {
    #[error("code 0 is not part of the numeration")]
    ZeroCode,
    #[error("ordinals start at 1")]
    ZeroOrdinal,
    #[error("sort indices start at 1")]
    ZeroSort,
    #[error("terminal letters have fixed codes and no ordinal")]
    Terminal,
    #[error("code does not fit the chosen integer type")]
    Overflow,
}

fn small<T: CodeInt>(v: u64) -> T {
    T::from_u64(v).expect("small constants fit every code type")
}

/// Splits a code into its category and 1-based ordinal within that category.
///
/// Terminals report their own code as ordinal.
pub fn classify_code<T: CodeInt>(m: &T) -> Result<(Category, T), NumerationError> {
    let v = m.two_adic_valuation().ok_or(NumerationError::ZeroCode)?;
    if *m <= small(6) {
        let code = m.to_u32().expect("m <= 6");
        let t = Terminal::from_code(code).expect("1..=6 are terminals");
        return Ok((Category::Terminal(t), m.clone()));
    }
    let one = T::one();
    match v {
        // (m - 1) / 2 - 2
        0 => Ok((Category::SentenceText, (m.clone() - one) / T::two() - T::two())),
        1 => Ok((Category::Predicate, (m.clone() - small(10)) / small(4) + one)),
        2 => Ok((Category::Function, (m.clone() - small(12)) / small(8) + one)),
        _ => {
            let pow = T::checked_pow2(v).ok_or(NumerationError::Overflow)?;
            let odd = m.clone() / pow;
            let ordinal = (odd - one.clone()) / T::two() + one;
            let cat = match v {
                3 => Category::Sort,
                v if v % 2 == 0 => Category::Constant((v - 2) / 2),
                v => Category::VariableName((v - 3) / 2),
            };
            Ok((cat, ordinal))
        }
    }
}

/// Inverse of [`classify_code`] for every non-terminal category.
pub fn code_for<T: CodeInt>(cat: Category, ordinal: &T) -> Result<T, NumerationError> {
    if ordinal.is_zero() {
        return Err(NumerationError::ZeroOrdinal);
    }
    let step = |base: u64, stride: u64| -> Result<T, NumerationError> {
        (ordinal.clone() - T::one())
            .checked_mul(&small(stride))
            .and_then(|x| x.checked_add(&small(base)))
            .ok_or(NumerationError::Overflow)
    };
    let at_valuation = |v: u32| -> Result<T, NumerationError> {
        let pow = T::checked_pow2(v).ok_or(NumerationError::Overflow)?;
        let odd = ordinal
            .checked_mul(&T::two())
            .map(|x| x - T::one())
            .ok_or(NumerationError::Overflow)?;
        pow.checked_mul(&odd).ok_or(NumerationError::Overflow)
    };
    match cat {
        Category::Terminal(_) => Err(NumerationError::Terminal),
        Category::SentenceText => step(7, 2),
        Category::Predicate => step(10, 4),
        Category::Function => step(12, 8),
        Category::Sort => step(8, 16),
        Category::Constant(0) | Category::VariableName(0) => Err(NumerationError::ZeroSort),
        Category::Constant(n) => at_valuation(2 * n + 2),
        Category::VariableName(n) => at_valuation(2 * n + 3),
    }
}

/// Convenience wrapper for the common `u32` ordinal case.
pub fn code_for_index<T: CodeInt>(cat: Category, ordinal: u32) -> Result<T, NumerationError> {
    code_for(cat, &small::<T>(ordinal as u64))
}
