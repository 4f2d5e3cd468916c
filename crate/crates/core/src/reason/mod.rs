//! Clausal reasoning: CNF, unification, resolution and a finite-model oracle.

mod cnf;
mod model;
mod prover;
mod unify;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::dictionary::{DictionaryError, SymbolDictionary};
use crate::fol::{Constant, Term, Variable};

pub use cnf::{to_cnf, Skolem, SkolemSymbol};
pub use model::{finite_model_check, finite_model_check_clauses, FiniteModel, ModelCheck, MAX_DOMAIN};
pub use prover::{prove, refute, Bounds, Inference, Proof, ProofResult, Step};
pub use unify::{apply, apply_literal, match_clause, unify, unify_atoms, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonError {
    #[error("the model checker needs function-free input, found `{0}`")]
    Function(String),
    #[error("domain bound must be between 1 and {MAX_DOMAIN}, got {0}")]
    DomainBound(usize),
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub pred: u32,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(positive: bool, pred: u32, args: Vec<Term>) -> Literal {
        Literal { positive, pred, args }
    }

    pub fn negated(&self) -> Literal {
        Literal { positive: !self.positive, ..self.clone() }
    }

    pub fn vars_into(&self, out: &mut Vec<Variable>) {
        self.args.iter().for_each(|a| a.vars_into(out));
    }

    fn weight(&self) -> usize {
        fn term(t: &Term) -> usize {
            match t {
                Term::App(_, args) => 1 + args.iter().map(term).sum::<usize>(),
                _ => 1,
            }
        }
        1 + self.args.iter().map(term).sum::<usize>()
    }
}

/// A disjunction of literals, kept sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Clause {
        literals.sort();
        literals.dedup();
        Clause { literals }
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    /// Holds a literal and its complement.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| l.positive && self.literals.binary_search(&l.negated()).is_ok())
    }

    pub fn vars(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.literals.iter().for_each(|l| l.vars_into(&mut out));
        out
    }

    /// Number of symbol occurrences.
    pub fn weight(&self) -> usize {
        self.literals.iter().map(Literal::weight).sum()
    }

    /// Copy with variables renumbered by first occurrence, for variant checks.
    pub fn canonical(&self) -> Clause {
        let mut map = BTreeMap::new();
        for (i, v) in self.vars().into_iter().enumerate() {
            map.insert(v, Term::Var(Variable::new(v.sort, i as u32 + 1)));
        }
        Clause::new(self.literals.iter().map(|l| apply_literal(l, &map)).collect())
    }

    pub fn display<'a>(&'a self, dict: &'a SymbolDictionary) -> ClauseDisplay<'a> {
        ClauseDisplay { clause: self, dict }
    }
}

/// Clauses together with the Skolem symbols introduced for them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
    pub skolems: Vec<Skolem>,
}

pub(crate) fn write_term(t: &Term, dict: &SymbolDictionary, out: &mut String) {
    match t {
        Term::Var(v) => {
            let sort = dict.sort_name(v.sort).unwrap_or("?");
            write!(out, "{sort}_{}", v.index).unwrap();
        }
        Term::Const(c) => out.push_str(constant_name(*c, dict).as_str()),
        Term::App(f, args) => {
            out.push_str(dict.function_entry(*f).map(|(n, _)| n).unwrap_or("?"));
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(a, dict, out);
            }
            out.push(')');
        }
    }
}

fn constant_name(c: Constant, dict: &SymbolDictionary) -> String {
    dict.constant_name(c).map(str::to_string).unwrap_or_else(|_| "?".to_string())
}

pub(crate) fn write_literal(l: &Literal, dict: &SymbolDictionary, out: &mut String) {
    if !l.positive {
        out.push('~');
    }
    out.push_str(dict.predicate_entry(l.pred).map(|(n, _)| n).unwrap_or("?"));
    if !l.args.is_empty() {
        out.push('(');
        for (i, a) in l.args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_term(a, dict, out);
        }
        out.push(')');
    }
}

pub struct ClauseDisplay<'a> {
    clause: &'a Clause,
    dict: &'a SymbolDictionary,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clause.is_empty() {
            return f.write_str("⊥");
        }
        let mut out = String::new();
        for (i, l) in self.clause.literals.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            write_literal(l, self.dict, &mut out);
        }
        f.write_str(&out)
    }
}

pub(crate) fn write_substitution(s: &Substitution, dict: &SymbolDictionary, out: &mut String) {
    out.push('{');
    for (i, (v, t)) in s.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(&Term::Var(*v), dict, out);
        out.push_str(" ↦ ");
        write_term(t, dict, out);
    }
    out.push('}');
}
