//! Sorted first-order formulas.
//!
//! Symbols are stored by index only; names live in the
//! [`SymbolDictionary`](crate::dictionary::SymbolDictionary). Variables and
//! constants carry a sort, predicates and functions do not.

mod ops;
mod parse;
mod print;

use std::fmt;

pub use ops::{expand_iff, free_vars, fresh_variable, substitute, SubstituteError};
pub use parse::{parse_proto, parse_proto_with, ParseError, ParseErrorKind, ParseOptions};
pub use print::{print_numeric, print_numeric_ascii, print_proto, print_sticks, print_sticks_ascii, PrintError};

/// A sort (the grammar's "type"), 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sort(u32);

impl Sort {
    /// Panics on zero.
    pub fn new(index: u32) -> Sort {
        assert!(index >= 1, "sort indices start at 1");
        Sort(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub sort: Sort,
    pub index: u32,
}

impl Variable {
    pub fn new(sort: Sort, index: u32) -> Variable {
        assert!(index >= 1, "variable indices start at 1");
        Variable { sort, index }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constant {
    pub sort: Sort,
    pub index: u32,
}

impl Constant {
    pub fn new(sort: Sort, index: u32) -> Constant {
        assert!(index >= 1, "constant indices start at 1");
        Constant { sort, index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Variable),
    Const(Constant),
    App(u32, Vec<Term>),
}

impl Term {
    pub fn contains_var(&self, v: Variable) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn vars_into(&self, out: &mut Vec<Variable>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }
}

impl From<Variable> for Term {
    fn from(v: Variable) -> Term {
        Term::Var(v)
    }
}

impl From<Constant> for Term {
    fn from(c: Constant) -> Term {
        Term::Const(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub fn ascii(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
            Connective::Iff => "<->",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            Connective::And => "∧",
            Connective::Or => "∨",
            Connective::Implies => "⊃",
            Connective::Iff => "≡",
        }
    }

    /// Terminal code; `Iff` has none.
    pub fn code(self) -> Option<u32> {
        match self {
            Connective::And => Some(4),
            Connective::Or => Some(5),
            Connective::Implies => Some(6),
            Connective::Iff => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn code(self) -> u32 {
        match self {
            Quantifier::Exists => 1,
            Quantifier::Forall => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(u32, Vec<Term>),
    Not(Box<Formula>),
    Binary(Connective, Box<Formula>, Box<Formula>),
    Quantified(Quantifier, Variable, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: u32, args: Vec<Term>) -> Formula {
        Formula::Atom(pred, args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn binary(c: Connective, l: Formula, r: Formula) -> Formula {
        Formula::Binary(c, Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::And, l, r)
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::Or, l, r)
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::Implies, l, r)
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::Iff, l, r)
    }

    pub fn forall(v: Variable, body: Formula) -> Formula {
        Formula::Quantified(Quantifier::Forall, v, Box::new(body))
    }

    pub fn exists(v: Variable, body: Formula) -> Formula {
        Formula::Quantified(Quantifier::Exists, v, Box::new(body))
    }

    pub fn contains_iff(&self) -> bool {
        match self {
            Formula::Atom(..) => false,
            Formula::Not(f) => f.contains_iff(),
            Formula::Binary(c, l, r) => *c == Connective::Iff || l.contains_iff() || r.contains_iff(),
            Formula::Quantified(_, _, b) => b.contains_iff(),
        }
    }

    pub fn is_sentence(&self) -> bool {
        free_vars(self).is_empty()
    }

    /// Visits every term argument of every atom, outermost first.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(u32, &'a [Term])) {
        match self {
            Formula::Atom(p, args) => f(*p, args),
            Formula::Not(g) => g.for_each_atom(f),
            Formula::Binary(_, l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
            Formula::Quantified(_, _, b) => b.for_each_atom(f),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Not(f) => 1 + f.depth(),
            Formula::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
            Formula::Quantified(_, _, b) => 1 + b.depth(),
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        })
    }
}
