//! Sorted first-order unification with occurs check.

use std::collections::BTreeMap;

use crate::dictionary::SymbolDictionary;
use crate::fol::{Term, Variable};

use super::{Clause, Literal};

/// Variable bindings. Results of [`unify`] are idempotent: no bound
/// variable occurs in any bound term.
pub type Substitution = BTreeMap<Variable, Term>;

/// Replaces every bound variable simultaneously, in one pass.
pub fn apply(t: &Term, s: &Substitution) -> Term {
    match t {
        Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| apply(a, s)).collect()),
    }
}

/// Follows bindings until none applies; `s` must be acyclic.
fn apply_deep(t: &Term, s: &Substitution) -> Term {
    match t {
        Term::Var(v) => match s.get(v) {
            Some(u) => apply_deep(u, s),
            None => t.clone(),
        },
        Term::Const(_) => t.clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| apply_deep(a, s)).collect()),
    }
}

pub fn apply_literal(l: &Literal, s: &Substitution) -> Literal {
    Literal { positive: l.positive, pred: l.pred, args: l.args.iter().map(|a| apply(a, s)).collect() }
}

fn walk<'t>(mut t: &'t Term, s: &'t Substitution) -> &'t Term {
    while let Term::Var(v) = t {
        match s.get(v) {
            Some(u) => t = u,
            None => break,
        }
    }
    t
}

fn occurs(v: Variable, t: &Term, s: &Substitution) -> bool {
    match walk(t, s) {
        Term::Var(w) => *w == v,
        Term::Const(_) => false,
        Term::App(_, args) => args.iter().any(|a| occurs(v, a, s)),
    }
}

/// A variable of sort `s` takes only terms of sort `s`; terms of functions
/// without a declared result sort fit any variable.
fn sort_fits(v: Variable, t: &Term, dict: &SymbolDictionary) -> bool {
    match t {
        Term::App(f, _) => match dict.function_entry(*f) {
            Ok((_, info)) => info.sort.is_none_or(|s| s == v.sort),
            Err(_) => false,
        },
        _ => dict.term_sort(t) == Some(v.sort),
    }
}

fn bind(v: Variable, t: &Term, s: &mut Substitution, dict: &SymbolDictionary) -> bool {
    if !sort_fits(v, t, dict) || occurs(v, t, s) {
        return false;
    }
    s.insert(v, t.clone());
    true
}

fn unify_into(a: &Term, b: &Term, s: &mut Substitution, dict: &SymbolDictionary) -> bool {
    let (a, b) = (walk(a, s).clone(), walk(b, s).clone());
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => bind(*x, t, s, dict),
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify_into(x, y, s, dict))
        }
        _ => false,
    }
}

fn resolved(s: Substitution) -> Substitution {
    s.iter().map(|(v, t)| (*v, apply_deep(t, &s))).collect()
}

/// Most general unifier of two terms.
pub fn unify(a: &Term, b: &Term, dict: &SymbolDictionary) -> Option<Substitution> {
    let mut s = Substitution::new();
    unify_into(a, b, &mut s, dict).then(|| resolved(s))
}

/// Most general unifier of the atoms of two literals, ignoring their signs.
pub fn unify_atoms(a: &Literal, b: &Literal, dict: &SymbolDictionary) -> Option<Substitution> {
    if a.pred != b.pred || a.args.len() != b.args.len() {
        return None;
    }
    let mut s = Substitution::new();
    a.args
        .iter()
        .zip(&b.args)
        .all(|(x, y)| unify_into(x, y, &mut s, dict))
        .then(|| resolved(s))
}

/// One-way matching: binds variables of `pattern` only.
fn match_term(pattern: &Term, target: &Term, s: &mut Substitution, dict: &SymbolDictionary) -> bool {
    match (pattern, target) {
        (Term::Var(v), _) => match s.get(v) {
            Some(bound) => bound == target,
            None => {
                if !sort_fits(*v, target, dict) {
                    return false;
                }
                s.insert(*v, target.clone());
                true
            }
        },
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, s, dict))
        }
        _ => false,
    }
}

fn match_literal(p: &Literal, t: &Literal, s: &mut Substitution, dict: &SymbolDictionary) -> bool {
    p.positive == t.positive
        && p.pred == t.pred
        && p.args.len() == t.args.len()
        && p.args.iter().zip(&t.args).all(|(x, y)| match_term(x, y, s, dict))
}

/// A substitution mapping every literal of `general` into `specific`, if
/// `general` has no more literals than `specific`.
pub fn match_clause(general: &Clause, specific: &Clause, dict: &SymbolDictionary) -> Option<Substitution> {
    fn go(ls: &[Literal], target: &Clause, s: &Substitution, dict: &SymbolDictionary) -> Option<Substitution> {
        let Some((first, rest)) = ls.split_first() else { return Some(s.clone()) };
        target.literals.iter().find_map(|t| {
            let mut s2 = s.clone();
            if match_literal(first, t, &mut s2, dict) {
                go(rest, target, &s2, dict)
            } else {
                None
            }
        })
    }
    if general.len() > specific.len() {
        return None;
    }
    go(&general.literals, specific, &Substitution::new(), dict)
}
