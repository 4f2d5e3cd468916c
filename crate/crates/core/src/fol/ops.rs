use std::collections::BTreeSet;

use thiserror::Error;

use super::{Connective, Formula, Sort, Term, Variable};

/// Replaces every `a <-> b` by `(a -> b) & (b -> a)`.
pub fn expand_iff(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) => f.clone(),
        Formula::Not(g) => Formula::not(expand_iff(g)),
        Formula::Binary(Connective::Iff, l, r) => {
            let (l, r) = (expand_iff(l), expand_iff(r));
            Formula::and(Formula::implies(l.clone(), r.clone()), Formula::implies(r, l))
        }
        Formula::Binary(c, l, r) => Formula::binary(*c, expand_iff(l), expand_iff(r)),
        Formula::Quantified(q, v, b) => Formula::Quantified(*q, *v, Box::new(expand_iff(b))),
    }
}

pub fn free_vars(f: &Formula) -> BTreeSet<Variable> {
    let mut out = BTreeSet::new();
    collect_free(f, &mut Vec::new(), &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<Variable>, out: &mut BTreeSet<Variable>) {
    match f {
        Formula::Atom(_, args) => {
            let mut vs = Vec::new();
            args.iter().for_each(|a| a.vars_into(&mut vs));
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        }
        Formula::Not(g) => collect_free(g, bound, out),
        Formula::Binary(_, l, r) => {
            collect_free(l, bound, out);
            collect_free(r, bound, out);
        }
        Formula::Quantified(_, v, b) => {
            bound.push(*v);
            collect_free(b, bound, out);
            bound.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot substitute a term of sort {found} for a variable of sort {expected}")]
pub struct SubstituteError {
    pub expected: u32,
    pub found: u32,
}

fn all_vars(f: &Formula, out: &mut Vec<Variable>) {
    match f {
        Formula::Atom(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        Formula::Not(g) => all_vars(g, out),
        Formula::Binary(_, l, r) => {
            all_vars(l, out);
            all_vars(r, out);
        }
        Formula::Quantified(_, v, b) => {
            if !out.contains(v) {
                out.push(*v);
            }
            all_vars(b, out);
        }
    }
}

/// A variable of `sort` whose index exceeds every index of that sort in `avoid`.
///
/// The result is not necessarily registered in any dictionary.
pub fn fresh_variable(sort: Sort, avoid: &[Variable]) -> Variable {
    let top = avoid
        .iter()
        .filter(|v| v.sort == sort)
        .map(|v| v.index)
        .max()
        .unwrap_or(0);
    Variable::new(sort, top + 1)
}

fn subst_term(t: &Term, var: Variable, by: &Term) -> Term {
    match t {
        Term::Var(v) if *v == var => by.clone(),
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::App(fi, args) => Term::App(*fi, args.iter().map(|a| subst_term(a, var, by)).collect()),
    }
}

/// Capture-avoiding substitution of `by` for the free occurrences of `var`.
///
/// Binders that would capture a variable of `by` are renamed to a fresh
/// variable of the same sort.
pub fn substitute(f: &Formula, var: Variable, by: &Term) -> Result<Formula, SubstituteError> {
    let found = match by {
        Term::Var(v) => Some(v.sort),
        Term::Const(c) => Some(c.sort),
        Term::App(..) => None,
    };
    if let Some(s) = found {
        if s != var.sort {
            return Err(SubstituteError { expected: var.sort.index(), found: s.index() });
        }
    }
    Ok(subst(f, var, by))
}

fn subst(f: &Formula, var: Variable, by: &Term) -> Formula {
    match f {
        Formula::Atom(p, args) => {
            Formula::Atom(*p, args.iter().map(|a| subst_term(a, var, by)).collect())
        }
        Formula::Not(g) => Formula::not(subst(g, var, by)),
        Formula::Binary(c, l, r) => Formula::binary(*c, subst(l, var, by), subst(r, var, by)),
        Formula::Quantified(q, w, body) => {
            if *w == var || !free_vars(body).contains(&var) {
                return f.clone();
            }
            if by.contains_var(*w) {
                let mut avoid = Vec::new();
                all_vars(body, &mut avoid);
                by.vars_into(&mut avoid);
                avoid.push(var);
                avoid.push(*w);
                let fresh = fresh_variable(w.sort, &avoid);
                let renamed = subst(body, *w, &Term::Var(fresh));
                Formula::Quantified(*q, fresh, Box::new(subst(&renamed, var, by)))
            } else {
                Formula::Quantified(*q, *w, Box::new(subst(body, var, by)))
            }
        }
    }
}
