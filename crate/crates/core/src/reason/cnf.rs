//! Clausal normal form with Skolemization.
//!
//! Negations are pushed inward with the polarity of each subformula, so an
//! existential under a negation is treated as a universal and the other way
//! round. Every binder gets a fresh variable, and each existential is
//! replaced by a Skolem term over the enclosing universals that its body
//! mentions.

use std::collections::HashMap;

use crate::dictionary::SymbolDictionary;
use crate::fol::{free_vars, Connective, Constant, Formula, Quantifier, Term, Variable};

use super::{Clause, ClauseSet, Literal, ReasonError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkolemSymbol {
    Constant(Constant),
    Function(u32),
}

/// Where a Skolem symbol came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skolem {
    pub symbol: SkolemSymbol,
    pub name: String,
    /// Name of the existential variable it replaces.
    pub replaces: String,
}

enum Nnf {
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

struct Converter<'d> {
    dict: &'d mut SymbolDictionary,
    next_var: u32,
    env: HashMap<Variable, Term>,
    universals: Vec<Variable>,
    skolems: Vec<Skolem>,
}

impl Converter<'_> {
    fn fresh(&mut self, like: Variable) -> Variable {
        self.next_var += 1;
        Variable::new(like.sort, self.next_var)
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.env.get(v) {
                Some(u) => u.clone(),
                None => {
                    // A free variable is read as universal.
                    let u = Term::Var(self.fresh(*v));
                    self.env.insert(*v, u.clone());
                    u
                }
            },
            Term::Const(_) => t.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.term(a)).collect()),
        }
    }

    fn skolem(&mut self, v: Variable, body: &Formula) -> Result<Term, ReasonError> {
        let mut used = Vec::new();
        for w in free_vars(body) {
            if w != v {
                self.term(&Term::Var(w)).vars_into(&mut used);
            }
        }
        let args: Vec<Term> =
            self.universals.iter().filter(|u| used.contains(u)).map(|u| Term::Var(*u)).collect();
        let name = self.dict.fresh_name("sk");
        let replaces = self.dict.variable_name(v).unwrap_or("?").to_string();
        let (symbol, term) = if args.is_empty() {
            let c = self.dict.add_constant(v.sort, &name)?;
            (SkolemSymbol::Constant(c), Term::Const(c))
        } else {
            let f = self.dict.register_function(&name, args.len(), Some(v.sort))?;
            (SkolemSymbol::Function(f), Term::App(f, args))
        };
        self.skolems.push(Skolem { symbol, name, replaces });
        Ok(term)
    }

    fn go(&mut self, f: &Formula, positive: bool) -> Result<Nnf, ReasonError> {
        Ok(match f {
            Formula::Atom(p, args) => {
                let args = args.iter().map(|a| self.term(a)).collect();
                Nnf::Lit(Literal::new(positive, *p, args))
            }
            Formula::Not(g) => self.go(g, !positive)?,
            Formula::Binary(c, l, r) => {
                let parts = match c {
                    Connective::And | Connective::Or => vec![self.go(l, positive)?, self.go(r, positive)?],
                    Connective::Implies => vec![self.go(l, !positive)?, self.go(r, positive)?],
                    Connective::Iff => {
                        // a <-> b is (~a | b) & (a | ~b); its negation is (a | b) & (~a | ~b).
                        let first = Nnf::Or(vec![self.go(l, !positive)?, self.go(r, true)?]);
                        let second = Nnf::Or(vec![self.go(l, positive)?, self.go(r, false)?]);
                        return Ok(Nnf::And(vec![first, second]));
                    }
                };
                let conjunctive = matches!(
                    (c, positive),
                    (Connective::And, true) | (Connective::Or, false) | (Connective::Implies, false)
                );
                if conjunctive {
                    Nnf::And(parts)
                } else {
                    Nnf::Or(parts)
                }
            }
            Formula::Quantified(q, v, body) => {
                let universal = (*q == Quantifier::Forall) == positive;
                let saved = self.env.get(v).cloned();
                let replacement = if universal {
                    let u = self.fresh(*v);
                    self.universals.push(u);
                    Term::Var(u)
                } else {
                    self.skolem(*v, body)?
                };
                self.env.insert(*v, replacement);
                let out = self.go(body, positive);
                if universal {
                    self.universals.pop();
                }
                match saved {
                    Some(t) => self.env.insert(*v, t),
                    None => self.env.remove(v),
                };
                out?
            }
        })
    }
}

fn distribute(n: Nnf) -> Vec<Vec<Literal>> {
    match n {
        Nnf::Lit(l) => vec![vec![l]],
        Nnf::And(parts) => parts.into_iter().flat_map(distribute).collect(),
        Nnf::Or(parts) => {
            let mut acc = vec![vec![]];
            for p in parts {
                let cs = distribute(p);
                acc = acc
                    .iter()
                    .flat_map(|a| {
                        cs.iter().map(move |c| {
                            let mut x = a.clone();
                            x.extend(c.iter().cloned());
                            x
                        })
                    })
                    .collect();
            }
            acc
        }
    }
}

/// Clauses equisatisfiable with `f`. Skolem symbols are registered in `dict`.
pub fn to_cnf(f: &Formula, dict: &mut SymbolDictionary) -> Result<ClauseSet, ReasonError> {
    dict.check_formula(f)?;
    let mut conv = Converter { dict, next_var: 0, env: HashMap::new(), universals: vec![], skolems: vec![] };
    let nnf = conv.go(f, true)?;
    let mut clauses: Vec<Clause> = Vec::new();
    for lits in distribute(nnf) {
        let c = Clause::new(lits);
        if !c.is_tautology() && !clauses.contains(&c) {
            clauses.push(c);
        }
    }
    Ok(ClauseSet { clauses, skolems: conv.skolems })
}
