//! Exhaustive search for small models.
//!
//! Every sort gets the same domain `{0, …, n−1}` for `n = 1 … max`. Without
//! equality a model can always be enlarged by copying an element, so equal
//! sizes lose nothing. Constants are assigned up to symmetry, sentences are
//! grounded, and ground atoms are fixed one at a time with three-valued
//! evaluation cutting off dead branches.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::dictionary::SymbolDictionary;
use crate::fol::{free_vars, Connective, Constant, Formula, Quantifier, Term, Variable};

use super::{ClauseSet, ReasonError};

pub const MAX_DOMAIN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    pub domain_size: usize,
    pub constants: BTreeMap<Constant, usize>,
    /// Ground atoms that hold; all others are false.
    pub true_atoms: BTreeSet<(u32, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelCheck {
    Model(FiniteModel),
    NoModel { up_to: usize },
}

impl ModelCheck {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, ModelCheck::Model(_))
    }
}

enum Ground {
    Atom(usize),
    Not(Box<Ground>),
    And(Vec<Ground>),
    Or(Vec<Ground>),
}

impl Ground {
    fn eval(&self, v: &[Option<bool>]) -> Option<bool> {
        match self {
            Ground::Atom(i) => v[*i],
            Ground::Not(g) => g.eval(v).map(|b| !b),
            Ground::And(gs) => {
                let mut unknown = false;
                for g in gs {
                    match g.eval(v) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        _ => {}
                    }
                }
                (!unknown).then_some(true)
            }
            Ground::Or(gs) => {
                let mut unknown = false;
                for g in gs {
                    match g.eval(v) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        _ => {}
                    }
                }
                (!unknown).then_some(false)
            }
        }
    }
}

/// Input to the checker: sentences or clauses, already checked function-free.
enum Input<'a> {
    Formulas(&'a [Formula]),
    Clauses(&'a ClauseSet),
}

struct Grounder<'a> {
    n: usize,
    consts: &'a HashMap<Constant, usize>,
    atoms: HashMap<(u32, Vec<usize>), usize>,
    order: Vec<(u32, Vec<usize>)>,
}

impl Grounder<'_> {
    fn atom(&mut self, p: u32, args: &[Term], env: &HashMap<Variable, usize>) -> Ground {
        let key: Vec<usize> = args
            .iter()
            .map(|t| match t {
                Term::Var(v) => env[v],
                Term::Const(c) => self.consts[c],
                Term::App(..) => unreachable!("checked function-free"),
            })
            .collect();
        let key = (p, key);
        let next = self.atoms.len();
        let id = *self.atoms.entry(key.clone()).or_insert_with(|| {
            self.order.push(key);
            next
        });
        Ground::Atom(id)
    }

    fn formula(&mut self, f: &Formula, env: &mut HashMap<Variable, usize>) -> Ground {
        match f {
            Formula::Atom(p, args) => self.atom(*p, args, env),
            Formula::Not(g) => Ground::Not(Box::new(self.formula(g, env))),
            Formula::Binary(c, l, r) => {
                let (l, r) = (self.formula(l, env), self.formula(r, env));
                match c {
                    Connective::And => Ground::And(vec![l, r]),
                    Connective::Or => Ground::Or(vec![l, r]),
                    Connective::Implies => Ground::Or(vec![Ground::Not(Box::new(l)), r]),
                    Connective::Iff => {
                        // Both sides are needed twice; grounding again is cheaper than sharing.
                        let both = Ground::And(vec![l, r]);
                        let (l2, r2) = match f {
                            Formula::Binary(_, l, r) => (self.formula(l, env), self.formula(r, env)),
                            _ => unreachable!(),
                        };
                        let neither = Ground::And(vec![Ground::Not(Box::new(l2)), Ground::Not(Box::new(r2))]);
                        Ground::Or(vec![both, neither])
                    }
                }
            }
            Formula::Quantified(q, v, body) => {
                let saved = env.get(v).copied();
                let mut parts = Vec::with_capacity(self.n);
                for e in 0..self.n {
                    env.insert(*v, e);
                    parts.push(self.formula(body, env));
                }
                match saved {
                    Some(e) => env.insert(*v, e),
                    None => env.remove(v),
                };
                match q {
                    Quantifier::Forall => Ground::And(parts),
                    Quantifier::Exists => Ground::Or(parts),
                }
            }
        }
    }

    fn clauses(&mut self, cs: &ClauseSet) -> Ground {
        let mut all = Vec::new();
        for c in &cs.clauses {
            let vars = c.vars();
            let mut idx = vec![0usize; vars.len()];
            loop {
                let env: HashMap<Variable, usize> = vars.iter().copied().zip(idx.iter().copied()).collect();
                let lits = c
                    .literals
                    .iter()
                    .map(|l| {
                        let a = self.atom(l.pred, &l.args, &env);
                        if l.positive {
                            a
                        } else {
                            Ground::Not(Box::new(a))
                        }
                    })
                    .collect();
                all.push(Ground::Or(lits));
                // Next assignment of the clause variables.
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < self.n {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
        Ground::And(all)
    }
}

fn search(g: &Ground, values: &mut Vec<Option<bool>>, next: usize) -> bool {
    match g.eval(values) {
        Some(b) => return b,
        None if next == values.len() => return false,
        None => {}
    }
    for b in [false, true] {
        values[next] = Some(b);
        if search(g, values, next + 1) {
            return true;
        }
    }
    values[next] = None;
    false
}

fn term_constants(t: &Term, out: &mut Vec<Constant>, dict: &SymbolDictionary) -> Result<(), ReasonError> {
    match t {
        Term::Var(_) => Ok(()),
        Term::Const(c) => {
            if !out.contains(c) {
                out.push(*c);
            }
            Ok(())
        }
        Term::App(f, _) => Err(ReasonError::Function(dict.function_entry(*f)?.0.to_string())),
    }
}

/// Constant assignments where each constant of a sort takes an element at
/// most one above the largest used so far, which covers every assignment
/// up to renaming the elements.
fn assignments(consts: &[Constant], n: usize) -> Vec<Vec<usize>> {
    fn go(consts: &[Constant], n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == consts.len() {
            out.push(cur.clone());
            return;
        }
        let used = (0..k).filter(|&i| consts[i].sort == consts[k].sort).map(|i| cur[i] + 1).max().unwrap_or(0);
        for e in 0..n.min(used + 1) {
            cur.push(e);
            go(consts, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(consts, n, &mut Vec::new(), &mut out);
    out
}

/// Universal closure.
fn closed(f: &Formula) -> Formula {
    free_vars(f).into_iter().rev().fold(f.clone(), |acc, v| Formula::forall(v, acc))
}

fn check(input: Input<'_>, max_domain: usize, dict: &SymbolDictionary) -> Result<ModelCheck, ReasonError> {
    if max_domain == 0 || max_domain > MAX_DOMAIN {
        return Err(ReasonError::DomainBound(max_domain));
    }
    let closed_formulas: Vec<Formula>;
    let input = match input {
        Input::Formulas(fs) => {
            closed_formulas = fs.iter().map(closed).collect();
            Input::Formulas(&closed_formulas)
        }
        other => other,
    };
    let mut consts = Vec::new();
    match &input {
        Input::Formulas(fs) => {
            for f in fs.iter() {
                dict.check_formula(f)?;
                let mut err = Ok(());
                f.for_each_atom(&mut |_, args| {
                    for a in args {
                        if err.is_ok() {
                            err = term_constants(a, &mut consts, dict);
                        }
                    }
                });
                err?;
            }
        }
        Input::Clauses(cs) => {
            for l in cs.clauses.iter().flat_map(|c| &c.literals) {
                for a in &l.args {
                    term_constants(a, &mut consts, dict)?;
                }
            }
        }
    }
    for n in 1..=max_domain {
        for values in assignments(&consts, n) {
            let map: HashMap<Constant, usize> = consts.iter().copied().zip(values).collect();
            let mut gr = Grounder { n, consts: &map, atoms: HashMap::new(), order: vec![] };
            let ground = match &input {
                Input::Formulas(fs) => {
                    Ground::And(fs.iter().map(|f| gr.formula(f, &mut HashMap::new())).collect())
                }
                Input::Clauses(cs) => gr.clauses(cs),
            };
            let mut vals = vec![None; gr.order.len()];
            if search(&ground, &mut vals, 0) {
                let true_atoms = gr
                    .order
                    .iter()
                    .zip(&vals)
                    .filter(|(_, v)| **v == Some(true))
                    .map(|(a, _)| a.clone())
                    .collect();
                let constants = map.into_iter().collect();
                return Ok(ModelCheck::Model(FiniteModel { domain_size: n, constants, true_atoms }));
            }
        }
    }
    Ok(ModelCheck::NoModel { up_to: max_domain })
}

/// Looks for a model of all `sentences` with at most `max_domain` elements
/// per sort.
pub fn finite_model_check(
    sentences: &[Formula],
    max_domain: usize,
    dict: &SymbolDictionary,
) -> Result<ModelCheck, ReasonError> {
    check(Input::Formulas(sentences), max_domain, dict)
}

/// Same search for a clause set; clause variables are universal.
pub fn finite_model_check_clauses(
    clauses: &ClauseSet,
    max_domain: usize,
    dict: &SymbolDictionary,
) -> Result<ModelCheck, ReasonError> {
    check(Input::Clauses(clauses), max_domain, dict)
}
