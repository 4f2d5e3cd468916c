//! Given-clause resolution.
//!
//! The passive clause with the fewest symbols is selected next, ties going
//! to the older clause. A selected clause subsumed by an active one is
//! dropped; otherwise its factors and its resolvents with every active
//! clause (itself included) join the passive set.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dictionary::SymbolDictionary;
use crate::fol::{Formula, Term, Variable};

use super::cnf::{to_cnf, Skolem};
use super::unify::{apply_literal, match_clause, unify_atoms, Substitution};
use super::{write_substitution, Clause, ReasonError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub max_clauses: usize,
    pub max_seconds: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_clauses: 50_000, max_seconds: 5.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inference {
    /// A clause of the `premise`-th input formula (0-based).
    Input { premise: usize },
    /// `left` and `right` are step ids; literal positions index the parents'
    /// literal lists. The right parent is renamed before unifying.
    Resolution {
        left: usize,
        left_literal: usize,
        right: usize,
        right_literal: usize,
        renaming: Substitution,
        unifier: Substitution,
    },
    Factor { parent: usize, first: usize, second: usize, unifier: Substitution },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: usize,
    pub clause: Clause,
    pub inference: Inference,
}

/// Steps leading to the empty clause, numbered from 1 in derivation order.
#[derive(Clone, Debug)]
pub struct Proof {
    pub steps: Vec<Step>,
    pub skolems: Vec<Skolem>,
    /// The input dictionary plus Skolem symbols.
    pub dictionary: SymbolDictionary,
    /// Premise number of the negated goal, when proving.
    pub goal_premise: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum ProofResult {
    Refuted(Proof),
    Proved(Proof),
    Unknown { reason: String, clauses: usize },
}

impl ProofResult {
    pub fn status(&self) -> &'static str {
        match self {
            ProofResult::Refuted(_) => "refuted",
            ProofResult::Proved(_) => "proved",
            ProofResult::Unknown { .. } => "unknown",
        }
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProofResult::Refuted(p) | ProofResult::Proved(p) => Some(p),
            ProofResult::Unknown { .. } => None,
        }
    }
}

fn rename_apart(c: &Clause, above: u32) -> (Vec<crate::reason::Literal>, Substitution) {
    let mut renaming = Substitution::new();
    for (i, v) in c.vars().into_iter().enumerate() {
        renaming.insert(v, Term::Var(Variable::new(v.sort, above + i as u32 + 1)));
    }
    let lits = c.literals.iter().map(|l| apply_literal(l, &renaming)).collect();
    (lits, renaming)
}

fn max_var(c: &Clause) -> u32 {
    c.vars().iter().map(|v| v.index).max().unwrap_or(0)
}

fn resolvent(
    left: &Clause,
    i: usize,
    right: &[crate::reason::Literal],
    j: usize,
    unifier: &Substitution,
) -> Clause {
    let mut lits = Vec::with_capacity(left.len() + right.len() - 2);
    for (k, l) in left.literals.iter().enumerate() {
        if k != i {
            lits.push(apply_literal(l, unifier));
        }
    }
    for (k, l) in right.iter().enumerate() {
        if k != j {
            lits.push(apply_literal(l, unifier));
        }
    }
    Clause::new(lits)
}

fn factor(c: &Clause, unifier: &Substitution) -> Clause {
    Clause::new(c.literals.iter().map(|l| apply_literal(l, unifier)).collect())
}

struct Search<'d> {
    dict: &'d SymbolDictionary,
    store: Vec<(Clause, Inference)>,
    passive: BinaryHeap<Reverse<(usize, usize)>>,
    seen: HashSet<Clause>,
}

enum Added {
    Fresh,
    Empty(usize),
    Known,
}

impl Search<'_> {
    fn add(&mut self, clause: Clause, inference: Inference) -> Added {
        if clause.is_tautology() || !self.seen.insert(clause.canonical()) {
            return Added::Known;
        }
        let id = self.store.len();
        let empty = clause.is_empty();
        self.passive.push(Reverse((clause.weight(), id)));
        self.store.push((clause, inference));
        if empty {
            Added::Empty(id)
        } else {
            Added::Fresh
        }
    }

    /// New clauses from the given clause against the active set.
    fn infer(&self, given: usize, active: &[usize]) -> Vec<(Clause, Inference)> {
        let mut out = Vec::new();
        let g = &self.store[given].0;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (a, b) = (&g.literals[i], &g.literals[j]);
                if a.positive == b.positive {
                    if let Some(u) = unify_atoms(a, b, self.dict) {
                        let inference = Inference::Factor { parent: given, first: i, second: j, unifier: u };
                        let Inference::Factor { unifier, .. } = &inference else { unreachable!() };
                        out.push((factor(g, unifier), inference));
                    }
                }
            }
        }
        for &other in active {
            let o = &self.store[other].0;
            let (renamed, renaming) = rename_apart(o, max_var(g));
            for (i, a) in g.literals.iter().enumerate() {
                for (j, b) in renamed.iter().enumerate() {
                    if a.positive == b.positive {
                        continue;
                    }
                    if let Some(u) = unify_atoms(a, b, self.dict) {
                        let clause = resolvent(g, i, &renamed, j, &u);
                        out.push((
                            clause,
                            Inference::Resolution {
                                left: given,
                                left_literal: i,
                                right: other,
                                right_literal: j,
                                renaming: renaming.clone(),
                                unifier: u,
                            },
                        ));
                    }
                }
            }
        }
        out
    }

    fn proof(&self, empty: usize, skolems: Vec<Skolem>, goal_premise: Option<usize>) -> Proof {
        let mut needed = HashSet::new();
        let mut stack = vec![empty];
        while let Some(id) = stack.pop() {
            if !needed.insert(id) {
                continue;
            }
            match &self.store[id].1 {
                Inference::Input { .. } => {}
                Inference::Resolution { left, right, .. } => stack.extend([*left, *right]),
                Inference::Factor { parent, .. } => stack.push(*parent),
            }
        }
        let mut ids: Vec<usize> = needed.into_iter().collect();
        ids.sort_unstable();
        let number: HashMap<usize, usize> = ids.iter().enumerate().map(|(n, id)| (*id, n + 1)).collect();
        let steps = ids
            .iter()
            .map(|id| {
                let (clause, inference) = &self.store[*id];
                let inference = match inference.clone() {
                    Inference::Resolution { left, left_literal, right, right_literal, renaming, unifier } => {
                        Inference::Resolution {
                            left: number[&left],
                            left_literal,
                            right: number[&right],
                            right_literal,
                            renaming,
                            unifier,
                        }
                    }
                    Inference::Factor { parent, first, second, unifier } => {
                        Inference::Factor { parent: number[&parent], first, second, unifier }
                    }
                    input => input,
                };
                Step { id: number[id], clause: clause.clone(), inference }
            })
            .collect();
        Proof { steps, skolems, dictionary: self.dict.clone(), goal_premise }
    }
}

fn search(
    premises: &[Formula],
    dict: &SymbolDictionary,
    bounds: &Bounds,
    goal_premise: Option<usize>,
) -> Result<ProofResult, ReasonError> {
    let start = Instant::now();
    let limit = Duration::from_secs_f64(bounds.max_seconds.max(0.0));
    let mut dict = dict.clone();
    let mut inputs = Vec::new();
    let mut skolems = Vec::new();
    for (i, f) in premises.iter().enumerate() {
        let cs = to_cnf(f, &mut dict)?;
        skolems.extend(cs.skolems);
        inputs.extend(cs.clauses.into_iter().map(|c| (c, i)));
    }
    let mut s = Search { dict: &dict, store: vec![], passive: BinaryHeap::new(), seen: HashSet::new() };
    for (c, premise) in inputs {
        if let Added::Empty(id) = s.add(c, Inference::Input { premise }) {
            return Ok(ProofResult::Refuted(s.proof(id, skolems, goal_premise)));
        }
    }
    let mut active: Vec<usize> = Vec::new();
    let unknown = |reason: &str, clauses: usize| Ok(ProofResult::Unknown { reason: reason.to_string(), clauses });
    loop {
        if start.elapsed() > limit {
            return unknown("time bound exhausted", s.store.len());
        }
        let Some(Reverse((_, given))) = s.passive.pop() else {
            return unknown("saturated without contradiction", s.store.len());
        };
        let g = &s.store[given].0;
        if active.iter().any(|a| match_clause(&s.store[*a].0, g, s.dict).is_some()) {
            continue;
        }
        active.push(given);
        for (clause, inference) in s.infer(given, &active) {
            match s.add(clause, inference) {
                Added::Empty(id) => return Ok(ProofResult::Refuted(s.proof(id, skolems, goal_premise))),
                Added::Fresh if s.store.len() >= bounds.max_clauses => {
                    return unknown("clause bound exhausted", s.store.len());
                }
                _ => {}
            }
        }
    }
}

/// Searches for a contradiction among `premises`.
pub fn refute(premises: &[Formula], dict: &SymbolDictionary, bounds: &Bounds) -> Result<ProofResult, ReasonError> {
    search(premises, dict, bounds, None)
}

/// Refutes `premises` together with the negated goal.
pub fn prove(
    premises: &[Formula],
    goal: &Formula,
    dict: &SymbolDictionary,
    bounds: &Bounds,
) -> Result<ProofResult, ReasonError> {
    let mut all = premises.to_vec();
    all.push(Formula::not(goal.clone()));
    Ok(match search(&all, dict, bounds, Some(premises.len()))? {
        ProofResult::Refuted(p) => ProofResult::Proved(p),
        other => other,
    })
}

impl Proof {
    fn clause(&self, id: usize) -> Result<&Clause, String> {
        self.steps
            .get(id.wrapping_sub(1))
            .filter(|s| s.id == id)
            .map(|s| &s.clause)
            .ok_or_else(|| format!("step {id} is missing"))
    }

    /// Recomputes every derived clause from its parents.
    pub fn replay(&self) -> Result<(), String> {
        for step in &self.steps {
            let expected = match &step.inference {
                Inference::Input { .. } => continue,
                Inference::Resolution { left, left_literal, right, right_literal, renaming, unifier } => {
                    if *left >= step.id || *right >= step.id {
                        return Err(format!("step {} uses a later step", step.id));
                    }
                    let l = self.clause(*left)?;
                    let r: Vec<_> = self.clause(*right)?.literals.iter().map(|x| apply_literal(x, renaming)).collect();
                    let (a, b) = match (l.literals.get(*left_literal), r.get(*right_literal)) {
                        (Some(a), Some(b)) => (apply_literal(a, unifier), apply_literal(b, unifier)),
                        _ => return Err(format!("step {} names a missing literal", step.id)),
                    };
                    if a.negated() != b {
                        return Err(format!("step {}: unifier does not make the literals complementary", step.id));
                    }
                    resolvent(l, *left_literal, &r, *right_literal, unifier)
                }
                Inference::Factor { parent, first, second, unifier } => {
                    let p = self.clause(*parent)?;
                    match (p.literals.get(*first), p.literals.get(*second)) {
                        (Some(a), Some(b)) if apply_literal(a, unifier) == apply_literal(b, unifier) => {}
                        _ => return Err(format!("step {}: unifier does not merge the literals", step.id)),
                    }
                    factor(p, unifier)
                }
            };
            if expected != step.clause {
                return Err(format!("step {} does not follow from its parents", step.id));
            }
        }
        match self.steps.last() {
            Some(s) if s.clause.is_empty() => Ok(()),
            _ => Err("the proof does not end in the empty clause".to_string()),
        }
    }

    /// One step per line: `id. clause ← justification`.
    pub fn to_text(&self) -> String {
        let d = &self.dictionary;
        let mut out = String::new();
        for s in &self.steps {
            write!(out, "{}. {} ← ", s.id, s.clause.display(d)).unwrap();
            match &s.inference {
                Inference::Input { premise } if Some(*premise) == self.goal_premise => out.push_str("negated goal"),
                Inference::Input { premise } => write!(out, "premise {}", premise + 1).unwrap(),
                Inference::Resolution { left, left_literal, right, right_literal, renaming, unifier } => {
                    write!(out, "resolve {left}.{} {right}.{} ", left_literal + 1, right_literal + 1).unwrap();
                    let shown: BTreeMap<_, _> = renaming.iter().filter(|(v, t)| Term::Var(**v) != **t).collect();
                    if !shown.is_empty() {
                        out.push_str("rename ");
                        write_substitution(renaming, d, &mut out);
                        out.push_str(" with ");
                    }
                    write_substitution(unifier, d, &mut out);
                }
                Inference::Factor { parent, first, second, unifier } => {
                    write!(out, "factor {parent}.{} {parent}.{} ", first + 1, second + 1).unwrap();
                    write_substitution(unifier, d, &mut out);
                }
            }
            out.push('\n');
        }
        out
    }

    /// Lines of [`Proof::to_text`].
    pub fn lines(&self) -> Vec<String> {
        self.to_text().lines().map(str::to_string).collect()
    }
}
