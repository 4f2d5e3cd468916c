//! Random sentences over a fixed dictionary and a direct evaluator used as
//! an oracle.
#![allow(dead_code)]

pub mod reference;

use std::collections::BTreeMap;

use para_core::dictionary::SymbolDictionary;
use para_core::fol::{Connective, Constant, Formula, Quantifier, Sort, Term, Variable};
use para_core::numeration::{Category, Terminal};
use para_core::reason::{finite_model_check, prove, Bounds, FiniteModel, ProofResult};
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use proptest::prelude::*;

pub const MAX_DEPTH: u32 = 6;

/// Sorts Entity and Place; predicates P/1, Q/2, R/0, S/1; function f/1;
/// constants a, b (Entity) and home (Place); variables x1…x8 and p1…p8.
pub fn fixture() -> SymbolDictionary {
    let mut d = SymbolDictionary::new();
    let e = d.add_sort("Entity").unwrap();
    let pl = d.add_sort("Place").unwrap();
    d.add_predicate("P", 1).unwrap();
    d.add_predicate("Q", 2).unwrap();
    d.add_predicate("R", 0).unwrap();
    d.add_predicate("S", 1).unwrap();
    d.add_function("f", 1).unwrap();
    d.add_constant(e, "a").unwrap();
    d.add_constant(e, "b").unwrap();
    d.add_constant(pl, "home").unwrap();
    for i in 1..=8 {
        d.add_variable(e, &format!("x{i}")).unwrap();
        d.add_variable(pl, &format!("p{i}")).unwrap();
    }
    d
}

pub const ARITIES: [usize; 4] = [1, 2, 0, 1];

#[derive(Clone, Debug)]
pub enum TermShape {
    Var(u8),
    Const(u8),
    Fun(Box<TermShape>),
}

#[derive(Clone, Debug)]
pub enum Shape {
    Atom(u8, Vec<TermShape>),
    Not(Box<Shape>),
    Bin(u8, Box<Shape>, Box<Shape>),
    Quant(bool, bool, Box<Shape>),
}

fn term_shape(functions: bool) -> BoxedStrategy<TermShape> {
    let leaf = prop_oneof![3 => any::<u8>().prop_map(TermShape::Var), 1 => any::<u8>().prop_map(TermShape::Const)];
    if functions {
        leaf.prop_recursive(2, 4, 1, |inner| inner.prop_map(|t| TermShape::Fun(Box::new(t)))).boxed()
    } else {
        leaf.boxed()
    }
}

/// Formula shapes of depth at most `depth`.
pub fn shape(depth: u32, functions: bool) -> BoxedStrategy<Shape> {
    let leaf = (any::<u8>(), prop::collection::vec(term_shape(functions), 2))
        .prop_map(|(p, args)| Shape::Atom(p, args));
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|s| Shape::Not(Box::new(s))),
            (0u8..4, inner.clone(), inner.clone()).prop_map(|(c, l, r)| Shape::Bin(c, Box::new(l), Box::new(r))),
            (any::<bool>(), prop::bool::weighted(0.2), inner)
                .prop_map(|(q, place, b)| Shape::Quant(q, place, Box::new(b))),
        ]
    })
    .boxed()
}

pub struct Build<'a> {
    pub dict: &'a SymbolDictionary,
    pub iff: bool,
    pub predicates: u32,
}

impl Build<'_> {
    fn term(&self, t: &TermShape, sort: Sort, scope: &[Variable]) -> Term {
        match t {
            TermShape::Var(i) => {
                let of_sort: Vec<_> = scope.iter().filter(|v| v.sort == sort).collect();
                if of_sort.is_empty() {
                    self.constant(*i, sort)
                } else {
                    Term::Var(*of_sort[*i as usize % of_sort.len()])
                }
            }
            TermShape::Const(i) => self.constant(*i, sort),
            TermShape::Fun(inner) if sort == Sort::new(1) => Term::App(1, vec![self.term(inner, sort, scope)]),
            TermShape::Fun(inner) => self.term(inner, sort, scope),
        }
    }

    fn constant(&self, i: u8, sort: Sort) -> Term {
        let cs: Vec<Constant> = self.dict.constants_of(sort).collect();
        Term::Const(cs[i as usize % cs.len()])
    }

    pub fn formula(&self, s: &Shape) -> Formula {
        self.at(s, &mut Vec::new())
    }

    fn at(&self, s: &Shape, scope: &mut Vec<Variable>) -> Formula {
        match s {
            Shape::Atom(p, args) => {
                let p = (*p as u32 % self.predicates) + 1;
                // S takes a Place, the rest take Entities.
                let sort = if p == 4 { Sort::new(2) } else { Sort::new(1) };
                let n = ARITIES[p as usize - 1];
                Formula::atom(p, args.iter().take(n).map(|t| self.term(t, sort, scope)).collect())
            }
            Shape::Not(g) => Formula::not(self.at(g, scope)),
            Shape::Bin(c, l, r) => {
                let c = match c {
                    0 => Connective::And,
                    1 => Connective::Or,
                    2 => Connective::Implies,
                    _ if self.iff => Connective::Iff,
                    _ => Connective::And,
                };
                Formula::binary(c, self.at(l, scope), self.at(r, scope))
            }
            Shape::Quant(q, place, b) => {
                let sort = if *place && self.predicates >= 4 { Sort::new(2) } else { Sort::new(1) };
                let index = scope.iter().filter(|v| v.sort == sort).count() as u32 + 1;
                let v = Variable::new(sort, index);
                scope.push(v);
                let body = self.at(b, scope);
                scope.pop();
                let q = if *q { Quantifier::Forall } else { Quantifier::Exists };
                Formula::Quantified(q, v, Box::new(body))
            }
        }
    }
}

/// An interpretation with one domain `{0, …, n−1}` shared by all sorts.
pub struct Interp<'a> {
    pub size: usize,
    pub constant: &'a dyn Fn(Constant) -> usize,
    pub function: &'a dyn Fn(u32, &[usize]) -> usize,
    pub holds: &'a dyn Fn(u32, &[usize]) -> bool,
}

pub fn eval_term(t: &Term, i: &Interp, env: &BTreeMap<Variable, usize>) -> usize {
    match t {
        Term::Var(v) => env[v],
        Term::Const(c) => (i.constant)(*c),
        Term::App(f, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_term(a, i, env)).collect();
            (i.function)(*f, &vals)
        }
    }
}

pub fn eval(f: &Formula, i: &Interp, env: &mut BTreeMap<Variable, usize>) -> bool {
    match f {
        Formula::Atom(p, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_term(a, i, env)).collect();
            (i.holds)(*p, &vals)
        }
        Formula::Not(g) => !eval(g, i, env),
        Formula::Binary(c, l, r) => {
            let (a, b) = (eval(l, i, env), eval(r, i, env));
            match c {
                Connective::And => a && b,
                Connective::Or => a || b,
                Connective::Implies => !a || b,
                Connective::Iff => a == b,
            }
        }
        Formula::Quantified(q, v, body) => {
            let saved = env.get(v).copied();
            let mut results = (0..i.size).map(|d| {
                env.insert(*v, d);
                eval(body, i, env)
            });
            let out = match q {
                Quantifier::Forall => results.all(|b| b),
                Quantifier::Exists => results.any(|b| b),
            };
            match saved {
                Some(d) => env.insert(*v, d),
                None => env.remove(v),
            };
            out
        }
    }
}

pub fn satisfies(model: &FiniteModel, f: &Formula) -> bool {
    let constant = |c: Constant| model.constants[&c];
    let function = |_: u32, _: &[usize]| -> usize { panic!("models have no functions") };
    let holds = |p: u32, args: &[usize]| model.true_atoms.contains(&(p, args.to_vec()));
    let i = Interp { size: model.domain_size, constant: &constant, function: &function, holds: &holds };
    eval(f, &i, &mut BTreeMap::new())
}

/// A pseudo-random interpretation derived from `seed`.
pub fn hashed(seed: u64, size: usize, f: &Formula, g: &Formula) -> bool {
    use std::hash::{Hash, Hasher};
    let h = |tag: u8, a: u32, args: &[usize]| {
        let mut s = std::collections::hash_map::DefaultHasher::new();
        (seed, tag, a, args).hash(&mut s);
        s.finish()
    };
    let constant = |c: Constant| (h(0, c.index * 7 + c.sort.index(), &[]) % size as u64) as usize;
    let function = |fi: u32, args: &[usize]| (h(1, fi, args) % size as u64) as usize;
    let holds = |p: u32, args: &[usize]| h(2, p, args) % 2 == 0;
    let i = Interp { size, constant: &constant, function: &function, holds: &holds };
    eval(f, &i, &mut BTreeMap::new()) == eval(g, &i, &mut BTreeMap::new())
}

/// Counts class members in increasing order instead of using closed forms.
#[derive(Default)]
pub struct CodeOracle {
    pub seen: std::collections::HashMap<Category, u64>,
}

impl CodeOracle {
    pub fn category(m: u64) -> Category {
        if m <= 6 {
            return Category::Terminal(Terminal::from_code(m as u32).unwrap());
        }
        let mut v = 0;
        let mut r = m;
        while r.is_multiple_of(2) {
            r /= 2;
            v += 1;
        }
        match v {
            0 => Category::SentenceText,
            1 => Category::Predicate,
            2 => Category::Function,
            3 => Category::Sort,
            v if v % 2 == 0 => Category::Constant((v - 2) / 2),
            v => Category::VariableName((v - 3) / 2),
        }
    }

    /// Category and ordinal of `m`; codes must be fed in increasing order.
    pub fn next(&mut self, m: u64) -> (Category, u64) {
        let c = CodeOracle::category(m);
        if let Category::Terminal(_) = c {
            return (c, m);
        }
        let n = self.seen.entry(c).or_insert(0);
        *n += 1;
        (c, *n)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Soundness {
    pub proved: u32,
    pub unknown: u32,
}

/// Random function-free problems over P/1, Q/2, R/0 and two constants.
/// Every proof is replayed and checked against the finite-model search
/// (domain up to 3); every model found is checked by [`satisfies`].
pub fn soundness_suite(cases: u32) -> Result<Soundness, String> {
    let strategy = (
        prop::collection::vec(shape(3, false), 1..=3),
        shape(3, false),
        prop::option::weighted(0.3, 0usize..3),
    );
    let bounds = Bounds { max_clauses: 3_000, max_seconds: 2.0 };
    let tally = std::cell::Cell::new(Soundness::default());
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(premises, goal, reuse)| {
            let dict = fixture();
            let b = Build { dict: &dict, iff: true, predicates: 3 };
            let premises: Vec<Formula> = premises.iter().map(|s| b.formula(s)).collect();
            // Sometimes aim at something entailed.
            let goal = match reuse {
                Some(i) => premises[i % premises.len()].clone(),
                None => b.formula(&goal),
            };
            let result = prove(&premises, &goal, &dict, &bounds).unwrap();
            let mut check = premises.clone();
            check.push(Formula::not(goal.clone()));
            let models = finite_model_check(&check, 3, &dict).unwrap();
            let mut t = tally.get();
            match &result {
                ProofResult::Proved(p) => {
                    t.proved += 1;
                    prop_assert!(!models.is_satisfiable(), "unsound: {:?} |- {:?}", premises, goal);
                    prop_assert_eq!(p.replay(), Ok(()));
                }
                ProofResult::Unknown { .. } => t.unknown += 1,
                ProofResult::Refuted(_) => return Err(TestCaseError::fail("prove reported Refuted")),
            }
            tally.set(t);
            if let para_core::reason::ModelCheck::Model(m) = &models {
                for f in &check {
                    prop_assert!(satisfies(m, f), "reported model fails {:?}", f);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(tally.get())
}
