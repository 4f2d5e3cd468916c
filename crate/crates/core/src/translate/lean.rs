//! Lean 3 theorem statements with a placeholder proof.
//!
//! Sorts become `Type` variables and predicates become `Prop`-valued
//! functions. A unary predicate used only as a quantifier guard
//! (`∀x (P(x) → φ)`, `∃x (P(x) ∧ φ)`) or as a top-level premise fact `P(c)`
//! is turned into a type of its own: the guard moves into the binder
//! (`∀ x : P, φ`) and the fact into the constant's binder (`(c : P)`).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::dictionary::SymbolDictionary;
use crate::fol::{Connective, Constant, Formula, Quantifier, Term, Variable};

use super::TranslateError;

#[derive(Clone, Debug)]
pub struct LeanOptions {
    pub theorem_name: String,
    /// Turn guard-only unary predicates into types.
    pub type_predicates: bool,
}

impl Default for LeanOptions {
    fn default() -> Self {
        LeanOptions { theorem_name: "Goal".to_string(), type_predicates: true }
    }
}

/// A Lean type: a dictionary sort or a promoted predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Ty {
    Sort(u32),
    Pred(u32),
}

fn guard_of(q: Quantifier, v: Variable, body: &Formula) -> Option<(u32, &Formula)> {
    let want = match q {
        Quantifier::Forall => Connective::Implies,
        Quantifier::Exists => Connective::And,
    };
    match body {
        Formula::Binary(c, l, r) if *c == want => match &**l {
            Formula::Atom(p, args) if args.len() == 1 && args[0] == Term::Var(v) => Some((*p, r)),
            _ => None,
        },
        _ => None,
    }
}

fn fact_of(f: &Formula) -> Option<(u32, Constant)> {
    match f {
        Formula::Atom(p, args) => match args.as_slice() {
            [Term::Const(c)] => Some((*p, *c)),
            _ => None,
        },
        _ => None,
    }
}

/// Predicates that occur somewhere other than a guard or a premise fact.
fn plain_uses(f: &Formula, out: &mut HashSet<u32>) {
    match f {
        Formula::Atom(p, _) => {
            out.insert(*p);
        }
        Formula::Not(g) => plain_uses(g, out),
        Formula::Binary(_, l, r) => {
            plain_uses(l, out);
            plain_uses(r, out);
        }
        Formula::Quantified(q, v, body) => match guard_of(*q, *v, body) {
            Some((_, rest)) => plain_uses(rest, out),
            None => plain_uses(body, out),
        },
    }
}

fn type_predicates(premises: &[Formula], goal: Option<&Formula>, dict: &SymbolDictionary) -> BTreeSet<u32> {
    let mut plain = HashSet::new();
    let mut facts: HashMap<Constant, BTreeSet<u32>> = HashMap::new();
    for f in premises {
        match fact_of(f) {
            Some((p, c)) => {
                facts.entry(c).or_default().insert(p);
            }
            None => plain_uses(f, &mut plain),
        }
    }
    if let Some(g) = goal {
        // The goal is a claim to prove, never a typing.
        g.for_each_atom(&mut |p, _| {
            plain.insert(p);
        });
    }
    let mut types: BTreeSet<u32> = (1..=dict.predicate_count() as u32)
        .filter(|p| dict.predicate_entry(*p).map(|(_, a)| a == 1).unwrap_or(false))
        .filter(|p| !plain.contains(p))
        .collect();
    // A constant can only have one type.
    for ps in facts.values() {
        let promoted: Vec<u32> = ps.iter().copied().filter(|p| types.contains(p)).collect();
        if promoted.len() > 1 {
            for p in promoted {
                types.remove(&p);
            }
        }
    }
    types
}

struct Emitter<'a> {
    dict: &'a SymbolDictionary,
    types: BTreeSet<u32>,
    const_ty: HashMap<Constant, Ty>,
    // Encounter order of globals.
    ty_order: Vec<Ty>,
    const_order: Vec<Constant>,
    pred_sig: BTreeMap<u32, Vec<Ty>>,
    pred_order: Vec<u32>,
    fun_sig: BTreeMap<u32, (Vec<Ty>, Ty)>,
    fun_order: Vec<u32>,
    // Lean identifiers.
    used: HashSet<String>,
    ty_names: HashMap<Ty, String>,
    pred_names: HashMap<u32, String>,
    fun_names: HashMap<u32, String>,
    const_names: HashMap<Constant, String>,
}

fn lower_first(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_lowercase().chain(c).collect(),
        None => String::new(),
    }
}

fn claim(used: &mut HashSet<String>, base: String) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    (1..).map(|n| format!("{base}_{n}")).find(|c| used.insert(c.clone())).unwrap()
}

impl Emitter<'_> {
    fn ty_name(&self, t: Ty) -> Result<String, TranslateError> {
        Ok(match t {
            Ty::Sort(s) => self.dict.sort_name(crate::fol::Sort::new(s))?.to_string(),
            Ty::Pred(p) => self.dict.predicate_entry(p)?.0.to_string(),
        })
    }

    fn see_ty(&mut self, t: Ty) {
        if !self.ty_order.contains(&t) {
            self.ty_order.push(t);
        }
    }

    fn clash(&self, name: String, a: Ty, b: Ty) -> TranslateError {
        TranslateError::TypeClash {
            name,
            first: self.ty_name(a).unwrap_or_default(),
            second: self.ty_name(b).unwrap_or_default(),
        }
    }

    /// Records the type of a term and everything it mentions.
    fn collect_term(&mut self, t: &Term, scope: &[(Variable, Ty)]) -> Result<Ty, TranslateError> {
        let ty = match t {
            Term::Var(v) => scope
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, t)| *t)
                .unwrap_or(Ty::Sort(v.sort.index())),
            Term::Const(c) => {
                if !self.const_order.contains(c) {
                    self.const_order.push(*c);
                }
                *self.const_ty.get(c).unwrap_or(&Ty::Sort(c.sort.index()))
            }
            Term::App(f, args) => {
                let (name, info) = self.dict.function_entry(*f)?;
                let name = name.to_string();
                let result = match info.sort {
                    Some(s) => Ty::Sort(s.index()),
                    None => return Err(TranslateError::UntypedFunction(name)),
                };
                let mut tys = Vec::with_capacity(args.len());
                for a in args {
                    tys.push(self.collect_term(a, scope)?);
                }
                match self.fun_sig.get(f) {
                    Some((prev, _)) => {
                        if let Some((a, b)) = prev.iter().zip(&tys).find(|(a, b)| a != b) {
                            return Err(self.clash(name, *a, *b));
                        }
                    }
                    None => {
                        for t in &tys {
                            self.see_ty(*t);
                        }
                        self.fun_sig.insert(*f, (tys, result));
                        self.fun_order.push(*f);
                    }
                }
                result
            }
        };
        self.see_ty(ty);
        Ok(ty)
    }

    fn collect(&mut self, f: &Formula, scope: &mut Vec<(Variable, Ty)>) -> Result<(), TranslateError> {
        match f {
            Formula::Atom(p, args) => {
                let mut tys = Vec::with_capacity(args.len());
                for a in args {
                    tys.push(self.collect_term(a, scope)?);
                }
                match self.pred_sig.get(p) {
                    Some(prev) => {
                        if let Some((a, b)) = prev.iter().zip(&tys).find(|(a, b)| a != b) {
                            let name = self.dict.predicate_entry(*p)?.0.to_string();
                            return Err(self.clash(name, *a, *b));
                        }
                    }
                    None => {
                        self.pred_sig.insert(*p, tys);
                        self.pred_order.push(*p);
                    }
                }
            }
            Formula::Not(g) => self.collect(g, scope)?,
            Formula::Binary(_, l, r) => {
                self.collect(l, scope)?;
                self.collect(r, scope)?;
            }
            Formula::Quantified(q, v, body) => {
                let (ty, rest) = match self.guard(*q, *v, body) {
                    Some((p, rest)) => (Ty::Pred(p), rest),
                    None => (Ty::Sort(v.sort.index()), &**body),
                };
                self.see_ty(ty);
                scope.push((*v, ty));
                self.collect(rest, scope)?;
                scope.pop();
            }
        }
        Ok(())
    }

    fn guard<'f>(&self, q: Quantifier, v: Variable, body: &'f Formula) -> Option<(u32, &'f Formula)> {
        guard_of(q, v, body).filter(|(p, _)| self.types.contains(p))
    }

    fn typing(&self, f: &Formula) -> Option<(u32, Constant)> {
        fact_of(f).filter(|(p, _)| self.types.contains(p))
    }

    fn name_globals(&mut self) -> Result<(), TranslateError> {
        for t in self.ty_order.clone() {
            let base = self.ty_name(t)?;
            let n = claim(&mut self.used, base);
            self.ty_names.insert(t, n);
        }
        for f in self.fun_order.clone() {
            let n = claim(&mut self.used, lower_first(self.dict.function_entry(f)?.0));
            self.fun_names.insert(f, n);
        }
        for p in self.pred_order.clone() {
            let n = claim(&mut self.used, lower_first(self.dict.predicate_entry(p)?.0));
            self.pred_names.insert(p, n);
        }
        for c in self.const_order.clone() {
            let n = claim(&mut self.used, self.dict.constant_name(c)?.to_string());
            self.const_names.insert(c, n);
        }
        Ok(())
    }

    fn arrow(&self, args: &[Ty], result: &str) -> String {
        let mut s = String::new();
        for a in args {
            write!(s, "{} → ", self.ty_names[a]).unwrap();
        }
        s.push_str(result);
        s
    }

    fn term(&self, t: &Term, scope: &[(Variable, String)], nested: bool, out: &mut String) {
        match t {
            Term::Var(v) => {
                let name = scope.iter().rev().find(|(w, _)| w == v).map(|(_, n)| n.as_str());
                out.push_str(name.expect("free variables are rejected up front"));
            }
            Term::Const(c) => out.push_str(&self.const_names[c]),
            Term::App(f, args) => {
                let wrap = nested && !args.is_empty();
                if wrap {
                    out.push('(');
                }
                out.push_str(&self.fun_names[f]);
                for a in args {
                    out.push(' ');
                    self.term(a, scope, true, out);
                }
                if wrap {
                    out.push(')');
                }
            }
        }
    }

    /// Prints `f`; `tail` says nothing follows it up to the enclosing bracket,
    /// so a binder may run to the end without brackets.
    fn formula(
        &self,
        f: &Formula,
        scope: &mut Vec<(Variable, String)>,
        tail: bool,
        out: &mut String,
    ) -> Result<(), TranslateError> {
        match f {
            Formula::Atom(p, args) => {
                out.push_str(&self.pred_names[p]);
                for a in args {
                    out.push(' ');
                    self.term(a, scope, true, out);
                }
            }
            Formula::Not(g) => {
                out.push_str("¬ ");
                self.operand(g, scope, 0, out)?;
            }
            Formula::Binary(c, l, r) => {
                let prec = lean_prec(*c);
                // Lean's connectives associate to the right.
                let left_min = prec + 1;
                let right_min = if *c == Connective::Iff { prec + 1 } else { prec };
                self.operand(l, scope, left_min, out)?;
                write!(out, " {} ", lean_symbol(*c)).unwrap();
                if tail && matches!(&**r, Formula::Quantified(..)) {
                    self.formula(r, scope, true, out)?;
                } else {
                    self.operand(r, scope, right_min, out)?;
                }
            }
            Formula::Quantified(q, v, body) => {
                if !tail {
                    out.push('(');
                }
                let (ty, rest) = match self.guard(*q, *v, body) {
                    Some((p, rest)) => (Ty::Pred(p), rest),
                    None => (Ty::Sort(v.sort.index()), &**body),
                };
                let name = self.bound_name(*v, scope)?;
                let sym = match q {
                    Quantifier::Forall => "∀",
                    Quantifier::Exists => "∃",
                };
                write!(out, "{sym} {name} : {}, ", self.ty_names[&ty]).unwrap();
                scope.push((*v, name));
                self.formula(rest, scope, true, out)?;
                scope.pop();
                if !tail {
                    out.push(')');
                }
            }
        }
        Ok(())
    }

    /// Prints a subformula that is followed by more text, bracketing it
    /// unless it binds at least as tightly as `min`.
    fn operand(
        &self,
        f: &Formula,
        scope: &mut Vec<(Variable, String)>,
        min: u8,
        out: &mut String,
    ) -> Result<(), TranslateError> {
        let bare = match f {
            Formula::Atom(..) | Formula::Not(_) => true,
            Formula::Binary(c, ..) => lean_prec(*c) >= min && min > 0,
            Formula::Quantified(..) => false,
        };
        if bare {
            self.formula(f, scope, false, out)
        } else {
            out.push('(');
            self.formula(f, scope, true, out)?;
            out.push(')');
            Ok(())
        }
    }

    fn bound_name(&self, v: Variable, scope: &[(Variable, String)]) -> Result<String, TranslateError> {
        let base = self.dict.variable_name(v)?.to_string();
        let taken = |n: &str| {
            self.used.contains(n) || scope.iter().any(|(w, m)| m == n && *w != v)
        };
        if !taken(&base) {
            return Ok(base);
        }
        Ok((1..).map(|i| format!("{base}_{i}")).find(|n| !taken(n)).unwrap())
    }
}

fn lean_symbol(c: Connective) -> &'static str {
    match c {
        Connective::And => "∧",
        Connective::Or => "∨",
        Connective::Implies => "→",
        Connective::Iff => "↔",
    }
}

fn lean_prec(c: Connective) -> u8 {
    match c {
        Connective::Iff => 20,
        Connective::Implies => 25,
        Connective::Or => 30,
        Connective::And => 35,
    }
}

/// [`to_lean_skeleton_with`] under the default options.
pub fn to_lean_skeleton(
    premises: &[Formula],
    goal: Option<&Formula>,
    dict: &SymbolDictionary,
) -> Result<String, TranslateError> {
    to_lean_skeleton_with(premises, goal, dict, &LeanOptions::default())
}

/// Lean 3 statement proving `goal` from `premises`; `None` proves `false`.
pub fn to_lean_skeleton_with(
    premises: &[Formula],
    goal: Option<&Formula>,
    dict: &SymbolDictionary,
    opts: &LeanOptions,
) -> Result<String, TranslateError> {
    for f in premises.iter().chain(goal) {
        dict.check_formula(f)?;
        if let Some(v) = crate::fol::free_vars(f).into_iter().next() {
            return Err(TranslateError::FreeVariable(dict.variable_name(v)?.to_string()));
        }
    }
    let types = if opts.type_predicates { type_predicates(premises, goal, dict) } else { BTreeSet::new() };
    let mut e = Emitter {
        dict,
        types,
        const_ty: HashMap::new(),
        ty_order: vec![],
        const_order: vec![],
        pred_sig: BTreeMap::new(),
        pred_order: vec![],
        fun_sig: BTreeMap::new(),
        fun_order: vec![],
        used: HashSet::new(),
        ty_names: HashMap::new(),
        pred_names: HashMap::new(),
        fun_names: HashMap::new(),
        const_names: HashMap::new(),
    };
    let mut hyps = Vec::new();
    for f in premises {
        match e.typing(f) {
            Some((p, c)) => {
                e.const_ty.insert(c, Ty::Pred(p));
            }
            None => hyps.push(f),
        }
    }
    for f in premises {
        if let Some((p, c)) = e.typing(f) {
            e.see_ty(Ty::Pred(p));
            e.collect_term(&Term::Const(c), &[])?;
        }
    }
    for f in hyps.iter().copied().chain(goal) {
        e.collect(f, &mut Vec::new())?;
    }
    e.name_globals()?;
    let hyp_names: Vec<String> = if hyps.len() == 1 {
        vec![claim(&mut e.used, "h".to_string())]
    } else {
        (1..=hyps.len()).map(|i| claim(&mut e.used, format!("h{i}"))).collect()
    };

    let mut decls = Vec::new();
    for t in &e.ty_order {
        decls.push(format!("({} : Type)", e.ty_names[t]));
    }
    for f in &e.fun_order {
        let (args, result) = &e.fun_sig[f];
        decls.push(format!("({} : {})", e.fun_names[f], e.arrow(args, &e.ty_names[result])));
    }
    for p in &e.pred_order {
        decls.push(format!("({} : {})", e.pred_names[p], e.arrow(&e.pred_sig[p], "Prop")));
    }

    let mut out = String::new();
    if !decls.is_empty() {
        writeln!(out, "variables {}\n", decls.join(" ")).unwrap();
    }
    write!(out, "theorem {}", opts.theorem_name).unwrap();
    for c in &e.const_order {
        let ty = e.const_ty.get(c).copied().unwrap_or(Ty::Sort(c.sort.index()));
        write!(out, " ({} : {})", e.const_names[c], e.ty_names[&ty]).unwrap();
    }
    for (f, name) in hyps.iter().zip(&hyp_names) {
        write!(out, " ({name} : (").unwrap();
        e.formula(f, &mut Vec::new(), true, &mut out)?;
        out.push_str("))");
    }
    out.push_str(" : ");
    match goal {
        Some(g) => {
            out.push('(');
            e.formula(g, &mut Vec::new(), true, &mut out)?;
            out.push(')');
        }
        None => out.push_str("false"),
    }
    out.push_str(" :=\nbegin\n  sorry\nend\n");
    Ok(out)
}
