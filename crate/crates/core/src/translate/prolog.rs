use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::dictionary::SymbolDictionary;
use crate::fol::{Connective, Constant, Formula, Quantifier, Term, Variable};

use super::TranslateError;

/// Prolog atom names for every predicate, function and constant of a
/// dictionary. Distinct symbols always get distinct atoms.
#[derive(Clone, Debug)]
pub struct PrologNames {
    predicates: Vec<String>,
    functions: Vec<String>,
    constants: BTreeMap<Constant, String>,
    /// `(original, atom)` pairs that needed a numeric suffix.
    renamed: Vec<(String, String)>,
}

fn atom_base(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => c.to_lowercase().chain(chars).collect(),
        _ => format!("a_{name}"),
    }
}

fn var_base(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => c.to_uppercase().chain(chars).collect(),
        _ => format!("V{name}"),
    }
}

fn claim(used: &mut HashSet<String>, base: String) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    (2..)
        .map(|n| format!("{base}{n}"))
        .find(|c| used.insert(c.clone()))
        .unwrap()
}

impl PrologNames {
    pub fn new(dict: &SymbolDictionary) -> Result<PrologNames, TranslateError> {
        let mut used = HashSet::new();
        let mut renamed = Vec::new();
        let mut take = |name: &str| {
            let base = atom_base(name);
            let got = claim(&mut used, base.clone());
            if got != base {
                renamed.push((name.to_string(), got.clone()));
            }
            got
        };
        let mut predicates = Vec::new();
        for i in 1..=dict.predicate_count() as u32 {
            predicates.push(take(dict.predicate_entry(i)?.0));
        }
        let mut functions = Vec::new();
        for i in 1..=dict.function_count() as u32 {
            functions.push(take(dict.function_entry(i)?.0));
        }
        let mut constants = BTreeMap::new();
        for s in dict.sort_indices() {
            for c in dict.constants_of(s) {
                constants.insert(c, take(dict.constant_name(c)?));
            }
        }
        Ok(PrologNames { predicates, functions, constants, renamed })
    }

    pub fn predicate(&self, index: u32) -> &str {
        &self.predicates[index as usize - 1]
    }

    pub fn function(&self, index: u32) -> &str {
        &self.functions[index as usize - 1]
    }

    pub fn constant(&self, c: Constant) -> &str {
        &self.constants[&c]
    }

    pub fn renamed(&self) -> &[(String, String)] {
        &self.renamed
    }
}

struct Clause<'f> {
    head: &'f Formula,
    body: Vec<&'f Formula>,
}

fn connective_name(f: &Formula) -> &'static str {
    match f {
        Formula::Atom(..) => "atom",
        Formula::Not(_) => "negation",
        Formula::Binary(Connective::And, ..) => "conjunction",
        Formula::Binary(Connective::Or, ..) => "disjunction",
        Formula::Binary(Connective::Implies, ..) => "implication",
        Formula::Binary(Connective::Iff, ..) => "equivalence",
        Formula::Quantified(Quantifier::Forall, ..) => "nested universal quantifier",
        Formula::Quantified(Quantifier::Exists, ..) => "existential quantifier",
    }
}

fn conjuncts<'f>(f: &'f Formula, out: &mut Vec<&'f Formula>, sentence: usize) -> Result<(), TranslateError> {
    match f {
        Formula::Atom(..) => out.push(f),
        Formula::Binary(Connective::And, l, r) => {
            conjuncts(l, out, sentence)?;
            conjuncts(r, out, sentence)?;
        }
        Formula::Quantified(Quantifier::Exists, ..) => return Err(TranslateError::Existential { sentence }),
        other => return Err(TranslateError::NotHorn { sentence, connective: connective_name(other) }),
    }
    Ok(())
}

fn horn(f: &Formula, sentence: usize) -> Result<Clause<'_>, TranslateError> {
    let mut f = f;
    while let Formula::Quantified(q, _, body) = f {
        if *q == Quantifier::Exists {
            return Err(TranslateError::Existential { sentence });
        }
        f = body;
    }
    match f {
        Formula::Atom(..) => Ok(Clause { head: f, body: vec![] }),
        Formula::Binary(Connective::Implies, l, r) => {
            let mut body = Vec::new();
            conjuncts(l, &mut body, sentence)?;
            match &**r {
                Formula::Atom(..) => Ok(Clause { head: r, body }),
                Formula::Quantified(Quantifier::Exists, ..) => Err(TranslateError::Existential { sentence }),
                other => Err(TranslateError::NotHorn { sentence, connective: connective_name(other) }),
            }
        }
        other => Err(TranslateError::NotHorn { sentence, connective: connective_name(other) }),
    }
}

struct ClauseWriter<'a> {
    names: &'a PrologNames,
    dict: &'a SymbolDictionary,
    vars: BTreeMap<Variable, String>,
    used: HashSet<String>,
}

impl ClauseWriter<'_> {
    fn var(&mut self, v: Variable) -> Result<String, TranslateError> {
        if let Some(n) = self.vars.get(&v) {
            return Ok(n.clone());
        }
        let n = claim(&mut self.used, var_base(self.dict.variable_name(v)?));
        self.vars.insert(v, n.clone());
        Ok(n)
    }

    fn term(&mut self, t: &Term, out: &mut String) -> Result<(), TranslateError> {
        match t {
            Term::Var(v) => out.push_str(&self.var(*v)?),
            Term::Const(c) => out.push_str(self.names.constant(*c)),
            Term::App(f, args) => {
                out.push_str(self.names.function(*f));
                self.args(args, out)?;
            }
        }
        Ok(())
    }

    fn args(&mut self, args: &[Term], out: &mut String) -> Result<(), TranslateError> {
        if args.is_empty() {
            return Ok(());
        }
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.term(a, out)?;
        }
        out.push(')');
        Ok(())
    }

    fn atom(&mut self, f: &Formula, out: &mut String) -> Result<(), TranslateError> {
        let Formula::Atom(p, args) = f else { unreachable!("clauses hold atoms only") };
        out.push_str(self.names.predicate(*p));
        self.args(args, out)
    }
}

/// One Prolog clause per sentence.
///
/// A comment header lists symbols whose atom needed a numeric suffix.
pub fn to_prolog(sentences: &[Formula], dict: &SymbolDictionary) -> Result<String, TranslateError> {
    for f in sentences {
        dict.check_formula(f)?;
    }
    let names = PrologNames::new(dict)?;
    let clauses = sentences
        .iter()
        .enumerate()
        .map(|(i, f)| horn(f, i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = String::new();
    for (from, to) in names.renamed() {
        writeln!(out, "% {from} -> {to}").unwrap();
    }
    for c in clauses {
        let mut w = ClauseWriter { names: &names, dict, vars: BTreeMap::new(), used: HashSet::new() };
        w.atom(c.head, &mut out)?;
        for (i, b) in c.body.iter().enumerate() {
            out.push_str(if i == 0 { " :- " } else { ", " });
            w.atom(b, &mut out)?;
        }
        out.push_str(".\n");
    }
    Ok(out)
}
