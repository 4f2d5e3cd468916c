//! Symbol tables and their numeric codes.
//!
//! Each category keeps an ordered name list; a symbol's ordinal is its
//! 1-based position and its code follows from [`code_for`]. Constants and
//! variables are kept per sort. Predicate and function arities are fixed by
//! the first registration.

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fol::{Constant, Formula, Sort, Term, Variable};
use crate::numeration::{code_for_index, Category, NumerationError};

pub const DICTIONARY_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DictionaryError {
    #[error("{category} `{name}` is already registered")]
    Duplicate { category: String, name: String },
    #[error("arity is only meaningful for predicates and functions")]
    UnexpectedArity,
    #[error("{category} `{name}` needs an arity")]
    MissingArity { category: String, name: String },
    #[error("unknown sort {0}")]
    UnknownSort(String),
    #[error("{0} cannot be registered by name")]
    NotRegistrable(String),
    #[error("unknown {category} `{name}`")]
    Missing { category: String, name: String },
    #[error("`{name}` has arity {expected} but is used with {found} arguments")]
    ArityConflict {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("unregistered {category} index {index}")]
    UnknownIndex { category: &'static str, index: u32 },
    #[error("unsupported dictionary format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("malformed dictionary document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionInfo {
    pub arity: usize,
    /// Result sort. User functions have none; Skolem functions inherit the
    /// sort of the existential they replace.
    pub sort: Option<Sort>,
}

#[derive(Clone, Debug, Default)]
pub struct SymbolDictionary {
    sorts: IndexSet<String>,
    predicates: IndexMap<String, usize>,
    functions: IndexMap<String, FunctionInfo>,
    constants: Vec<IndexSet<String>>,
    variables: Vec<IndexSet<String>>,
}

// IndexSet/IndexMap equality ignores order; ordinals depend on it.
impl PartialEq for SymbolDictionary {
    fn eq(&self, other: &Self) -> bool {
        fn same<'a, I: Iterator<Item = &'a String> + ExactSizeIterator>(a: I, b: I) -> bool {
            a.len() == b.len() && a.zip(b).all(|(x, y)| x == y)
        }
        same(self.sorts.iter(), other.sorts.iter())
            && self.predicates.len() == other.predicates.len()
            && self.predicates.iter().zip(&other.predicates).all(|(a, b)| a == b)
            && self.functions.len() == other.functions.len()
            && self.functions.iter().zip(&other.functions).all(|(a, b)| a == b)
            && self.constants.len() == other.constants.len()
            && self.constants.iter().zip(&other.constants).all(|(a, b)| same(a.iter(), b.iter()))
            && self.variables.len() == other.variables.len()
            && self.variables.iter().zip(&other.variables).all(|(a, b)| same(a.iter(), b.iter()))
    }
}

impl Eq for SymbolDictionary {}

fn ordinal(i: usize) -> u32 {
    u32::try_from(i + 1).expect("fewer than 2^32 symbols per category")
}

impl SymbolDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.sorts.is_empty() && self.predicates.is_empty() && self.functions.is_empty()
    }

    /// Registers `name` in `cat` and returns its numeric code.
    pub fn register(
        &mut self,
        cat: Category,
        name: &str,
        arity: Option<usize>,
    ) -> Result<u64, DictionaryError> {
        let ord = self.register_ordinal(cat, name, arity)?;
        Ok(code_for_index(cat, ord)?)
    }

    /// Registers `name` in `cat` and returns its ordinal.
    pub fn register_ordinal(
        &mut self,
        cat: Category,
        name: &str,
        arity: Option<usize>,
    ) -> Result<u32, DictionaryError> {
        let dup = || DictionaryError::Duplicate {
            category: cat.to_string(),
            name: name.to_string(),
        };
        let needs_arity = matches!(cat, Category::Predicate | Category::Function);
        if arity.is_some() && !needs_arity {
            return Err(DictionaryError::UnexpectedArity);
        }
        if needs_arity && arity.is_none() {
            return Err(DictionaryError::MissingArity {
                category: cat.to_string(),
                name: name.to_string(),
            });
        }
        match cat {
            Category::Sort => {
                if !self.sorts.insert(name.to_string()) {
                    return Err(dup());
                }
                self.constants.push(IndexSet::new());
                self.variables.push(IndexSet::new());
                Ok(ordinal(self.sorts.len() - 1))
            }
            Category::Predicate => {
                if self.predicates.contains_key(name) {
                    return Err(dup());
                }
                self.predicates.insert(name.to_string(), arity.unwrap());
                Ok(ordinal(self.predicates.len() - 1))
            }
            Category::Function => {
                self.register_function(name, arity.unwrap(), None)
            }
            Category::Constant(n) | Category::VariableName(n) => {
                let slot = n as usize;
                if slot == 0 || slot > self.sorts.len() {
                    return Err(DictionaryError::UnknownSort(n.to_string()));
                }
                let table = match cat {
                    Category::Constant(_) => &mut self.constants[slot - 1],
                    _ => &mut self.variables[slot - 1],
                };
                if !table.insert(name.to_string()) {
                    return Err(dup());
                }
                Ok(ordinal(table.len() - 1))
            }
            Category::Terminal(_) | Category::SentenceText => {
                Err(DictionaryError::NotRegistrable(cat.to_string()))
            }
        }
    }

    pub fn register_function(
        &mut self,
        name: &str,
        arity: usize,
        sort: Option<Sort>,
    ) -> Result<u32, DictionaryError> {
        if self.functions.contains_key(name) {
            return Err(DictionaryError::Duplicate {
                category: Category::Function.to_string(),
                name: name.to_string(),
            });
        }
        if let Some(s) = sort {
            self.sort_name(s)?;
        }
        self.functions.insert(name.to_string(), FunctionInfo { arity, sort });
        Ok(ordinal(self.functions.len() - 1))
    }

    pub fn add_sort(&mut self, name: &str) -> Result<Sort, DictionaryError> {
        self.register_ordinal(Category::Sort, name, None).map(Sort::new)
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<u32, DictionaryError> {
        self.register_ordinal(Category::Predicate, name, Some(arity))
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<u32, DictionaryError> {
        self.register_ordinal(Category::Function, name, Some(arity))
    }

    pub fn add_constant(&mut self, sort: Sort, name: &str) -> Result<Constant, DictionaryError> {
        self.register_ordinal(Category::Constant(sort.index()), name, None)
            .map(|i| Constant::new(sort, i))
    }

    pub fn add_variable(&mut self, sort: Sort, name: &str) -> Result<Variable, DictionaryError> {
        self.register_ordinal(Category::VariableName(sort.index()), name, None)
            .map(|i| Variable::new(sort, i))
    }

    // Lookups by name.

    pub fn sort(&self, name: &str) -> Option<Sort> {
        self.sorts.get_index_of(name).map(|i| Sort::new(ordinal(i)))
    }

    pub fn predicate(&self, name: &str) -> Option<(u32, usize)> {
        self.predicates
            .get_full(name)
            .map(|(i, _, &arity)| (ordinal(i), arity))
    }

    pub fn function(&self, name: &str) -> Option<(u32, &FunctionInfo)> {
        self.functions
            .get_full(name)
            .map(|(i, _, info)| (ordinal(i), info))
    }

    pub fn constant(&self, sort: Sort, name: &str) -> Option<Constant> {
        self.constants
            .get(sort.index() as usize - 1)?
            .get_index_of(name)
            .map(|i| Constant::new(sort, ordinal(i)))
    }

    pub fn variable(&self, sort: Sort, name: &str) -> Option<Variable> {
        self.variables
            .get(sort.index() as usize - 1)?
            .get_index_of(name)
            .map(|i| Variable::new(sort, ordinal(i)))
    }

    /// All constants called `name`, in sort order.
    pub fn constants_named(&self, name: &str) -> Vec<Constant> {
        self.sort_indices()
            .filter_map(|s| self.constant(s, name))
            .collect()
    }

    /// All variables called `name`, in sort order.
    pub fn variables_named(&self, name: &str) -> Vec<Variable> {
        self.sort_indices()
            .filter_map(|s| self.variable(s, name))
            .collect()
    }

    // Lookups by index.

    pub fn sort_name(&self, s: Sort) -> Result<&str, DictionaryError> {
        self.sorts
            .get_index(s.index() as usize - 1)
            .map(String::as_str)
            .ok_or(DictionaryError::UnknownIndex { category: "sort", index: s.index() })
    }

    pub fn predicate_entry(&self, index: u32) -> Result<(&str, usize), DictionaryError> {
        index
            .checked_sub(1)
            .and_then(|i| self.predicates.get_index(i as usize))
            .map(|(n, &a)| (n.as_str(), a))
            .ok_or(DictionaryError::UnknownIndex { category: "predicate", index })
    }

    pub fn function_entry(&self, index: u32) -> Result<(&str, &FunctionInfo), DictionaryError> {
        index
            .checked_sub(1)
            .and_then(|i| self.functions.get_index(i as usize))
            .map(|(n, info)| (n.as_str(), info))
            .ok_or(DictionaryError::UnknownIndex { category: "function", index })
    }

    pub fn constant_name(&self, c: Constant) -> Result<&str, DictionaryError> {
        self.constants
            .get(c.sort.index() as usize - 1)
            .and_then(|t| t.get_index(c.index as usize - 1))
            .map(String::as_str)
            .ok_or(DictionaryError::UnknownIndex { category: "constant", index: c.index })
    }

    pub fn variable_name(&self, v: Variable) -> Result<&str, DictionaryError> {
        self.variables
            .get(v.sort.index() as usize - 1)
            .and_then(|t| t.get_index(v.index as usize - 1))
            .map(String::as_str)
            .ok_or(DictionaryError::UnknownIndex { category: "variable", index: v.index })
    }

    pub fn sort_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn sort_indices(&self) -> impl Iterator<Item = Sort> {
        (1..=self.sorts.len() as u32).map(Sort::new)
    }

    pub fn predicate_count(&self) -> usize {
        self.predicates.len()
    }

    pub fn function_count(&self) -> usize {
        self.functions.len()
    }

    pub fn constants_of(&self, sort: Sort) -> impl Iterator<Item = Constant> + '_ {
        let n = self
            .constants
            .get(sort.index() as usize - 1)
            .map_or(0, |t| t.len());
        (1..=n as u32).map(move |i| Constant::new(sort, i))
    }

    pub fn variable_count(&self, sort: Sort) -> usize {
        self.variables
            .get(sort.index() as usize - 1)
            .map_or(0, |t| t.len())
    }

    /// True when `name` is used by any category.
    pub fn name_in_use(&self, name: &str) -> bool {
        self.sorts.contains(name)
            || self.predicates.contains_key(name)
            || self.functions.contains_key(name)
            || self.constants.iter().any(|t| t.contains(name))
            || self.variables.iter().any(|t| t.contains(name))
    }

    /// First of `prefix1`, `prefix2`, … that no category uses yet.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|i| format!("{prefix}{i}"))
            .find(|n| !self.name_in_use(n))
            .expect("unbounded")
    }

    /// Checks that every index used by `f` is registered with the right arity.
    pub fn check_formula(&self, f: &Formula) -> Result<(), DictionaryError> {
        match f {
            Formula::Atom(p, args) => {
                let (name, arity) = self.predicate_entry(*p)?;
                if arity != args.len() {
                    return Err(DictionaryError::ArityConflict {
                        name: name.to_string(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|t| self.check_term(t))
            }
            Formula::Not(g) => self.check_formula(g),
            Formula::Binary(_, l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
            Formula::Quantified(_, v, b) => {
                self.variable_name(*v)?;
                self.check_formula(b)
            }
        }
    }

    pub fn check_term(&self, t: &Term) -> Result<(), DictionaryError> {
        match t {
            Term::Var(v) => self.variable_name(*v).map(|_| ()),
            Term::Const(c) => self.constant_name(*c).map(|_| ()),
            Term::App(fi, args) => {
                let (name, info) = self.function_entry(*fi)?;
                if info.arity != args.len() {
                    return Err(DictionaryError::ArityConflict {
                        name: name.to_string(),
                        expected: info.arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Result sort of a term, when it has one.
    pub fn term_sort(&self, t: &Term) -> Option<Sort> {
        match t {
            Term::Var(v) => Some(v.sort),
            Term::Const(c) => Some(c.sort),
            Term::App(fi, _) => self.function_entry(*fi).ok().and_then(|(_, i)| i.sort),
        }
    }

    pub fn export(&self) -> DictionaryDocument {
        let named = |tables: &[IndexSet<String>]| -> Vec<SortedName> {
            tables
                .iter()
                .zip(&self.sorts)
                .flat_map(|(t, s)| {
                    t.iter().map(move |n| SortedName { name: n.clone(), sort: s.clone() })
                })
                .collect()
        };
        DictionaryDocument {
            version: DICTIONARY_FORMAT_VERSION,
            sorts: self.sorts.iter().cloned().collect(),
            predicates: self
                .predicates
                .iter()
                .map(|(n, &arity)| PredicateDoc { name: n.clone(), arity })
                .collect(),
            functions: self
                .functions
                .iter()
                .map(|(n, info)| FunctionDoc {
                    name: n.clone(),
                    arity: info.arity,
                    sort: info.sort.map(|s| self.sorts[s.index() as usize - 1].clone()),
                })
                .collect(),
            constants: named(&self.constants),
            variables: named(&self.variables),
        }
    }

    pub fn import(doc: &DictionaryDocument) -> Result<SymbolDictionary, DictionaryError> {
        if doc.version != DICTIONARY_FORMAT_VERSION {
            return Err(DictionaryError::Version {
                found: doc.version,
                expected: DICTIONARY_FORMAT_VERSION,
            });
        }
        let mut d = SymbolDictionary::new();
        for s in &doc.sorts {
            d.add_sort(s)?;
        }
        for p in &doc.predicates {
            d.add_predicate(&p.name, p.arity)?;
        }
        for f in &doc.functions {
            let sort = match &f.sort {
                Some(s) => Some(d.sort(s).ok_or_else(|| DictionaryError::UnknownSort(s.clone()))?),
                None => None,
            };
            d.register_function(&f.name, f.arity, sort)?;
        }
        for c in &doc.constants {
            let s = d.sort(&c.sort).ok_or_else(|| DictionaryError::UnknownSort(c.sort.clone()))?;
            d.add_constant(s, &c.name)?;
        }
        for v in &doc.variables {
            let s = d.sort(&v.sort).ok_or_else(|| DictionaryError::UnknownSort(v.sort.clone()))?;
            d.add_variable(s, &v.name)?;
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("dictionary documents serialize")
    }

    pub fn from_json(text: &str) -> Result<SymbolDictionary, DictionaryError> {
        let doc: DictionaryDocument =
            serde_json::from_str(text).map_err(|e| DictionaryError::Malformed(e.to_string()))?;
        SymbolDictionary::import(&doc)
    }
}

/// Interchange form of a dictionary. Array order is ordinal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionaryDocument {
    pub version: u32,
    #[serde(default)]
    pub sorts: Vec<String>,
    #[serde(default)]
    pub predicates: Vec<PredicateDoc>,
    #[serde(default)]
    pub functions: Vec<FunctionDoc>,
    #[serde(default)]
    pub constants: Vec<SortedName>,
    #[serde(default)]
    pub variables: Vec<SortedName>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateDoc {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub name: String,
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sort: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SortedName {
    pub name: String,
    pub sort: String,
}

/// Re-indexes `f` from `from` into `to` by symbol name.
///
/// With `auto_register`, names missing from `to` are appended to it in
/// first-occurrence order.
pub fn align_translate(
    f: &Formula,
    from: &SymbolDictionary,
    to: &mut SymbolDictionary,
    auto_register: bool,
) -> Result<Formula, DictionaryError> {
    let mut a = Aligner { from, to, auto_register };
    a.formula(f)
}

struct Aligner<'a> {
    from: &'a SymbolDictionary,
    to: &'a mut SymbolDictionary,
    auto_register: bool,
}

impl Aligner<'_> {
    fn missing(category: &str, name: &str) -> DictionaryError {
        DictionaryError::Missing { category: category.to_string(), name: name.to_string() }
    }

    fn sort(&mut self, s: Sort) -> Result<Sort, DictionaryError> {
        let name = self.from.sort_name(s)?;
        match self.to.sort(name) {
            Some(t) => Ok(t),
            None if self.auto_register => self.to.add_sort(name),
            None => Err(Self::missing("sort", name)),
        }
    }

    fn variable(&mut self, v: Variable) -> Result<Variable, DictionaryError> {
        let name = self.from.variable_name(v)?;
        let sort = self.sort(v.sort)?;
        match self.to.variable(sort, name) {
            Some(w) => Ok(w),
            None if self.auto_register => self.to.add_variable(sort, name),
            None => Err(Self::missing("variable", name)),
        }
    }

    fn constant(&mut self, c: Constant) -> Result<Constant, DictionaryError> {
        let name = self.from.constant_name(c)?;
        let sort = self.sort(c.sort)?;
        match self.to.constant(sort, name) {
            Some(d) => Ok(d),
            None if self.auto_register => self.to.add_constant(sort, name),
            None => Err(Self::missing("constant", name)),
        }
    }

    fn term(&mut self, t: &Term) -> Result<Term, DictionaryError> {
        Ok(match t {
            Term::Var(v) => Term::Var(self.variable(*v)?),
            Term::Const(c) => Term::Const(self.constant(*c)?),
            Term::App(fi, args) => {
                let (name, info) = self.from.function_entry(*fi)?;
                let index = match self.to.function(name) {
                    Some((i, existing)) => {
                        if existing.arity != info.arity {
                            return Err(DictionaryError::ArityConflict {
                                name: name.to_string(),
                                expected: existing.arity,
                                found: info.arity,
                            });
                        }
                        i
                    }
                    None if self.auto_register => {
                        let (name, arity, sort) = (name.to_string(), info.arity, info.sort);
                        let sort = sort.map(|s| self.sort(s)).transpose()?;
                        self.to.register_function(&name, arity, sort)?
                    }
                    None => return Err(Self::missing("function", name)),
                };
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Term::App(index, args)
            }
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<Formula, DictionaryError> {
        Ok(match f {
            Formula::Atom(p, args) => {
                let (name, arity) = self.from.predicate_entry(*p)?;
                let index = match self.to.predicate(name) {
                    Some((i, a)) if a == arity => i,
                    Some((_, a)) => {
                        return Err(DictionaryError::ArityConflict {
                            name: name.to_string(),
                            expected: a,
                            found: arity,
                        })
                    }
                    None if self.auto_register => {
                        let name = name.to_string();
                        self.to.add_predicate(&name, arity)?
                    }
                    None => return Err(Self::missing("predicate", name)),
                };
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Formula::Atom(index, args)
            }
            Formula::Not(g) => Formula::not(self.formula(g)?),
            Formula::Binary(c, l, r) => Formula::binary(*c, self.formula(l)?, self.formula(r)?),
            Formula::Quantified(q, v, b) => {
                let v = self.variable(*v)?;
                Formula::Quantified(*q, v, Box::new(self.formula(b)?))
            }
        })
    }
}
