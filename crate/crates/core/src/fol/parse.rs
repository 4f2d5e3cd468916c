//! Recursive-descent parser for the ASCII proto notation.
//!
//! ```text
//! formula  := iff
//! iff      := imp ( "<->" imp )*
//! imp      := or ( "->" imp )?
//! or       := and ( "|" and )*
//! and      := unary ( "&" unary )*
//! unary    := "~" unary | ("forall" | "exists") binder unary | "(" formula ")" | atom
//! binder   := Sort "." name | name
//! atom     := Pred ( "(" term ( "," term )* ")" )?
//! term     := name | Sort "." name | Fn "(" term ( "," term )* ")"
//! ```
//!
//! The Unicode connectives `∀ ∃ ¬ ∧ ∨ ⊃ → ≡ ↔` are accepted as synonyms.
//!
//! A bare name in term position resolves, in order, to the innermost bound
//! variable of that name, a registered constant, or a registered variable
//! (which is then free). `Sort.name` in term position always denotes a
//! constant of that sort.

use thiserror::Error;

use super::{Constant, Formula, Quantifier, Sort, Term, Variable};
use crate::dictionary::{DictionaryError, SymbolDictionary};

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Register unseen names instead of rejecting them.
    pub auto_register: bool,
    /// Allow registered variables to occur unbound.
    pub allow_free: bool,
    /// Sort for unsorted binders and bare new constants.
    pub default_sort: String,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            auto_register: true,
            allow_free: false,
            default_sort: "Entity".to_string(),
        }
    }
}

impl ParseOptions {
    pub fn strict() -> Self {
        ParseOptions { auto_register: false, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("unknown {category} `{name}`")]
    Unknown { category: &'static str, name: String },
    #[error("variable `{0}` is not bound by a quantifier")]
    Unbound(String),
    #[error("`{0}` is ambiguous; qualify it as Sort.{0}")]
    Ambiguous(String),
    #[error("`{name}` has arity {expected} but is used with {found} arguments")]
    Arity { name: String, expected: usize, found: usize },
    #[error("`{0}` is a reserved word")]
    Reserved(String),
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Dot,
    Comma,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '~' | '¬' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '⊃' | '→' => Some(Tok::Implies),
            '≡' | '↔' => Some(Tok::Iff),
            '∀' => Some(Tok::Forall),
            '∃' => Some(Tok::Exists),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            out.push((t, pos));
            continue;
        }
        let rest = &text[pos..];
        if rest.starts_with("<->") {
            out.push((Tok::Iff, pos));
            chars.nth(2);
            continue;
        }
        if rest.starts_with("->") {
            out.push((Tok::Implies, pos));
            chars.nth(1);
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(p, ch)) = chars.peek() {
                if ch.is_alphanumeric() || ch == '_' || ch == '\'' {
                    end = p + ch.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let word = &text[pos..end];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, pos));
            continue;
        }
        return Err(ParseError {
            kind: ParseErrorKind::Syntax {
                expected: "a formula".into(),
                found: format!("`{c}`"),
            },
            position: pos,
        });
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Parses with [`ParseOptions::default`]: auto-registration on, free
/// variables rejected.
pub fn parse_proto(text: &str, dict: &mut SymbolDictionary) -> Result<Formula, ParseError> {
    parse_proto_with(text, dict, &ParseOptions::default())
}

/// Parses `text`, registering new names in `dict` in first-occurrence order.
/// On error `dict` is left untouched.
pub fn parse_proto_with(
    text: &str,
    dict: &mut SymbolDictionary,
    opts: &ParseOptions,
) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut work = dict.clone();
    let mut p = Parser { tokens, pos: 0, dict: &mut work, opts, scope: Vec::new() };
    let f = p.formula()?;
    p.expect(Tok::End, "end of input")?;
    *dict = work;
    Ok(f)
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    dict: &'a mut SymbolDictionary,
    opts: &'a ParseOptions,
    scope: Vec<(String, Variable)>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, position: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, position }
    }

    fn syntax(&self, expected: &str) -> ParseError {
        self.err_at(
            self.offset(),
            ParseErrorKind::Syntax { expected: expected.into(), found: self.peek().describe() },
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, at))
            }
            Tok::Forall | Tok::Exists => {
                let word = if *self.peek() == Tok::Forall { "forall" } else { "exists" };
                Err(self.err_at(at, ParseErrorKind::Reserved(word.into())))
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let q = if self.bump() == Tok::Forall { Quantifier::Forall } else { Quantifier::Exists };
                let (name, var) = self.binder()?;
                self.scope.push((name, var));
                let body = self.unary();
                self.scope.pop();
                Ok(Formula::Quantified(q, var, Box::new(body?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) => self.atom(),
            _ => Err(self.syntax("a formula")),
        }
    }

    fn sort_named(&mut self, name: &str, at: usize) -> Result<Sort, ParseError> {
        if let Some(s) = self.dict.sort(name) {
            return Ok(s);
        }
        if !self.opts.auto_register {
            return Err(self.err_at(at, ParseErrorKind::Unknown { category: "sort", name: name.into() }));
        }
        self.dict.add_sort(name).map_err(|e| self.err_at(at, e.into()))
    }

    fn binder(&mut self) -> Result<(String, Variable), ParseError> {
        let (first, at) = self.ident("a variable")?;
        let (sort, name, name_at) = if *self.peek() == Tok::Dot {
            self.bump();
            let (name, name_at) = self.ident("a variable name")?;
            (self.sort_named(&first, at)?, name, name_at)
        } else {
            let known = self.dict.variables_named(&first);
            let sort = match known.as_slice() {
                [v] => v.sort,
                [] => {
                    let default = self.opts.default_sort.clone();
                    self.sort_named(&default, at)?
                }
                _ => return Err(self.err_at(at, ParseErrorKind::Ambiguous(first))),
            };
            (sort, first, at)
        };
        let var = match self.dict.variable(sort, &name) {
            Some(v) => v,
            None if self.opts.auto_register => self
                .dict
                .add_variable(sort, &name)
                .map_err(|e| self.err_at(name_at, e.into()))?,
            None => {
                return Err(self.err_at(
                    name_at,
                    ParseErrorKind::Unknown { category: "variable", name },
                ))
            }
        };
        Ok((name, var))
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if *self.peek() != Tok::LParen {
            return Ok(args);
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                _ => return Err(self.syntax("`,` or `)`")),
            }
        }
        Ok(args)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (name, at) = self.ident("a predicate")?;
        let args = self.arguments()?;
        let index = match self.dict.predicate(&name) {
            Some((i, arity)) if arity == args.len() => i,
            Some((_, arity)) => {
                return Err(self.err_at(
                    at,
                    ParseErrorKind::Arity { name, expected: arity, found: args.len() },
                ))
            }
            None if self.opts.auto_register => self
                .dict
                .add_predicate(&name, args.len())
                .map_err(|e| self.err_at(at, e.into()))?,
            None => {
                return Err(self.err_at(at, ParseErrorKind::Unknown { category: "predicate", name }))
            }
        };
        Ok(Formula::Atom(index, args))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, at) = self.ident("a term")?;
        match self.peek() {
            Tok::LParen => {
                let args = self.arguments()?;
                let index = match self.dict.function(&name) {
                    Some((i, info)) if info.arity == args.len() => i,
                    Some((_, info)) => {
                        let expected = info.arity;
                        return Err(self.err_at(
                            at,
                            ParseErrorKind::Arity { name, expected, found: args.len() },
                        ));
                    }
                    None if self.opts.auto_register => self
                        .dict
                        .add_function(&name, args.len())
                        .map_err(|e| self.err_at(at, e.into()))?,
                    None => {
                        return Err(
                            self.err_at(at, ParseErrorKind::Unknown { category: "function", name })
                        )
                    }
                };
                Ok(Term::App(index, args))
            }
            Tok::Dot if matches!(self.peek2(), Tok::Ident(_)) => {
                self.bump();
                let (cname, cat) = self.ident("a constant name")?;
                let sort = self.sort_named(&name, at)?;
                self.constant(sort, cname, cat).map(Term::Const)
            }
            _ => self.bare_name(name, at),
        }
    }

    fn constant(&mut self, sort: Sort, name: String, at: usize) -> Result<Constant, ParseError> {
        match self.dict.constant(sort, &name) {
            Some(c) => Ok(c),
            None if self.opts.auto_register => {
                self.dict.add_constant(sort, &name).map_err(|e| self.err_at(at, e.into()))
            }
            None => Err(self.err_at(at, ParseErrorKind::Unknown { category: "constant", name })),
        }
    }

    fn bare_name(&mut self, name: String, at: usize) -> Result<Term, ParseError> {
        if let Some((_, v)) = self.scope.iter().rev().find(|(n, _)| *n == name) {
            return Ok(Term::Var(*v));
        }
        match self.dict.constants_named(&name).as_slice() {
            [c] => return Ok(Term::Const(*c)),
            [] => {}
            _ => return Err(self.err_at(at, ParseErrorKind::Ambiguous(name))),
        }
        match self.dict.variables_named(&name).as_slice() {
            [] => {}
            [v] if self.opts.allow_free => return Ok(Term::Var(*v)),
            [_] => return Err(self.err_at(at, ParseErrorKind::Unbound(name))),
            _ if self.opts.allow_free => return Err(self.err_at(at, ParseErrorKind::Ambiguous(name))),
            _ => return Err(self.err_at(at, ParseErrorKind::Unbound(name))),
        }
        if !self.opts.auto_register {
            return Err(self.err_at(at, ParseErrorKind::Unknown { category: "constant", name }));
        }
        let default = self.opts.default_sort.clone();
        let sort = self.sort_named(&default, at)?;
        self.constant(sort, name, at).map(Term::Const)
    }
}
