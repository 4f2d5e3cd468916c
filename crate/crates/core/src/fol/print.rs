//! Printers for the name-based, numeric and tally notations.
//!
//! All three share one precedence scheme (`~`, quantifiers > `&` > `|` >
//! `->` > `<->`, with `->` right-associative) and parenthesize only where the
//! parser needs it. In the numeric and tally notations atoms are themselves
//! wrapped as `(P.i(args))`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Connective, Constant, Formula, Quantifier, Term, Variable};
use crate::dictionary::{DictionaryError, SymbolDictionary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrintError {
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
    #[error("variable `{0}` is shadowed by a binder of another sort and cannot be printed by name")]
    Shadowed(String),
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Binary(Connective::Iff, ..) => 1,
        Formula::Binary(Connective::Implies, ..) => 2,
        Formula::Binary(Connective::Or, ..) => 3,
        Formula::Binary(Connective::And, ..) => 4,
        _ => 5,
    }
}

trait Style {
    fn atom(&mut self, out: &mut String, pred: u32, args: &[Term]) -> Result<(), PrintError>;
    fn not(&self) -> &'static str;
    fn connective(&self, c: Connective) -> String;
    fn enter(&mut self, out: &mut String, q: Quantifier, v: Variable) -> Result<(), PrintError>;
    fn leave(&mut self) {}
}

fn render<S: Style>(style: &mut S, out: &mut String, f: &Formula) -> Result<(), PrintError> {
    match f {
        Formula::Atom(p, args) => style.atom(out, *p, args),
        Formula::Not(g) => {
            out.push_str(style.not());
            render_at(style, out, g, 5)
        }
        Formula::Quantified(q, v, body) => {
            style.enter(out, *q, *v)?;
            let r = render_at(style, out, body, 5);
            style.leave();
            r
        }
        Formula::Binary(c, l, r) => {
            let p = precedence(f);
            let (lp, rp) = if *c == Connective::Implies { (p + 1, p) } else { (p, p + 1) };
            render_at(style, out, l, lp)?;
            out.push_str(&style.connective(*c));
            render_at(style, out, r, rp)
        }
    }
}

fn render_at<S: Style>(style: &mut S, out: &mut String, f: &Formula, min: u8) -> Result<(), PrintError> {
    if precedence(f) < min {
        out.push('(');
        render(style, out, f)?;
        out.push(')');
        Ok(())
    } else {
        render(style, out, f)
    }
}

struct Proto<'a> {
    dict: &'a SymbolDictionary,
    scope: Vec<(&'a str, Variable)>,
}

impl<'a> Proto<'a> {
    fn term(&self, out: &mut String, t: &Term) -> Result<(), PrintError> {
        match t {
            Term::Var(v) => {
                let name = self.dict.variable_name(*v)?;
                match self.scope.iter().rev().find(|(n, _)| *n == name) {
                    Some((_, w)) if w != v => return Err(PrintError::Shadowed(name.into())),
                    _ => out.push_str(name),
                }
            }
            Term::Const(c) => self.constant(out, *c)?,
            Term::App(fi, args) => {
                out.push_str(self.dict.function_entry(*fi)?.0);
                self.args(out, args)?;
            }
        }
        Ok(())
    }

    fn constant(&self, out: &mut String, c: Constant) -> Result<(), PrintError> {
        let name = self.dict.constant_name(c)?;
        let bare = self.dict.constants_named(name).len() == 1
            && !self.scope.iter().any(|(n, _)| *n == name);
        if !bare {
            out.push_str(self.dict.sort_name(c.sort)?);
            out.push('.');
        }
        out.push_str(name);
        Ok(())
    }

    fn args(&self, out: &mut String, args: &[Term]) -> Result<(), PrintError> {
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.term(out, a)?;
        }
        out.push(')');
        Ok(())
    }
}

impl<'a> Style for Proto<'a> {
    fn atom(&mut self, out: &mut String, pred: u32, args: &[Term]) -> Result<(), PrintError> {
        out.push_str(self.dict.predicate_entry(pred)?.0);
        if !args.is_empty() {
            self.args(out, args)?;
        }
        Ok(())
    }

    fn not(&self) -> &'static str {
        "~"
    }

    fn connective(&self, c: Connective) -> String {
        format!(" {} ", c.ascii())
    }

    fn enter(&mut self, out: &mut String, q: Quantifier, v: Variable) -> Result<(), PrintError> {
        let name = self.dict.variable_name(v)?;
        write!(out, "{q} {}.{name} ", self.dict.sort_name(v.sort)?).unwrap();
        self.scope.push((name, v));
        Ok(())
    }

    fn leave(&mut self) {
        self.scope.pop();
    }
}

/// Name-based notation; re-parses to the same formula.
pub fn print_proto(f: &Formula, dict: &SymbolDictionary) -> Result<String, PrintError> {
    let mut out = String::new();
    render(&mut Proto { dict, scope: Vec::new() }, &mut out, f)?;
    Ok(out)
}

struct Indexed {
    tally: bool,
    ascii: bool,
}

impl Indexed {
    fn index(&self, i: u32) -> String {
        if self.tally {
            "|".repeat(i as usize)
        } else {
            i.to_string()
        }
    }

    fn term(&self, out: &mut String, t: &Term) {
        match t {
            Term::Var(v) => {
                write!(out, "{}.{}", self.index(v.sort.index()), self.index(v.index)).unwrap()
            }
            Term::Const(c) => {
                write!(out, "(C.{}.{})", self.index(c.sort.index()), self.index(c.index)).unwrap()
            }
            Term::App(fi, args) => {
                write!(out, "(F.{}", self.index(*fi)).unwrap();
                self.params(out, args);
                out.push(')');
            }
        }
    }

    fn params(&self, out: &mut String, args: &[Term]) {
        if args.is_empty() {
            return;
        }
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.term(out, a);
        }
        out.push(')');
    }
}

impl Style for Indexed {
    fn atom(&mut self, out: &mut String, pred: u32, args: &[Term]) -> Result<(), PrintError> {
        write!(out, "(P.{}", self.index(pred)).unwrap();
        self.params(out, args);
        out.push(')');
        Ok(())
    }

    fn not(&self) -> &'static str {
        if self.ascii {
            "~"
        } else {
            "¬"
        }
    }

    fn connective(&self, c: Connective) -> String {
        if !self.ascii {
            return c.unicode().to_string();
        }
        match c {
            Connective::And => "&",
            Connective::Or => "v",
            Connective::Implies => "->",
            Connective::Iff => "<->",
        }
        .to_string()
    }

    fn enter(&mut self, out: &mut String, q: Quantifier, v: Variable) -> Result<(), PrintError> {
        let sym = match (q, self.ascii) {
            (Quantifier::Forall, false) => "∀",
            (Quantifier::Exists, false) => "∃",
            (Quantifier::Forall, true) => "A",
            (Quantifier::Exists, true) => "E",
        };
        write!(out, "{sym}({}.{})", self.index(v.sort.index()), self.index(v.index)).unwrap();
        Ok(())
    }
}

fn indexed(f: &Formula, tally: bool, ascii: bool) -> String {
    let mut out = String::new();
    render(&mut Indexed { tally, ascii }, &mut out, f).expect("indexed printing needs no dictionary");
    out
}

/// Per-category index notation, e.g. `∀(1.1)∀(1.2)((P.1(1.1))∧(P.2(1.2))⊃(P.3(1.1,1.2)))`.
pub fn print_numeric(f: &Formula) -> String {
    indexed(f, false, false)
}

/// [`print_numeric`] with ASCII connectives: `A E ~ & v -> <->`.
pub fn print_numeric_ascii(f: &Formula) -> String {
    indexed(f, false, true)
}

/// Tally notation: every index `i` becomes `i` strokes.
pub fn print_sticks(f: &Formula) -> String {
    indexed(f, true, false)
}

pub fn print_sticks_ascii(f: &Formula) -> String {
    indexed(f, true, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{parse_proto, Sort};

    const MICE: &str = "forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))";

    fn mice() -> (Formula, SymbolDictionary) {
        let mut d = SymbolDictionary::new();
        let f = parse_proto(MICE, &mut d).unwrap();
        (f, d)
    }

    #[test]
    fn proto_round_trip_text() {
        let (f, d) = mice();
        assert_eq!(print_proto(&f, &d).unwrap(), MICE);
    }

    #[test]
    fn numeric_notation() {
        let (f, _) = mice();
        assert_eq!(print_numeric(&f), "∀(1.1)∀(1.2)((P.1(1.1))∧(P.2(1.2))⊃(P.3(1.1,1.2)))");
        let c = Constant::new(Sort::new(1), 1);
        assert_eq!(print_numeric(&Formula::atom(1, vec![c.into()])), "(P.1((C.1.1)))");
        let v = Variable::new(Sort::new(1), 1);
        assert_eq!(print_numeric(&Formula::not(Formula::atom(1, vec![v.into()]))), "¬(P.1(1.1))");
    }

    #[test]
    fn stick_notation() {
        let (f, _) = mice();
        assert_eq!(
            print_sticks(&f),
            "∀(|.|)∀(|.||)((P.|(|.|))∧(P.||(|.||))⊃(P.|||(|.|,|.||)))"
        );
    }

    #[test]
    fn ascii_fallback() {
        let (f, _) = mice();
        assert_eq!(print_numeric_ascii(&f), "A(1.1)A(1.2)((P.1(1.1))&(P.2(1.2))->(P.3(1.1,1.2)))");
    }

    #[test]
    fn simple_atom() {
        let mut d = SymbolDictionary::new();
        let f = parse_proto("Man(socrates)", &mut d).unwrap();
        assert_eq!(print_proto(&f, &d).unwrap(), "Man(socrates)");
    }

    #[test]
    fn constant_shadowed_by_variable_is_qualified() {
        let mut d = SymbolDictionary::new();
        let f = parse_proto("forall Thing.x P(Thing.x, x)", &mut d).unwrap();
        let text = print_proto(&f, &d).unwrap();
        assert_eq!(text, "forall Thing.x P(Thing.x,x)");
        assert_eq!(parse_proto(&text, &mut d).unwrap(), f);
    }

    #[test]
    fn unregistered_index() {
        let d = SymbolDictionary::new();
        assert!(print_proto(&Formula::atom(1, vec![]), &d).is_err());
    }
}
