//! Parenthesis-free two-dimensional layout of a formula.
//!
//! A formula becomes rows of cells; leading spacer cells encode nesting
//! depth. Layout of a formula `f` at depth `d`:
//!
//! * a *unit* (an atom under zero or more negations) and a *flat* formula
//!   (`∧`/`∨` between two units) occupy one row: `3… P args [c 3… P args]`;
//! * a quantifier prefix, possibly negated, occupies one row
//!   `3… q v q v …` and its body is laid out at `d + 1`;
//! * any other negation is a row holding just `3`, with the operand at `d + 1`;
//! * any other binary formula lays out its left operand at `d`, then a row
//!   at `d` starting with the connective code. A flat right operand follows
//!   inline on that row; otherwise the row holds only the connective and
//!   the right operand is laid out at `d + 1`.
//!
//! Terms are flattened inline, a function code followed by its arguments.
//! The layout is invertible: [`untile`] recovers the formula exactly.

use thiserror::Error;

use crate::dictionary::{DictionaryError, SymbolDictionary};
use crate::fol::{Connective, Constant, Formula, Quantifier, Term, Variable, Sort};
use crate::num::CodeInt;
use crate::numeration::{classify_code, code_for_index, Category, NumerationError, Terminal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cell<C = u64> {
    Spacer,
    Code(C),
}

impl<C> Cell<C> {
    pub fn is_spacer(&self) -> bool {
        matches!(self, Cell::Spacer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TilingGrid<C = u64> {
    pub rows: Vec<Vec<Cell<C>>>,
}

impl<C: CodeInt> TilingGrid<C> {
    pub fn new(rows: Vec<Vec<Cell<C>>>) -> Self {
        TilingGrid { rows }
    }

    /// Builds a grid from plain codes, reading 0 as a spacer.
    pub fn from_codes(rows: &[Vec<C>]) -> Self {
        TilingGrid {
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| if c.is_zero() { Cell::Spacer } else { Cell::Code(c.clone()) })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Codes with spacers as 0.
pub fn grid_codes<C: CodeInt>(g: &TilingGrid<C>) -> Vec<Vec<C>> {
    g.rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| match c {
                    Cell::Spacer => C::zero(),
                    Cell::Code(m) => m.clone(),
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("biconditionals have no code; expand them first")]
    Iff,
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error("row {row}: {message}")]
    Malformed { row: usize, message: String },
}

fn is_unit(f: &Formula) -> bool {
    match f {
        Formula::Atom(..) => true,
        Formula::Not(g) => is_unit(g),
        _ => false,
    }
}

fn is_flat(f: &Formula) -> bool {
    match f {
        Formula::Binary(Connective::And | Connective::Or, l, r) => is_unit(l) && is_unit(r),
        _ => is_unit(f),
    }
}

/// Number of negations in front of a quantifier, if `f` is `¬…¬ Q v body`.
fn negated_quantifier(f: &Formula) -> Option<usize> {
    match f {
        Formula::Quantified(..) => Some(0),
        Formula::Not(g) => negated_quantifier(g).map(|k| k + 1),
        _ => None,
    }
}

struct Layout<C> {
    rows: Vec<Vec<Cell<C>>>,
}

impl<C: CodeInt> Layout<C> {
    fn code(&self, cat: Category, ordinal: u32) -> Result<Cell<C>, TileError> {
        Ok(Cell::Code(code_for_index(cat, ordinal)?))
    }

    fn terminal(t: u32) -> Cell<C> {
        Cell::Code(C::from_u32(t).expect("terminal codes fit"))
    }

    fn term(&self, row: &mut Vec<Cell<C>>, t: &Term) -> Result<(), TileError> {
        match t {
            Term::Var(v) => row.push(self.code(Category::VariableName(v.sort.index()), v.index)?),
            Term::Const(c) => row.push(self.code(Category::Constant(c.sort.index()), c.index)?),
            Term::App(fi, args) => {
                row.push(self.code(Category::Function, *fi)?);
                for a in args {
                    self.term(row, a)?;
                }
            }
        }
        Ok(())
    }

    fn inline(&self, row: &mut Vec<Cell<C>>, f: &Formula) -> Result<(), TileError> {
        match f {
            Formula::Atom(p, args) => {
                row.push(self.code(Category::Predicate, *p)?);
                for a in args {
                    self.term(row, a)?;
                }
                Ok(())
            }
            Formula::Not(g) => {
                row.push(Self::terminal(Terminal::Not.code()));
                self.inline(row, g)
            }
            Formula::Binary(c, l, r) => {
                self.inline(row, l)?;
                row.push(Self::terminal(c.code().ok_or(TileError::Iff)?));
                self.inline(row, r)
            }
            Formula::Quantified(..) => unreachable!("quantifiers are never inline"),
        }
    }

    fn indent(depth: usize) -> Vec<Cell<C>> {
        vec![Cell::Spacer; depth]
    }

    fn block(&mut self, f: &Formula, depth: usize) -> Result<(), TileError> {
        if is_flat(f) {
            let mut row = Self::indent(depth);
            self.inline(&mut row, f)?;
            self.rows.push(row);
            return Ok(());
        }
        if let Some(negations) = negated_quantifier(f) {
            let mut row = Self::indent(depth);
            let mut g = f;
            for _ in 0..negations {
                row.push(Self::terminal(Terminal::Not.code()));
                if let Formula::Not(inner) = g {
                    g = inner;
                }
            }
            while let Formula::Quantified(q, v, body) = g {
                row.push(Self::terminal(q.code()));
                row.push(self.code(Category::VariableName(v.sort.index()), v.index)?);
                g = body;
            }
            self.rows.push(row);
            return self.block(g, depth + 1);
        }
        match f {
            Formula::Not(g) => {
                let mut row = Self::indent(depth);
                row.push(Self::terminal(Terminal::Not.code()));
                self.rows.push(row);
                self.block(g, depth + 1)
            }
            Formula::Binary(c, l, r) => {
                let code = c.code().ok_or(TileError::Iff)?;
                self.block(l, depth)?;
                let mut row = Self::indent(depth);
                row.push(Self::terminal(code));
                if is_flat(r) {
                    self.inline(&mut row, r)?;
                    self.rows.push(row);
                    Ok(())
                } else {
                    self.rows.push(row);
                    self.block(r, depth + 1)
                }
            }
            Formula::Atom(..) | Formula::Quantified(..) => unreachable!("handled above"),
        }
    }
}

/// Lays out an Iff-free formula whose symbols are all registered in `dict`.
pub fn tile<C: CodeInt>(f: &Formula, dict: &SymbolDictionary) -> Result<TilingGrid<C>, TileError> {
    if f.contains_iff() {
        return Err(TileError::Iff);
    }
    dict.check_formula(f)?;
    let mut layout = Layout { rows: Vec::new() };
    layout.block(f, 0)?;
    Ok(TilingGrid { rows: layout.rows })
}

struct Row<C> {
    depth: usize,
    codes: Vec<C>,
}

struct Reader<'a, C> {
    dict: &'a SymbolDictionary,
    rows: Vec<Row<C>>,
    pos: usize,
}

enum Token {
    Terminal(Terminal),
    Other(Category, u32),
}

impl<C: CodeInt> Reader<'_, C> {
    fn fail<T>(&self, row: usize, message: impl Into<String>) -> Result<T, TileError> {
        Err(TileError::Malformed { row, message: message.into() })
    }

    fn token(&self, row: usize, code: &C) -> Result<Token, TileError> {
        let (cat, ordinal) = classify_code(code)?;
        if let Category::Terminal(t) = cat {
            return Ok(Token::Terminal(t));
        }
        match ordinal.to_u32() {
            Some(o) => Ok(Token::Other(cat, o)),
            None => self.fail(row, format!("code {code} is out of range")),
        }
    }

    fn variable(&self, row: usize, code: &C) -> Result<Variable, TileError> {
        match self.token(row, code)? {
            Token::Other(Category::VariableName(s), o) if s >= 1 => {
                let v = Variable::new(Sort::new(s), o);
                self.dict.variable_name(v)?;
                Ok(v)
            }
            _ => self.fail(row, format!("code {code} is not a variable")),
        }
    }

    fn term(&self, row: usize, codes: &[C], at: &mut usize) -> Result<Term, TileError> {
        let Some(code) = codes.get(*at) else {
            return self.fail(row, "missing argument");
        };
        *at += 1;
        match self.token(row, code)? {
            Token::Other(Category::VariableName(s), o) => {
                let v = Variable::new(Sort::new(s), o);
                self.dict.variable_name(v)?;
                Ok(Term::Var(v))
            }
            Token::Other(Category::Constant(s), o) => {
                let c = Constant::new(Sort::new(s), o);
                self.dict.constant_name(c)?;
                Ok(Term::Const(c))
            }
            Token::Other(Category::Function, o) => {
                let arity = self.dict.function_entry(o)?.1.arity;
                let args = (0..arity)
                    .map(|_| self.term(row, codes, at))
                    .collect::<Result<_, _>>()?;
                Ok(Term::App(o, args))
            }
            _ => self.fail(row, format!("code {code} is not a term")),
        }
    }

    fn unit(&self, row: usize, codes: &[C], at: &mut usize) -> Result<Formula, TileError> {
        let Some(code) = codes.get(*at) else {
            return self.fail(row, "dangling connective");
        };
        *at += 1;
        match self.token(row, code)? {
            Token::Terminal(Terminal::Not) => Ok(Formula::not(self.unit(row, codes, at)?)),
            Token::Other(Category::Predicate, p) => {
                let arity = self.dict.predicate_entry(p)?.1;
                let args = (0..arity)
                    .map(|_| self.term(row, codes, at))
                    .collect::<Result<_, _>>()?;
                Ok(Formula::Atom(p, args))
            }
            Token::Terminal(_) => self.fail(row, format!("unexpected connective {code}")),
            _ => self.fail(row, format!("code {code} cannot start a formula")),
        }
    }

    fn inline(&self, row: usize, codes: &[C]) -> Result<Formula, TileError> {
        let mut at = 0;
        let left = self.unit(row, codes, &mut at)?;
        if at == codes.len() {
            return Ok(left);
        }
        let c = match self.token(row, &codes[at])? {
            Token::Terminal(Terminal::And) => Connective::And,
            Token::Terminal(Terminal::Or) => Connective::Or,
            _ => return self.fail(row, format!("unexpected code {}", codes[at])),
        };
        at += 1;
        let right = self.unit(row, codes, &mut at)?;
        if at != codes.len() {
            return self.fail(row, format!("unexpected code {}", codes[at]));
        }
        Ok(Formula::binary(c, left, right))
    }

    fn connective_row(&self, index: usize, depth: usize) -> Option<Connective> {
        let row = self.rows.get(index)?;
        if row.depth != depth {
            return None;
        }
        match row.codes[0].to_u32()? {
            4 => Some(Connective::And),
            5 => Some(Connective::Or),
            6 => Some(Connective::Implies),
            _ => None,
        }
    }

    fn block(&mut self, depth: usize) -> Result<Formula, TileError> {
        let index = self.pos;
        let Some(row) = self.rows.get(index) else {
            return self.fail(index, "missing operand");
        };
        if row.depth != depth {
            return self.fail(index, format!("expected indentation {depth}, found {}", row.depth));
        }
        if self.connective_row(index, depth).is_some() {
            return self.fail(index, "dangling connective");
        }
        let codes = row.codes.clone();
        self.pos += 1;
        let negations = codes.iter().take_while(|c| c.to_u32() == Some(3)).count();
        let mut head = if codes.len() == 1 && negations == 1 {
            Formula::not(self.block(depth + 1)?)
        } else if matches!(codes.get(negations).and_then(|c| c.to_u32()), Some(1 | 2)) {
            let prefix = &codes[negations..];
            if prefix.len() % 2 != 0 {
                return self.fail(index, "quantifier without variable");
            }
            let mut binders = Vec::new();
            for pair in prefix.chunks(2) {
                let q = match pair[0].to_u32() {
                    Some(1) => Quantifier::Exists,
                    Some(2) => Quantifier::Forall,
                    _ => return self.fail(index, format!("expected a quantifier, found {}", pair[0])),
                };
                binders.push((q, self.variable(index, &pair[1])?));
            }
            let mut f = self.block(depth + 1)?;
            for (q, v) in binders.into_iter().rev() {
                f = Formula::Quantified(q, v, Box::new(f));
            }
            (0..negations).fold(f, |g, _| Formula::not(g))
        } else {
            self.inline(index, &codes)?
        };
        while let Some(c) = self.connective_row(self.pos, depth) {
            let index = self.pos;
            let rest = self.rows[index].codes[1..].to_vec();
            self.pos += 1;
            let right = if rest.is_empty() {
                self.block(depth + 1)?
            } else {
                self.inline(index, &rest)?
            };
            head = Formula::binary(c, head, right);
        }
        Ok(head)
    }
}

/// Recovers the formula laid out by [`tile`].
pub fn untile<C: CodeInt>(g: &TilingGrid<C>, dict: &SymbolDictionary) -> Result<Formula, TileError> {
    let mut rows = Vec::with_capacity(g.rows.len());
    for (i, r) in g.rows.iter().enumerate() {
        let depth = r.iter().take_while(|c| c.is_spacer()).count();
        let mut codes = Vec::with_capacity(r.len() - depth);
        for c in &r[depth..] {
            match c {
                Cell::Spacer => {
                    return Err(TileError::Malformed { row: i, message: "spacer after a code".into() })
                }
                Cell::Code(m) if m.is_zero() => {
                    return Err(TileError::Malformed { row: i, message: "code 0 is not used".into() })
                }
                Cell::Code(m) => codes.push(m.clone()),
            }
        }
        if codes.is_empty() {
            return Err(TileError::Malformed { row: i, message: "row has no codes".into() });
        }
        rows.push(Row { depth, codes });
    }
    if rows.is_empty() {
        return Err(TileError::Malformed { row: 0, message: "empty grid".into() });
    }
    let mut reader = Reader { dict, rows, pos: 0 };
    let f = reader.block(0)?;
    if reader.pos != reader.rows.len() {
        return Err(TileError::Malformed { row: reader.pos, message: "unexpected row".into() });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_proto;

    fn grid(text: &str, d: &mut SymbolDictionary) -> (Formula, TilingGrid) {
        let f = parse_proto(text, d).unwrap();
        let g = tile(&f, d).unwrap();
        (f, g)
    }

    #[test]
    fn mice_hate_cats_grid() {
        let mut d = SymbolDictionary::new();
        let (f, g) = grid("forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))", &mut d);
        assert_eq!(
            grid_codes(&g),
            vec![vec![2, 32, 2, 96], vec![0, 10, 32, 4, 14, 96], vec![0, 6, 18, 32, 96]]
        );
        assert_eq!(untile(&g, &d).unwrap(), f);
    }

    #[test]
    fn single_atom_and_negation() {
        let mut d = SymbolDictionary::new();
        parse_proto("forall Animal.x Mouse(x)", &mut d).unwrap();
        let opts = crate::fol::ParseOptions { allow_free: true, ..Default::default() };
        let atom = crate::fol::parse_proto_with("Mouse(x)", &mut d, &opts).unwrap();
        let g: TilingGrid = tile(&atom, &d).unwrap();
        assert_eq!(grid_codes(&g), vec![vec![10, 32]]);
        let neg = Formula::not(atom);
        let g: TilingGrid = tile(&neg, &d).unwrap();
        assert_eq!(grid_codes(&g), vec![vec![3, 10, 32]]);
        assert_eq!(untile(&g, &d).unwrap(), neg);
    }

    #[test]
    fn grid_codes_edge_cases() {
        assert!(grid_codes::<u64>(&TilingGrid::default()).is_empty());
        let g = TilingGrid::<u64>::new(vec![vec![Cell::Spacer]]);
        assert_eq!(grid_codes(&g), vec![vec![0]]);
    }

    #[test]
    fn bare_connective_rejected() {
        let d = SymbolDictionary::new();
        let g = TilingGrid::<u64>::from_codes(&[vec![4]]);
        assert!(matches!(untile(&g, &d), Err(TileError::Malformed { .. })));
    }

    #[test]
    fn iff_rejected() {
        let mut d = SymbolDictionary::new();
        let f = parse_proto("A <-> B", &mut d).unwrap();
        assert_eq!(tile::<u64>(&f, &d), Err(TileError::Iff));
    }

    #[test]
    fn nested_layouts_round_trip() {
        let mut d = SymbolDictionary::new();
        for text in [
            "(A & B) | (C & D)",
            "~(A & B)",
            "~~forall x P(x)",
            "A -> (B -> C)",
            "(A -> B) -> C",
            "forall x P(x) & exists y (Q(y) | ~R(y, y))",
            "A & (forall x P(x) | B)",
            "~A & B -> ~(C | ~D)",
            "~~(A -> B)",
            "P(f(a, g(b)))",
        ] {
            let (f, g) = grid(text, &mut d);
            assert_eq!(untile(&g, &d).unwrap(), f, "{text}");
        }
    }

    #[test]
    fn malformed_grids() {
        let mut d = SymbolDictionary::new();
        grid("forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))", &mut d);
        for rows in [
            vec![vec![2u64, 32]],
            vec![vec![10, 32], vec![0, 0, 14, 96]],
            vec![vec![10, 32, 4]],
            vec![vec![10, 32, 6, 14, 96]],
            vec![vec![18, 32]],
            vec![vec![10, 34]],
        ] {
            let g = TilingGrid::from_codes(&rows);
            assert!(untile(&g, &d).is_err(), "{rows:?}");
        }
    }
}
