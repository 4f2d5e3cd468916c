//! Colon-separated hypercube strings.
//!
//! A row is written `count:cube:cube…` where `count` is the number of cubes
//! and each cube is `side:k:x1:y1:…:xk:yk`. A spacer is the dotless unit
//! cube `1:0`. The three-dimensional form lists the rows of a grid one after
//! the other with a uniform width and leads with the number of rows instead.

use std::fmt::Write as _;

use crate::num::CodeInt;
use crate::smnist::{code_of_pattern, pattern_of, SmnistPattern};
use crate::tiler::{Cell, TilingGrid};

use super::RenderError;

/// One decoded cube: a spacer or an SMNIST pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cube {
    Spacer,
    Pattern(SmnistPattern),
}

impl Cube {
    pub fn side(&self) -> u32 {
        match self {
            Cube::Spacer => 1,
            Cube::Pattern(p) => p.side(),
        }
    }

    pub fn from_cell<C: CodeInt>(cell: &Cell<C>) -> Result<Cube, RenderError> {
        match cell {
            Cell::Spacer => Ok(Cube::Spacer),
            Cell::Code(m) => Ok(Cube::Pattern(pattern_of(m)?)),
        }
    }

    pub fn to_cell<C: CodeInt>(&self) -> Result<Cell<C>, RenderError> {
        match self {
            Cube::Spacer => Ok(Cell::Spacer),
            Cube::Pattern(p) => Ok(Cell::Code(code_of_pattern(p)?)),
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            Cube::Spacer => out.push_str("1:0"),
            Cube::Pattern(p) => {
                write!(out, "{}:{}", p.side(), p.len()).unwrap();
                for (x, y) in p.dots() {
                    write!(out, ":{x}:{y}").unwrap();
                }
            }
        }
    }
}

fn cubes_to_string(lead: usize, cubes: &[Cube]) -> String {
    let mut out = lead.to_string();
    for c in cubes {
        out.push(':');
        c.write(&mut out);
    }
    out
}

/// Two-dimensional string for one grid row.
pub fn to_prelpara_2d<C: CodeInt>(row: &[Cell<C>]) -> Result<String, RenderError> {
    if row.is_empty() {
        return Err(RenderError::EmptyRow);
    }
    let cubes = row.iter().map(Cube::from_cell).collect::<Result<Vec<_>, _>>()?;
    Ok(cubes_to_string(cubes.len(), &cubes))
}

/// Three-dimensional string for a whole grid.
///
/// Every row is cut or padded with spacers to `cubes_per_row`, or to the
/// widest row when no width is given.
pub fn to_prelpara_3d<C: CodeInt>(
    g: &TilingGrid<C>,
    cubes_per_row: Option<usize>,
) -> Result<String, RenderError> {
    if cubes_per_row == Some(0) {
        return Err(RenderError::Width);
    }
    if g.rows.is_empty() {
        return Err(RenderError::EmptyGrid);
    }
    let width = cubes_per_row.unwrap_or_else(|| g.width());
    let mut cubes = Vec::with_capacity(width * g.rows.len());
    for row in &g.rows {
        for i in 0..width {
            cubes.push(match row.get(i) {
                Some(cell) => Cube::from_cell(cell)?,
                None => Cube::Spacer,
            });
        }
    }
    Ok(cubes_to_string(g.rows.len(), &cubes))
}

struct Numbers<'a> {
    parts: std::iter::Enumerate<std::str::Split<'a, char>>,
}

impl Numbers<'_> {
    fn next(&mut self, what: &str) -> Result<u32, RenderError> {
        match self.parts.next() {
            None => Err(RenderError::Truncated(what.to_string())),
            Some((i, s)) => s
                .trim()
                .parse()
                .map_err(|_| RenderError::Syntax { field: i, text: s.to_string() }),
        }
    }

    fn is_done(&mut self) -> bool {
        self.parts.clone().next().is_none()
    }
}

fn read_cubes(s: &str) -> Result<(usize, Vec<Cube>), RenderError> {
    let mut nums = Numbers { parts: s.split(':').enumerate() };
    let lead = nums.next("leading count")? as usize;
    let mut cubes = Vec::new();
    while !nums.is_done() {
        let side = nums.next("cube size")?;
        let k = nums.next("dot count")?;
        if side == 1 && k == 0 {
            cubes.push(Cube::Spacer);
            continue;
        }
        let mut dots = Vec::with_capacity(k as usize);
        for _ in 0..k {
            let x = nums.next("x coordinate")?;
            let y = nums.next("y coordinate")?;
            dots.push((x, y));
        }
        cubes.push(Cube::Pattern(SmnistPattern::new(side, dots)?));
    }
    Ok((lead, cubes))
}

/// Parses a two-dimensional string; the leading count must match.
pub fn parse_prelpara(s: &str) -> Result<Vec<Cube>, RenderError> {
    let (count, cubes) = read_cubes(s)?;
    if count != cubes.len() {
        return Err(RenderError::CountMismatch { declared: count, found: cubes.len() });
    }
    Ok(cubes)
}

/// Parses a three-dimensional string into rows of equal width.
pub fn parse_prelpara_3d(s: &str) -> Result<Vec<Vec<Cube>>, RenderError> {
    let (rows, cubes) = read_cubes(s)?;
    if rows == 0 || cubes.is_empty() || cubes.len() % rows != 0 {
        return Err(RenderError::CountMismatch { declared: rows, found: cubes.len() });
    }
    let width = cubes.len() / rows;
    Ok(cubes.chunks(width).map(<[Cube]>::to_vec).collect())
}

/// Converts decoded cubes back to grid cells.
pub fn cubes_to_cells<C: CodeInt>(cubes: &[Cube]) -> Result<Vec<Cell<C>>, RenderError> {
    cubes.iter().map(Cube::to_cell).collect()
}
