//! SVG pictures of tiling grids.
//!
//! Each cell becomes a square split into an `l × l` sub-grid with a filled
//! circle per dot. Pixel row 0 is drawn at the bottom of its square. The
//! isometric form puts one grid row on each visible face of a cube.

use std::fmt::Write as _;

use crate::num::CodeInt;
use crate::tiler::{Cell, TilingGrid};

use super::{Cube, RenderError};

pub const MIN_CELL_PX: u32 = 8;
pub const MAX_FACES: usize = 3;

const DOT_RATIO: f64 = 0.3;
const CUBE_PX: f64 = 40.0;
const STROKE: &str = "#222";
const GRID_STROKE: &str = "#999";

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn header(out: &mut String, w: f64, h: f64) {
    let (w, h) = (num(w), num(h));
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
}

/// Draws one cube as a `size`-wide square with its top-left corner at (x, y).
fn cube<C: CodeInt>(out: &mut String, cell: &Cell<C>, x: f64, y: f64, size: f64) -> Result<(), RenderError> {
    let c = Cube::from_cell(cell)?;
    match cell {
        Cell::Spacer => writeln!(out, r#"<g class="spacer">"#).unwrap(),
        Cell::Code(m) => writeln!(out, r#"<g class="cube" data-code="{m}">"#).unwrap(),
    }
    writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{s}" height="{s}" fill="none" stroke="{STROKE}"/>"#,
        num(x),
        num(y),
        s = num(size)
    )
    .unwrap();
    if let Cube::Pattern(p) = &c {
        let l = p.side();
        let step = size / l as f64;
        for i in 1..l {
            let d = i as f64 * step;
            writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{GRID_STROKE}"/>"#,
                num(x + d),
                num(y),
                num(x + d),
                num(y + size)
            )
            .unwrap();
            writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{GRID_STROKE}"/>"#,
                num(x),
                num(y + d),
                num(x + size),
                num(y + d)
            )
            .unwrap();
        }
        for (dx, dy) in p.dots() {
            let cx = x + (dx as f64 + 0.5) * step;
            let cy = y + size - (dy as f64 + 0.5) * step;
            writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{STROKE}"/>"#,
                num(cx),
                num(cy),
                num(DOT_RATIO * step)
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n");
    Ok(())
}

/// Flat drawing, one grid row per line of cubes.
pub fn to_svg_2d<C: CodeInt>(g: &TilingGrid<C>, cell_px: u32) -> Result<String, RenderError> {
    if cell_px < MIN_CELL_PX {
        return Err(RenderError::CellSize(cell_px));
    }
    let mut out = String::new();
    let width = g.width();
    if g.rows.is_empty() || width == 0 {
        header(&mut out, 0.0, 0.0);
        out.push_str("</svg>\n");
        return Ok(out);
    }
    let size = cell_px as f64;
    let gap = size / 4.0;
    let span = |n: usize| 2.0 * gap + n as f64 * size + (n - 1) as f64 * gap;
    header(&mut out, span(width), span(g.rows.len()));
    for (r, row) in g.rows.iter().enumerate() {
        writeln!(out, r#"<g class="row" data-row="{r}">"#).unwrap();
        let y = gap + r as f64 * (size + gap);
        for (i, cell) in row.iter().enumerate() {
            cube(&mut out, cell, gap + i as f64 * (size + gap), y, size)?;
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Isometric cube: row 0 on the front face, row 1 on top, row 2 on the right.
pub fn to_svg_3d<C: CodeInt>(g: &TilingGrid<C>) -> Result<String, RenderError> {
    if g.rows.is_empty() {
        return Err(RenderError::EmptyGrid);
    }
    if g.rows.len() > MAX_FACES {
        return Err(RenderError::TooManyRows(g.rows.len()));
    }
    let width = g.width().max(1);
    let edge = width as f64 * CUBE_PX;
    let half = edge / 2.0;
    let faces = [
        ("front", format!("translate(0 {})", num(half))),
        ("top", format!("matrix(1 0 -0.5 0.5 {} 0)", num(half))),
        ("right", format!("matrix(0.5 -0.5 0 1 {} {})", num(edge), num(half))),
    ];
    let mut out = String::new();
    header(&mut out, edge + half, edge + half);
    for (row, (name, transform)) in g.rows.iter().zip(faces.iter()) {
        writeln!(out, r#"<g class="face {name}" transform="{transform}">"#).unwrap();
        writeln!(
            out,
            r##"<rect x="0" y="0" width="{e}" height="{e}" fill="#f4f4f4" stroke="{STROKE}"/>"##,
            e = num(edge)
        )
        .unwrap();
        let y = (edge - CUBE_PX) / 2.0;
        for (i, cell) in row.iter().enumerate() {
            cube(&mut out, cell, i as f64 * CUBE_PX, y, CUBE_PX)?;
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq1() -> TilingGrid<u64> {
        TilingGrid::from_codes(&[vec![2, 32, 2, 96], vec![0, 10, 32, 4, 14, 96], vec![0, 6, 18, 32, 96]])
    }

    #[test]
    fn flat_structure() {
        let svg = to_svg_2d(&eq1(), 24).unwrap();
        assert_eq!(svg.matches(r#"class="row""#).count(), 3);
        let first = svg.split(r#"data-row="1""#).next().unwrap();
        assert_eq!(first.matches(r#"class="cube""#).count(), 4);
        assert_eq!(svg.matches(r#"class="spacer""#).count(), 2);
        assert_eq!(svg, to_svg_2d(&eq1(), 24).unwrap());
    }

    #[test]
    fn dots_rise_with_y() {
        // Code 1 is the single dot at (0, 0): bottom-left of the square.
        let svg = to_svg_2d(&TilingGrid::from_codes(&[vec![1u64]]), 40).unwrap();
        assert!(svg.contains(r#"<circle cx="20" cy="40" r="6""#), "{svg}");
    }

    #[test]
    fn flat_errors_and_empty() {
        assert_eq!(to_svg_2d(&eq1(), 7), Err(RenderError::CellSize(7)));
        let empty = to_svg_2d(&TilingGrid::<u64>::new(vec![]), 8).unwrap();
        assert!(empty.contains(r#"width="0" height="0""#));
        assert!(!empty.contains("<g"));
    }

    #[test]
    fn cube_faces() {
        let one = to_svg_3d(&TilingGrid::from_codes(&[vec![2u64]])).unwrap();
        assert_eq!(one.matches("class=\"face").count(), 1);
        assert!(one.contains("face front"));
        let three = to_svg_3d(&eq1()).unwrap();
        assert_eq!(three.matches("class=\"face").count(), 3);
        let four = TilingGrid::from_codes(&[vec![1u64], vec![1], vec![1], vec![1]]);
        assert_eq!(to_svg_3d(&four), Err(RenderError::TooManyRows(4)));
        assert_eq!(to_svg_3d(&TilingGrid::<u64>::new(vec![])), Err(RenderError::EmptyGrid));
    }
}
