mod common;

use common::reference::{CUBE3, CUBE6, MICE, ROWS};
use para_core::dictionary::SymbolDictionary;
use para_core::fol::parse_proto;
use para_core::render::{
    cubes_to_cells, parse_prelpara, parse_prelpara_3d, to_prelpara_2d, to_prelpara_3d, to_svg_2d,
    to_svg_3d, Cube,
};
use para_core::tiler::{grid_codes, tile, Cell, TilingGrid};

fn mice_grid() -> TilingGrid<u64> {
    let mut d = SymbolDictionary::new();
    let f = parse_proto(MICE, &mut d).unwrap();
    tile(&f, &d).unwrap()
}

/// Rewrites a string with every cube's dots in canonical order.
fn normalize_2d(s: &str) -> String {
    let cells = cubes_to_cells::<u64>(&parse_prelpara(s).unwrap()).unwrap();
    to_prelpara_2d(&cells).unwrap()
}

#[test]
fn figure_rows_match() {
    let g = mice_grid();
    for (row, want) in g.rows.iter().zip(ROWS) {
        let ours = to_prelpara_2d(row).unwrap();
        assert_eq!(parse_prelpara(&ours).unwrap(), parse_prelpara(want).unwrap());
        assert_eq!(ours, normalize_2d(want));
        assert_eq!(ours.split(':').count(), want.split(':').count());
    }
}

#[test]
fn figure_cubes_match() {
    let g = mice_grid();
    for (width, want) in [(3, CUBE3), (6, CUBE6)] {
        let ours = to_prelpara_3d(&g, Some(width)).unwrap();
        let a = parse_prelpara_3d(&ours).unwrap();
        let b = parse_prelpara_3d(want).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|r| r.len() == width));
        assert_eq!(ours.split(':').count(), want.split(':').count());
    }
}

#[test]
fn row_two_decodes_to_codes() {
    let cubes = parse_prelpara(ROWS[1]).unwrap();
    let cells = cubes_to_cells::<u64>(&cubes).unwrap();
    let codes: Vec<u64> = cells
        .iter()
        .map(|c| match c {
            Cell::Spacer => 0,
            Cell::Code(m) => *m,
        })
        .collect();
    assert_eq!(codes, vec![0, 10, 32, 4, 14, 96]);
}

#[test]
fn default_width_pads_to_widest_row() {
    let g = mice_grid();
    let ours = to_prelpara_3d(&g, None).unwrap();
    assert_eq!(ours, to_prelpara_3d(&g, Some(6)).unwrap());
    assert_eq!(parse_prelpara_3d(&ours).unwrap(), parse_prelpara_3d(CUBE6).unwrap());
    let rows = parse_prelpara_3d(CUBE6).unwrap();
    assert_eq!(rows[0][4], Cube::Spacer);
}

#[test]
fn rows_round_trip_through_strings() {
    let g = mice_grid();
    let back: Vec<Vec<Cell<u64>>> = g
        .rows
        .iter()
        .map(|r| cubes_to_cells(&parse_prelpara(&to_prelpara_2d(r).unwrap()).unwrap()).unwrap())
        .collect();
    assert_eq!(grid_codes(&TilingGrid::new(back)), grid_codes(&g));
}

#[test]
fn svg_is_well_formed_and_stable() {
    let g = mice_grid();
    let flat = to_svg_2d(&g, 16).unwrap();
    roxmltree::Document::parse(&flat).unwrap();
    assert_eq!(flat, to_svg_2d(&g, 16).unwrap());
    let cut = TilingGrid::new(g.rows.iter().map(|r| r[..3].to_vec()).collect());
    let cube = to_svg_3d(&cut).unwrap();
    let doc = roxmltree::Document::parse(&cube).unwrap();
    let faces = doc
        .descendants()
        .filter(|n| n.attribute("class").is_some_and(|c| c.starts_with("face")))
        .count();
    assert_eq!(faces, 3);
}
