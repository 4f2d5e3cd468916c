//! Text and picture forms of tiling grids.

mod prelpara;
mod svg;

use thiserror::Error;

use crate::smnist::SmnistError;

pub use prelpara::{
    cubes_to_cells, parse_prelpara, parse_prelpara_3d, to_prelpara_2d, to_prelpara_3d, Cube,
};
pub use svg::{to_svg_2d, to_svg_3d, MAX_FACES, MIN_CELL_PX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("a row needs at least one cube")]
    EmptyRow,
    #[error("the grid has no rows")]
    EmptyGrid,
    #[error("cubes per row must be at least 1")]
    Width,
    #[error("cell size must be at least {MIN_CELL_PX} px, got {0}")]
    CellSize(u32),
    #[error("a cube has {MAX_FACES} faces, the grid has {0} rows")]
    TooManyRows(usize),
    #[error("string ended while reading the {0}")]
    Truncated(String),
    #[error("field {field} is not a number: {text:?}")]
    Syntax { field: usize, text: String },
    #[error("declared {declared} but found {found} cubes")]
    CountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Smnist(#[from] SmnistError),
}
