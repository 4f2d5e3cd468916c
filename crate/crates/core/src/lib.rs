//! Sorted first-order sentences and their numeric, tiled, dot-pattern and
//! hypercube forms, with translation to Prolog and Lean and a small
//! resolution prover.
//!
//! Everything that handles codes is generic over [`num::CodeInt`]. The
//! aliases below fix the usual choices: machine words for everyday use and
//! big integers when codes outgrow them.

pub mod corpus;
pub mod dictionary;
pub mod fol;
pub mod num;
pub mod numeration;
pub mod reason;
pub mod render;
pub mod smnist;
pub mod tiler;
pub mod translate;

pub use corpus::{Corpus, CorpusError, Sentence};
pub use dictionary::{align_translate, DictionaryError, SymbolDictionary};
pub use fol::{parse_proto, print_numeric, print_proto, print_sticks, Formula, Term};
pub use numeration::{classify_code, code_for, Category};
pub use smnist::{code_of_pattern, pattern_of, SmnistPattern};
pub use tiler::{grid_codes, tile, untile, Cell, TilingGrid};

/// Code type for everyday use.
pub type Code = u64;
/// Code type without an upper bound.
pub type BigCode = num_bigint::BigUint;
pub type Grid = TilingGrid<Code>;
pub type BigGrid = TilingGrid<BigCode>;
