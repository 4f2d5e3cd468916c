//! Operations shared by the HTTP handlers and the CLI.

use serde::{Deserialize, Serialize};

use para_core::corpus::{Corpus, CorpusDocument, SentenceDoc};
use para_core::dictionary::{DictionaryDocument, SymbolDictionary};
use para_core::fol::{expand_iff, parse_proto, print_numeric, print_proto, print_sticks, Formula};
use para_core::reason::{prove, refute, Bounds, ProofResult};
use para_core::render::{to_prelpara_2d, to_prelpara_3d, to_svg_2d, to_svg_3d};
use para_core::translate::{to_lean_skeleton, to_prolog};
use para_core::{grid_codes, tile, untile, Code, Grid};

use crate::error::ServiceError;

pub const DEFAULT_CELL_PX: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Prelpara2d,
    Prelpara3d,
    Svg2d,
    Svg3d,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Prolog,
    Lean,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSummary {
    pub text_code: u64,
    pub source_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceView {
    pub text_code: u64,
    pub source_text: String,
    pub numeric: String,
    pub sticks: String,
    pub grid_codes: Vec<Vec<Code>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofView {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clauses: Option<usize>,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignView {
    pub dictionary: DictionaryDocument,
    pub sentences: Vec<SentenceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UntileView {
    pub proto_text: String,
    pub numeric: String,
    pub sticks: String,
}

pub fn list(corpus: &Corpus) -> Vec<SentenceSummary> {
    corpus
        .sentences()
        .iter()
        .map(|s| SentenceSummary { text_code: s.code, source_text: s.source_text.clone() })
        .collect()
}

/// Biconditionals have no tile of their own, so they are expanded first.
pub fn grid_of(f: &Formula, dict: &SymbolDictionary) -> Result<Grid, ServiceError> {
    Ok(tile(&expand_iff(f), dict)?)
}

pub fn show(corpus: &Corpus, code: u64) -> Result<SentenceView, ServiceError> {
    let s = corpus.get(code).ok_or(para_core::CorpusError::UnknownCode(code))?;
    let grid = grid_of(&s.formula, corpus.dictionary())?;
    Ok(SentenceView {
        text_code: s.code,
        source_text: s.source_text.clone(),
        numeric: print_numeric(&s.formula),
        sticks: print_sticks(&s.formula),
        grid_codes: grid_codes(&grid),
    })
}

/// Parses against a copy of the corpus dictionary; new symbols are not kept.
pub fn parse_transient(text: &str, corpus: &Corpus) -> Result<(Formula, SymbolDictionary), ServiceError> {
    let mut dict = corpus.dictionary().clone();
    let f = parse_proto(text, &mut dict)?;
    Ok((f, dict))
}

pub fn render(
    f: &Formula,
    dict: &SymbolDictionary,
    format: RenderFormat,
    cubes_per_row: Option<usize>,
    cell_px: Option<u32>,
) -> Result<String, ServiceError> {
    let grid = grid_of(f, dict)?;
    Ok(match format {
        RenderFormat::Prelpara2d => {
            let rows = grid.rows.iter().map(|r| to_prelpara_2d(r)).collect::<Result<Vec<_>, _>>()?;
            rows.join("\n")
        }
        RenderFormat::Prelpara3d => to_prelpara_3d(&grid, cubes_per_row)?,
        RenderFormat::Svg2d => to_svg_2d(&grid, cell_px.unwrap_or(DEFAULT_CELL_PX))?,
        RenderFormat::Svg3d => to_svg_3d(&grid)?,
    })
}

pub fn content_type(format: RenderFormat) -> &'static str {
    match format {
        RenderFormat::Prelpara2d | RenderFormat::Prelpara3d => "text/plain; charset=utf-8",
        RenderFormat::Svg2d | RenderFormat::Svg3d => "image/svg+xml",
    }
}

/// Proves `goal` from the listed sentences, or refutes them when no goal
/// is given.
pub fn prove_codes(
    corpus: &Corpus,
    codes: &[u64],
    goal: Option<&str>,
    bounds: &Bounds,
) -> Result<ProofView, ServiceError> {
    let premises = corpus.formulas(codes)?;
    let result = match goal {
        Some(text) => {
            let (g, dict) = parse_transient(text, corpus)?;
            prove(&premises, &g, &dict, bounds)?
        }
        None => refute(&premises, corpus.dictionary(), bounds)?,
    };
    Ok(proof_view(&result))
}

pub fn proof_view(result: &ProofResult) -> ProofView {
    let (reason, clauses) = match result {
        ProofResult::Unknown { reason, clauses } => (Some(reason.clone()), Some(*clauses)),
        _ => (None, None),
    };
    ProofView {
        status: result.status().to_string(),
        reason,
        clauses,
        trace: result.proof().map(|p| p.lines()).unwrap_or_default(),
    }
}

/// Translates the listed sentences, or all of them when `codes` is empty.
pub fn translate(
    corpus: &Corpus,
    codes: &[u64],
    target: Target,
    goal: Option<&str>,
) -> Result<String, ServiceError> {
    let sentences = if codes.is_empty() {
        corpus.sentences().iter().map(|s| s.formula.clone()).collect()
    } else {
        corpus.formulas(codes)?
    };
    match target {
        Target::Prolog => {
            if goal.is_some() {
                return Err(ServiceError::invalid("a goal only applies to the lean target"));
            }
            Ok(to_prolog(&sentences, corpus.dictionary())?)
        }
        Target::Lean => match goal {
            Some(text) => {
                let (g, dict) = parse_transient(text, corpus)?;
                Ok(to_lean_skeleton(&sentences, Some(&g), &dict)?)
            }
            None => Ok(to_lean_skeleton(&sentences, None, corpus.dictionary())?),
        },
    }
}

/// The sentences of another corpus restated in this corpus's dictionary.
pub fn align(corpus: &Corpus, doc: &CorpusDocument) -> Result<AlignView, ServiceError> {
    let other = Corpus::from_document(doc)?;
    let (dict, sentences) = corpus.align(&other)?;
    Ok(AlignView {
        dictionary: dict.export(),
        sentences: sentences
            .into_iter()
            .map(|s| SentenceDoc { code: s.code, source_text: s.source_text })
            .collect(),
    })
}

/// Reads a grid of codes (0 for a spacer) back into a sentence.
pub fn untile_codes(corpus: &Corpus, rows: &[Vec<Code>]) -> Result<UntileView, ServiceError> {
    let grid = Grid::from_codes(rows);
    let f = untile(&grid, corpus.dictionary())?;
    Ok(UntileView {
        proto_text: print_proto(&f, corpus.dictionary()).map_err(|e| ServiceError::internal(e.to_string()))?,
        numeric: print_numeric(&f),
        sticks: print_sticks(&f),
    })
}
