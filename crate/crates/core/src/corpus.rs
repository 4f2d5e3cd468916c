//! A persistent list of sentences sharing one dictionary.
//!
//! Sentence codes are the odd numbers `7, 9, 11, …` handed out in order of
//! addition and never reused. Each sentence keeps its text in canonical
//! proto notation, reprinted after every change so that it always parses
//! back to the same formula under the current dictionary.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dictionary::{align_translate, DictionaryDocument, DictionaryError, SymbolDictionary};
use crate::fol::{parse_proto_with, print_proto, Formula, ParseError, ParseOptions, PrintError};

pub const CORPUS_FORMAT_VERSION: u32 = 1;
pub const FIRST_TEXT_CODE: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Print(#[from] PrintError),
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
    #[error("no sentence has code {0}")]
    UnknownCode(u64),
    #[error("unsupported corpus format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("invalid corpus: {0}")]
    Invalid(String),
    #[error("sentence {code} does not parse: {source}")]
    Sentence { code: u64, source: ParseError },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed corpus file: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub code: u64,
    pub source_text: String,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    dictionary: SymbolDictionary,
    sentences: Vec<Sentence>,
    next_code: u64,
}

/// On-disk form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusDocument {
    pub version: u32,
    pub dictionary: DictionaryDocument,
    pub sentences: Vec<SentenceDoc>,
    /// Code for the next sentence. Missing means one past the last sentence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next_code: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SentenceDoc {
    pub code: u64,
    pub source_text: String,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::new()
    }
}

impl Corpus {
    pub fn new() -> Corpus {
        Corpus::with_dictionary(SymbolDictionary::new())
    }

    pub fn with_dictionary(dictionary: SymbolDictionary) -> Corpus {
        Corpus { dictionary, sentences: vec![], next_code: FIRST_TEXT_CODE }
    }

    pub fn dictionary(&self) -> &SymbolDictionary {
        &self.dictionary
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn next_code(&self) -> u64 {
        self.next_code
    }

    pub fn get(&self, code: u64) -> Option<&Sentence> {
        self.sentences.binary_search_by_key(&code, |s| s.code).ok().map(|i| &self.sentences[i])
    }

    pub fn formulas(&self, codes: &[u64]) -> Result<Vec<Formula>, CorpusError> {
        codes
            .iter()
            .map(|c| self.get(*c).map(|s| s.formula.clone()).ok_or(CorpusError::UnknownCode(*c)))
            .collect()
    }

    fn reprint(&mut self) -> Result<(), CorpusError> {
        for s in &mut self.sentences {
            s.source_text = print_proto(&s.formula, &self.dictionary)?;
        }
        Ok(())
    }

    /// Runs `f` on a copy and keeps the copy only if `f` succeeds.
    fn transaction<T>(&mut self, f: impl FnOnce(&mut Corpus) -> Result<T, CorpusError>) -> Result<T, CorpusError> {
        let mut next = self.clone();
        let out = f(&mut next)?;
        next.reprint()?;
        *self = next;
        Ok(out)
    }

    fn push(&mut self, formula: Formula) -> Result<u64, CorpusError> {
        let code = self.next_code;
        self.next_code = code
            .checked_add(2)
            .ok_or_else(|| CorpusError::Invalid("sentence codes exhausted".to_string()))?;
        self.sentences.push(Sentence { code, source_text: String::new(), formula });
        Ok(code)
    }

    pub fn add_sentence(&mut self, proto_text: &str) -> Result<u64, CorpusError> {
        self.add_sentence_with(proto_text, &ParseOptions::default())
    }

    pub fn add_sentence_with(&mut self, proto_text: &str, opts: &ParseOptions) -> Result<u64, CorpusError> {
        self.transaction(|c| {
            let f = parse_proto_with(proto_text, &mut c.dictionary, opts)?;
            c.push(f)
        })
    }

    /// Removes a sentence; its code is never handed out again.
    pub fn delete_sentence(&mut self, code: u64) -> Result<Sentence, CorpusError> {
        let i = self
            .sentences
            .binary_search_by_key(&code, |s| s.code)
            .map_err(|_| CorpusError::UnknownCode(code))?;
        Ok(self.sentences.remove(i))
    }

    /// Swaps in a new dictionary. Every sentence is moved over by symbol
    /// name and must find all its symbols there.
    pub fn replace_dictionary(&mut self, dictionary: SymbolDictionary) -> Result<(), CorpusError> {
        self.transaction(|c| {
            let mut target = dictionary;
            for s in &mut c.sentences {
                s.formula = align_translate(&s.formula, &c.dictionary, &mut target, false)?;
            }
            c.dictionary = target;
            Ok(())
        })
    }

    /// Sentences of `other` moved into this corpus's dictionary by symbol
    /// name, registering missing symbols in a copy. Nothing is added.
    pub fn align(&self, other: &Corpus) -> Result<(SymbolDictionary, Vec<Sentence>), CorpusError> {
        let mut dict = self.dictionary.clone();
        let mut out = Vec::with_capacity(other.sentences.len());
        for s in &other.sentences {
            let formula = align_translate(&s.formula, &other.dictionary, &mut dict, true)?;
            out.push(Sentence { code: s.code, source_text: String::new(), formula });
        }
        for s in &mut out {
            s.source_text = print_proto(&s.formula, &dict)?;
        }
        Ok((dict, out))
    }

    /// Appends the sentences of `other` with fresh codes.
    pub fn import(&mut self, other: &Corpus) -> Result<Vec<u64>, CorpusError> {
        let (dict, aligned) = self.align(other)?;
        self.transaction(|c| {
            c.dictionary = dict;
            aligned.into_iter().map(|s| c.push(s.formula)).collect()
        })
    }

    pub fn to_document(&self) -> CorpusDocument {
        CorpusDocument {
            version: CORPUS_FORMAT_VERSION,
            dictionary: self.dictionary.export(),
            sentences: self
                .sentences
                .iter()
                .map(|s| SentenceDoc { code: s.code, source_text: s.source_text.clone() })
                .collect(),
            next_code: Some(self.next_code),
        }
    }

    pub fn from_document(doc: &CorpusDocument) -> Result<Corpus, CorpusError> {
        if doc.version != CORPUS_FORMAT_VERSION {
            return Err(CorpusError::Version { found: doc.version, expected: CORPUS_FORMAT_VERSION });
        }
        let mut dictionary = SymbolDictionary::import(&doc.dictionary)?;
        let mut last = None;
        let mut sentences = Vec::with_capacity(doc.sentences.len());
        for s in &doc.sentences {
            if s.code < FIRST_TEXT_CODE || s.code % 2 == 0 {
                return Err(CorpusError::Invalid(format!("{} is not a sentence code", s.code)));
            }
            if last.is_some_and(|l| s.code <= l) {
                return Err(CorpusError::Invalid(format!("sentence codes must increase, found {} after {}", s.code, last.unwrap())));
            }
            last = Some(s.code);
            let formula = parse_proto_with(&s.source_text, &mut dictionary, &ParseOptions::strict())
                .map_err(|source| CorpusError::Sentence { code: s.code, source })?;
            sentences.push(Sentence { code: s.code, source_text: s.source_text.clone(), formula });
        }
        let after_last = last.map_or(FIRST_TEXT_CODE, |l| l + 2);
        let next_code = doc.next_code.unwrap_or(after_last);
        if next_code.is_multiple_of(2) || next_code < after_last {
            return Err(CorpusError::Invalid(format!("next code {next_code} must be odd and above every sentence code")));
        }
        let mut c = Corpus { dictionary, sentences, next_code };
        c.reprint()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("corpus documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Corpus, CorpusError> {
        let doc: CorpusDocument = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
        Corpus::from_document(&doc)
    }

    /// Writes through a temporary file in the same directory, so the target
    /// is either the old or the new content.
    pub fn save(&self, path: &Path) -> Result<(), CorpusError> {
        let io = |e: std::io::Error| CorpusError::Io(e.to_string());
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(self.to_json().as_bytes()).map_err(io)?;
        tmp.write_all(b"\n").map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Corpus, CorpusError> {
        let text = fs::read_to_string(path).map_err(|e| CorpusError::Io(format!("{}: {e}", path.display())))?;
        Corpus::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MICE: &str = "forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))";

    #[test]
    fn codes_follow_additions() {
        let mut c = Corpus::new();
        assert_eq!(c.add_sentence(MICE), Ok(7));
        assert_eq!(c.add_sentence("Man(socrates)"), Ok(9));
        c.delete_sentence(7).unwrap();
        assert_eq!(c.add_sentence("Man(plato)"), Ok(11));
        assert_eq!(c.delete_sentence(7), Err(CorpusError::UnknownCode(7)));
        assert_eq!(c.delete_sentence(13), Err(CorpusError::UnknownCode(13)));
    }

    #[test]
    fn failed_add_changes_nothing() {
        let mut c = Corpus::new();
        c.add_sentence(MICE).unwrap();
        let before = c.clone();
        assert!(c.add_sentence("Mouse(").is_err());
        assert!(c.add_sentence("Mouse(a, b)").is_err());
        assert_eq!(c, before);
    }

    #[test]
    fn json_round_trip() {
        let mut c = Corpus::new();
        c.add_sentence(MICE).unwrap();
        c.add_sentence("Man(socrates)").unwrap();
        c.delete_sentence(7).unwrap();
        let back = Corpus::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.next_code(), 11);
        assert_eq!(Corpus::from_json(&Corpus::new().to_json()).unwrap(), Corpus::new());
    }

    #[test]
    fn texts_stay_parseable_as_names_collide() {
        let mut c = Corpus::new();
        c.add_sentence("P(a)").unwrap();
        c.add_sentence("Q(Thing.a)").unwrap();
        assert_eq!(c.get(7).unwrap().source_text, "P(Entity.a)");
        assert_eq!(Corpus::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_files() {
        let mut doc = Corpus::new().to_document();
        doc.sentences.push(SentenceDoc { code: 8, source_text: "P(a)".into() });
        doc.next_code = None;
        assert!(matches!(Corpus::from_document(&doc), Err(CorpusError::Invalid(_))));
        let mut c = Corpus::new();
        c.add_sentence("P(a)").unwrap();
        c.add_sentence("P(b)").unwrap();
        let mut doc = c.to_document();
        doc.sentences.swap(0, 1);
        assert!(matches!(Corpus::from_document(&doc), Err(CorpusError::Invalid(_))));
        let mut doc = c.to_document();
        doc.version = 2;
        assert!(matches!(Corpus::from_document(&doc), Err(CorpusError::Version { .. })));
        let mut doc = c.to_document();
        doc.sentences[0].source_text = "P(zzz)".into();
        assert!(matches!(Corpus::from_document(&doc), Err(CorpusError::Sentence { code: 7, .. })));
        assert!(matches!(Corpus::from_json("{}"), Err(CorpusError::Json(_))));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.json");
        let mut c = Corpus::new();
        c.add_sentence(MICE).unwrap();
        c.save(&path).unwrap();
        assert_eq!(Corpus::load(&path).unwrap(), c);
        assert!(matches!(Corpus::load(&dir.path().join("missing.json")), Err(CorpusError::Io(_))));
    }

    #[test]
    fn import_by_name() {
        let mut ours = Corpus::new();
        ours.add_sentence("forall x (Man(x) -> Mortal(x))").unwrap();
        let mut theirs = Corpus::new();
        theirs.add_sentence("Greek(socrates)").unwrap();
        theirs.add_sentence("Man(socrates)").unwrap();
        let codes = ours.import(&theirs).unwrap();
        assert_eq!(codes, vec![9, 11]);
        assert_eq!(ours.dictionary().predicate("Man").unwrap().0, 1);
        assert_eq!(ours.get(11).unwrap().source_text, "Man(socrates)");
    }

    #[test]
    fn replacing_the_dictionary() {
        let mut c = Corpus::new();
        c.add_sentence("Man(socrates)").unwrap();
        let mut d = SymbolDictionary::new();
        let e = d.add_sort("Entity").unwrap();
        d.add_predicate("Greek", 1).unwrap();
        d.add_predicate("Man", 1).unwrap();
        d.add_constant(e, "socrates").unwrap();
        c.replace_dictionary(d.clone()).unwrap();
        assert_eq!(c.get(7).unwrap().formula, Formula::atom(2, vec![crate::fol::Constant::new(e, 1).into()]));
        let before = c.clone();
        assert!(c.replace_dictionary(SymbolDictionary::new()).is_err());
        assert_eq!(c, before);
    }
}
