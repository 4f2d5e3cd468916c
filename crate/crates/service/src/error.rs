use serde::Serialize;
use thiserror::Error;

use para_core::corpus::CorpusError;
use para_core::dictionary::DictionaryError;
use para_core::fol::ParseError;
use para_core::reason::ReasonError;
use para_core::render::RenderError;
use para_core::tiler::TileError;
use para_core::translate::TranslateError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Parse,
    UnknownCode,
    InvalidRequest,
    Dictionary,
    Tiling,
    Render,
    Translate,
    Reason,
    Io,
    Internal,
}

impl ErrorKind {
    /// Whether the caller can fix the problem by changing the input.
    pub fn is_user_error(self) -> bool {
        !matches!(self, ErrorKind::Io | ErrorKind::Internal)
    }
}

/// Error body shared by the API and the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("{message}")]
pub struct ServiceError {
    pub code: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

impl ServiceError {
    pub fn new(code: ErrorKind, message: impl Into<String>) -> ServiceError {
        ServiceError { code, message: message.into(), position: None }
    }

    pub fn invalid(message: impl Into<String>) -> ServiceError {
        ServiceError::new(ErrorKind::InvalidRequest, message)
    }

    pub fn internal(message: impl Into<String>) -> ServiceError {
        ServiceError::new(ErrorKind::Internal, message)
    }
}

impl From<ParseError> for ServiceError {
    fn from(e: ParseError) -> Self {
        ServiceError { code: ErrorKind::Parse, message: e.kind.to_string(), position: Some(e.position) }
    }
}

impl From<DictionaryError> for ServiceError {
    fn from(e: DictionaryError) -> Self {
        ServiceError::new(ErrorKind::Dictionary, e.to_string())
    }
}

impl From<TileError> for ServiceError {
    fn from(e: TileError) -> Self {
        ServiceError::new(ErrorKind::Tiling, e.to_string())
    }
}

impl From<RenderError> for ServiceError {
    fn from(e: RenderError) -> Self {
        ServiceError::new(ErrorKind::Render, e.to_string())
    }
}

impl From<TranslateError> for ServiceError {
    fn from(e: TranslateError) -> Self {
        ServiceError::new(ErrorKind::Translate, e.to_string())
    }
}

impl From<ReasonError> for ServiceError {
    fn from(e: ReasonError) -> Self {
        ServiceError::new(ErrorKind::Reason, e.to_string())
    }
}

impl From<CorpusError> for ServiceError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Parse(p) => p.into(),
            CorpusError::Dictionary(d) => d.into(),
            CorpusError::UnknownCode(_) => ServiceError::new(ErrorKind::UnknownCode, e.to_string()),
            CorpusError::Sentence { ref source, .. } => ServiceError {
                code: ErrorKind::InvalidRequest,
                message: e.to_string(),
                position: Some(source.position),
            },
            CorpusError::Version { .. } | CorpusError::Invalid(_) | CorpusError::Json(_) => {
                ServiceError::invalid(e.to_string())
            }
            CorpusError::Io(_) => ServiceError::new(ErrorKind::Io, e.to_string()),
            CorpusError::Print(_) => ServiceError::internal(e.to_string()),
        }
    }
}
