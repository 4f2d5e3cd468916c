//! HTTP API and command-line front end over a persisted corpus.

pub mod error;
pub mod http;
pub mod ops;

pub use error::{ErrorKind, ServiceError};
pub use http::{router, serve, AppState};

pub const DEFAULT_PORT: u16 = 8787;
pub const DEFAULT_CORPUS: &str = "corpus.json";
