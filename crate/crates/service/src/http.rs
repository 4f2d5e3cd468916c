//! JSON-over-HTTP API.
//!
//! Mutations go through one writer lock: a copy of the current corpus is
//! changed, saved, and only then published. Readers work on the published
//! snapshot. Tiling, rendering, proving and translation run on blocking
//! threads, at most `workers` at a time.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::{JsonRejection, PathRejection};
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::sync::{Mutex, Semaphore};

use para_core::corpus::{Corpus, CorpusDocument};
use para_core::dictionary::{DictionaryDocument, SymbolDictionary};
use para_core::reason::Bounds;

use crate::error::{ErrorKind, ServiceError};
use crate::ops::{self, RenderFormat, Target};

pub struct AppState {
    snapshot: RwLock<Arc<Corpus>>,
    writer: Mutex<()>,
    path: Option<PathBuf>,
    workers: Semaphore,
    bounds: Bounds,
}

impl AppState {
    /// `path` is where every accepted change is saved; `None` keeps the
    /// corpus in memory only.
    pub fn new(corpus: Corpus, path: Option<PathBuf>, workers: usize, bounds: Bounds) -> Arc<AppState> {
        Arc::new(AppState {
            snapshot: RwLock::new(Arc::new(corpus)),
            writer: Mutex::new(()),
            path,
            workers: Semaphore::new(workers.max(1)),
            bounds,
        })
    }

    pub fn corpus(&self) -> Arc<Corpus> {
        self.snapshot.read().expect("snapshot lock poisoned").clone()
    }

    async fn mutate<T>(&self, op: impl FnOnce(&mut Corpus) -> Result<T, ServiceError>) -> Result<T, ServiceError> {
        let _guard = self.writer.lock().await;
        let mut next = (*self.corpus()).clone();
        let out = op(&mut next)?;
        if let Some(path) = &self.path {
            next.save(path)?;
        }
        *self.snapshot.write().expect("snapshot lock poisoned") = Arc::new(next);
        Ok(out)
    }

    async fn work<T: Send + 'static>(
        &self,
        job: impl FnOnce() -> Result<T, ServiceError> + Send + 'static,
    ) -> Result<T, ServiceError> {
        let _permit = self.workers.acquire().await.map_err(|e| ServiceError::internal(e.to_string()))?;
        tokio::task::spawn_blocking(job)
            .await
            .map_err(|e| ServiceError::internal(e.to_string()))?
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match self.code {
            ErrorKind::UnknownCode => StatusCode::NOT_FOUND,
            ErrorKind::Io | ErrorKind::Internal => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        (status, Json(self)).into_response()
    }
}

type ApiResult<T> = Result<T, ServiceError>;

fn body<T>(b: Result<Json<T>, JsonRejection>) -> ApiResult<T> {
    b.map(|Json(t)| t).map_err(|e| ServiceError::invalid(e.body_text()))
}

fn code_param(p: Result<Path<u64>, PathRejection>) -> ApiResult<u64> {
    p.map(|Path(c)| c).map_err(|e| ServiceError::invalid(e.body_text()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AddRequest {
    pub proto_text: String,
}

#[derive(Serialize, Deserialize)]
pub struct AddResponse {
    pub text_code: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRequest {
    pub text_code: Option<u64>,
    pub proto_text: Option<String>,
    pub format: RenderFormat,
    pub cubes_per_row: Option<usize>,
    pub cell_px: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProveRequest {
    #[serde(default)]
    pub premise_codes: Vec<u64>,
    /// Proto text; without a goal the premises are refuted.
    pub goal: Option<String>,
    pub bounds: Option<Bounds>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslateRequest {
    #[serde(default)]
    pub codes: Vec<u64>,
    pub target: Target,
    pub goal: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlignRequest {
    pub document: CorpusDocument,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UntileRequest {
    pub grid: Vec<Vec<u64>>,
}

async fn list_sentences(State(st): State<Arc<AppState>>) -> Json<Vec<ops::SentenceSummary>> {
    Json(ops::list(&st.corpus()))
}

async fn add_sentence(
    State(st): State<Arc<AppState>>,
    req: Result<Json<AddRequest>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<AddResponse>)> {
    let req = body(req)?;
    let text_code = st.mutate(|c| Ok(c.add_sentence(&req.proto_text)?)).await?;
    Ok((StatusCode::CREATED, Json(AddResponse { text_code })))
}

async fn get_sentence(
    State(st): State<Arc<AppState>>,
    code: Result<Path<u64>, PathRejection>,
) -> ApiResult<Json<ops::SentenceView>> {
    let code = code_param(code)?;
    let corpus = st.corpus();
    Ok(Json(st.work(move || ops::show(&corpus, code)).await?))
}

async fn delete_sentence(
    State(st): State<Arc<AppState>>,
    code: Result<Path<u64>, PathRejection>,
) -> ApiResult<StatusCode> {
    let code = code_param(code)?;
    st.mutate(|c| Ok(c.delete_sentence(code)?)).await?;
    Ok(StatusCode::NO_CONTENT)
}

async fn get_dictionary(State(st): State<Arc<AppState>>) -> Json<DictionaryDocument> {
    Json(st.corpus().dictionary().export())
}

async fn put_dictionary(
    State(st): State<Arc<AppState>>,
    doc: Result<Json<DictionaryDocument>, JsonRejection>,
) -> ApiResult<Json<DictionaryDocument>> {
    let dict = SymbolDictionary::import(&body(doc)?)?;
    st.mutate(|c| {
        c.replace_dictionary(dict)?;
        Ok(Json(c.dictionary().export()))
    })
    .await
}

async fn render(
    State(st): State<Arc<AppState>>,
    req: Result<Json<RenderRequest>, JsonRejection>,
) -> ApiResult<Response> {
    let req = body(req)?;
    let corpus = st.corpus();
    let format = req.format;
    let text = st
        .work(move || {
            let (f, dict) = match (req.text_code, &req.proto_text) {
                (Some(code), None) => {
                    let f = corpus.formulas(&[code])?.remove(0);
                    (f, corpus.dictionary().clone())
                }
                (None, Some(text)) => ops::parse_transient(text, &corpus)?,
                _ => return Err(ServiceError::invalid("give exactly one of text_code and proto_text")),
            };
            ops::render(&f, &dict, req.format, req.cubes_per_row, req.cell_px)
        })
        .await?;
    Ok(([(header::CONTENT_TYPE, ops::content_type(format))], text).into_response())
}

async fn prove(
    State(st): State<Arc<AppState>>,
    req: Result<Json<ProveRequest>, JsonRejection>,
) -> ApiResult<Json<ops::ProofView>> {
    let req = body(req)?;
    let corpus = st.corpus();
    let bounds = req.bounds.unwrap_or(st.bounds);
    let view = st
        .work(move || ops::prove_codes(&corpus, &req.premise_codes, req.goal.as_deref(), &bounds))
        .await?;
    Ok(Json(view))
}

async fn translate(
    State(st): State<Arc<AppState>>,
    req: Result<Json<TranslateRequest>, JsonRejection>,
) -> ApiResult<Response> {
    let req = body(req)?;
    let corpus = st.corpus();
    let text = st
        .work(move || ops::translate(&corpus, &req.codes, req.target, req.goal.as_deref()))
        .await?;
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

async fn align(
    State(st): State<Arc<AppState>>,
    req: Result<Json<AlignRequest>, JsonRejection>,
) -> ApiResult<Json<ops::AlignView>> {
    let req = body(req)?;
    let corpus = st.corpus();
    Ok(Json(st.work(move || ops::align(&corpus, &req.document)).await?))
}

async fn untile(
    State(st): State<Arc<AppState>>,
    req: Result<Json<UntileRequest>, JsonRejection>,
) -> ApiResult<Json<ops::UntileView>> {
    let req = body(req)?;
    let corpus = st.corpus();
    Ok(Json(st.work(move || ops::untile_codes(&corpus, &req.grid)).await?))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sentences", get(list_sentences).post(add_sentence))
        .route("/sentences/{code}", get(get_sentence).delete(delete_sentence))
        .route("/dictionary", get(get_dictionary).put(put_dictionary))
        .route("/render", post(render))
        .route("/prove", post(prove))
        .route("/translate", post(translate))
        .route("/align", post(align))
        .route("/untile", post(untile))
        .with_state(state)
}

pub async fn serve(state: Arc<AppState>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
