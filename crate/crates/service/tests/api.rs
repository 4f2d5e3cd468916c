use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use para_core::corpus::Corpus;
use para_core::reason::Bounds;
use para_service::{router, AppState};

const MICE: &str = "forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))";
const BARBER: &str = "exists x (Man(x) & forall y (Man(y) -> (Shaves(x,y) <-> ~Shaves(y,y))))";

fn app() -> Router {
    router(AppState::new(Corpus::new(), None, 2, Bounds::default()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, String, String) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header(header::CONTENT_TYPE, "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let ctype = resp
        .headers()
        .get(header::CONTENT_TYPE)
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, ctype, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn call_json(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let (status, _, text) = call(app, method, uri, body).await;
    (status, if text.is_empty() { Value::Null } else { serde_json::from_str(&text).unwrap() })
}

async fn add(app: &Router, text: &str) -> u64 {
    let (status, v) = call_json(app, "POST", "/sentences", Some(json!({ "proto_text": text }))).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v["text_code"].as_u64().unwrap()
}

#[tokio::test]
async fn sentences_lifecycle() {
    let app = app();
    assert_eq!(add(&app, MICE).await, 7);
    assert_eq!(add(&app, "Man(socrates)").await, 9);

    let (status, v) = call_json(&app, "GET", "/sentences/7", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["source_text"], MICE);
    assert_eq!(v["grid_codes"], json!([[2, 32, 2, 96], [0, 10, 32, 4, 14, 96], [0, 6, 18, 32, 96]]));
    assert_eq!(v["numeric"], "∀(1.1)∀(1.2)((P.1(1.1))∧(P.2(1.2))⊃(P.3(1.1,1.2)))");
    assert!(v["sticks"].as_str().unwrap().starts_with("∀(|.|)"));

    let (_, list) = call_json(&app, "GET", "/sentences", None).await;
    assert_eq!(list.as_array().unwrap().len(), 2);

    let (status, _) = call_json(&app, "DELETE", "/sentences/7", None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    let (status, v) = call_json(&app, "DELETE", "/sentences/7", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["code"], "unknown_code");
    assert_eq!(add(&app, "Man(plato)").await, 11);
}

#[tokio::test]
async fn structured_errors() {
    let app = app();
    let (status, v) = call_json(&app, "POST", "/sentences", Some(json!({ "proto_text": "Man(" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "parse");
    assert_eq!(v["position"], 4);
    let (status, v) = call_json(&app, "POST", "/sentences", Some(json!({ "text": "Man(a)" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "invalid_request");
    let (status, v) = call_json(&app, "GET", "/sentences/seven", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "invalid_request");
    let (_, list) = call_json(&app, "GET", "/sentences", None).await;
    assert_eq!(list, json!([]));
}

#[tokio::test]
async fn render_formats() {
    let app = app();
    add(&app, MICE).await;
    let (status, ctype, text) =
        call(&app, "POST", "/render", Some(json!({ "text_code": 7, "format": "prelpara2d" }))).await;
    assert_eq!(status, StatusCode::OK);
    assert!(ctype.starts_with("text/plain"));
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("4:"));

    let (_, _, text) = call(
        &app,
        "POST",
        "/render",
        Some(json!({ "proto_text": MICE, "format": "prelpara3d", "cubes_per_row": 3 })),
    )
    .await;
    assert!(text.starts_with("3:"));

    for format in ["svg2d", "svg3d"] {
        let (status, ctype, text) =
            call(&app, "POST", "/render", Some(json!({ "text_code": 7, "format": format }))).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(ctype, "image/svg+xml");
        assert!(text.starts_with("<svg"));
    }

    let (status, v) = call_json(&app, "POST", "/render", Some(json!({ "format": "svg2d" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "invalid_request");
    let (status, v) =
        call_json(&app, "POST", "/render", Some(json!({ "text_code": 7, "format": "svg2d", "cell_px": 2 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "render");
}

#[tokio::test]
async fn proving() {
    let app = app();
    add(&app, "Man(socrates)").await;
    add(&app, "forall x (Man(x) -> Mortal(x))").await;
    add(&app, BARBER).await;

    let (status, v) = call_json(
        &app,
        "POST",
        "/prove",
        Some(json!({ "premise_codes": [7, 9], "goal": "Mortal(socrates)" })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["status"], "proved");
    assert_eq!(v["trace"].as_array().unwrap().last().unwrap(), "5. ⊥ ← resolve 4.1 3.1 {}");

    let (_, v) = call_json(&app, "POST", "/prove", Some(json!({ "premise_codes": [11] }))).await;
    assert_eq!(v["status"], "refuted");

    let (_, v) = call_json(
        &app,
        "POST",
        "/prove",
        Some(json!({ "premise_codes": [7, 9], "goal": "Mortal(plato)", "bounds": { "max_clauses": 100, "max_seconds": 1.0 } })),
    )
    .await;
    assert_eq!(v["status"], "unknown");
    assert!(v["reason"].is_string());
    // The transient goal symbol is not stored.
    let (_, dict) = call_json(&app, "GET", "/dictionary", None).await;
    assert!(!dict.to_string().contains("plato"));

    let (status, v) = call_json(&app, "POST", "/prove", Some(json!({ "premise_codes": [99] }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["code"], "unknown_code");
}

#[tokio::test]
async fn translating() {
    let app = app();
    add(&app, "Man(socrates)").await;
    add(&app, "forall x (Man(x) -> Mortal(x))").await;
    let (status, _, text) =
        call(&app, "POST", "/translate", Some(json!({ "codes": [7, 9], "target": "prolog" }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(text, "man(socrates).\nmortal(X) :- man(X).\n");
    let (_, _, text) = call(
        &app,
        "POST",
        "/translate",
        Some(json!({ "codes": [7, 9], "target": "lean", "goal": "Mortal(socrates)" })),
    )
    .await;
    assert!(text.contains("(h : (∀ x : Man, mortal x)) : (mortal socrates) :="));
    add(&app, "exists x Man(x)").await;
    let (status, v) = call_json(&app, "POST", "/translate", Some(json!({ "codes": [11], "target": "prolog" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "translate");
}

#[tokio::test]
async fn dictionary_and_alignment() {
    let app = app();
    add(&app, "forall x (Man(x) -> Mortal(x))").await;
    let (status, dict) = call_json(&app, "GET", "/dictionary", None).await;
    assert_eq!(status, StatusCode::OK);
    let (status, back) = call_json(&app, "PUT", "/dictionary", Some(dict.clone())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(back, dict);
    let (status, v) = call_json(&app, "PUT", "/dictionary", Some(json!({ "version": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{v}");

    let mut other = Corpus::new();
    other.add_sentence("Greek(socrates)").unwrap();
    other.add_sentence("Man(socrates)").unwrap();
    let (status, v) =
        call_json(&app, "POST", "/align", Some(json!({ "document": other.to_document() }))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["sentences"][1], json!({ "code": 9, "source_text": "Man(socrates)" }));
    let (_, list) = call_json(&app, "GET", "/sentences", None).await;
    assert_eq!(list.as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn untiling_grids() {
    let app = app();
    add(&app, MICE).await;
    let grid = json!([[2, 32, 2, 96], [0, 10, 32, 4, 14, 96], [0, 6, 18, 32, 96]]);
    let (status, v) = call_json(&app, "POST", "/untile", Some(json!({ "grid": grid }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["proto_text"], MICE);
    let (status, v) = call_json(&app, "POST", "/untile", Some(json!({ "grid": [[4]] }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "tiling");
    assert!(v["message"].as_str().unwrap().contains("dangling connective"));
    let (_, v) = call_json(&app, "POST", "/untile", Some(json!({ "grid": [[10, 32]] }))).await;
    assert_eq!(v["proto_text"], "Mouse(x)");
}

#[tokio::test]
async fn changes_are_saved() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    let app = router(AppState::new(Corpus::new(), Some(path.clone()), 1, Bounds::default()));
    add(&app, MICE).await;
    let saved = std::fs::read(&path).unwrap();
    let (status, _) = call_json(&app, "POST", "/sentences", Some(json!({ "proto_text": "Cat(" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(std::fs::read(&path).unwrap(), saved);
    assert_eq!(Corpus::load(&path).unwrap().get(7).unwrap().source_text, MICE);
}

#[tokio::test]
async fn concurrent_writers_get_distinct_codes() {
    let app = app();
    let mut tasks = Vec::new();
    for i in 0..16 {
        let app = app.clone();
        tasks.push(tokio::spawn(async move { add(&app, &format!("P(c{i})")).await }));
    }
    let mut codes = Vec::new();
    for t in tasks {
        codes.push(t.await.unwrap());
    }
    codes.sort();
    assert_eq!(codes, (0..16).map(|n| 2 * n + 7).collect::<Vec<_>>());
}

