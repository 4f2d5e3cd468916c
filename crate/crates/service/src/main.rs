use std::io::Write as _;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use para_core::corpus::Corpus;
use para_core::reason::Bounds;
use para_service::ops::{self, RenderFormat, Target};
use para_service::{AppState, ServiceError, DEFAULT_CORPUS, DEFAULT_PORT};

#[derive(Parser)]
#[command(name = "para", version, about = "Formalize, render, translate and prove sentences in a PaRa corpus")]
struct Cli {
    /// Corpus file; created on the first change if missing.
    #[arg(long, global = true, env = "PARA_CORPUS", default_value = DEFAULT_CORPUS)]
    corpus: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Add a sentence in proto notation and print its code.
    Add { text: String },
    /// Delete a sentence; its code is not reused.
    Rm { code: u64 },
    /// List sentences.
    Ls {
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Show a sentence in every notation with its tiling grid.
    Show {
        code: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Render a stored sentence, or proto text given with --text.
    Render {
        code: Option<u64>,
        #[arg(long, conflicts_with = "code", required_unless_present = "code")]
        text: Option<String>,
        #[arg(long, value_enum, default_value = "prelpara2d")]
        format: RenderFormat,
        #[arg(long)]
        cubes_per_row: Option<usize>,
        #[arg(long)]
        cell_px: Option<u32>,
    },
    /// Prove a goal from stored sentences, or refute them without a goal.
    Prove {
        codes: Vec<u64>,
        #[arg(long)]
        goal: Option<String>,
        /// Search bounds as MAX_CLAUSES:MAX_SECONDS.
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<Bounds>,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Print the corpus file, or a Prolog or Lean rendering of sentences.
    Export {
        codes: Vec<u64>,
        #[arg(long, conflicts_with = "lean")]
        prolog: bool,
        #[arg(long)]
        lean: bool,
        /// Lean theorem goal in proto notation.
        #[arg(long, requires = "lean")]
        goal: Option<String>,
    },
    /// Append the sentences of another corpus file, matching symbols by name.
    Import { file: PathBuf },
    /// Run the HTTP API.
    Serve {
        #[arg(long, env = "PARA_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Concurrent rendering and proving jobs.
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<Bounds>,
    },
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let (clauses, seconds) = s.split_once(':').ok_or("expected MAX_CLAUSES:MAX_SECONDS")?;
    let max_clauses = clauses.trim().parse().map_err(|e| format!("max clauses: {e}"))?;
    let max_seconds: f64 = seconds.trim().parse().map_err(|e| format!("max seconds: {e}"))?;
    if !(max_seconds.is_finite() && max_seconds >= 0.0) {
        return Err("max seconds must be a non-negative number".into());
    }
    Ok(Bounds { max_clauses, max_seconds })
}

fn open(path: &Path) -> Result<Corpus, ServiceError> {
    if path.exists() {
        Ok(Corpus::load(path)?)
    } else {
        Ok(Corpus::new())
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("responses serialize")
}

fn run(cli: Cli) -> Result<String, ServiceError> {
    let path = cli.corpus.as_path();
    match cli.command {
        Command::Add { text } => {
            let mut c = open(path)?;
            let code = c.add_sentence(&text)?;
            c.save(path)?;
            Ok(code.to_string())
        }
        Command::Rm { code } => {
            let mut c = open(path)?;
            c.delete_sentence(code)?;
            c.save(path)?;
            Ok(String::new())
        }
        Command::Ls { format } => {
            let list = ops::list(&open(path)?);
            Ok(match format {
                Output::Json => json(&list),
                Output::Text => list
                    .iter()
                    .map(|s| format!("{}\t{}", s.text_code, s.source_text))
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        Command::Show { code, format } => {
            let v = ops::show(&open(path)?, code)?;
            Ok(match format {
                Output::Json => json(&v),
                Output::Text => {
                    let grid: Vec<String> = v
                        .grid_codes
                        .iter()
                        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                        .collect();
                    format!(
                        "code: {}\nproto: {}\nnumeric: {}\nsticks: {}\ngrid: {}",
                        v.text_code,
                        v.source_text,
                        v.numeric,
                        v.sticks,
                        grid.join(" / ")
                    )
                }
            })
        }
        Command::Render { code, text, format, cubes_per_row, cell_px } => {
            let c = open(path)?;
            let (f, dict) = match (code, text) {
                (Some(code), _) => (c.formulas(&[code])?.remove(0), c.dictionary().clone()),
                (None, Some(t)) => ops::parse_transient(&t, &c)?,
                (None, None) => unreachable!("clap requires a code or --text"),
            };
            ops::render(&f, &dict, format, cubes_per_row, cell_px)
        }
        Command::Prove { codes, goal, bounds, format } => {
            let v = ops::prove_codes(&open(path)?, &codes, goal.as_deref(), &bounds.unwrap_or_default())?;
            Ok(match format {
                Output::Json => json(&v),
                Output::Text => {
                    let mut out = v.status.clone();
                    if let Some(r) = &v.reason {
                        out.push_str(&format!(": {r}"));
                    }
                    for line in &v.trace {
                        out.push('\n');
                        out.push_str(line);
                    }
                    out
                }
            })
        }
        Command::Export { codes, prolog, lean, goal } => {
            let c = open(path)?;
            if prolog {
                ops::translate(&c, &codes, Target::Prolog, None)
            } else if lean {
                ops::translate(&c, &codes, Target::Lean, goal.as_deref())
            } else if codes.is_empty() {
                Ok(c.to_json())
            } else {
                Err(ServiceError::invalid("sentence codes need --prolog or --lean"))
            }
        }
        Command::Import { file } => {
            let other = Corpus::load(&file).map_err(|e| match e {
                para_core::CorpusError::Io(m) => ServiceError::invalid(m),
                e => e.into(),
            })?;
            let mut c = open(path)?;
            let codes = c.import(&other)?;
            c.save(path)?;
            Ok(codes.iter().map(u64::to_string).collect::<Vec<_>>().join("\n"))
        }
        Command::Serve { port, host, workers, bounds } => {
            let state = AppState::new(open(path)?, Some(cli.corpus.clone()), workers, bounds.unwrap_or_default());
            let addr = SocketAddr::new(host, port);
            let rt = tokio::runtime::Runtime::new().map_err(|e| ServiceError::internal(e.to_string()))?;
            eprintln!("listening on http://{addr}");
            rt.block_on(para_service::serve(state, addr))
                .map_err(|e| ServiceError::new(para_service::ErrorKind::Io, e.to_string()))?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                let mut stdout = std::io::stdout().lock();
                let _ = writeln!(stdout, "{}", out.trim_end_matches('\n'));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match e.position {
                Some(p) => eprintln!("error ({}): {} at byte {p}", json_code(&e), e.message),
                None => eprintln!("error ({}): {}", json_code(&e), e.message),
            }
            ExitCode::from(if e.code.is_user_error() { 1 } else { 2 })
        }
    }
}

fn json_code(e: &ServiceError) -> String {
    serde_json::to_value(e.code).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

