//! `reviewer-finder`: ingest a corpus, run the headless reviewer pipeline,
//! or serve the HTTP API.
//!
//! Exit codes: 0 on success, 1 on a domain error (bad data, unresolvable
//! seed, conflict), 2 on a usage or configuration error.

mod config;
mod find;

use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finder_core::{CorpusIndex, IngestReport};
use finder_server::{DirStore, MemoryStore, SessionStore};

use config::FilterArgs;

#[derive(Parser)]
#[command(
    name = "reviewer-finder",
    version,
    about = "Find reviewers in a citation corpus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and clean a corpus, print counts, optionally write a snapshot.
    Ingest(IngestArgs),
    /// Rank reviewers for a set of seed papers and print the export.
    Find(find::FindArgs),
    /// Run the HTTP API.
    Serve(ServeArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Args)]
struct IngestArgs {
    /// Newline-delimited JSON corpus.
    corpus: PathBuf,
    #[command(flatten)]
    filter: FilterArgs,
    /// Write the cleaned index here as a JSON snapshot.
    #[arg(long)]
    snapshot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Where the corpus comes from: raw NDJSON (filtered) or a prepared snapshot.
#[derive(Args)]
pub struct Source {
    #[arg(
        long,
        env = "FINDER_CORPUS",
        conflicts_with = "snapshot",
        required_unless_present = "snapshot"
    )]
    corpus: Option<PathBuf>,
    #[arg(long, env = "FINDER_SNAPSHOT")]
    snapshot: Option<PathBuf>,
    #[command(flatten)]
    filter: FilterArgs,
}

#[derive(Args)]
struct ServeArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, env = "FINDER_HOST", default_value = "127.0.0.1")]
    host: IpAddr,
    /// Port to bind; 0 picks a free one and prints it.
    #[arg(long, env = "FINDER_PORT", default_value_t = 8080)]
    port: u16,
    /// Directory for persisted sessions. Sessions stay in memory without it.
    #[arg(long, env = "FINDER_SESSION_DIR")]
    session_dir: Option<PathBuf>,
    /// Allowed CORS origin, or `*`.
    #[arg(long, env = "FINDER_CORS_ORIGIN")]
    cors_origin: Option<String>,
}

/// A failure with its exit code.
pub enum Failure {
    Domain(String),
    Usage(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Domain(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

impl From<finder_core::Error> for Failure {
    fn from(e: finder_core::Error) -> Self {
        match e {
            finder_core::Error::InvalidParams(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(args) => ingest(args),
        Command::Find(args) => find::run(args),
        Command::Serve(args) => serve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}

fn require_file(path: &Path, what: &str) -> Result<(), Failure> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{what} `{}` not found",
            path.display()
        )))
    }
}

fn ingest_file(path: &Path, filter: &FilterArgs) -> Result<(CorpusIndex, IngestReport), Failure> {
    require_file(path, "corpus")?;
    let filter = filter.resolve()?;
    Ok(finder_core::ingest_path(path, &filter)?)
}

impl Source {
    pub fn load(&self) -> Result<CorpusIndex, Failure> {
        match (&self.corpus, &self.snapshot) {
            (Some(path), _) => Ok(ingest_file(path, &self.filter)?.0),
            (None, Some(path)) => {
                require_file(path, "snapshot")?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                let snap = serde_json::from_str(&text)
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
                Ok(CorpusIndex::from_snapshot(snap)?)
            }
            (None, None) => Err(Failure::Usage(
                "one of --corpus or --snapshot is required".into(),
            )),
        }
    }
}

fn ingest(args: IngestArgs) -> Result<(), Failure> {
    let (index, report) = ingest_file(&args.corpus, &args.filter)?;
    if let Some(path) = &args.snapshot {
        let json = serde_json::to_string(&index.snapshot()).expect("snapshot serializes");
        std::fs::write(path, json)
            .map_err(|e| Failure::Domain(format!("writing {}: {e}", path.display())))?;
    }
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Text => print!("{}", report_text(&report)),
    }
    Ok(())
}

fn report_text(r: &IngestReport) -> String {
    format!(
        "{} papers, {} citations, {} authors\n\
         records read:      {}\n\
         papers dropped:    {} (duplicates {}, incomplete {}, missing year {}, out of scope {}, non-papers {})\n\
         citations dropped: {}\n",
        r.papers_kept,
        r.citations_kept,
        r.authors,
        r.records_read,
        r.papers_dropped(),
        r.duplicates,
        r.dropped_incomplete,
        r.dropped_missing_year,
        r.dropped_out_of_scope,
        r.dropped_non_papers,
        r.citations_dropped,
    )
}

fn serve(args: ServeArgs) -> Result<(), Failure> {
    let index = Arc::new(args.source.load()?);
    let store: Arc<dyn SessionStore> = match &args.session_dir {
        Some(dir) => Arc::new(
            DirStore::open(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?,
        ),
        None => Arc::new(MemoryStore::default()),
    };
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new()
        .map_err(|e| Failure::Domain(format!("starting runtime: {e}")))?;
    let stats = index.stats();
    runtime
        .block_on(finder_server::serve(
            index,
            addr,
            store,
            args.cors_origin.as_deref(),
            |bound| {
                println!("listening on http://{bound}");
                eprintln!(
                    "corpus: {} papers, {} citations, {} authors",
                    stats.papers, stats.citations, stats.authors
                );
            },
        ))
        .map_err(|e| Failure::Domain(format!("server on {addr}: {e}")))
}
