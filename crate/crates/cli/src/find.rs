//! Headless pipeline: seeds in, ranked candidates and an export out.
//!
//! The network is built from the seeds alone. Reviewers are then picked
//! greedily in rank order, skipping anyone a selection would put in
//! conflict. The greedy pick is a convenience, not an optimal assignment.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use finder_core::session::ExportReviewer;
use finder_core::{AuthorId, CorpusIndex, Error, PaperId, Params, Role, Session, Settings};
use serde::Serialize;

use crate::{Failure, Format, Source};

const SESSION_ID: &str = "find";

#[derive(Args)]
pub struct FindArgs {
    #[command(flatten)]
    source: Source,
    /// Seed paper, by id or exact title; repeatable.
    #[arg(long = "seed", required = true)]
    seeds: Vec<String>,
    /// Submitting author id; repeatable.
    #[arg(long = "author")]
    authors: Vec<String>,
    /// Number of reviewers to select.
    #[arg(short, long, default_value_t = 3)]
    k: usize,
    /// Weight of selected papers. Defaults to 0.7, or 1 - beta.
    #[arg(long)]
    alpha: Option<f64>,
    /// Weight of visible, unselected papers. Defaults to 0.3, or 1 - alpha.
    #[arg(long)]
    beta: Option<f64>,
    /// Minimum number of selected papers a candidate must author.
    #[arg(long)]
    min_papers: Option<usize>,
    /// Drop researchers inactive for more than this many years.
    #[arg(long)]
    researcher_expiration: Option<u32>,
    /// Ignore co-authorships older than this many years.
    #[arg(long)]
    conflict_expiration: Option<u32>,
    /// Year the expirations count back from. Defaults to the newest paper.
    #[arg(long)]
    reference_year: Option<i32>,
    /// Substitutes listed per reviewer.
    #[arg(long, default_value_t = finder_core::session::DEFAULT_SUBSTITUTE_LIMIT)]
    substitutes: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct CandidateRow {
    rank: usize,
    author_id: AuthorId,
    name: String,
    relevance: f64,
    selected_papers: usize,
    visible_papers: usize,
    role: Role,
}

#[derive(Serialize)]
struct FindOutput {
    seeds: Vec<PaperId>,
    submitting_authors: Vec<AuthorId>,
    candidates: Vec<CandidateRow>,
    /// Candidates passed over by the greedy pick because of a conflict.
    skipped: Vec<AuthorId>,
    reviewers: Vec<ExportReviewer>,
}

fn resolve_seed(index: &CorpusIndex, s: &str) -> Result<PaperId, Failure> {
    let id = PaperId::from(s);
    if index.contains_paper(&id) {
        return Ok(id);
    }
    match index.find_by_title(s).as_slice() {
        [] => Err(Failure::Domain(format!(
            "seed `{s}` matches no paper id or title"
        ))),
        [p] => Ok(p.id.clone()),
        many => Err(Failure::Domain(format!(
            "seed `{s}` matches {} papers; use an id",
            many.len()
        ))),
    }
}

impl FindArgs {
    fn settings(&self, index: &CorpusIndex) -> Result<Settings, Failure> {
        let mut settings = Settings::for_corpus(index);
        settings.params = match (self.alpha, self.beta) {
            (None, None) => Params::default(),
            (Some(a), None) => Params::new(a, 1.0 - a)?,
            (None, Some(b)) => Params::new(1.0 - b, b)?,
            (Some(a), Some(b)) => Params::new(a, b)?,
        };
        let th = &mut settings.thresholds;
        if let Some(n) = self.min_papers {
            th.min_selected_papers = n;
        }
        th.researcher_expiration_years = self.researcher_expiration;
        th.conflict_expiration_years = self.conflict_expiration;
        if let Some(y) = self.reference_year {
            th.reference_year = y;
        }
        th.validate()?;
        settings.substitute_limit = self.substitutes;
        Ok(settings)
    }
}

pub fn run(args: FindArgs) -> Result<(), Failure> {
    let index = args.source.load()?;
    let settings = args.settings(&index)?;

    let mut seeds = Vec::new();
    for s in &args.seeds {
        let id = resolve_seed(&index, s)?;
        if !seeds.contains(&id) {
            seeds.push(id);
        }
    }
    let authors: BTreeSet<AuthorId> = args
        .authors
        .iter()
        .map(|a| AuthorId::from(a.as_str()))
        .collect();

    let mut session = Session::new(SESSION_ID, &index)
        .update_settings(&index, settings)?
        .add_seeds(&index, &seeds)?
        .set_submitting_authors(&index, authors)?;

    let mut skipped = Vec::new();
    for entry in session.candidates(&index) {
        if session.reviewers().len() >= args.k {
            break;
        }
        let r = &entry.candidate.author_id;
        match session.select_reviewer(&index, r) {
            Ok(next) => session = next,
            Err(
                Error::ConflictsWithSubmitters { .. }
                | Error::ConflictsWithReviewers { .. }
                | Error::NotCandidate(_),
            ) => skipped.push(r.clone()),
            Err(e) => return Err(e.into()),
        }
    }

    let reviewers = if session.reviewers().is_empty() {
        Vec::new()
    } else {
        session.export(&index)?.reviewers
    };
    let candidates = session
        .candidates(&index)
        .into_iter()
        .enumerate()
        .map(|(i, e)| CandidateRow {
            rank: i + 1,
            selected_papers: e.candidate.selected_paper_ids.len(),
            visible_papers: e.candidate.visible_paper_ids.len(),
            author_id: e.candidate.author_id,
            name: e.candidate.name,
            relevance: e.candidate.relevance,
            role: e.role,
        })
        .collect();
    let out = FindOutput {
        seeds: session.network().seeds().to_vec(),
        submitting_authors: session.submitting_authors().iter().cloned().collect(),
        candidates,
        skipped,
        reviewers,
    };

    let rendered = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out).expect("output serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&out, &session, &index)?,
    };
    match &args.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Failure::Domain(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn role_label(role: Role) -> &'static str {
    match role {
        Role::SubmittingAuthor => "submitting author",
        Role::SubmittingCoauthor => "co-author of a submitter",
        Role::SelectedReviewer => "selected",
        Role::ReviewerCoauthor => "co-author of a reviewer",
        Role::Candidate => "",
        Role::Collaborator => "collaborator",
    }
}

fn render_text(
    out: &FindOutput,
    session: &Session,
    index: &CorpusIndex,
) -> Result<String, Failure> {
    let mut s = String::new();
    let _ = writeln!(s, "Seeds");
    for id in &out.seeds {
        let p = index.paper(id)?;
        let _ = writeln!(s, "  {} {} ({})", p.id, p.title, p.year);
    }
    if !out.submitting_authors.is_empty() {
        let _ = writeln!(s, "Submitting authors");
        for a in &out.submitting_authors {
            let _ = writeln!(s, "  {} {}", a, index.author_name(a)?);
        }
    }
    let _ = writeln!(s, "\nCandidates");
    if out.candidates.is_empty() {
        let _ = writeln!(s, "  (none)");
    }
    for c in &out.candidates {
        let label = role_label(c.role);
        let _ = write!(
            s,
            "{:>3}. {} ({}) relevance {:.2}, {} selected / {} visible",
            c.rank, c.name, c.author_id, c.relevance, c.selected_papers, c.visible_papers
        );
        if label.is_empty() {
            let _ = writeln!(s);
        } else {
            let _ = writeln!(s, " [{label}]");
        }
    }
    let _ = writeln!(s);
    if session.reviewers().is_empty() {
        let _ = writeln!(s, "No reviewers selected.");
    } else {
        s.push_str(&session.export(index)?.to_text());
    }
    Ok(s)
}
