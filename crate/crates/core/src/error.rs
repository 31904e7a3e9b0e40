use thiserror::Error;

use crate::ids::{AuthorId, PaperId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A researcher pair that violates selection safety: `reviewer` shares a
/// non-expired paper with `other` (a submitting author or another reviewer).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ConflictPair {
    pub reviewer: AuthorId,
    pub other: AuthorId,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown paper `{0}`")]
    UnknownPaper(PaperId),
    #[error("unknown researcher `{0}`")]
    UnknownAuthor(AuthorId),

    #[error("search query is empty")]
    EmptyQuery,
    #[error("at least one seed paper is required")]
    NoSeeds,
    #[error("paper `{0}` is not in the visible network")]
    NotVisible(PaperId),
    #[error("paper `{0}` is not selected")]
    NotSelected(PaperId),
    #[error("paper `{0}` is a seed; use remove_seed instead")]
    SeedDeselect(PaperId),
    #[error("paper `{0}` is not a seed")]
    NotSeed(PaperId),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {message}")]
    Ingest { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("researcher `{0}` is already a selected reviewer")]
    AlreadySelected(AuthorId),
    #[error("researcher `{0}` is not a selected reviewer")]
    NotReviewer(AuthorId),
    #[error("researcher `{0}` is not a candidate reviewer")]
    NotCandidate(AuthorId),
    #[error("researcher `{reviewer}` conflicts with submitting authors: {}", join(.with))]
    ConflictsWithSubmitters {
        reviewer: AuthorId,
        with: Vec<AuthorId>,
    },
    #[error("researcher `{reviewer}` conflicts with selected reviewers: {}", join(.with))]
    ConflictsWithReviewers {
        reviewer: AuthorId,
        with: Vec<AuthorId>,
    },
    #[error("selection would violate conflict rules for {} pair(s)", .0.len())]
    SelectionConflict(Vec<ConflictPair>),
    #[error("researcher `{substitute}` is not a valid substitute for `{reviewer}`")]
    NotSubstitute {
        reviewer: AuthorId,
        substitute: AuthorId,
    },
    #[error("no reviewers selected")]
    NoReviewers,

    #[error("session schema: {0}")]
    Schema(String),
    #[error("session references unknown {kind} `{id}`")]
    DanglingId { kind: &'static str, id: String },
}

fn join(ids: &[AuthorId]) -> String {
    ids.iter()
        .map(AuthorId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownPaper(_) => "unknown_paper",
            Error::UnknownAuthor(_) => "unknown_author",
            Error::EmptyQuery => "empty_query",
            Error::NoSeeds => "no_seeds",
            Error::NotVisible(_) => "paper_not_visible",
            Error::NotSelected(_) => "paper_not_selected",
            Error::SeedDeselect(_) => "seed_deselect",
            Error::NotSeed(_) => "not_a_seed",
            Error::InvalidParams(_) => "invalid_parameters",
            Error::Ingest { .. } => "ingest_error",
            Error::Io(_) => "io_error",
            Error::AlreadySelected(_) => "already_selected",
            Error::NotReviewer(_) => "not_a_reviewer",
            Error::NotCandidate(_) => "not_a_candidate",
            Error::ConflictsWithSubmitters { .. } => "conflict_with_submitters",
            Error::ConflictsWithReviewers { .. } => "conflict_with_reviewers",
            Error::SelectionConflict(_) => "selection_conflict",
            Error::NotSubstitute { .. } => "not_a_substitute",
            Error::NoReviewers => "no_reviewers",
            Error::Schema(_) => "schema_error",
            Error::DanglingId { .. } => "dangling_id",
        }
    }
}
