//! Scholarly corpus: record types, ingestion, cleaning and the immutable index.

mod index;
mod ingest;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{AuthorId, PaperId};

pub use index::{AuthorHit, CorpusIndex, CorpusSnapshot, CorpusStats, TitleHit};
pub use ingest::{ingest_corpus, ingest_path, IngestReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorRef {
    pub id: AuthorId,
    pub name: String,
}

/// One publication as stored in the index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: PaperId,
    pub title: String,
    pub year: i32,
    pub venue: String,
    pub authors: Vec<AuthorRef>,
    pub out_citations: Vec<PaperId>,
}

/// Venue and year scoping applied during ingestion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestFilter {
    /// Allowed venues, compared case-insensitively. Empty allows all.
    pub venues: Vec<String>,
    pub year_min: i32,
    pub year_max: i32,
    pub cleaning: CleaningRules,
}

impl Default for IngestFilter {
    fn default() -> Self {
        Self {
            venues: Vec::new(),
            year_min: i32::MIN,
            year_max: i32::MAX,
            cleaning: CleaningRules::default(),
        }
    }
}

impl IngestFilter {
    pub fn years(year_min: i32, year_max: i32) -> Self {
        Self {
            year_min,
            year_max,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.year_min > self.year_max {
            return Err(Error::InvalidParams(format!(
                "year_min {} exceeds year_max {}",
                self.year_min, self.year_max
            )));
        }
        Ok(())
    }

    pub fn admits(&self, year: i32, venue: &str) -> bool {
        if year < self.year_min || year > self.year_max {
            return false;
        }
        self.venues.is_empty()
            || self
                .venues
                .iter()
                .any(|v| v.trim().eq_ignore_ascii_case(venue.trim()))
    }
}

/// Title prefixes that mark front matter rather than research papers.
pub const DEFAULT_NON_PAPER_PATTERNS: &[&str] = &[
    "preface",
    "foreword",
    "editorial",
    "acknowledgment",
    "reviewers",
    "table of contents",
    "author index",
];

/// Heuristics that separate research papers from front matter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CleaningRules {
    patterns: Vec<String>,
}

impl Default for CleaningRules {
    fn default() -> Self {
        Self::new(DEFAULT_NON_PAPER_PATTERNS.iter().copied())
    }
}

impl CleaningRules {
    pub fn new<I, S>(patterns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            patterns: patterns
                .into_iter()
                .map(|p| p.as_ref().trim().to_lowercase())
                .filter(|p| !p.is_empty())
                .collect(),
        }
    }

    pub fn patterns(&self) -> &[String] {
        &self.patterns
    }

    /// A title is front matter when, lowercased, it begins with one of the
    /// patterns. Prefix matching keeps "Reviewers" out while letting
    /// "Finding reviewers ..." through.
    pub fn is_front_matter(&self, title: &str) -> bool {
        let title = title.trim().to_lowercase();
        self.patterns.iter().any(|p| title.starts_with(p.as_str()))
    }

    /// Keep/drop decision for a parsed record: `true` keeps it.
    pub fn keep(&self, record: &PaperRecord) -> bool {
        !record.authors.is_empty() && !self.is_front_matter(&record.title)
    }
}

/// Convenience wrapper over [`CleaningRules::keep`] with the default list.
pub fn clean_non_papers(record: &PaperRecord) -> bool {
    CleaningRules::default().keep(record)
}
