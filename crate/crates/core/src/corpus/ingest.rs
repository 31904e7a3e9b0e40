use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AuthorRef, CorpusIndex, IngestFilter, PaperRecord};
use crate::error::{Error, Result};
use crate::ids::{AuthorId, PaperId};

/// Record shape of the Semantic Scholar research corpus NDJSON dump.
/// Everything is optional so that incomplete records are dropped rather
/// than aborting the run.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawRecord {
    id: Option<String>,
    title: Option<String>,
    year: Option<i64>,
    venue: Option<String>,
    #[serde(default)]
    authors: Vec<RawAuthor>,
    #[serde(default)]
    out_citations: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct RawAuthor {
    #[serde(default)]
    ids: Vec<String>,
    #[serde(default)]
    name: String,
}

/// Counts reported by an ingestion run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub records_read: usize,
    pub papers_kept: usize,
    pub duplicates: usize,
    /// Records without an id or title.
    pub dropped_incomplete: usize,
    pub dropped_missing_year: usize,
    pub dropped_out_of_scope: usize,
    pub dropped_non_papers: usize,
    pub citations_kept: usize,
    pub citations_dropped: usize,
    pub authors: usize,
}

impl IngestReport {
    pub fn papers_dropped(&self) -> usize {
        self.duplicates
            + self.dropped_incomplete
            + self.dropped_missing_year
            + self.dropped_out_of_scope
            + self.dropped_non_papers
    }
}

/// Parses an NDJSON stream, applies the filter and cleaning rules, and
/// builds the index. Blank lines are skipped; a line that is not a JSON
/// record aborts with its 1-based line number.
pub fn ingest_corpus<R: BufRead>(
    source: R,
    filter: &IngestFilter,
) -> Result<(CorpusIndex, IngestReport)> {
    filter.validate()?;
    let mut report = IngestReport::default();
    let mut seen: HashSet<String> = HashSet::new();
    let mut kept = Vec::new();

    for (n, line) in source.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| Error::Ingest {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line).map_err(|e| Error::Ingest {
            line: line_no,
            message: e.to_string(),
        })?;
        report.records_read += 1;

        let (Some(id), Some(title)) = (raw.id, raw.title) else {
            report.dropped_incomplete += 1;
            continue;
        };
        if id.trim().is_empty() || title.trim().is_empty() {
            report.dropped_incomplete += 1;
            continue;
        }
        if !seen.insert(id.clone()) {
            report.duplicates += 1;
            continue;
        }
        let year = match raw.year.and_then(|y| i32::try_from(y).ok()) {
            Some(y) if y != 0 => y,
            _ => {
                report.dropped_missing_year += 1;
                continue;
            }
        };
        let venue = raw.venue.unwrap_or_default();
        if !filter.admits(year, &venue) {
            report.dropped_out_of_scope += 1;
            continue;
        }
        let record = PaperRecord {
            id: PaperId::new(id),
            title: title.trim().to_owned(),
            year,
            venue,
            authors: raw
                .authors
                .into_iter()
                .filter_map(|a| {
                    let id = a.ids.into_iter().find(|i| !i.trim().is_empty())?;
                    Some(AuthorRef {
                        id: AuthorId::new(id),
                        name: a.name.trim().to_owned(),
                    })
                })
                .collect(),
            out_citations: raw.out_citations.into_iter().map(PaperId::new).collect(),
        };
        if !filter.cleaning.keep(&record) {
            report.dropped_non_papers += 1;
            continue;
        }
        kept.push(record);
    }

    let (index, dropped_citations) = CorpusIndex::from_records(kept);
    let stats = index.stats();
    report.papers_kept = stats.papers;
    report.citations_kept = stats.citations;
    report.citations_dropped = dropped_citations;
    report.authors = stats.authors;
    Ok((index, report))
}

pub fn ingest_path(path: &Path, filter: &IngestFilter) -> Result<(CorpusIndex, IngestReport)> {
    let file = File::open(path)?;
    ingest_corpus(BufReader::new(file), filter)
}
