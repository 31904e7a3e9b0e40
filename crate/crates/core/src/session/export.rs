use std::fmt::Write as _;

use serde::Serialize;

use super::Session;
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::ids::{AuthorId, PaperId};
use crate::links;
use crate::ranking::relevance_score;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BibEntry {
    pub paper_id: PaperId,
    pub authors: Vec<String>,
    pub title: String,
    pub venue: String,
    pub year: i32,
    pub dblp_url: String,
}

impl BibEntry {
    pub fn citation(&self) -> String {
        let mut s = String::new();
        if !self.authors.is_empty() {
            s.push_str(&self.authors.join(", "));
            s.push_str(". ");
        }
        s.push_str(&self.title);
        s.push('.');
        if !self.venue.is_empty() {
            s.push(' ');
            s.push_str(&self.venue);
            s.push(',');
        }
        let _ = write!(s, " {}.", self.year);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExportSubstitute {
    pub author_id: AuthorId,
    pub name: String,
    pub common_papers: usize,
    pub relevance: f64,
    pub dblp_url: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExportReviewer {
    pub author_id: AuthorId,
    pub name: String,
    pub relevance: f64,
    pub dblp_url: String,
    /// Selected papers authored by the reviewer.
    pub papers: Vec<BibEntry>,
    pub substitutes: Vec<ExportSubstitute>,
}

/// Justified reviewer list: each reviewer with the selected papers that
/// motivate the choice and ranked substitutes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExportDocument {
    pub session_id: String,
    pub reviewers: Vec<ExportReviewer>,
}

fn bib_entry(index: &CorpusIndex, id: &PaperId) -> Result<BibEntry> {
    let p = index.paper(id)?;
    Ok(BibEntry {
        paper_id: p.id.clone(),
        authors: p.authors.iter().map(|a| a.name.clone()).collect(),
        title: p.title.clone(),
        venue: p.venue.clone(),
        year: p.year,
        dblp_url: links::paper_url(&p.title),
    })
}

impl Session {
    pub fn export(&self, index: &CorpusIndex) -> Result<ExportDocument> {
        if self.reviewers.is_empty() {
            return Err(Error::NoReviewers);
        }
        let mut reviewers = Vec::with_capacity(self.reviewers.len());
        for r in &self.reviewers {
            let name = index.author_name(r)?.to_owned();
            let mut papers: Vec<BibEntry> = index
                .papers_of(r)
                .iter()
                .filter(|p| self.network.is_selected(p))
                .map(|p| bib_entry(index, p))
                .collect::<Result<_>>()?;
            papers.sort_by(|a, b| {
                a.year
                    .cmp(&b.year)
                    .then_with(|| a.title.cmp(&b.title))
                    .then_with(|| a.paper_id.cmp(&b.paper_id))
            });
            let substitutes = self
                .substitutes(index, r)?
                .entries
                .into_iter()
                .map(|e| ExportSubstitute {
                    dblp_url: links::author_url(&e.name),
                    author_id: e.author_id,
                    name: e.name,
                    common_papers: e.common_papers,
                    relevance: e.relevance,
                })
                .collect();
            reviewers.push(ExportReviewer {
                author_id: r.clone(),
                relevance: relevance_score(r, &self.network, index, &self.settings.params)?,
                dblp_url: links::author_url(&name),
                name,
                papers,
                substitutes,
            });
        }
        Ok(ExportDocument {
            session_id: self.id.clone(),
            reviewers,
        })
    }
}

impl ExportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("export serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering: one block per reviewer with a numbered
    /// bibliography and a substitutes list.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let title = "Selected reviewers";
        let _ = writeln!(out, "{title}\n{}", "=".repeat(title.len()));
        for (i, r) in self.reviewers.iter().enumerate() {
            let _ = writeln!(
                out,
                "\n{}. {} (relevance {:.2})",
                i + 1,
                r.name,
                r.relevance
            );
            let _ = writeln!(out, "   {}", r.dblp_url);
            if r.papers.is_empty() {
                let _ = writeln!(out, "   No selected papers.");
            }
            for (j, p) in r.papers.iter().enumerate() {
                let _ = writeln!(out, "   [{}] {}", j + 1, p.citation());
            }
            let _ = writeln!(out, "   Substitutes:");
            if r.substitutes.is_empty() {
                let _ = writeln!(out, "     (none)");
            }
            for s in &r.substitutes {
                let plural = if s.common_papers == 1 { "" } else { "s" };
                let _ = writeln!(
                    out,
                    "     - {} ({} common paper{plural}, relevance {:.2})",
                    s.name, s.common_papers, s.relevance
                );
            }
        }
        out
    }
}
