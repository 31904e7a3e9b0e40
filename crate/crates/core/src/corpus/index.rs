use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::PaperRecord;
use crate::error::{Error, Result};
use crate::ids::{AuthorId, AuthorPair, PaperId};
use crate::network::PaperNetworkState;

const SNAPSHOT_FORMAT: &str = "corpus-snapshot";
const SNAPSHOT_VERSION: u32 = 1;

static EMPTY_PAPERS: BTreeSet<PaperId> = BTreeSet::new();
static EMPTY_AUTHORS: BTreeSet<AuthorId> = BTreeSet::new();

/// Immutable, queryable store of a cleaned corpus.
///
/// Both citation directions, authorship and co-authorship are materialized
/// at construction; nothing mutates afterwards, so a shared reference can be
/// read from any number of threads.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusIndex {
    papers: BTreeMap<PaperId, PaperRecord>,
    in_citations: BTreeMap<PaperId, BTreeSet<PaperId>>,
    out_citations: BTreeMap<PaperId, BTreeSet<PaperId>>,
    author_papers: BTreeMap<AuthorId, BTreeSet<PaperId>>,
    author_names: BTreeMap<AuthorId, String>,
    coauthor_edges: BTreeMap<AuthorPair, BTreeSet<PaperId>>,
    coauthors: BTreeMap<AuthorId, BTreeSet<AuthorId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub papers: usize,
    pub citations: usize,
    pub authors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TitleHit {
    pub paper_id: PaperId,
    pub title: String,
    pub year: i32,
    pub already_in_network: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuthorHit {
    pub author_id: AuthorId,
    pub name: String,
    pub papers: usize,
}

/// Serialized form of an index: the cleaned records, nothing derived.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusSnapshot {
    pub format: String,
    pub version: u32,
    pub papers: Vec<PaperRecord>,
}

impl CorpusIndex {
    /// Builds the index from cleaned records. Citations to ids outside the
    /// record set and self-citations are dropped; the second return value
    /// counts them. Later duplicates of an id are ignored.
    pub fn from_records<I>(records: I) -> (Self, usize)
    where
        I: IntoIterator<Item = PaperRecord>,
    {
        let mut papers = BTreeMap::new();
        for record in records {
            papers.entry(record.id.clone()).or_insert(record);
        }

        let mut index = CorpusIndex::default();
        let mut dropped_citations = 0;
        for id in papers.keys() {
            index.in_citations.insert(id.clone(), BTreeSet::new());
            index.out_citations.insert(id.clone(), BTreeSet::new());
        }

        for record in papers.values_mut() {
            let mut kept = Vec::with_capacity(record.out_citations.len());
            let mut seen = BTreeSet::new();
            for cited in record.out_citations.drain(..) {
                if cited == record.id || !index.in_citations.contains_key(&cited) {
                    dropped_citations += 1;
                    continue;
                }
                if seen.insert(cited.clone()) {
                    kept.push(cited);
                }
            }
            record.out_citations = kept;

            for cited in &record.out_citations {
                index
                    .in_citations
                    .get_mut(cited)
                    .expect("cited paper present")
                    .insert(record.id.clone());
                index
                    .out_citations
                    .get_mut(&record.id)
                    .expect("citing paper present")
                    .insert(cited.clone());
            }

            let mut seen_authors = BTreeSet::new();
            record.authors.retain(|a| seen_authors.insert(a.id.clone()));
            for author in &record.authors {
                index
                    .author_papers
                    .entry(author.id.clone())
                    .or_default()
                    .insert(record.id.clone());
                index
                    .author_names
                    .entry(author.id.clone())
                    .or_insert_with(|| author.name.clone());
            }
            for (i, a) in record.authors.iter().enumerate() {
                for b in &record.authors[i + 1..] {
                    index
                        .coauthor_edges
                        .entry(AuthorPair::new(a.id.clone(), b.id.clone()))
                        .or_default()
                        .insert(record.id.clone());
                    index
                        .coauthors
                        .entry(a.id.clone())
                        .or_default()
                        .insert(b.id.clone());
                    index
                        .coauthors
                        .entry(b.id.clone())
                        .or_default()
                        .insert(a.id.clone());
                }
            }
        }
        index.papers = papers;
        (index, dropped_citations)
    }

    pub fn stats(&self) -> CorpusStats {
        CorpusStats {
            papers: self.papers.len(),
            citations: self.out_citations.values().map(BTreeSet::len).sum(),
            authors: self.author_papers.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn paper(&self, id: &PaperId) -> Result<&PaperRecord> {
        self.papers
            .get(id)
            .ok_or_else(|| Error::UnknownPaper(id.clone()))
    }

    pub fn contains_paper(&self, id: &PaperId) -> bool {
        self.papers.contains_key(id)
    }

    pub fn contains_author(&self, id: &AuthorId) -> bool {
        self.author_papers.contains_key(id)
    }

    pub fn papers(&self) -> impl Iterator<Item = &PaperRecord> {
        self.papers.values()
    }

    pub fn authors(&self) -> impl Iterator<Item = (&AuthorId, &str)> {
        self.author_names.iter().map(|(id, n)| (id, n.as_str()))
    }

    /// Papers citing `id` (the set whose size is the citation count).
    pub fn citing(&self, id: &PaperId) -> &BTreeSet<PaperId> {
        self.in_citations.get(id).unwrap_or(&EMPTY_PAPERS)
    }

    /// Papers cited by `id`.
    pub fn cited_by(&self, id: &PaperId) -> &BTreeSet<PaperId> {
        self.out_citations.get(id).unwrap_or(&EMPTY_PAPERS)
    }

    /// Number of corpus papers citing `id`.
    pub fn citation_count(&self, id: &PaperId) -> Result<usize> {
        self.in_citations
            .get(id)
            .map(BTreeSet::len)
            .ok_or_else(|| Error::UnknownPaper(id.clone()))
    }

    pub fn author_name(&self, id: &AuthorId) -> Result<&str> {
        self.author_names
            .get(id)
            .map(String::as_str)
            .ok_or_else(|| Error::UnknownAuthor(id.clone()))
    }

    /// Every corpus paper authored by `id`.
    pub fn papers_of(&self, id: &AuthorId) -> &BTreeSet<PaperId> {
        self.author_papers.get(id).unwrap_or(&EMPTY_PAPERS)
    }

    /// All-time co-authors of `id`.
    pub fn coauthors_of(&self, id: &AuthorId) -> &BTreeSet<AuthorId> {
        self.coauthors.get(id).unwrap_or(&EMPTY_AUTHORS)
    }

    /// Papers co-authored by `a` and `b`; the order of the arguments is
    /// irrelevant.
    pub fn shared_papers(&self, a: &AuthorId, b: &AuthorId) -> &BTreeSet<PaperId> {
        self.coauthor_edges
            .get(&AuthorPair::new(a.clone(), b.clone()))
            .unwrap_or(&EMPTY_PAPERS)
    }

    pub fn coauthor_pairs(&self) -> impl Iterator<Item = (&AuthorPair, &BTreeSet<PaperId>)> {
        self.coauthor_edges.iter()
    }

    /// Most recent publication year of `id`, if it has papers.
    pub fn last_active_year(&self, id: &AuthorId) -> Option<i32> {
        self.papers_of(id)
            .iter()
            .filter_map(|p| self.papers.get(p))
            .map(|p| p.year)
            .max()
    }

    pub fn max_year(&self) -> Option<i32> {
        self.papers.values().map(|p| p.year).max()
    }

    /// Case-insensitive title search, year-ordered. A title matches when it
    /// contains the whole query, or every whitespace-separated keyword of it.
    pub fn search_titles(
        &self,
        query: &str,
        limit: usize,
        network: Option<&PaperNetworkState>,
    ) -> Result<Vec<TitleHit>> {
        let query = query.trim().to_lowercase();
        if query.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let keywords: Vec<&str> = query.split_whitespace().collect();
        let mut hits: Vec<&PaperRecord> = self
            .papers
            .values()
            .filter(|p| {
                let title = p.title.to_lowercase();
                title.contains(&query) || keywords.iter().all(|k| title.contains(k))
            })
            .collect();
        hits.sort_by(|a, b| {
            a.year
                .cmp(&b.year)
                .then_with(|| a.title.cmp(&b.title))
                .then_with(|| a.id.cmp(&b.id))
        });
        Ok(hits
            .into_iter()
            .take(limit)
            .map(|p| TitleHit {
                paper_id: p.id.clone(),
                title: p.title.clone(),
                year: p.year,
                already_in_network: network.is_some_and(|n| n.visible().contains(&p.id)),
            })
            .collect())
    }

    /// Case-insensitive name search, ordered by name then id.
    pub fn search_authors(&self, query: &str, limit: usize) -> Result<Vec<AuthorHit>> {
        let query = query.trim().to_lowercase();
        if query.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let mut hits: Vec<AuthorHit> = self
            .author_names
            .iter()
            .filter(|(_, name)| name.to_lowercase().contains(&query))
            .map(|(id, name)| AuthorHit {
                author_id: id.clone(),
                name: name.clone(),
                papers: self.papers_of(id).len(),
            })
            .collect();
        hits.sort_by(|a, b| {
            a.name
                .cmp(&b.name)
                .then_with(|| a.author_id.cmp(&b.author_id))
        });
        hits.truncate(limit);
        Ok(hits)
    }

    /// Papers whose title equals `title` ignoring case and surrounding space.
    pub fn find_by_title(&self, title: &str) -> Vec<&PaperRecord> {
        let title = title.trim();
        self.papers
            .values()
            .filter(|p| p.title.trim().eq_ignore_ascii_case(title))
            .collect()
    }

    pub fn snapshot(&self) -> CorpusSnapshot {
        CorpusSnapshot {
            format: SNAPSHOT_FORMAT.to_owned(),
            version: SNAPSHOT_VERSION,
            papers: self.papers.values().cloned().collect(),
        }
    }

    pub fn from_snapshot(snapshot: CorpusSnapshot) -> Result<Self> {
        if snapshot.format != SNAPSHOT_FORMAT || snapshot.version != SNAPSHOT_VERSION {
            return Err(Error::Schema(format!(
                "unsupported snapshot {} v{}",
                snapshot.format, snapshot.version
            )));
        }
        Ok(Self::from_records(snapshot.papers).0)
    }
}
