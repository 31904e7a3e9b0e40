//! Relevance scoring and candidate reviewer derivation.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::ids::{AuthorId, PaperId};
use crate::network::PaperNetworkState;
use crate::scalar::Scalar;

/// Weights of selected and visible-but-unselected papers in a relevance
/// score. Both are non-negative and sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelevanceParams<S> {
    alpha: S,
    beta: S,
}

impl<S: Scalar> RelevanceParams<S> {
    pub fn new(alpha: S, beta: S) -> Result<Self> {
        let zero = S::zero();
        if alpha < zero || beta < zero {
            return Err(Error::InvalidParams(format!(
                "weights must be non-negative (alpha={alpha:?}, beta={beta:?})"
            )));
        }
        if (alpha + beta - S::one()).abs() > S::weight_tolerance() {
            return Err(Error::InvalidParams(format!(
                "weights must sum to one (alpha={alpha:?}, beta={beta:?})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> S {
        self.alpha
    }

    pub fn beta(&self) -> S {
        self.beta
    }

    /// `alpha * selected + beta * unselected`.
    pub fn score(&self, selected: usize, unselected: usize) -> S {
        self.alpha * S::from_count(selected) + self.beta * S::from_count(unselected)
    }
}

impl<S: Scalar> Default for RelevanceParams<S> {
    /// alpha = 0.7, beta = 0.3.
    fn default() -> Self {
        let ten = S::from_count(10);
        Self {
            alpha: S::from_count(7) / ten,
            beta: S::from_count(3) / ten,
        }
    }
}

/// User thresholds bounding the candidate list and the conflict relation.
/// `None` expirations mean "never expires".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Minimum number of authored selected papers (productivity).
    pub min_selected_papers: usize,
    /// Maximum years since the last authored paper.
    pub researcher_expiration_years: Option<u32>,
    /// Maximum years since the last co-authored paper for a conflict to hold.
    pub conflict_expiration_years: Option<u32>,
    /// The "current" year for age computations.
    pub reference_year: i32,
}

impl Thresholds {
    /// Disabled thresholds with `reference_year` set.
    pub fn open(reference_year: i32) -> Self {
        Self {
            min_selected_papers: 1,
            researcher_expiration_years: None,
            conflict_expiration_years: None,
            reference_year,
        }
    }

    /// Disabled thresholds referenced to the newest paper in the corpus.
    pub fn for_corpus(index: &CorpusIndex) -> Self {
        Self::open(index.max_year().unwrap_or(0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_selected_papers == 0 {
            return Err(Error::InvalidParams(
                "min_selected_papers must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn within(&self, year: i32, limit: Option<u32>) -> bool {
        match limit {
            None => true,
            Some(limit) => i64::from(self.reference_year) - i64::from(year) <= i64::from(limit),
        }
    }

    pub fn is_active(&self, last_active_year: i32) -> bool {
        self.within(last_active_year, self.researcher_expiration_years)
    }

    pub fn conflict_holds(&self, last_common_year: i32) -> bool {
        self.within(last_common_year, self.conflict_expiration_years)
    }
}

/// A researcher ranked for reviewing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReviewerCandidate<S> {
    pub author_id: AuthorId,
    pub name: String,
    pub relevance: S,
    /// Authored papers in the selected set.
    pub selected_paper_ids: BTreeSet<PaperId>,
    /// Authored papers in the visible set (selected ones included).
    pub visible_paper_ids: BTreeSet<PaperId>,
    pub last_active_year: i32,
    /// Every authored corpus paper, oldest first.
    pub career: Vec<(i32, PaperId)>,
}

impl<S: Scalar> ReviewerCandidate<S> {
    fn build(
        index: &CorpusIndex,
        state: &PaperNetworkState,
        params: &RelevanceParams<S>,
        author: &AuthorId,
    ) -> Result<Self> {
        let name = index.author_name(author)?.to_owned();
        let papers = index.papers_of(author);
        let selected_paper_ids: BTreeSet<PaperId> = papers
            .iter()
            .filter(|p| state.is_selected(p))
            .cloned()
            .collect();
        let visible_paper_ids: BTreeSet<PaperId> = papers
            .iter()
            .filter(|p| state.is_visible(p))
            .cloned()
            .collect();
        let mut career: Vec<(i32, PaperId)> = papers
            .iter()
            .map(|p| Ok((index.paper(p)?.year, p.clone())))
            .collect::<Result<_>>()?;
        career.sort();
        let last_active_year = career.last().map_or(i32::MIN, |(y, _)| *y);
        let relevance = params.score(
            selected_paper_ids.len(),
            visible_paper_ids.len() - selected_paper_ids.len(),
        );
        Ok(Self {
            author_id: author.clone(),
            name,
            relevance,
            selected_paper_ids,
            visible_paper_ids,
            last_active_year,
            career,
        })
    }
}

/// Candidate list order: relevance descending, then name, then id.
pub fn rank_order<S: Scalar>(a: &ReviewerCandidate<S>, b: &ReviewerCandidate<S>) -> Ordering {
    b.relevance
        .partial_cmp(&a.relevance)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.name.cmp(&b.name))
        .then_with(|| a.author_id.cmp(&b.author_id))
}

/// Relevance of `author` in the current network.
pub fn relevance_score<S: Scalar>(
    author: &AuthorId,
    state: &PaperNetworkState,
    index: &CorpusIndex,
    params: &RelevanceParams<S>,
) -> Result<S> {
    if !index.contains_author(author) {
        return Err(Error::UnknownAuthor(author.clone()));
    }
    let (mut selected, mut unselected) = (0, 0);
    for p in index.papers_of(author) {
        if state.is_selected(p) {
            selected += 1;
        } else if state.is_visible(p) {
            unselected += 1;
        }
    }
    Ok(params.score(selected, unselected))
}

/// Authors of the selected papers, or of all visible papers when `expand`.
pub fn base_researchers(
    state: &PaperNetworkState,
    index: &CorpusIndex,
    expand: bool,
) -> BTreeSet<AuthorId> {
    let papers = if expand {
        state.visible()
    } else {
        state.selected()
    };
    papers
        .iter()
        .filter_map(|p| index.paper(p).ok())
        .flat_map(|p| p.authors.iter().map(|a| a.id.clone()))
        .collect()
}

/// Ranked candidate reviewers.
///
/// The productivity threshold only applies without `expand`; the activity
/// threshold applies in both modes.
pub fn candidate_reviewers<S: Scalar>(
    state: &PaperNetworkState,
    index: &CorpusIndex,
    params: &RelevanceParams<S>,
    thresholds: &Thresholds,
    expand: bool,
) -> Vec<ReviewerCandidate<S>> {
    let mut out: Vec<ReviewerCandidate<S>> = base_researchers(state, index, expand)
        .iter()
        .filter_map(|a| ReviewerCandidate::build(index, state, params, a).ok())
        .filter(|c| expand || c.selected_paper_ids.len() >= thresholds.min_selected_papers)
        .filter(|c| thresholds.is_active(c.last_active_year))
        .collect();
    out.sort_by(rank_order);
    out
}
