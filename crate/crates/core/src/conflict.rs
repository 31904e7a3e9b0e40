//! Co-authorship conflicts and the researcher network.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::ids::AuthorId;
use crate::network::PaperNetworkState;
use crate::ranking::{candidate_reviewers, RelevanceParams, ReviewerCandidate, Thresholds};
use crate::scalar::Scalar;

/// Year of the most recent paper shared by `a` and `b`.
pub fn last_common_year(index: &CorpusIndex, a: &AuthorId, b: &AuthorId) -> Option<i32> {
    index
        .shared_papers(a, b)
        .iter()
        .filter_map(|p| index.paper(p).ok())
        .map(|p| p.year)
        .max()
}

/// Whether `a` and `b` are in conflict: distinct, with a shared paper no
/// older than the conflict expiration.
pub fn in_conflict(index: &CorpusIndex, th: &Thresholds, a: &AuthorId, b: &AuthorId) -> bool {
    a != b && last_common_year(index, a, b).is_some_and(|y| th.conflict_holds(y))
}

/// Co-authors of `author` whose collaboration has not expired.
pub fn coauthors(
    author: &AuthorId,
    index: &CorpusIndex,
    th: &Thresholds,
) -> Result<BTreeSet<AuthorId>> {
    if !index.contains_author(author) {
        return Err(Error::UnknownAuthor(author.clone()));
    }
    Ok(index
        .coauthors_of(author)
        .iter()
        .filter(|other| in_conflict(index, th, author, other))
        .cloned()
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResearcherEdge {
    pub a: AuthorId,
    pub b: AuthorId,
    /// Shared papers in the whole corpus.
    pub common_total: usize,
    /// Shared papers in the visible network.
    pub common_visible: usize,
    /// Some shared paper is selected.
    pub includes_selected: bool,
    pub last_common_year: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResearcherNode<S> {
    Candidate(ReviewerCandidate<S>),
    Collaborator { author_id: AuthorId, name: String },
}

impl<S> ResearcherNode<S> {
    pub fn author_id(&self) -> &AuthorId {
        match self {
            ResearcherNode::Candidate(c) => &c.author_id,
            ResearcherNode::Collaborator { author_id, .. } => author_id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResearcherNetwork<S> {
    pub nodes: Vec<ResearcherNode<S>>,
    pub edges: Vec<ResearcherEdge>,
}

pub(crate) fn edge_between(
    index: &CorpusIndex,
    state: &PaperNetworkState,
    a: &AuthorId,
    b: &AuthorId,
) -> Option<ResearcherEdge> {
    let shared = index.shared_papers(a, b);
    let last = last_common_year(index, a, b)?;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    Some(ResearcherEdge {
        a: a.clone(),
        b: b.clone(),
        common_total: shared.len(),
        common_visible: shared.iter().filter(|p| state.is_visible(p)).count(),
        includes_selected: shared.iter().any(|p| state.is_selected(p)),
        last_common_year: last,
    })
}

/// Candidates plus their non-expired co-authors, joined by every
/// non-expired co-authorship among them.
pub fn researcher_network<S: Scalar>(
    state: &PaperNetworkState,
    index: &CorpusIndex,
    params: &RelevanceParams<S>,
    th: &Thresholds,
    expand: bool,
) -> ResearcherNetwork<S> {
    let candidates = candidate_reviewers(state, index, params, th, expand);
    let candidate_ids: BTreeSet<&AuthorId> = candidates.iter().map(|c| &c.author_id).collect();

    let mut collaborators: BTreeMap<(String, AuthorId), ()> = BTreeMap::new();
    for c in &candidates {
        for other in index.coauthors_of(&c.author_id) {
            if !candidate_ids.contains(other) && in_conflict(index, th, &c.author_id, other) {
                let name = index.author_name(other).unwrap_or_default().to_owned();
                collaborators.insert((name, other.clone()), ());
            }
        }
    }

    let members: BTreeSet<AuthorId> = candidates
        .iter()
        .map(|c| c.author_id.clone())
        .chain(collaborators.keys().map(|(_, id)| id.clone()))
        .collect();

    let mut edges = Vec::new();
    for a in &members {
        for b in index.coauthors_of(a).range((
            std::ops::Bound::Excluded(a.clone()),
            std::ops::Bound::Unbounded,
        )) {
            if members.contains(b) && in_conflict(index, th, a, b) {
                edges.extend(edge_between(index, state, a, b));
            }
        }
    }

    let nodes = candidates
        .into_iter()
        .map(ResearcherNode::Candidate)
        .chain(
            collaborators
                .into_keys()
                .map(|(name, author_id)| ResearcherNode::Collaborator { author_id, name }),
        )
        .collect();
    ResearcherNetwork { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{AuthorRef, PaperRecord};

    fn rec(id: &str, year: i32, authors: &[&str]) -> PaperRecord {
        PaperRecord {
            id: id.into(),
            title: id.into(),
            year,
            venue: String::new(),
            authors: authors
                .iter()
                .map(|&a| AuthorRef {
                    id: a.into(),
                    name: a.to_uppercase(),
                })
                .collect(),
            out_citations: Vec::new(),
        }
    }

    fn index() -> CorpusIndex {
        CorpusIndex::from_records(vec![
            rec("p1", 2008, &["a", "b"]),
            rec("p2", 2018, &["a", "c"]),
            rec("p3", 2018, &["d"]),
            rec("p4", 2016, &["c", "e"]),
        ])
        .0
    }

    #[test]
    fn sole_author_has_no_coauthors() {
        let idx = index();
        assert!(coauthors(&"d".into(), &idx, &Thresholds::open(2018))
            .unwrap()
            .is_empty());
        assert!(coauthors(&"zz".into(), &idx, &Thresholds::open(2018)).is_err());
    }

    #[test]
    fn old_collaboration_expires() {
        let idx = index();
        let th = Thresholds {
            conflict_expiration_years: Some(5),
            ..Thresholds::open(2018)
        };
        let ca = coauthors(&"a".into(), &idx, &th).unwrap();
        assert!(ca.contains(&AuthorId::from("c")));
        assert!(!ca.contains(&AuthorId::from("b")), "p1 is ten years old");
        let all = coauthors(&"a".into(), &idx, &Thresholds::open(2018)).unwrap();
        assert_eq!(&all, idx.coauthors_of(&"a".into()));
    }

    #[test]
    fn shared_selected_paper_makes_blue_edge() {
        let idx = index();
        let state = PaperNetworkState::init(&idx, &["p2".into()]).unwrap();
        let net = researcher_network(
            &state,
            &idx,
            &RelevanceParams::<f64>::default(),
            &Thresholds::open(2018),
            false,
        );
        // a and c are candidates; b and e are their collaborators
        assert_eq!(net.nodes.len(), 4);
        let ac = net
            .edges
            .iter()
            .find(|e| e.a.as_str() == "a" && e.b.as_str() == "c")
            .unwrap();
        assert!(ac.includes_selected);
        assert_eq!((ac.common_total, ac.common_visible), (1, 1));
        assert_eq!(net.edges.len(), 3);
    }

    #[test]
    fn single_author_selection_is_one_node() {
        let idx = index();
        let state = PaperNetworkState::init(&idx, &["p3".into()]).unwrap();
        let net = researcher_network(
            &state,
            &idx,
            &RelevanceParams::<f64>::default(),
            &Thresholds::open(2018),
            false,
        );
        assert_eq!(net.nodes.len(), 1);
        assert!(net.edges.is_empty());
    }
}
