//! Review sessions: submitting authors, selected reviewers, roles,
//! substitutes, persistence and export.
//!
//! A [`Session`] is a value. Every operation validates against the corpus
//! and returns a new session, so a failed operation never leaves partial
//! changes behind.

mod export;
mod persist;
mod roles;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conflict::{self, in_conflict, ResearcherEdge, ResearcherNode};
use crate::corpus::CorpusIndex;
use crate::error::{ConflictPair, Error, Result};
use crate::ids::{AuthorId, PaperId};
use crate::network::PaperNetworkState;
use crate::ranking::{candidate_reviewers, RelevanceParams, ReviewerCandidate, Thresholds};

pub use export::{BibEntry, ExportDocument, ExportReviewer, ExportSubstitute};
pub use persist::{SessionFile, SCHEMA_VERSION};
pub use roles::{Role, RoleBook};

pub const DEFAULT_SUBSTITUTE_LIMIT: usize = 5;

/// User-adjustable parameters of a session.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub params: RelevanceParams<f64>,
    pub thresholds: Thresholds,
    pub hide_conflicted: bool,
    pub expand: bool,
    pub substitute_limit: usize,
}

impl Settings {
    pub fn for_corpus(index: &CorpusIndex) -> Self {
        Self {
            params: RelevanceParams::default(),
            thresholds: Thresholds::for_corpus(index),
            hide_conflicted: false,
            expand: false,
            substitute_limit: DEFAULT_SUBSTITUTE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    id: String,
    submitting_authors: BTreeSet<AuthorId>,
    network: PaperNetworkState,
    reviewers: Vec<AuthorId>,
    settings: Settings,
}

/// A candidate annotated with its session role.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateEntry {
    #[serde(flatten)]
    pub candidate: ReviewerCandidate<f64>,
    pub role: Role,
    pub conflicted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoleNode {
    #[serde(flatten)]
    pub node: ResearcherNode<f64>,
    pub role: Role,
    pub conflicted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionResearcherNetwork {
    pub nodes: Vec<RoleNode>,
    pub edges: Vec<ResearcherEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstituteEntry {
    pub author_id: AuthorId,
    pub name: String,
    /// Papers shared with the reviewer being replaced, over the whole corpus.
    pub common_papers: usize,
    pub relevance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstituteList {
    pub for_reviewer: AuthorId,
    pub entries: Vec<SubstituteEntry>,
}

fn known_author(index: &CorpusIndex, id: &AuthorId) -> Result<()> {
    if index.contains_author(id) {
        Ok(())
    } else {
        Err(Error::UnknownAuthor(id.clone()))
    }
}

impl Session {
    pub fn new(id: impl Into<String>, index: &CorpusIndex) -> Self {
        Self {
            id: id.into(),
            submitting_authors: BTreeSet::new(),
            network: PaperNetworkState::default(),
            reviewers: Vec::new(),
            settings: Settings::for_corpus(index),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn submitting_authors(&self) -> &BTreeSet<AuthorId> {
        &self.submitting_authors
    }

    pub fn network(&self) -> &PaperNetworkState {
        &self.network
    }

    pub fn reviewers(&self) -> &[AuthorId] {
        &self.reviewers
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    fn with_network(&self, network: PaperNetworkState) -> Self {
        Self {
            network,
            ..self.clone()
        }
    }

    pub fn add_seeds(&self, index: &CorpusIndex, seeds: &[PaperId]) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::NoSeeds);
        }
        Ok(self.with_network(self.network.add_seeds(index, seeds)?))
    }

    pub fn select_paper(&self, index: &CorpusIndex, p: &PaperId) -> Result<Self> {
        Ok(self.with_network(self.network.select(index, p)?))
    }

    pub fn deselect_paper(&self, index: &CorpusIndex, p: &PaperId) -> Result<Self> {
        Ok(self.with_network(self.network.deselect(index, p)?))
    }

    pub fn remove_seed(&self, index: &CorpusIndex, p: &PaperId) -> Result<Self> {
        Ok(self.with_network(self.network.remove_seed(index, p)?))
    }

    /// Conflicting (reviewer, other) pairs under the given thresholds.
    fn violations(
        index: &CorpusIndex,
        th: &Thresholds,
        submitting: &BTreeSet<AuthorId>,
        reviewers: &[AuthorId],
    ) -> Vec<ConflictPair> {
        let mut pairs = Vec::new();
        for (i, r) in reviewers.iter().enumerate() {
            for s in submitting {
                if s == r || in_conflict(index, th, r, s) {
                    pairs.push(ConflictPair {
                        reviewer: r.clone(),
                        other: s.clone(),
                    });
                }
            }
            for other in &reviewers[i + 1..] {
                if in_conflict(index, th, r, other) {
                    pairs.push(ConflictPair {
                        reviewer: r.clone(),
                        other: other.clone(),
                    });
                }
            }
        }
        pairs
    }

    /// Replaces the submitting authors. Fails without changes if a selected
    /// reviewer would become conflicted.
    pub fn set_submitting_authors(
        &self,
        index: &CorpusIndex,
        ids: impl IntoIterator<Item = AuthorId>,
    ) -> Result<Self> {
        let ids: BTreeSet<AuthorId> = ids.into_iter().collect();
        for id in &ids {
            known_author(index, id)?;
        }
        let pairs = Self::violations(index, &self.settings.thresholds, &ids, &self.reviewers);
        if !pairs.is_empty() {
            return Err(Error::SelectionConflict(pairs));
        }
        Ok(Self {
            submitting_authors: ids,
            ..self.clone()
        })
    }

    /// Replaces settings. Fails without changes if the new conflict
    /// expiration makes the current selection unsafe.
    pub fn update_settings(&self, index: &CorpusIndex, settings: Settings) -> Result<Self> {
        settings.thresholds.validate()?;
        RelevanceParams::new(settings.params.alpha(), settings.params.beta())?;
        let pairs = Self::violations(
            index,
            &settings.thresholds,
            &self.submitting_authors,
            &self.reviewers,
        );
        if !pairs.is_empty() {
            return Err(Error::SelectionConflict(pairs));
        }
        Ok(Self {
            settings,
            ..self.clone()
        })
    }

    pub fn roles(&self, index: &CorpusIndex) -> RoleBook {
        RoleBook::new(self, index)
    }

    pub fn role_of(&self, index: &CorpusIndex, r: &AuthorId) -> Result<Role> {
        known_author(index, r)?;
        Ok(self.roles(index).role(r))
    }

    fn submitter_conflicts(&self, index: &CorpusIndex, r: &AuthorId) -> Vec<AuthorId> {
        let th = &self.settings.thresholds;
        self.submitting_authors
            .iter()
            .filter(|s| *s == r || in_conflict(index, th, r, s))
            .cloned()
            .collect()
    }

    fn reviewer_conflicts<'a>(
        &'a self,
        index: &'a CorpusIndex,
        r: &'a AuthorId,
        except: Option<&'a AuthorId>,
    ) -> impl Iterator<Item = &'a AuthorId> + 'a {
        let th = &self.settings.thresholds;
        self.reviewers
            .iter()
            .filter(move |s| Some(*s) != except && in_conflict(index, th, r, s))
    }

    /// Appends `r` to the selected reviewers. `r` must be a non-conflicted
    /// candidate in the current network.
    pub fn select_reviewer(&self, index: &CorpusIndex, r: &AuthorId) -> Result<Self> {
        known_author(index, r)?;
        if self.reviewers.contains(r) {
            return Err(Error::AlreadySelected(r.clone()));
        }
        let with = self.submitter_conflicts(index, r);
        if !with.is_empty() {
            return Err(Error::ConflictsWithSubmitters {
                reviewer: r.clone(),
                with,
            });
        }
        let with: Vec<AuthorId> = self.reviewer_conflicts(index, r, None).cloned().collect();
        if !with.is_empty() {
            return Err(Error::ConflictsWithReviewers {
                reviewer: r.clone(),
                with,
            });
        }
        if self.roles(index).role(r) != Role::Candidate {
            return Err(Error::NotCandidate(r.clone()));
        }
        let mut next = self.clone();
        next.reviewers.push(r.clone());
        Ok(next)
    }

    pub fn remove_reviewer(&self, r: &AuthorId) -> Result<Self> {
        let Some(pos) = self.reviewers.iter().position(|x| x == r) else {
            return Err(Error::NotReviewer(r.clone()));
        };
        let mut next = self.clone();
        next.reviewers.remove(pos);
        Ok(next)
    }

    fn candidate_set(&self, index: &CorpusIndex) -> Vec<ReviewerCandidate<f64>> {
        candidate_reviewers(
            &self.network,
            index,
            &self.settings.params,
            &self.settings.thresholds,
            false,
        )
    }

    fn qualifies_as_substitute(&self, index: &CorpusIndex, r: &AuthorId, e: &AuthorId) -> bool {
        !self.reviewers.contains(e)
            && self.submitter_conflicts(index, e).is_empty()
            && self.reviewer_conflicts(index, e, Some(r)).next().is_none()
    }

    /// Ranked replacements for selected reviewer `r`: candidate reviewers
    /// that conflict with no submitting author and with no selected
    /// reviewer other than `r`, most papers shared with `r` first.
    pub fn substitutes(&self, index: &CorpusIndex, r: &AuthorId) -> Result<SubstituteList> {
        let mut entries = self.all_substitutes(index, r)?;
        entries.truncate(self.settings.substitute_limit);
        Ok(SubstituteList {
            for_reviewer: r.clone(),
            entries,
        })
    }

    fn all_substitutes(&self, index: &CorpusIndex, r: &AuthorId) -> Result<Vec<SubstituteEntry>> {
        if !self.reviewers.contains(r) {
            return Err(Error::NotReviewer(r.clone()));
        }
        let mut entries: Vec<SubstituteEntry> = self
            .candidate_set(index)
            .into_iter()
            .filter(|c| self.qualifies_as_substitute(index, r, &c.author_id))
            .map(|c| SubstituteEntry {
                common_papers: index.shared_papers(r, &c.author_id).len(),
                author_id: c.author_id,
                name: c.name,
                relevance: c.relevance,
            })
            .collect();
        entries.sort_by(|a, b| {
            b.common_papers
                .cmp(&a.common_papers)
                .then_with(|| b.relevance.total_cmp(&a.relevance))
                .then_with(|| a.name.cmp(&b.name))
                .then_with(|| a.author_id.cmp(&b.author_id))
        });
        Ok(entries)
    }

    /// Replaces reviewer `r` by `substitute`; the substitute is appended to
    /// the reviewer list. The substitute must still qualify.
    pub fn swap_reviewer(
        &self,
        index: &CorpusIndex,
        r: &AuthorId,
        substitute: &AuthorId,
    ) -> Result<Self> {
        let qualified = self
            .all_substitutes(index, r)?
            .iter()
            .any(|e| &e.author_id == substitute);
        if !qualified {
            return Err(Error::NotSubstitute {
                reviewer: r.clone(),
                substitute: substitute.clone(),
            });
        }
        self.remove_reviewer(r)?.select_reviewer(index, substitute)
    }

    /// Candidate list in rank order with roles; conflicted researchers are
    /// omitted when `hide_conflicted` is set.
    pub fn candidates(&self, index: &CorpusIndex) -> Vec<CandidateEntry> {
        let roles = self.roles(index);
        candidate_reviewers(
            &self.network,
            index,
            &self.settings.params,
            &self.settings.thresholds,
            self.settings.expand,
        )
        .into_iter()
        .map(|candidate| {
            let role = roles.role(&candidate.author_id);
            CandidateEntry {
                candidate,
                role,
                conflicted: role.is_conflicted(),
            }
        })
        .filter(|e| !(self.settings.hide_conflicted && e.conflicted))
        .collect()
    }

    pub fn researcher_network(&self, index: &CorpusIndex) -> SessionResearcherNetwork {
        let roles = self.roles(index);
        let net = conflict::researcher_network(
            &self.network,
            index,
            &self.settings.params,
            &self.settings.thresholds,
            self.settings.expand,
        );
        let nodes: Vec<RoleNode> = net
            .nodes
            .into_iter()
            .map(|node| {
                let role = roles.role(node.author_id());
                RoleNode {
                    node,
                    role,
                    conflicted: role.is_conflicted(),
                }
            })
            .filter(|n| !(self.settings.hide_conflicted && n.conflicted))
            .collect();
        let kept: BTreeSet<&AuthorId> = nodes.iter().map(|n| n.node.author_id()).collect();
        let edges = net
            .edges
            .into_iter()
            .filter(|e| kept.contains(&e.a) && kept.contains(&e.b))
            .collect();
        SessionResearcherNetwork { nodes, edges }
    }
}
