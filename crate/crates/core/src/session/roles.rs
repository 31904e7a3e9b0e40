use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conflict::coauthors;
use crate::corpus::CorpusIndex;
use crate::ids::AuthorId;
use crate::ranking::{candidate_reviewers, Thresholds};

use super::Session;

/// Role of a researcher within a session. Variants are listed in
/// precedence order: when several apply, the first one wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    SubmittingAuthor,
    SubmittingCoauthor,
    SelectedReviewer,
    ReviewerCoauthor,
    Candidate,
    Collaborator,
}

impl Role {
    /// Conflicted researchers cannot be selected as reviewers.
    pub fn is_conflicted(self) -> bool {
        matches!(
            self,
            Role::SubmittingAuthor | Role::SubmittingCoauthor | Role::ReviewerCoauthor
        )
    }
}

/// Precomputed membership sets from which every role is derived.
#[derive(Debug, Clone)]
pub struct RoleBook {
    submitting: BTreeSet<AuthorId>,
    submitting_coauthors: BTreeSet<AuthorId>,
    reviewers: BTreeSet<AuthorId>,
    reviewer_coauthors: BTreeSet<AuthorId>,
    candidates: BTreeSet<AuthorId>,
}

fn coauthors_of_all<'a>(
    index: &CorpusIndex,
    th: &Thresholds,
    authors: impl IntoIterator<Item = &'a AuthorId>,
) -> BTreeSet<AuthorId> {
    authors
        .into_iter()
        .filter_map(|a| coauthors(a, index, th).ok())
        .flatten()
        .collect()
}

impl RoleBook {
    pub fn new(session: &Session, index: &CorpusIndex) -> Self {
        let settings = session.settings();
        let th = &settings.thresholds;
        Self {
            submitting: session.submitting_authors().clone(),
            submitting_coauthors: coauthors_of_all(index, th, session.submitting_authors()),
            reviewers: session.reviewers().iter().cloned().collect(),
            reviewer_coauthors: coauthors_of_all(index, th, session.reviewers()),
            candidates: candidate_reviewers(
                session.network(),
                index,
                &settings.params,
                th,
                settings.expand,
            )
            .into_iter()
            .map(|c| c.author_id)
            .collect(),
        }
    }

    pub fn role(&self, author: &AuthorId) -> Role {
        if self.submitting.contains(author) {
            Role::SubmittingAuthor
        } else if self.submitting_coauthors.contains(author) {
            Role::SubmittingCoauthor
        } else if self.reviewers.contains(author) {
            Role::SelectedReviewer
        } else if self.reviewer_coauthors.contains(author) {
            Role::ReviewerCoauthor
        } else if self.candidates.contains(author) {
            Role::Candidate
        } else {
            Role::Collaborator
        }
    }
}
