//! Reviewer finding over a citation corpus.
//!
//! A corpus of papers is ingested into an immutable [`CorpusIndex`]. A user
//! grows a [`PaperNetworkState`] from seed papers; authors of the selected
//! papers become candidate reviewers, ranked by a weighted count of their
//! selected and visible papers. A [`Session`] tracks submitting authors and
//! chosen reviewers, enforces co-authorship conflicts and proposes
//! substitutes.
//!
//! Relevance arithmetic is generic over [`Scalar`]; the aliases below fix
//! the common choices.

pub mod conflict;
pub mod corpus;
pub mod error;
pub mod ids;
pub mod links;
pub mod network;
pub mod ranking;
pub mod scalar;
pub mod session;
pub mod views;

pub use conflict::{
    coauthors, researcher_network, ResearcherEdge, ResearcherNetwork, ResearcherNode,
};
pub use corpus::{
    clean_non_papers, ingest_corpus, ingest_path, AuthorRef, CleaningRules, CorpusIndex,
    IngestFilter, IngestReport, PaperRecord,
};
pub use error::{ConflictPair, Error, Result};
pub use ids::{AuthorId, PaperId};
pub use network::PaperNetworkState;
pub use ranking::{
    candidate_reviewers, relevance_score, RelevanceParams, ReviewerCandidate, Thresholds,
};
pub use scalar::{Exact, Scalar};
pub use session::{ExportDocument, Role, Session, Settings, SubstituteList};
pub use views::{paper_network_view, PaperNetworkView};

/// Double-precision relevance weights (the default).
pub type Params = RelevanceParams<f64>;
/// Single-precision relevance weights.
pub type ParamsF32 = RelevanceParams<f32>;
/// Exact rational relevance weights.
pub type ExactParams = RelevanceParams<Exact>;

pub type Candidate = ReviewerCandidate<f64>;
pub type ExactCandidate = ReviewerCandidate<Exact>;
pub type ResearcherGraph = ResearcherNetwork<f64>;
