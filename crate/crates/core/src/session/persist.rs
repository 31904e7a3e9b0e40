use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Session, Settings};
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::ids::{AuthorId, PaperId};
use crate::network::PaperNetworkState;
use crate::ranking::{RelevanceParams, Thresholds};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightsFile {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsFile {
    pub hide_conflicted: bool,
    pub expand: bool,
}

/// On-disk session layout. Unknown fields are ignored on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionFile {
    pub schema_version: u32,
    pub session_id: String,
    pub seeds: Vec<PaperId>,
    pub selected_papers: Vec<PaperId>,
    pub submitting_authors: Vec<AuthorId>,
    pub reviewers: Vec<AuthorId>,
    pub params: WeightsFile,
    pub thresholds: Thresholds,
    pub flags: FlagsFile,
    #[serde(default = "default_substitute_limit")]
    pub substitute_limit: usize,
}

fn default_substitute_limit() -> usize {
    super::DEFAULT_SUBSTITUTE_LIMIT
}

impl Session {
    pub fn to_file(&self) -> SessionFile {
        let s = &self.settings;
        SessionFile {
            schema_version: SCHEMA_VERSION,
            session_id: self.id.clone(),
            seeds: self.network.seeds().to_vec(),
            selected_papers: self.network.selected().iter().cloned().collect(),
            submitting_authors: self.submitting_authors.iter().cloned().collect(),
            reviewers: self.reviewers.clone(),
            params: WeightsFile {
                alpha: s.params.alpha(),
                beta: s.params.beta(),
            },
            thresholds: s.thresholds,
            flags: FlagsFile {
                hide_conflicted: s.hide_conflicted,
                expand: s.expand,
            },
            substitute_limit: s.substitute_limit,
        }
    }

    pub fn save(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("session serializes")
    }

    /// Rebuilds a session against `index`. Every referenced id must resolve
    /// and the reviewer selection must still be conflict-free.
    pub fn from_file(file: SessionFile, index: &CorpusIndex) -> Result<Self> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {}",
                file.schema_version
            )));
        }
        for p in file.seeds.iter().chain(&file.selected_papers) {
            if !index.contains_paper(p) {
                return Err(Error::DanglingId {
                    kind: "paper",
                    id: p.to_string(),
                });
            }
        }
        for a in file.submitting_authors.iter().chain(&file.reviewers) {
            if !index.contains_author(a) {
                return Err(Error::DanglingId {
                    kind: "researcher",
                    id: a.to_string(),
                });
            }
        }
        let params = RelevanceParams::new(file.params.alpha, file.params.beta)?;
        file.thresholds.validate()?;
        let selected: BTreeSet<PaperId> = file.selected_papers.into_iter().collect();
        let network = PaperNetworkState::restore(index, &file.seeds, &selected)?;

        let mut reviewers: Vec<AuthorId> = Vec::with_capacity(file.reviewers.len());
        for r in file.reviewers {
            if reviewers.contains(&r) {
                return Err(Error::Schema(format!("reviewer `{r}` listed twice")));
            }
            reviewers.push(r);
        }
        let submitting: BTreeSet<AuthorId> = file.submitting_authors.into_iter().collect();
        let pairs = Session::violations(index, &file.thresholds, &submitting, &reviewers);
        if !pairs.is_empty() {
            return Err(Error::SelectionConflict(pairs));
        }
        Ok(Session {
            id: file.session_id,
            submitting_authors: submitting,
            network,
            reviewers,
            settings: Settings {
                params,
                thresholds: file.thresholds,
                hide_conflicted: file.flags.hide_conflicted,
                expand: file.flags.expand,
                substitute_limit: file.substitute_limit,
            },
        })
    }

    pub fn load(blob: &str, index: &CorpusIndex) -> Result<Self> {
        let file: SessionFile =
            serde_json::from_str(blob).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_file(file, index)
    }
}
