//! The user-built paper network: seeds, selected papers and the visible set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::ids::PaperId;

/// Seeds ⊆ selected ⊆ visible, where visible is always the closure of the
/// selected papers under one step of in- and out-citation.
///
/// The state is a value: every operation returns a new state and leaves the
/// receiver untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PaperNetworkState {
    seeds: Vec<PaperId>,
    selected: BTreeSet<PaperId>,
    visible: BTreeSet<PaperId>,
}

/// Selected papers plus every paper citing or cited by one of them.
pub fn reconstruct_visible<'a, I>(index: &CorpusIndex, selected: I) -> BTreeSet<PaperId>
where
    I: IntoIterator<Item = &'a PaperId>,
{
    let mut visible = BTreeSet::new();
    for p in selected {
        visible.insert(p.clone());
        visible.extend(index.citing(p).iter().cloned());
        visible.extend(index.cited_by(p).iter().cloned());
    }
    visible
}

impl PaperNetworkState {
    /// Starts a network from seed papers; duplicates collapse.
    pub fn init(index: &CorpusIndex, seed_ids: &[PaperId]) -> Result<Self> {
        if seed_ids.is_empty() {
            return Err(Error::NoSeeds);
        }
        Self::default().add_seeds(index, seed_ids)
    }

    /// Rebuilds a state from persisted seeds and selection. Seeds missing
    /// from `selected` are added to it.
    pub fn restore(
        index: &CorpusIndex,
        seeds: &[PaperId],
        selected: &BTreeSet<PaperId>,
    ) -> Result<Self> {
        for p in seeds.iter().chain(selected) {
            index.paper(p)?;
        }
        let mut state = Self::default();
        for s in seeds {
            if !state.seeds.contains(s) {
                state.seeds.push(s.clone());
            }
        }
        state.selected = selected.clone();
        state.selected.extend(state.seeds.iter().cloned());
        state.visible = reconstruct_visible(index, &state.selected);
        Ok(state)
    }

    /// Appends seeds (born selected). Seeds already present are ignored.
    pub fn add_seeds(&self, index: &CorpusIndex, seed_ids: &[PaperId]) -> Result<Self> {
        for id in seed_ids {
            index.paper(id)?;
        }
        let mut next = self.clone();
        for id in seed_ids {
            if !next.seeds.contains(id) {
                next.seeds.push(id.clone());
            }
            if next.selected.insert(id.clone()) {
                next.visible.insert(id.clone());
                next.visible.extend(index.citing(id).iter().cloned());
                next.visible.extend(index.cited_by(id).iter().cloned());
            }
        }
        Ok(next)
    }

    /// Marks a visible paper as selected; its neighbours become visible.
    pub fn select(&self, index: &CorpusIndex, p: &PaperId) -> Result<Self> {
        if !self.visible.contains(p) {
            return Err(Error::NotVisible(p.clone()));
        }
        let mut next = self.clone();
        if next.selected.insert(p.clone()) {
            next.visible.extend(index.citing(p).iter().cloned());
            next.visible.extend(index.cited_by(p).iter().cloned());
        }
        Ok(next)
    }

    /// Unselects a non-seed paper and recomputes the visible set from the
    /// remaining selection.
    pub fn deselect(&self, index: &CorpusIndex, p: &PaperId) -> Result<Self> {
        if self.seeds.contains(p) {
            return Err(Error::SeedDeselect(p.clone()));
        }
        if !self.selected.contains(p) {
            return Err(Error::NotSelected(p.clone()));
        }
        let mut next = self.clone();
        next.selected.remove(p);
        next.visible = reconstruct_visible(index, &next.selected);
        Ok(next)
    }

    pub fn remove_seed(&self, index: &CorpusIndex, p: &PaperId) -> Result<Self> {
        let Some(pos) = self.seeds.iter().position(|s| s == p) else {
            return Err(Error::NotSeed(p.clone()));
        };
        let mut next = self.clone();
        next.seeds.remove(pos);
        next.selected.remove(p);
        next.visible = reconstruct_visible(index, &next.selected);
        Ok(next)
    }

    pub fn seeds(&self) -> &[PaperId] {
        &self.seeds
    }

    pub fn selected(&self) -> &BTreeSet<PaperId> {
        &self.selected
    }

    pub fn visible(&self) -> &BTreeSet<PaperId> {
        &self.visible
    }

    pub fn is_selected(&self, p: &PaperId) -> bool {
        self.selected.contains(p)
    }

    pub fn is_visible(&self, p: &PaperId) -> bool {
        self.visible.contains(p)
    }
}
