//! Test fixtures and brute-force oracles.
//!
//! Oracles work from the raw record list only: they never consult the
//! adjacency maps of `CorpusIndex`, so they check the index as well as the
//! algorithms built on it.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use finder_core::session::Role;
use finder_core::{
    AuthorId, AuthorRef, CorpusIndex, IngestFilter, PaperId, PaperNetworkState, PaperRecord,
    Session, Thresholds,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixture directory of the core crate; valid from any sibling crate.
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

pub fn demo_filter() -> IngestFilter {
    IngestFilter::years(1995, 2018)
}

pub fn demo_index() -> CorpusIndex {
    finder_core::ingest_path(&fixture_path("demo_corpus.ndjson"), &demo_filter())
        .expect("fixture ingests")
        .0
}

pub fn pid(s: &str) -> PaperId {
    PaperId::from(s)
}

pub fn aid(s: &str) -> AuthorId {
    AuthorId::from(s)
}

pub fn ids<T: From<&'static str> + Ord>(list: &[&'static str]) -> BTreeSet<T> {
    list.iter().map(|&s| T::from(s)).collect()
}

// ---------------------------------------------------------------------------
// Random toy corpora

pub fn random_records<R: Rng>(
    rng: &mut R,
    max_papers: usize,
    max_authors: usize,
) -> Vec<PaperRecord> {
    let n_papers = rng.gen_range(1..=max_papers);
    let n_authors = rng.gen_range(1..=max_authors);
    let authors: Vec<usize> = (0..n_authors).collect();
    (0..n_papers)
        .map(|i| {
            let k = rng.gen_range(1..=4.min(n_authors));
            let mut chosen: Vec<usize> = authors.choose_multiple(rng, k).copied().collect();
            chosen.shuffle(rng);
            let n_cites = rng.gen_range(0..=4);
            let mut out_citations: Vec<PaperId> = (0..n_cites)
                .map(|_| PaperId::new(format!("p{}", rng.gen_range(0..n_papers))))
                .collect();
            if rng.gen_bool(0.1) {
                out_citations.push(PaperId::new("outside"));
            }
            PaperRecord {
                id: PaperId::new(format!("p{i}")),
                title: format!("Paper {i}"),
                year: rng.gen_range(1995..=2020),
                venue: "V".into(),
                authors: chosen
                    .into_iter()
                    .map(|a| AuthorRef {
                        id: AuthorId::new(format!("a{a}")),
                        // few distinct names so ties exercise the id tie-break
                        name: format!("Name {}", a % 5),
                    })
                    .collect(),
                out_citations,
            }
        })
        .collect()
}

/// Random reachable network state: seeds, then a mix of selections and
/// deselections.
pub fn random_state<R: Rng>(rng: &mut R, index: &CorpusIndex) -> PaperNetworkState {
    let all: Vec<PaperId> = index.papers().map(|p| p.id.clone()).collect();
    let n_seeds = rng.gen_range(1..=3.min(all.len()));
    let seeds: Vec<PaperId> = all.choose_multiple(rng, n_seeds).cloned().collect();
    let mut state = PaperNetworkState::init(index, &seeds).unwrap();
    for _ in 0..rng.gen_range(0..6) {
        let visible: Vec<PaperId> = state.visible().iter().cloned().collect();
        let p = visible.choose(rng).unwrap().clone();
        state = if state.is_selected(&p) && !state.seeds().contains(&p) {
            state.deselect(index, &p).unwrap()
        } else {
            state.select(index, &p).unwrap()
        };
    }
    state
}

// ---------------------------------------------------------------------------
// Oracles over raw records

pub struct Oracle<'a> {
    pub records: Vec<&'a PaperRecord>,
}

impl<'a> Oracle<'a> {
    /// Records as stored by the index (cleaned citations), viewed as a flat
    /// list with no adjacency.
    pub fn new(index: &'a CorpusIndex) -> Self {
        Self {
            records: index.papers().collect(),
        }
    }

    fn record(&self, p: &PaperId) -> &PaperRecord {
        self.records.iter().find(|r| &r.id == p).unwrap()
    }

    pub fn known(&self, p: &PaperId) -> bool {
        self.records.iter().any(|r| &r.id == p)
    }

    pub fn citing(&self, p: &PaperId) -> BTreeSet<PaperId> {
        self.records
            .iter()
            .filter(|r| r.out_citations.contains(p) && &r.id != p)
            .map(|r| r.id.clone())
            .collect()
    }

    pub fn cited(&self, p: &PaperId) -> BTreeSet<PaperId> {
        self.record(p)
            .out_citations
            .iter()
            .filter(|q| self.known(q) && *q != p)
            .cloned()
            .collect()
    }

    pub fn visible(&self, selected: &BTreeSet<PaperId>) -> BTreeSet<PaperId> {
        let mut out = BTreeSet::new();
        for p in selected {
            out.insert(p.clone());
            out.extend(self.citing(p));
            out.extend(self.cited(p));
        }
        out
    }

    pub fn authored(&self, a: &AuthorId) -> Vec<&PaperRecord> {
        self.records
            .iter()
            .copied()
            .filter(|r| r.authors.iter().any(|x| &x.id == a))
            .collect()
    }

    pub fn all_authors(&self) -> BTreeSet<AuthorId> {
        self.records
            .iter()
            .flat_map(|r| r.authors.iter().map(|a| a.id.clone()))
            .collect()
    }

    pub fn name(&self, a: &AuthorId) -> String {
        self.records
            .iter()
            .flat_map(|r| r.authors.iter())
            .find(|x| &x.id == a)
            .map(|x| x.name.clone())
            .unwrap()
    }

    /// (|P_S|_r|, |(P_V - P_S)|_r|)
    pub fn counts(&self, a: &AuthorId, state: &PaperNetworkState) -> (usize, usize) {
        let visible = self.visible(state.selected());
        let mut sel = 0;
        let mut unsel = 0;
        for r in self.authored(a) {
            if state.selected().contains(&r.id) {
                sel += 1;
            } else if visible.contains(&r.id) {
                unsel += 1;
            }
        }
        (sel, unsel)
    }

    pub fn score(&self, a: &AuthorId, state: &PaperNetworkState, alpha: f64, beta: f64) -> f64 {
        let (s, u) = self.counts(a, state);
        alpha * s as f64 + beta * u as f64
    }

    pub fn last_year(&self, a: &AuthorId) -> i32 {
        self.authored(a).iter().map(|r| r.year).max().unwrap()
    }

    pub fn shared(&self, a: &AuthorId, b: &AuthorId) -> Vec<&PaperRecord> {
        self.records
            .iter()
            .copied()
            .filter(|r| {
                r.authors.iter().any(|x| &x.id == a) && r.authors.iter().any(|x| &x.id == b)
            })
            .collect()
    }

    pub fn conflict(&self, a: &AuthorId, b: &AuthorId, th: &Thresholds) -> bool {
        if a == b {
            return false;
        }
        let last = self.shared(a, b).iter().map(|r| r.year).max();
        match (last, th.conflict_expiration_years) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(y), Some(limit)) => th.reference_year - y <= limit as i32,
        }
    }

    pub fn coauthors(&self, a: &AuthorId, th: &Thresholds) -> BTreeSet<AuthorId> {
        self.all_authors()
            .into_iter()
            .filter(|b| self.conflict(a, b, th))
            .collect()
    }

    /// Candidate ids in rank order.
    pub fn candidates(
        &self,
        state: &PaperNetworkState,
        alpha: f64,
        beta: f64,
        th: &Thresholds,
        expand: bool,
    ) -> Vec<AuthorId> {
        let base_papers = if expand {
            self.visible(state.selected())
        } else {
            state.selected().clone()
        };
        let mut out: Vec<(f64, String, AuthorId)> = self
            .all_authors()
            .into_iter()
            .filter(|a| self.authored(a).iter().any(|r| base_papers.contains(&r.id)))
            .filter(|a| expand || self.counts(a, state).0 >= th.min_selected_papers)
            .filter(|a| match th.researcher_expiration_years {
                None => true,
                Some(limit) => th.reference_year - self.last_year(a) <= limit as i32,
            })
            .map(|a| (self.score(&a, state, alpha, beta), self.name(&a), a))
            .collect();
        out.sort_by(|x, y| {
            y.0.partial_cmp(&x.0)
                .unwrap()
                .then_with(|| x.1.cmp(&y.1))
                .then_with(|| x.2.cmp(&y.2))
        });
        out.into_iter().map(|(_, _, a)| a).collect()
    }

    /// Pairwise co-authorship counts: (total, visible, includes_selected, last year).
    pub fn pair_counts(
        &self,
        a: &AuthorId,
        b: &AuthorId,
        state: &PaperNetworkState,
    ) -> (usize, usize, bool, i32) {
        let shared = self.shared(a, b);
        let visible = self.visible(state.selected());
        (
            shared.len(),
            shared.iter().filter(|r| visible.contains(&r.id)).count(),
            shared.iter().any(|r| state.selected().contains(&r.id)),
            shared.iter().map(|r| r.year).max().unwrap_or(i32::MIN),
        )
    }
}

/// Citation arcs counted straight from a map of id -> out-citations.
pub fn citation_total(records: &BTreeMap<String, Vec<String>>) -> usize {
    records
        .iter()
        .map(|(id, cites)| {
            cites
                .iter()
                .filter(|c| *c != id && records.contains_key(*c))
                .collect::<BTreeSet<_>>()
                .len()
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Fixture sessions

/// Seeds p1 and p5; visible = {p1, p2, p3, p5, p6, p9}.
///
/// Hand-traced scores (alpha 0.7, beta 0.3):
/// a1 1.3 (p1 sel, p3 and p6 visible), a3 1.0, a12 1.0,
/// a2 0.7, a4 0.7, a9 0.7, a11 0.7.
pub fn demo_session(index: &CorpusIndex) -> Session {
    Session::new("demo", index)
        .add_seeds(index, &[pid("p1"), pid("p5")])
        .unwrap()
}

pub fn with_submitters(index: &CorpusIndex) -> Session {
    // a8 co-authored p3 with a1; a14 co-authored p7 with a10
    demo_session(index)
        .set_submitting_authors(index, [aid("a8"), aid("a14")])
        .unwrap()
}

pub fn golden_session(index: &CorpusIndex) -> Session {
    with_submitters(index)
        .select_paper(index, &pid("p3"))
        .unwrap()
        .select_reviewer(index, &aid("a3"))
        .unwrap()
        .select_reviewer(index, &aid("a12"))
        .unwrap()
}

// ---------------------------------------------------------------------------
// Randomized oracles

pub fn toy(seed: u64) -> (CorpusIndex, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = random_records(&mut rng, 30, 20);
    (CorpusIndex::from_records(records).0, rng)
}

pub fn oracle_role(o: &Oracle, s: &Session, index: &CorpusIndex, r: &AuthorId) -> Role {
    let th = &s.settings().thresholds;
    let p = &s.settings().params;
    if s.submitting_authors().contains(r) {
        Role::SubmittingAuthor
    } else if s.submitting_authors().iter().any(|a| o.conflict(a, r, th)) {
        Role::SubmittingCoauthor
    } else if s.reviewers().contains(r) {
        Role::SelectedReviewer
    } else if s.reviewers().iter().any(|a| o.conflict(a, r, th)) {
        Role::ReviewerCoauthor
    } else if o
        .candidates(s.network(), p.alpha(), p.beta(), th, s.settings().expand)
        .contains(r)
    {
        Role::Candidate
    } else {
        let _ = index;
        Role::Collaborator
    }
}

pub fn oracle_substitutes(o: &Oracle, s: &Session, r: &AuthorId) -> Vec<AuthorId> {
    let th = &s.settings().thresholds;
    let p = &s.settings().params;
    let mut out: Vec<(usize, f64, String, AuthorId)> = o
        .candidates(s.network(), p.alpha(), p.beta(), th, false)
        .into_iter()
        .filter(|e| !s.submitting_authors().contains(e))
        .filter(|e| !s.submitting_authors().iter().any(|a| o.conflict(a, e, th)))
        .filter(|e| !s.reviewers().contains(e))
        .filter(|e| !s.reviewers().iter().any(|x| x != r && o.conflict(x, e, th)))
        .map(|e| {
            (
                o.shared(r, &e).len(),
                o.score(&e, s.network(), p.alpha(), p.beta()),
                o.name(&e),
                e,
            )
        })
        .collect();
    out.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then_with(|| b.1.partial_cmp(&a.1).unwrap())
            .then_with(|| a.2.cmp(&b.2))
            .then_with(|| a.3.cmp(&b.3))
    });
    out.truncate(s.settings().substitute_limit);
    out.into_iter().map(|x| x.3).collect()
}

pub fn assert_selection_safe(o: &Oracle, s: &Session) {
    let th = &s.settings().thresholds;
    for (i, r) in s.reviewers().iter().enumerate() {
        assert!(!s.submitting_authors().contains(r));
        for a in s.submitting_authors() {
            assert!(!o.conflict(r, a, th), "{r} conflicts with submitter {a}");
        }
        for other in &s.reviewers()[i + 1..] {
            assert!(
                !o.conflict(r, other, th),
                "{r} conflicts with reviewer {other}"
            );
        }
    }
}

/// Random session: random network, one or two submitters, then greedy
/// reviewer attempts in random order.
pub fn random_session(seed: u64) -> (CorpusIndex, Session, ChaCha8Rng) {
    let (index, mut rng) = toy(seed);
    let network = random_state(&mut rng, &index);
    let mut s = Session::new("r", &index);
    let mut settings = *s.settings();
    settings.thresholds = Thresholds {
        conflict_expiration_years: if rng.gen_bool(0.5) {
            None
        } else {
            Some(rng.gen_range(0..15))
        },
        ..Thresholds::open(2020)
    };
    settings.expand = rng.gen_bool(0.3);
    s = s.update_settings(&index, settings).unwrap();
    s = s.add_seeds(&index, network.seeds()).unwrap();
    for p in network.selected() {
        s = s.select_paper(&index, p).unwrap_or(s);
    }
    let authors: Vec<AuthorId> = Oracle::new(&index).all_authors().into_iter().collect();
    let k = rng.gen_range(0..=2);
    let submitters: Vec<AuthorId> = authors.choose_multiple(&mut rng, k).cloned().collect();
    s = s.set_submitting_authors(&index, submitters).unwrap();
    let mut order = authors.clone();
    order.shuffle(&mut rng);
    for a in order.iter().take(8) {
        if let Ok(next) = s.select_reviewer(&index, a) {
            s = next;
        }
    }
    (index, s, rng)
}
