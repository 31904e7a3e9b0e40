use serde::Serialize;

use crate::corpus::CorpusIndex;
use crate::ids::PaperId;
use crate::network::PaperNetworkState;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperNode {
    pub paper_id: PaperId,
    pub title: String,
    pub year: i32,
    /// Citation count over the whole corpus.
    pub citations: usize,
    pub selected: bool,
    pub seed: bool,
}

/// `from` cites `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CitationArc {
    pub from: PaperId,
    pub to: PaperId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperNetworkView {
    pub nodes: Vec<PaperNode>,
    pub arcs: Vec<CitationArc>,
}

/// Visible papers and the citations among them.
pub fn paper_network_view(state: &PaperNetworkState, index: &CorpusIndex) -> PaperNetworkView {
    let mut nodes = Vec::with_capacity(state.visible().len());
    let mut arcs = Vec::new();
    for id in state.visible() {
        let Ok(paper) = index.paper(id) else { continue };
        nodes.push(PaperNode {
            paper_id: id.clone(),
            title: paper.title.clone(),
            year: paper.year,
            citations: index.citing(id).len(),
            selected: state.is_selected(id),
            seed: state.seeds().contains(id),
        });
        arcs.extend(
            index
                .cited_by(id)
                .iter()
                .filter(|to| state.is_visible(to))
                .map(|to| CitationArc {
                    from: id.clone(),
                    to: to.clone(),
                }),
        );
    }
    PaperNetworkView { nodes, arcs }
}
