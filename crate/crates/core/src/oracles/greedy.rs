use crate::instances::{EdgeSet, HvmHypergraph, WeightedBipartiteGraph};
use crate::scalar::{heavier_first, Weight};

/// A bipartite edge as seen by a greedy scan: its global index plus endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Candidate<W> {
    pub index: usize,
    pub left: usize,
    pub right: usize,
    pub weight: W,
}

/// A hyperedge as seen by a greedy scan.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct BundleCandidate<'a, W> {
    pub index: usize,
    pub left: usize,
    pub rights: &'a [usize],
    pub weight: W,
}

pub(crate) fn sort_heavier_first<W: Weight>(cands: &mut [Candidate<W>]) {
    cands.sort_by(|a, b| heavier_first((a.weight, a.index), (b.weight, b.index)));
}

/// Greedy matching over an arbitrary subset of edges. Returns the chosen
/// candidates in scan order.
pub(crate) fn greedy_candidates<W: Weight>(
    mut cands: Vec<Candidate<W>>,
    left_count: usize,
    right_count: usize,
) -> Vec<Candidate<W>> {
    sort_heavier_first(&mut cands);
    let mut left_used = vec![false; left_count];
    let mut right_used = vec![false; right_count];
    cands
        .into_iter()
        .filter(|c| {
            if left_used[c.left] || right_used[c.right] {
                return false;
            }
            left_used[c.left] = true;
            right_used[c.right] = true;
            true
        })
        .collect()
}

/// Greedy disjoint-edge selection over a subset of hyperedges.
pub(crate) fn greedy_bundles<'a, W: Weight>(
    mut cands: Vec<BundleCandidate<'a, W>>,
    left_count: usize,
    right_count: usize,
) -> Vec<BundleCandidate<'a, W>> {
    cands.sort_by(|a, b| heavier_first((a.weight, a.index), (b.weight, b.index)));
    let mut left_used = vec![false; left_count];
    let mut right_used = vec![false; right_count];
    cands
        .into_iter()
        .filter(|c| {
            if left_used[c.left] || c.rights.iter().any(|&r| right_used[r]) {
                return false;
            }
            left_used[c.left] = true;
            for &r in c.rights {
                right_used[r] = true;
            }
            true
        })
        .collect()
}

/// Offline greedy: scan edges heaviest first and keep every edge that leaves
/// the set a matching. A 2-approximation of the optimum.
pub fn greedy_matching<W: Weight>(g: &WeightedBipartiteGraph<W>) -> EdgeSet<W> {
    let cands = g
        .edges()
        .iter()
        .enumerate()
        .map(|(index, e)| Candidate {
            index,
            left: e.left,
            right: e.right,
            weight: e.weight,
        })
        .collect();
    let chosen = greedy_candidates(cands, g.left_count(), g.right_count());
    g.edge_set(chosen.into_iter().map(|c| c.index))
}

/// Hypergraph greedy: heaviest first, keep edges disjoint from those already
/// kept. A (d+1)-approximation of the optimum.
pub fn greedy_hypergraph<W: Weight>(h: &HvmHypergraph<W>) -> EdgeSet<W> {
    let cands = h
        .edges()
        .iter()
        .enumerate()
        .map(|(index, e)| BundleCandidate {
            index,
            left: e.left,
            rights: &e.rights,
            weight: e.weight,
        })
        .collect();
    let chosen = greedy_bundles(cands, h.left_count(), h.right_count());
    h.edge_set(chosen.into_iter().map(|c| c.index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_figure2, HyperEdge};

    #[test]
    fn figure2_greedy() {
        let g = gen_figure2::<f64>();
        let m = greedy_matching(g.base());
        // A–X and B–Y
        assert_eq!(m.indices(), &[0, 2]);
        assert_eq!(m.total_weight(), 6.0);
    }

    #[test]
    fn empty_graph() {
        let g = WeightedBipartiteGraph::<f64>::from_triples(2, 2, []).unwrap();
        let m = greedy_matching(&g);
        assert!(m.is_empty());
        assert_eq!(m.total_weight(), 0.0);
    }

    #[test]
    fn greedy_can_lose_half() {
        let g = WeightedBipartiteGraph::from_triples(2, 2, [(0, 0, 1.1), (1, 0, 1.0), (0, 1, 1.0)]).unwrap();
        let m = greedy_matching(&g);
        assert_eq!(m.indices(), &[0]);
        assert_eq!(m.total_weight(), 1.1);
    }

    #[test]
    fn ties_prefer_lower_index() {
        let g = WeightedBipartiteGraph::from_triples(2, 1, [(0, 0, 1.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(greedy_matching(&g).indices(), &[0]);
    }

    #[test]
    fn hypergraph_greedy_trace() {
        // a, b, c = 0, 1, 2
        let e = |left, rights: Vec<usize>, weight| HyperEdge { left, rights, weight };
        let h = HvmHypergraph::new(3, 3, 2, vec![e(0, vec![0, 1], 3.0), e(1, vec![1, 2], 2.0), e(2, vec![2], 1.0)]).unwrap();
        let m = greedy_hypergraph(&h);
        assert_eq!(m.indices(), &[0, 2]);
        assert_eq!(m.total_weight(), 4.0);

        let single = HvmHypergraph::new(3, 1, 2, vec![e(0, vec![1, 2], 7.0)]).unwrap();
        assert_eq!(greedy_hypergraph(&single).indices(), &[0]);
    }
}
