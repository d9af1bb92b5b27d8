use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::{sum_weights, Weight};

/// An edge `(left, right)` of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteEdge<W> {
    pub left: usize,
    pub right: usize,
    pub weight: W,
}

/// Edge-weighted bipartite graph `G(L ∪ R, E)`. Left vertices are the
/// arriving side in every vertex-at-a-time problem.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedBipartiteGraph<W> {
    left_count: usize,
    right_count: usize,
    edges: Vec<BipartiteEdge<W>>,
}

impl<W: Weight> WeightedBipartiteGraph<W> {
    pub fn new(left_count: usize, right_count: usize, edges: Vec<BipartiteEdge<W>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, e) in edges.iter().enumerate() {
            if e.left >= left_count || e.right >= right_count {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} ({}, {}) out of range for {left_count}x{right_count}",
                    e.left, e.right
                )));
            }
            if !e.weight.is_valid_weight() {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} has invalid weight {}",
                    e.weight
                )));
            }
            if !seen.insert((e.left, e.right)) {
                return Err(Error::InvalidInstance(format!(
                    "duplicate edge ({}, {})",
                    e.left, e.right
                )));
            }
        }
        Ok(Self {
            left_count,
            right_count,
            edges,
        })
    }

    /// Builds from `(left, right, weight)` triples.
    pub fn from_triples(
        left_count: usize,
        right_count: usize,
        triples: impl IntoIterator<Item = (usize, usize, W)>,
    ) -> Result<Self> {
        let edges = triples
            .into_iter()
            .map(|(left, right, weight)| BipartiteEdge {
                left,
                right,
                weight,
            })
            .collect();
        Self::new(left_count, right_count, edges)
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[BipartiteEdge<W>] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<W> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Edge indices incident to each left vertex, ascending.
    pub fn left_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left_count];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.left].push(i);
        }
        adj
    }

    /// Builds an [`EdgeSet`] over this graph's edge list.
    pub fn edge_set(&self, indices: impl IntoIterator<Item = usize>) -> EdgeSet<W> {
        EdgeSet::collect(indices, |i| self.edges[i].weight)
    }

    /// True when no two edges of `set` share an endpoint.
    pub fn is_matching(&self, set: &EdgeSet<W>) -> bool {
        let mut left = vec![false; self.left_count];
        let mut right = vec![false; self.right_count];
        set.indices().iter().all(|&i| {
            let e = self.edges[i];
            let free = !left[e.left] && !right[e.right];
            left[e.left] = true;
            right[e.right] = true;
            free
        })
    }
}

/// A hyperedge with exactly one left vertex and a set of right vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperEdge<W> {
    pub left: usize,
    /// Sorted, no duplicates.
    pub rights: Vec<usize>,
    pub weight: W,
}

/// Hypergraph for the vertex-at-a-time problem (HVM): every edge holds one
/// arriving left vertex plus at most `d` right vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct HvmHypergraph<W> {
    right_count: usize,
    left_count: usize,
    d: usize,
    edges: Vec<HyperEdge<W>>,
}

impl<W: Weight> HvmHypergraph<W> {
    pub fn new(right_count: usize, left_count: usize, d: usize, edges: Vec<HyperEdge<W>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInstance("d must be at least 1".into()));
        }
        let mut edges = edges;
        for (i, e) in edges.iter_mut().enumerate() {
            e.rights.sort_unstable();
            e.rights.dedup();
            if e.left >= left_count {
                return Err(Error::InvalidInstance(format!(
                    "edge {i}: left vertex {} out of range",
                    e.left
                )));
            }
            if e.rights.is_empty() || e.rights.len() > d {
                return Err(Error::InvalidInstance(format!(
                    "edge {i}: {} right vertices, expected 1..={d}",
                    e.rights.len()
                )));
            }
            if let Some(&r) = e.rights.iter().find(|&&r| r >= right_count) {
                return Err(Error::InvalidInstance(format!(
                    "edge {i}: right vertex {r} out of range"
                )));
            }
            if !e.weight.is_valid_weight() {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} has invalid weight {}",
                    e.weight
                )));
            }
        }
        Ok(Self {
            right_count,
            left_count,
            d,
            edges,
        })
    }

    /// The `d = 1` view of a bipartite graph; edge indices are preserved.
    pub fn from_bipartite(g: &WeightedBipartiteGraph<W>) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|e| HyperEdge {
                left: e.left,
                rights: vec![e.right],
                weight: e.weight,
            })
            .collect();
        Self {
            right_count: g.right_count(),
            left_count: g.left_count(),
            d: 1,
            edges,
        }
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[HyperEdge<W>] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<W> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn left_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left_count];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.left].push(i);
        }
        adj
    }

    pub fn edge_set(&self, indices: impl IntoIterator<Item = usize>) -> EdgeSet<W> {
        EdgeSet::collect(indices, |i| self.edges[i].weight)
    }

    /// True when the edges of `set` are pairwise disjoint (left and right).
    pub fn is_disjoint_set(&self, set: &EdgeSet<W>) -> bool {
        let mut left = vec![false; self.left_count];
        let mut right = vec![false; self.right_count];
        for &i in set.indices() {
            let e = &self.edges[i];
            if left[e.left] || e.rights.iter().any(|&r| right[r]) {
                return false;
            }
            left[e.left] = true;
            for &r in &e.rights {
                right[r] = true;
            }
        }
        true
    }
}

/// A hyperedge of the edge-at-a-time problem (HEM).
#[derive(Debug, Clone, PartialEq)]
pub struct HemEdge<W> {
    /// Sorted, no duplicates.
    pub vertices: Vec<usize>,
    pub weight: W,
}

/// Hypergraph whose edges (of size at most `d`) arrive one at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct HemHypergraph<W> {
    vertex_count: usize,
    d: usize,
    edges: Vec<HemEdge<W>>,
}

impl<W: Weight> HemHypergraph<W> {
    pub fn new(vertex_count: usize, d: usize, edges: Vec<HemEdge<W>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInstance("d must be at least 1".into()));
        }
        let mut edges = edges;
        for (i, e) in edges.iter_mut().enumerate() {
            e.vertices.sort_unstable();
            e.vertices.dedup();
            if e.vertices.is_empty() || e.vertices.len() > d {
                return Err(Error::InvalidInstance(format!(
                    "edge {i}: {} vertices, expected 1..={d}",
                    e.vertices.len()
                )));
            }
            if let Some(&v) = e.vertices.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidInstance(format!(
                    "edge {i}: vertex {v} out of range"
                )));
            }
            if !e.weight.is_valid_weight() {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} has invalid weight {}",
                    e.weight
                )));
            }
        }
        Ok(Self {
            vertex_count,
            d,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[HemEdge<W>] {
        &self.edges
    }
}

/// What the groups of a [`GroupedInstance`] partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupingMode {
    /// Groups of left vertices; a group arrives with all incident edges.
    LeftVertexGroups,
    /// Groups of edges.
    EdgeGroups,
}

impl GroupingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupingMode::LeftVertexGroups => "left-vertex-groups",
            GroupingMode::EdgeGroups => "edge-groups",
        }
    }
}

/// A bipartite instance whose arriving elements an adversary has grouped.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedInstance<W> {
    base: WeightedBipartiteGraph<W>,
    mode: GroupingMode,
    groups: Vec<Vec<usize>>,
}

impl<W: Weight> GroupedInstance<W> {
    pub fn new(base: WeightedBipartiteGraph<W>, mode: GroupingMode, groups: Vec<Vec<usize>>) -> Result<Self> {
        let universe = match mode {
            GroupingMode::LeftVertexGroups => base.left_count(),
            GroupingMode::EdgeGroups => base.edges().len(),
        };
        let mut covered = vec![false; universe];
        for (gi, group) in groups.iter().enumerate() {
            if group.is_empty() {
                return Err(Error::InvalidInstance(format!("group {gi} is empty")));
            }
            for &id in group {
                if id >= universe {
                    return Err(Error::InvalidInstance(format!(
                        "group {gi}: id {id} out of range for {}",
                        mode.as_str()
                    )));
                }
                if covered[id] {
                    return Err(Error::InvalidInstance(format!(
                        "id {id} appears in more than one group"
                    )));
                }
                covered[id] = true;
            }
        }
        if let Some(missing) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInstance(format!(
                "id {missing} is not covered by any group"
            )));
        }
        Ok(Self { base, mode, groups })
    }

    /// Every left vertex in its own group.
    pub fn singleton_groups(base: WeightedBipartiteGraph<W>) -> Self {
        let groups = (0..base.left_count()).map(|l| vec![l]).collect();
        Self {
            base,
            mode: GroupingMode::LeftVertexGroups,
            groups,
        }
    }

    pub fn base(&self) -> &WeightedBipartiteGraph<W> {
        &self.base
    }

    pub fn mode(&self) -> GroupingMode {
        self.mode
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Edge indices carried by each group, ascending within a group.
    pub fn group_edges(&self) -> Vec<Vec<usize>> {
        match self.mode {
            GroupingMode::EdgeGroups => self
                .groups
                .iter()
                .map(|g| {
                    let mut g = g.clone();
                    g.sort_unstable();
                    g
                })
                .collect(),
            GroupingMode::LeftVertexGroups => {
                let adj = self.base.left_adjacency();
                self.groups
                    .iter()
                    .map(|g| {
                        let mut edges: Vec<usize> = g.iter().flat_map(|&l| adj[l].iter().copied()).collect();
                        edges.sort_unstable();
                        edges
                    })
                    .collect()
            }
        }
    }
}

/// An undirected edge `{u, v}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphEdge<W> {
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

/// Undirected edge-weighted graph; vertex ids double as the fixed vertex
/// ordering used to orient edges.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph<W> {
    vertex_count: usize,
    edges: Vec<GraphEdge<W>>,
}

impl<W: Weight> UndirectedGraph<W> {
    pub fn new(vertex_count: usize, edges: Vec<GraphEdge<W>>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("edge {i} is a self-loop")));
            }
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} ({}, {}) out of range",
                    e.u, e.v
                )));
            }
            if !e.weight.is_valid_weight() {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} has invalid weight {}",
                    e.weight
                )));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn from_triples(vertex_count: usize, triples: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self> {
        let edges = triples
            .into_iter()
            .map(|(u, v, weight)| GraphEdge { u, v, weight })
            .collect();
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[GraphEdge<W>] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<W> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn edge_set(&self, indices: impl IntoIterator<Item = usize>) -> EdgeSet<W> {
        EdgeSet::collect(indices, |i| self.edges[i].weight)
    }
}

/// A set of edges of some instance, identified by edge index, with its
/// total weight cached. Indices are kept sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSet<W> {
    indices: Vec<usize>,
    total: W,
}

impl<W: Weight> EdgeSet<W> {
    pub fn empty() -> Self {
        Self {
            indices: Vec::new(),
            total: W::zero(),
        }
    }

    /// Collects indices (deduplicated, sorted) and sums their weights in
    /// ascending index order.
    pub fn collect(indices: impl IntoIterator<Item = usize>, weight_of: impl Fn(usize) -> W) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        let total = sum_weights(indices.iter().map(|&i| weight_of(i)));
        Self { indices, total }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn total_weight(&self) -> W {
        self.total
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn is_subset_of(&self, other: &EdgeSet<W>) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

impl<W: Weight> Default for EdgeSet<W> {
    fn default() -> Self {
        Self::empty()
    }
}

/// Any instance the file format and harness understand.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance<W> {
    Bipartite(WeightedBipartiteGraph<W>),
    Hvm(HvmHypergraph<W>),
    Hem(HemHypergraph<W>),
    Grouped(GroupedInstance<W>),
    Graph(UndirectedGraph<W>),
}

impl<W> Instance<W> {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Bipartite(_) => "bipartite",
            Instance::Hvm(_) => "hvm",
            Instance::Hem(_) => "hem",
            Instance::Grouped(_) => "grouped",
            Instance::Graph(_) => "graph",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_rejects_bad_edges() {
        assert!(WeightedBipartiteGraph::from_triples(2, 2, [(2, 0, 1.0)]).is_err());
        assert!(WeightedBipartiteGraph::from_triples(2, 2, [(0, 2, 1.0)]).is_err());
        assert!(WeightedBipartiteGraph::from_triples(2, 2, [(0, 0, -1.0)]).is_err());
        assert!(WeightedBipartiteGraph::from_triples(2, 2, [(0, 0, 1.0), (0, 0, 2.0)]).is_err());
        assert!(WeightedBipartiteGraph::from_triples(2, 2, [(0, 0, 1.0), (1, 0, 2.0)]).is_ok());
    }

    #[test]
    fn hvm_edge_sizes() {
        let e = |rights: Vec<usize>| HyperEdge {
            left: 0,
            rights,
            weight: 1.0,
        };
        assert!(HvmHypergraph::new(3, 1, 2, vec![e(vec![])]).is_err());
        assert!(HvmHypergraph::new(3, 1, 2, vec![e(vec![0, 1, 2])]).is_err());
        assert!(HvmHypergraph::new(3, 1, 2, vec![e(vec![0, 3])]).is_err());
        let h = HvmHypergraph::new(3, 1, 2, vec![e(vec![2, 0, 2])]).unwrap();
        assert_eq!(h.edges()[0].rights, vec![0, 2]);
    }

    #[test]
    fn groups_must_partition() {
        let g = WeightedBipartiteGraph::from_triples(3, 1, [(0, 0, 1.0), (1, 0, 2.0)]).unwrap();
        let mode = GroupingMode::LeftVertexGroups;
        assert!(GroupedInstance::new(g.clone(), mode, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(GroupedInstance::new(g.clone(), mode, vec![vec![0, 1]]).is_err());
        assert!(GroupedInstance::new(g.clone(), mode, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(GroupedInstance::new(g.clone(), mode, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(GroupedInstance::new(g, GroupingMode::EdgeGroups, vec![vec![1], vec![0]]).is_ok());
    }

    #[test]
    fn graph_rejects_self_loops() {
        assert!(UndirectedGraph::from_triples(2, [(1, 1, 1.0)]).is_err());
        assert!(UndirectedGraph::from_triples(2, [(0, 2, 1.0)]).is_err());
    }

    #[test]
    fn edge_set_sorts_and_sums() {
        let w = [1.0, 2.0, 4.0];
        let s = EdgeSet::collect([2, 0, 2], |i| w[i]);
        assert_eq!(s.indices(), &[0, 2]);
        assert_eq!(s.total_weight(), 5.0);
        assert!(s.contains(2) && !s.contains(1));
    }
}
