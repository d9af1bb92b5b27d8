use crate::instances::{EdgeSet, UndirectedGraph};
use crate::scalar::{descending_order, Weight};

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// True when the edges of `set` contain no cycle (as undirected edges).
pub fn is_acyclic<W: Weight>(g: &UndirectedGraph<W>, set: &EdgeSet<W>) -> bool {
    let mut dsu = DisjointSets::new(g.vertex_count());
    set.indices().iter().all(|&i| {
        let e = g.edges()[i];
        dsu.union(e.u, e.v)
    })
}

/// Maximum-weight acyclic edge set (Kruskal, heaviest first).
pub fn max_weight_forest<W: Weight>(g: &UndirectedGraph<W>) -> EdgeSet<W> {
    let mut dsu = DisjointSets::new(g.vertex_count());
    let order = descending_order(&g.weights());
    g.edge_set(order.into_iter().filter(|&i| {
        let e = g.edges()[i];
        dsu.union(e.u, e.v)
    }))
}

/// Both sides of the orientation inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationBound<W> {
    /// Σ_v w(h₀(v)) + w(h₁(v)).
    pub sum_h0_h1: W,
    /// w(F*).
    pub fstar_weight: W,
}

impl<W: Weight> OrientationBound<W> {
    pub fn holds(&self) -> bool {
        self.sum_h0_h1 >= self.fstar_weight
    }
}

/// Tail of edge `{u, v}` in the orientation `G_x`: `G_0` points from the
/// higher id to the lower, `G_1` from lower to higher.
pub fn orientation_tail(u: usize, v: usize, x: u8) -> usize {
    if x == 0 {
        u.max(v)
    } else {
        u.min(v)
    }
}

/// Heaviest out-edge weight of every vertex in `G_x` (0 without out-edges).
pub fn heaviest_out_edges<W: Weight>(g: &UndirectedGraph<W>, x: u8) -> Vec<W> {
    let mut best = vec![W::zero(); g.vertex_count()];
    for e in g.edges() {
        let tail = orientation_tail(e.u, e.v, x);
        if e.weight > best[tail] {
            best[tail] = e.weight;
        }
    }
    best
}

/// Evaluates `Σ_v [h₀(v) + h₁(v)]` against `w(F*)`.
pub fn check_orientation_bound<W: Weight>(g: &UndirectedGraph<W>) -> OrientationBound<W> {
    let h0 = heaviest_out_edges(g, 0);
    let h1 = heaviest_out_edges(g, 1);
    let sum_h0_h1 = h0
        .iter()
        .zip(&h1)
        .fold(W::zero(), |acc, (&a, &b)| acc + a + b);
    let bound = OrientationBound {
        sum_h0_h1,
        fstar_weight: max_weight_forest(g).total_weight(),
    };
    debug_assert!(bound.holds(), "orientation bound violated: {bound:?}");
    bound
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> UndirectedGraph<f64> {
        UndirectedGraph::from_triples(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn triangle_forest() {
        let f = max_weight_forest(&triangle());
        assert_eq!(f.indices(), &[0, 1]);
        assert_eq!(f.total_weight(), 5.0);
    }

    #[test]
    fn tree_keeps_everything() {
        let g = UndirectedGraph::from_triples(4, [(0, 1, 1.0), (1, 2, 5.0), (1, 3, 2.0)]).unwrap();
        assert_eq!(max_weight_forest(&g).len(), 3);
    }

    #[test]
    fn triangle_orientation() {
        let g = triangle();
        assert_eq!(heaviest_out_edges(&g, 0), vec![0.0, 3.0, 2.0]);
        assert_eq!(heaviest_out_edges(&g, 1), vec![3.0, 1.0, 0.0]);
        let b = check_orientation_bound(&g);
        assert_eq!(b, OrientationBound { sum_h0_h1: 9.0, fstar_weight: 5.0 });
    }

    #[test]
    fn single_edge_orientation() {
        let g = UndirectedGraph::from_triples(2, [(0, 1, 7.0)]).unwrap();
        let b = check_orientation_bound(&g);
        assert_eq!((b.sum_h0_h1, b.fstar_weight), (14.0, 7.0));
    }

    #[test]
    fn acyclicity() {
        let g = triangle();
        assert!(is_acyclic(&g, &g.edge_set([0, 1])));
        assert!(!is_acyclic(&g, &g.edge_set([0, 1, 2])));
    }
}
