use crate::error::{Error, Result};
use crate::instances::{EdgeSet, HvmHypergraph};
use crate::scalar::{descending_order, Weight};

/// Largest instance the exact disjoint-edge search accepts.
pub const EXACT_HYPERGRAPH_BUDGET: usize = 25;

struct Search<'a, W> {
    h: &'a HvmHypergraph<W>,
    order: Vec<usize>,
    /// `suffix[i]` = total weight of `order[i..]`.
    suffix: Vec<W>,
    left_used: Vec<bool>,
    right_used: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_weight: W,
}

impl<W: Weight> Search<'_, W> {
    fn fits(&self, edge: usize) -> bool {
        let e = &self.h.edges()[edge];
        !self.left_used[e.left] && e.rights.iter().all(|&r| !self.right_used[r])
    }

    fn mark(&mut self, edge: usize, used: bool) {
        let e = &self.h.edges()[edge];
        self.left_used[e.left] = used;
        for &r in &e.rights {
            self.right_used[r] = used;
        }
    }

    fn run(&mut self, pos: usize, weight: W) {
        if weight > self.best_weight {
            self.best_weight = weight;
            self.best = self.chosen.clone();
        }
        if pos == self.order.len() || weight + self.suffix[pos] <= self.best_weight {
            return;
        }
        let edge = self.order[pos];
        if self.fits(edge) {
            self.mark(edge, true);
            self.chosen.push(edge);
            self.run(pos + 1, weight + self.h.edges()[edge].weight);
            self.chosen.pop();
            self.mark(edge, false);
        }
        self.run(pos + 1, weight);
    }
}

/// Maximum-weight set of pairwise disjoint hyperedges, by depth-first
/// branch and bound over edges in decreasing weight order. Branches whose
/// remaining weight cannot beat the incumbent are pruned.
pub fn optimal_hypergraph<W: Weight>(h: &HvmHypergraph<W>) -> Result<EdgeSet<W>> {
    let m = h.edges().len();
    if m > EXACT_HYPERGRAPH_BUDGET {
        return Err(Error::BudgetExceeded {
            size: m,
            budget: EXACT_HYPERGRAPH_BUDGET,
        });
    }
    let weights = h.weights();
    let order = descending_order(&weights);
    let mut suffix = vec![W::zero(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] + weights[order[i]];
    }
    let mut search = Search {
        h,
        order,
        suffix,
        left_used: vec![false; h.left_count()],
        right_used: vec![false; h.right_count()],
        chosen: Vec::new(),
        best: Vec::new(),
        best_weight: W::zero(),
    };
    search.run(0, W::zero());
    Ok(h.edge_set(search.best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::HyperEdge;

    fn e(left: usize, rights: Vec<usize>, weight: f64) -> HyperEdge<f64> {
        HyperEdge { left, rights, weight }
    }

    #[test]
    fn three_edge_example() {
        let h = HvmHypergraph::new(3, 3, 2, vec![e(0, vec![0, 1], 3.0), e(1, vec![1, 2], 2.0), e(2, vec![2], 1.0)]).unwrap();
        let m = optimal_hypergraph(&h).unwrap();
        assert_eq!(m.indices(), &[0, 2]);
        assert_eq!(m.total_weight(), 4.0);
    }

    #[test]
    fn single_edge() {
        let h = HvmHypergraph::new(2, 1, 2, vec![e(0, vec![0, 1], 2.5)]).unwrap();
        assert_eq!(optimal_hypergraph(&h).unwrap().indices(), &[0]);
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // heavy edge blocks two medium ones
        let h = HvmHypergraph::new(
            2,
            3,
            2,
            vec![e(0, vec![0, 1], 3.0), e(1, vec![0], 2.0), e(2, vec![1], 2.0)],
        )
        .unwrap();
        let m = optimal_hypergraph(&h).unwrap();
        assert_eq!(m.indices(), &[1, 2]);
    }

    #[test]
    fn left_vertex_is_shared_too() {
        let h = HvmHypergraph::new(2, 1, 1, vec![e(0, vec![0], 3.0), e(0, vec![1], 2.0)]).unwrap();
        assert_eq!(optimal_hypergraph(&h).unwrap().total_weight(), 3.0);
    }

    #[test]
    fn budget() {
        let edges = (0..26).map(|i| e(i, vec![0], 1.0)).collect();
        let h = HvmHypergraph::new(1, 26, 1, edges).unwrap();
        assert!(matches!(
            optimal_hypergraph(&h),
            Err(Error::BudgetExceeded { size: 26, budget: 25 })
        ));
    }
}
