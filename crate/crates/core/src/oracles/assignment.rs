//! Exact maximum-weight bipartite matching via the Hungarian method.
//!
//! The graph is padded to an `n × n` assignment problem with
//! `n = max(|L|, |R|)`; missing edges cost 0, which stands for "unmatched"
//! since all weights are nonnegative. O(n³).

use crate::instances::{EdgeSet, WeightedBipartiteGraph};
use crate::scalar::Weight;

/// Minimum-cost assignment on a dense square matrix. Returns the column
/// assigned to each row.
fn min_cost_assignment<W: Weight>(cost: &[Vec<W>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let inf = W::infinity();
    // 1-based potentials; index 0 is the virtual root column.
    let mut u = vec![W::zero(); n + 1];
    let mut v = vec![W::zero(); n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        row_of_col[0] = row;
        let mut col0 = 0usize;
        let mut min_slack = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let row0 = row_of_col[col0];
            let mut delta = inf;
            let mut col1 = 0usize;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let reduced = cost[row0 - 1][col - 1] - u[row0] - v[col];
                if reduced < min_slack[col] {
                    min_slack[col] = reduced;
                    way[col] = col0;
                }
                if min_slack[col] < delta {
                    delta = min_slack[col];
                    col1 = col;
                }
            }
            for col in 0..=n {
                if used[col] {
                    u[row_of_col[col]] = u[row_of_col[col]] + delta;
                    v[col] = v[col] - delta;
                } else {
                    min_slack[col] = min_slack[col] - delta;
                }
            }
            col0 = col1;
            if row_of_col[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            row_of_col[col0] = row_of_col[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for col in 1..=n {
        if row_of_col[col] > 0 {
            assignment[row_of_col[col] - 1] = col - 1;
        }
    }
    assignment
}

/// Maximum-weight matching (OPT for the bipartite problems).
pub fn optimal_bipartite<W: Weight>(g: &WeightedBipartiteGraph<W>) -> EdgeSet<W> {
    if g.edges().is_empty() {
        return EdgeSet::empty();
    }
    let n = g.left_count().max(g.right_count());
    let mut cost = vec![vec![W::zero(); n]; n];
    let mut edge_at = vec![vec![None; n]; n];
    for (i, e) in g.edges().iter().enumerate() {
        cost[e.left][e.right] = -e.weight;
        edge_at[e.left][e.right] = Some(i);
    }
    let assignment = min_cost_assignment(&cost);
    g.edge_set(
        assignment
            .iter()
            .enumerate()
            .filter_map(|(row, &col)| edge_at[row][col]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_figure2;

    #[test]
    fn figure2_opt() {
        let g = gen_figure2::<f64>();
        let m = optimal_bipartite(g.base());
        assert_eq!(m.total_weight(), 6.0);
        assert!(g.base().is_matching(&m));
    }

    #[test]
    fn beats_greedy_on_the_half_instance() {
        let g = WeightedBipartiteGraph::from_triples(2, 2, [(0, 0, 1.1), (1, 0, 1.0), (0, 1, 1.0)]).unwrap();
        let m = optimal_bipartite(&g);
        assert_eq!(m.indices(), &[1, 2]);
        assert_eq!(m.total_weight(), 2.0);
    }

    #[test]
    fn rectangular_and_empty() {
        let g = WeightedBipartiteGraph::<f64>::from_triples(3, 1, []).unwrap();
        assert_eq!(optimal_bipartite(&g).total_weight(), 0.0);
        let g = WeightedBipartiteGraph::from_triples(1, 3, [(0, 0, 1.0), (0, 2, 5.0)]).unwrap();
        assert_eq!(optimal_bipartite(&g).indices(), &[1]);
    }

    #[test]
    fn works_in_f32() {
        let g = gen_figure2::<f32>();
        assert_eq!(optimal_bipartite(g.base()).total_weight(), 6.0f32);
    }
}
