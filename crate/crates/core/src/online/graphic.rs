//! Online maximum-weight forest by per-vertex secretaries on an acyclic
//! orientation.

use rand::Rng;

use crate::instances::EdgeSet;
use crate::oracles::orientation_tail;
use crate::online::secretary::{classical_cutoff, ThresholdSecretary};
use crate::online::stream::{Action, DecisionLog, OnlineStream};
use crate::online::units::EdgeArrival;
use crate::scalar::Weight;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphicOutcome<W> {
    pub selected: EdgeSet<W>,
    pub log: DecisionLog,
    /// The coin `X`: 0 orients edges from higher to lower id, 1 the reverse.
    pub orientation: u8,
    /// Tail vertex of every accepted edge, parallel to `selected`.
    pub tails: Vec<usize>,
}

/// Runs the per-vertex secretaries in a fixed orientation `x`.
///
/// The edge count is known up front; the first ⌊|E|/e⌋ arrivals are only
/// observed, after which each vertex accepts its first out-edge beating
/// everything it observed.
pub fn graphic_matroid_secretary_oriented<W, S>(mut stream: S, vertex_count: usize, x: u8) -> GraphicOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = EdgeArrival<W>>,
{
    assert!(x <= 1, "orientation must be 0 or 1");
    let cutoff = classical_cutoff(stream.len());
    let mut rules: Vec<ThresholdSecretary<W>> = (0..vertex_count).map(|_| ThresholdSecretary::new()).collect();
    let mut accepted = Vec::new();
    while let Some(arrival) = stream.next_arrival() {
        let e = arrival.unit;
        let tail = orientation_tail(e.u, e.v, x);
        let key = (e.weight, e.index);
        if arrival.index < cutoff {
            rules[tail].observe(key);
            stream.decide(Action::Reject);
        } else if rules[tail].consider(key) {
            accepted.push((e.index, e.weight, tail));
            stream.decide(Action::Accept(vec![e.index]));
        } else {
            stream.decide(Action::Reject);
        }
    }
    accepted.sort_unstable_by_key(|a| a.0);
    GraphicOutcome {
        selected: EdgeSet::collect(accepted.iter().map(|a| a.0), |i| {
            accepted.iter().find(|a| a.0 == i).map(|a| a.1).unwrap()
        }),
        log: stream.finish(),
        orientation: x,
        tails: accepted.iter().map(|a| a.2).collect(),
    }
}

/// Flips a fair coin for the orientation, then runs
/// [`graphic_matroid_secretary_oriented`]. Every vertex keeps at most one
/// out-edge, so the output is a forest.
pub fn graphic_matroid_secretary<W, S, R>(stream: S, vertex_count: usize, rng: &mut R) -> GraphicOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = EdgeArrival<W>>,
    R: Rng + ?Sized,
{
    let x = u8::from(rng.random_bool(0.5));
    graphic_matroid_secretary_oriented(stream, vertex_count, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::UndirectedGraph;
    use crate::oracles::is_acyclic;
    use crate::online::stream::ArrivalStream;
    use crate::online::units::edge_arrivals;

    fn triangle() -> UndirectedGraph<f64> {
        UndirectedGraph::from_triples(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn single_edge_always_taken() {
        let g = UndirectedGraph::from_triples(2, [(0, 1, 7.0)]).unwrap();
        for x in 0..2 {
            let out = graphic_matroid_secretary_oriented(ArrivalStream::in_order(edge_arrivals(&g)), 2, x);
            assert_eq!(out.selected.indices(), &[0]);
        }
    }

    #[test]
    fn triangle_trace() {
        // cutoff ⌊3/e⌋ = 1. In G_0 the tails are 1, 2, 2. Arrival order
        // (0,1), (0,2), (1,2): vertex 1 observes 3; vertex 2 has observed
        // nothing and takes (0,2); (1,2) is then refused.
        let g = triangle();
        let out = graphic_matroid_secretary_oriented(ArrivalStream::in_order(edge_arrivals(&g)), 3, 0);
        assert_eq!(out.selected.indices(), &[1]);
        assert_eq!(out.tails, vec![2]);
        // In G_1 the tails are 0, 0, 1: vertex 0 observed 3 so (0,2) fails,
        // vertex 1 takes (1,2).
        let out = graphic_matroid_secretary_oriented(ArrivalStream::in_order(edge_arrivals(&g)), 3, 1);
        assert_eq!(out.selected.indices(), &[2]);
        assert!(is_acyclic(&g, &out.selected));
    }

    #[test]
    fn one_out_edge_per_tail() {
        let g = triangle();
        for seed in 0..50 {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let out = graphic_matroid_secretary(ArrivalStream::shuffled(edge_arrivals(&g), &mut rng), 3, &mut rng);
            let mut tails = out.tails.clone();
            tails.sort_unstable();
            tails.dedup();
            assert_eq!(tails.len(), out.tails.len());
            assert!(is_acyclic(&g, &out.selected));
        }
    }
}
