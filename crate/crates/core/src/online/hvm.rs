//! Hypergraph vertex-at-a-time matching. With `d = 1` everything here
//! coincides with the bipartite versions in [`crate::online::bvm`].

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{invalid_param, Result};
use crate::instances::{EdgeSet, HvmHypergraph};
use crate::oracles::greedy::{greedy_bundles, BundleCandidate};
use crate::online::bvm::{Coin, PriceTable, PricedOutcome, SimulateResult};
use crate::online::sampling::{binomial_inverse_cdf, check_open_unit};
use crate::online::stream::{Action, OnlineStream};
use crate::online::units::BundleArrival;
use crate::scalar::{beats, descending_order, Weight};

/// Sampling probability `1 − 1/(2d)` used by the hypergraph algorithm.
pub fn hvm_sample_probability(d: usize) -> f64 {
    1.0 - 1.0 / (2.0 * d as f64)
}

pub fn hvm_simulate_with_coins<W: Weight>(
    h: &HvmHypergraph<W>,
    mut coin: impl FnMut(usize) -> Coin,
) -> SimulateResult<W> {
    let mut assigned = vec![false; h.left_count()];
    let mut right_in_m1 = vec![false; h.right_count()];
    let mut coins = BTreeMap::new();
    let (mut m1, mut m2) = (Vec::new(), Vec::new());
    for i in descending_order(&h.weights()) {
        let e = &h.edges()[i];
        if assigned[e.left] || e.rights.iter().any(|&r| right_in_m1[r]) {
            continue;
        }
        assigned[e.left] = true;
        let c = coin(e.left);
        coins.insert(e.left, c);
        match c {
            Coin::Heads => {
                for &r in &e.rights {
                    right_in_m1[r] = true;
                }
                m1.push(i);
            }
            Coin::Tails => m2.push(i),
        }
    }
    // m2 edges have distinct left vertices, so disjointness is decided on
    // the right side alone.
    let mut degree = vec![0usize; h.right_count()];
    for &i in &m2 {
        for &r in &h.edges()[i].rights {
            degree[r] += 1;
        }
    }
    let m3: Vec<usize> = m2
        .iter()
        .copied()
        .filter(|&i| h.edges()[i].rights.iter().all(|&r| degree[r] == 1))
        .collect();
    SimulateResult {
        m1: h.edge_set(m1),
        m2: h.edge_set(m2),
        m3: h.edge_set(m3),
        coins,
    }
}

/// Hypergraph Simulate: like the bipartite version, but an edge is
/// compatible with `m1` when it is disjoint from it, and `m3` keeps exactly
/// the `m2` edges disjoint from every other `m2` edge.
pub fn hvm_simulate<W: Weight, R: Rng + ?Sized>(h: &HvmHypergraph<W>, p: f64, rng: &mut R) -> Result<SimulateResult<W>> {
    check_open_unit("p", p)?;
    Ok(hvm_simulate_with_coins(h, |_| Coin::flip(p, rng)))
}

/// Hypergraph sample-and-price with an explicit sample size. Each right
/// vertex is priced at the weight of the sample's greedy edge covering it;
/// a later vertex proposes its heaviest edge clearing the price of every
/// right vertex it contains, accepted if disjoint from the accepted set.
pub fn hvm_sample_and_price_with_sample<W, S>(mut stream: S, right_count: usize, sample_size: usize) -> PricedOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = BundleArrival<W>>,
{
    let left_count = stream.len();
    let mut sampled: Vec<BundleArrival<W>> = Vec::new();
    while sampled.len() < sample_size {
        let Some(arrival) = stream.next_arrival() else {
            break;
        };
        sampled.push(arrival.unit);
        stream.decide(Action::Reject);
    }

    let cands = sampled
        .iter()
        .flat_map(|v| {
            v.edges.iter().map(move |e| BundleCandidate {
                index: e.index,
                left: v.left,
                rights: e.rights.as_slice(),
                weight: e.weight,
            })
        })
        .collect();
    let sample_solution = greedy_bundles(cands, left_count, right_count);
    let mut prices = PriceTable::new();
    for c in &sample_solution {
        for &r in c.rights {
            prices.set(r, c.weight);
        }
    }
    let sample_weights: BTreeMap<usize, W> = sample_solution.iter().map(|c| (c.index, c.weight)).collect();

    let mut right_taken = vec![false; right_count];
    let mut accepted = BTreeMap::new();
    let mut proposals = Vec::new();
    while let Some(arrival) = stream.next_arrival() {
        let v = arrival.unit;
        let proposal = v
            .edges
            .iter()
            .filter(|e| e.rights.iter().all(|&r| e.weight >= prices.get(r)))
            .reduce(|a, b| if beats((b.weight, b.index), (a.weight, a.index)) { b } else { a });
        match proposal {
            Some(e) => {
                proposals.push((v.left, e.index));
                if e.rights.iter().any(|&r| right_taken[r]) {
                    stream.decide(Action::Reject);
                } else {
                    for &r in &e.rights {
                        right_taken[r] = true;
                    }
                    accepted.insert(e.index, e.weight);
                    stream.decide(Action::Accept(vec![e.index]));
                }
            }
            None => stream.decide(Action::Reject),
        }
    }

    PricedOutcome {
        selected: EdgeSet::collect(accepted.keys().copied(), |i| accepted[&i]),
        log: stream.finish(),
        sample_size: sampled.len(),
        sample_solution: EdgeSet::collect(sample_weights.keys().copied(), |i| sample_weights[&i]),
        prices,
        proposals,
    }
}

/// Online hypergraph sample-and-price with `k ~ Binomial(|L|, 1 − 1/(2d))`.
pub fn hvm_sample_and_price<W, S, R>(stream: S, right_count: usize, d: usize, rng: &mut R) -> Result<PricedOutcome<W>>
where
    W: Weight,
    S: OnlineStream<Unit = BundleArrival<W>>,
    R: Rng + ?Sized,
{
    if d == 0 {
        return Err(invalid_param("d", "must be at least 1"));
    }
    let k = binomial_inverse_cdf(stream.len(), hvm_sample_probability(d), rng);
    Ok(hvm_sample_and_price_with_sample(stream, right_count, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::HyperEdge;
    use crate::online::stream::ArrivalStream;
    use crate::online::units::bundle_arrivals;

    fn hyper(right_count: usize, d: usize, edges: &[(usize, &[usize], f64)]) -> HvmHypergraph<f64> {
        let left_count = edges.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let edges = edges
            .iter()
            .map(|&(left, rights, weight)| HyperEdge {
                left,
                rights: rights.to_vec(),
                weight,
            })
            .collect();
        HvmHypergraph::new(right_count, left_count, d, edges).unwrap()
    }

    #[test]
    fn probability() {
        assert_eq!(hvm_sample_probability(1), 0.5);
        assert_eq!(hvm_sample_probability(2), 0.75);
    }

    #[test]
    fn single_edge_tails() {
        let h = hyper(2, 2, &[(0, &[0, 1], 1.0)]);
        let r = hvm_simulate_with_coins(&h, |_| Coin::Tails);
        assert_eq!(r.m3.indices(), &[0]);
    }

    #[test]
    fn intersecting_tails_are_pruned() {
        let h = hyper(3, 2, &[(0, &[0, 1], 3.0), (1, &[1, 2], 2.0)]);
        let r = hvm_simulate_with_coins(&h, |_| Coin::Tails);
        assert_eq!(r.m2.indices(), &[0, 1]);
        assert!(r.m3.is_empty());
    }

    #[test]
    fn disjoint_tails_survive() {
        let h = hyper(3, 1, &[(0, &[0], 3.0), (1, &[2], 2.0)]);
        let r = hvm_simulate_with_coins(&h, |_| Coin::Tails);
        assert_eq!(r.m3.indices(), &[0, 1]);
    }

    #[test]
    fn unsampled_vertex_takes_best_bundle() {
        let h = hyper(3, 2, &[(0, &[0, 1], 3.0), (0, &[2], 5.0)]);
        let out = hvm_sample_and_price_with_sample(ArrivalStream::in_order(bundle_arrivals(&h)), 3, 0);
        assert_eq!(out.selected.indices(), &[1]);
    }

    #[test]
    fn price_applies_to_every_vertex_of_the_bundle() {
        // vertex 0 sampled and prices rights 0,1 at 3; vertex 1 offers
        // {1,2} at 2.5 (blocked by right 1) and {2} at 1 (free).
        let h = hyper(3, 2, &[(0, &[0, 1], 3.0), (1, &[1, 2], 2.5), (1, &[2], 1.0)]);
        let out = hvm_sample_and_price_with_sample(ArrivalStream::in_order(bundle_arrivals(&h)), 3, 1);
        assert_eq!(out.prices.get(1), 3.0);
        assert_eq!(out.prices.get(2), 0.0);
        assert_eq!(out.selected.indices(), &[2]);
        assert!(h.is_disjoint_set(&out.selected));
    }

    #[test]
    fn zero_d_rejected() {
        let h = hyper(1, 1, &[(0, &[0], 1.0)]);
        let mut rng = rand::rng();
        assert!(hvm_sample_and_price(ArrivalStream::in_order(bundle_arrivals(&h)), 1, 0, &mut rng).is_err());
    }
}
