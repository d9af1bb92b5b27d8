//! Bipartite vertex-at-a-time matching: the Simulate analysis construction
//! and the online sample-and-price algorithm.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::Result;
use crate::instances::{EdgeSet, WeightedBipartiteGraph};
use crate::oracles::greedy::{greedy_candidates, Candidate};
use crate::online::sampling::{binomial_inverse_cdf, check_open_unit};
use crate::online::stream::{Action, DecisionLog, OnlineStream};
use crate::online::units::VertexArrival;
use crate::scalar::{beats, descending_order, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coin {
    Heads,
    Tails,
}

impl Coin {
    pub fn flip<R: Rng + ?Sized>(p_heads: f64, rng: &mut R) -> Self {
        if rng.random_bool(p_heads) {
            Coin::Heads
        } else {
            Coin::Tails
        }
    }
}

/// Outcome of Simulate: `m1` (heads), `m2` (tails) and the pruned `m3`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateResult<W> {
    pub m1: EdgeSet<W>,
    pub m2: EdgeSet<W>,
    pub m3: EdgeSet<W>,
    /// The coin of every left vertex that was assigned.
    pub coins: BTreeMap<usize, Coin>,
}

/// Vertex prices; vertices without an entry cost 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PriceTable<W> {
    prices: BTreeMap<usize, W>,
}

impl<W: Weight> PriceTable<W> {
    pub fn new() -> Self {
        Self {
            prices: BTreeMap::new(),
        }
    }

    pub fn get(&self, vertex: usize) -> W {
        self.prices.get(&vertex).copied().unwrap_or_else(W::zero)
    }

    pub fn set(&mut self, vertex: usize, price: W) {
        self.prices.insert(vertex, price);
    }

    /// Vertices with an explicit price, ascending.
    pub fn priced(&self) -> impl Iterator<Item = (usize, W)> + '_ {
        self.prices.iter().map(|(&v, &w)| (v, w))
    }
}

/// Result of a sample-and-price run.
#[derive(Debug, Clone, PartialEq)]
pub struct PricedOutcome<W> {
    /// The irrevocably accepted edges.
    pub selected: EdgeSet<W>,
    pub log: DecisionLog,
    /// Units observed before prices were fixed.
    pub sample_size: usize,
    /// Greedy solution on the sample.
    pub sample_solution: EdgeSet<W>,
    pub prices: PriceTable<W>,
    /// `(left, edge)` for every post-sample vertex that had an edge clearing
    /// its prices, whether or not the edge was accepted.
    pub proposals: Vec<(usize, usize)>,
}

/// Prunes tails edges at right vertices holding more than one of them.
fn prune_by_right_degree<W: Weight>(
    g: &WeightedBipartiteGraph<W>,
    m2: &[usize],
) -> Vec<usize> {
    let mut degree = vec![0usize; g.right_count()];
    for &i in m2 {
        degree[g.edges()[i].right] += 1;
    }
    m2.iter()
        .copied()
        .filter(|&i| degree[g.edges()[i].right] == 1)
        .collect()
}

/// Simulate with caller-supplied coins, queried once per assigned vertex in
/// scan order.
pub fn bvm_simulate_with_coins<W: Weight>(
    g: &WeightedBipartiteGraph<W>,
    mut coin: impl FnMut(usize) -> Coin,
) -> SimulateResult<W> {
    let mut assigned = vec![false; g.left_count()];
    let mut right_in_m1 = vec![false; g.right_count()];
    let mut coins = BTreeMap::new();
    let (mut m1, mut m2) = (Vec::new(), Vec::new());
    for i in descending_order(&g.weights()) {
        let e = g.edges()[i];
        if assigned[e.left] || right_in_m1[e.right] {
            continue;
        }
        assigned[e.left] = true;
        let c = coin(e.left);
        coins.insert(e.left, c);
        match c {
            Coin::Heads => {
                right_in_m1[e.right] = true;
                m1.push(i);
            }
            Coin::Tails => m2.push(i),
        }
    }
    let m3 = prune_by_right_degree(g, &m2);
    SimulateResult {
        m1: g.edge_set(m1),
        m2: g.edge_set(m2),
        m3: g.edge_set(m3),
        coins,
    }
}

/// Simulate: edges heaviest first; each left vertex is assigned at its first
/// edge compatible with `m1`, and a `p`-biased coin sends that edge to `m1`
/// (heads) or `m2` (tails). `m3` drops every `m2` edge whose right vertex
/// has `m2`-degree above one.
pub fn bvm_simulate<W: Weight, R: Rng + ?Sized>(
    g: &WeightedBipartiteGraph<W>,
    p: f64,
    rng: &mut R,
) -> Result<SimulateResult<W>> {
    check_open_unit("p", p)?;
    Ok(bvm_simulate_with_coins(g, |_| Coin::flip(p, rng)))
}

/// Sample-and-price with an explicit sample size: the first `sample_size`
/// arrivals are observed and priced by their greedy matching; every later
/// vertex proposes its heaviest edge clearing the price of its right
/// endpoint, accepted if that endpoint is still free.
pub fn bvm_sample_and_price_with_sample<W, S>(
    mut stream: S,
    right_count: usize,
    sample_size: usize,
) -> PricedOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = VertexArrival<W>>,
{
    let left_count = stream.len();
    let mut sample = Vec::new();
    let mut seen = 0;
    while seen < sample_size {
        let Some(arrival) = stream.next_arrival() else {
            break;
        };
        let v = arrival.unit;
        sample.extend(v.edges.iter().map(|e| Candidate {
            index: e.index,
            left: v.left,
            right: e.right,
            weight: e.weight,
        }));
        stream.decide(Action::Reject);
        seen += 1;
    }

    let sample_matching = greedy_candidates(sample, left_count, right_count);
    let mut prices = PriceTable::new();
    for c in &sample_matching {
        prices.set(c.right, c.weight);
    }

    let mut right_taken = vec![false; right_count];
    let mut accepted = Vec::new();
    let mut proposals = Vec::new();
    while let Some(arrival) = stream.next_arrival() {
        let v = arrival.unit;
        let proposal = v
            .edges
            .iter()
            .filter(|e| e.weight >= prices.get(e.right))
            .copied()
            .reduce(|a, b| if beats((b.weight, b.index), (a.weight, a.index)) { b } else { a });
        match proposal {
            Some(e) => {
                proposals.push((v.left, e.index));
                if right_taken[e.right] {
                    stream.decide(Action::Reject);
                } else {
                    right_taken[e.right] = true;
                    accepted.push((e.index, e.weight));
                    stream.decide(Action::Accept(vec![e.index]));
                }
            }
            None => stream.decide(Action::Reject),
        }
    }

    let sample_weights: BTreeMap<usize, W> = sample_matching.iter().map(|c| (c.index, c.weight)).collect();
    let accepted: BTreeMap<usize, W> = accepted.into_iter().collect();
    PricedOutcome {
        selected: EdgeSet::collect(accepted.keys().copied(), |i| accepted[&i]),
        log: stream.finish(),
        sample_size: seen,
        sample_solution: EdgeSet::collect(sample_weights.keys().copied(), |i| sample_weights[&i]),
        prices,
        proposals,
    }
}

/// Online sample-and-price: `k ~ Binomial(|L|, p)` is drawn from `rng`, then
/// [`bvm_sample_and_price_with_sample`] runs with sample size `k`.
pub fn bvm_sample_and_price<W, S, R>(stream: S, right_count: usize, p: f64, rng: &mut R) -> Result<PricedOutcome<W>>
where
    W: Weight,
    S: OnlineStream<Unit = VertexArrival<W>>,
    R: Rng + ?Sized,
{
    check_open_unit("p", p)?;
    let k = binomial_inverse_cdf(stream.len(), p, rng);
    Ok(bvm_sample_and_price_with_sample(stream, right_count, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_figure2;
    use crate::online::stream::ArrivalStream;
    use crate::online::units::vertex_arrivals;

    fn graph(triples: &[(usize, usize, f64)], l: usize, r: usize) -> WeightedBipartiteGraph<f64> {
        WeightedBipartiteGraph::from_triples(l, r, triples.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_heads_or_tails() {
        let g = graph(&[(0, 0, 2.0)], 1, 1);
        let heads = bvm_simulate_with_coins(&g, |_| Coin::Heads);
        assert_eq!(heads.m1.indices(), &[0]);
        assert!(heads.m2.is_empty() && heads.m3.is_empty());
        let tails = bvm_simulate_with_coins(&g, |_| Coin::Tails);
        assert!(tails.m1.is_empty());
        assert_eq!(tails.m2.indices(), &[0]);
        assert_eq!(tails.m3.indices(), &[0]);
        assert_eq!(tails.coins[&0], Coin::Tails);
    }

    #[test]
    fn shared_right_vertex_is_pruned() {
        let g = graph(&[(0, 0, 3.0), (1, 0, 2.0)], 2, 1);
        let r = bvm_simulate_with_coins(&g, |_| Coin::Tails);
        assert_eq!(r.m2.indices(), &[0, 1]);
        assert!(r.m3.is_empty());
    }

    #[test]
    fn heads_blocks_later_edges_at_its_right_vertex() {
        let g = graph(&[(0, 0, 3.0), (1, 0, 2.0), (1, 1, 1.0)], 2, 2);
        let r = bvm_simulate_with_coins(&g, |l| if l == 0 { Coin::Heads } else { Coin::Tails });
        assert_eq!(r.m1.indices(), &[0]);
        // vertex 1 skips (1,0) and is assigned at (1,1)
        assert_eq!(r.m2.indices(), &[2]);
    }

    #[test]
    fn one_vertex_unsampled_takes_its_best_edge() {
        let g = graph(&[(0, 0, 1.0), (0, 1, 4.0)], 1, 2);
        let out = bvm_sample_and_price_with_sample(ArrivalStream::in_order(vertex_arrivals(&g)), 2, 0);
        assert_eq!(out.selected.indices(), &[1]);
        let out = bvm_sample_and_price_with_sample(ArrivalStream::in_order(vertex_arrivals(&g)), 2, 1);
        assert!(out.selected.is_empty());
        out.log.validate(1).unwrap();
    }

    #[test]
    fn figure2_forced_sample() {
        // A, B sampled; C arrives last.
        let fig = gen_figure2::<f64>();
        let g = fig.base();
        let units = vertex_arrivals(g);
        let out = bvm_sample_and_price_with_sample(ArrivalStream::in_order(units), 2, 2);
        assert_eq!(out.prices.get(0), 4.0);
        assert_eq!(out.prices.get(1), 2.0);
        assert!(out.selected.is_empty());
        assert!(out.proposals.is_empty());
    }

    #[test]
    fn rejects_bad_p() {
        let g = graph(&[(0, 0, 1.0)], 1, 1);
        let mut rng = rand::rng();
        assert!(bvm_simulate(&g, 0.0, &mut rng).is_err());
        assert!(bvm_sample_and_price(ArrivalStream::in_order(vertex_arrivals(&g)), 1, 1.0, &mut rng).is_err());
    }
}
