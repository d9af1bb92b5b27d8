//! Matching when an adversary groups the arriving elements: the log-threshold
//! algorithm, the naive edge-group sample-and-price, and SampleWithGroups.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{invalid_param, Error, Result};
use crate::instances::{EdgeSet, GroupedInstance, GroupingMode};
use crate::oracles::greedy::{greedy_candidates, sort_heavier_first, Candidate};
use crate::online::bvm::{Coin, PriceTable, SimulateResult};
use crate::online::sampling::{binomial_inverse_cdf, ceil_log2, check_open_unit};
use crate::online::stream::{Action, DecisionLog, OnlineStream};
use crate::online::units::{GroupArrival, GroupEdge};
use crate::scalar::Weight;

fn candidate<W: Weight>(e: &GroupEdge<W>) -> Candidate<W> {
    Candidate {
        index: e.index,
        left: e.left,
        right: e.right,
        weight: e.weight,
    }
}

/// Number of groups the threshold algorithm only observes.
pub fn threshold_sample_size(group_count: usize) -> usize {
    group_count.div_ceil(2)
}

/// Largest exponent the threshold algorithm may draw: `1 + ⌈log₂ n⌉`.
pub fn max_threshold_exponent(n_elements: usize) -> u32 {
    1 + ceil_log2(n_elements)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdOutcome<W> {
    pub selected: EdgeSet<W>,
    pub log: DecisionLog,
    /// Heaviest edge weight among the observed groups, 0 if none.
    pub observed_max: W,
    pub exponent: u32,
    pub threshold: W,
}

/// The threshold algorithm with a fixed exponent `j`.
pub fn grouped_threshold_match_with_exponent<W, S>(
    mut stream: S,
    left_count: usize,
    right_count: usize,
    exponent: u32,
) -> ThresholdOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = GroupArrival<W>>,
{
    let observe = threshold_sample_size(stream.len());
    let mut observed_max = W::zero();
    for _ in 0..observe {
        let Some(arrival) = stream.next_arrival() else {
            break;
        };
        for e in &arrival.unit.edges {
            if e.weight > observed_max {
                observed_max = e.weight;
            }
        }
        stream.decide(Action::Reject);
    }

    let threshold = observed_max / W::from_f64_lossy(2f64.powi(exponent as i32));
    let mut left_used = vec![false; left_count];
    let mut right_used = vec![false; right_count];
    let mut accepted = BTreeMap::new();
    while let Some(arrival) = stream.next_arrival() {
        let mut cands: Vec<Candidate<W>> = arrival
            .unit
            .edges
            .iter()
            .filter(|e| e.weight >= threshold)
            .map(candidate)
            .collect();
        sort_heavier_first(&mut cands);
        let mut taken = Vec::new();
        for c in cands {
            if !left_used[c.left] && !right_used[c.right] {
                left_used[c.left] = true;
                right_used[c.right] = true;
                accepted.insert(c.index, c.weight);
                taken.push(c.index);
            }
        }
        stream.decide(if taken.is_empty() {
            Action::Reject
        } else {
            taken.sort_unstable();
            Action::Accept(taken)
        });
    }

    ThresholdOutcome {
        selected: EdgeSet::collect(accepted.keys().copied(), |i| accepted[&i]),
        log: stream.finish(),
        observed_max,
        exponent,
        threshold,
    }
}

/// Observes the first ⌈g/2⌉ groups, draws `j` uniformly from
/// `{0, …, 1 + ⌈log₂ n⌉}` and greedily matches later edges weighing at least
/// `w/2ʲ`, where `w` is the heaviest observed edge.
pub fn grouped_threshold_match<W, S, R>(
    stream: S,
    left_count: usize,
    right_count: usize,
    n_elements: usize,
    rng: &mut R,
) -> Result<ThresholdOutcome<W>>
where
    W: Weight,
    S: OnlineStream<Unit = GroupArrival<W>>,
    R: Rng + ?Sized,
{
    if n_elements == 0 {
        return Err(invalid_param("n_elements", "must be at least 1"));
    }
    let j = rng.random_range(0..=max_threshold_exponent(n_elements));
    Ok(grouped_threshold_match_with_exponent(stream, left_count, right_count, j))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveGroupedOutcome<W> {
    pub selected: EdgeSet<W>,
    pub log: DecisionLog,
    /// Groups observed before prices were fixed.
    pub sample_size: usize,
    pub sample_solution: EdgeSet<W>,
    pub left_prices: PriceTable<W>,
    pub right_prices: PriceTable<W>,
}

/// Edge-group sample-and-price with an explicit number of sampled groups.
/// Both endpoints of every sampled greedy edge are priced; later edges must
/// clear both prices and keep the selection a matching.
pub fn naive_grouped_sample_and_price_with_sample<W, S>(
    mut stream: S,
    left_count: usize,
    right_count: usize,
    sample_size: usize,
) -> NaiveGroupedOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = GroupArrival<W>>,
{
    let mut sample = Vec::new();
    let mut seen = 0;
    while seen < sample_size {
        let Some(arrival) = stream.next_arrival() else {
            break;
        };
        sample.extend(arrival.unit.edges.iter().map(candidate));
        stream.decide(Action::Reject);
        seen += 1;
    }
    let sample_matching = greedy_candidates(sample, left_count, right_count);
    let mut left_prices = PriceTable::new();
    let mut right_prices = PriceTable::new();
    for c in &sample_matching {
        left_prices.set(c.left, c.weight);
        right_prices.set(c.right, c.weight);
    }

    let mut left_used = vec![false; left_count];
    let mut right_used = vec![false; right_count];
    let mut accepted = BTreeMap::new();
    while let Some(arrival) = stream.next_arrival() {
        let mut cands: Vec<Candidate<W>> = arrival
            .unit
            .edges
            .iter()
            .filter(|e| e.weight >= left_prices.get(e.left) && e.weight >= right_prices.get(e.right))
            .map(candidate)
            .collect();
        sort_heavier_first(&mut cands);
        let mut taken = Vec::new();
        for c in cands {
            if !left_used[c.left] && !right_used[c.right] {
                left_used[c.left] = true;
                right_used[c.right] = true;
                accepted.insert(c.index, c.weight);
                taken.push(c.index);
            }
        }
        stream.decide(if taken.is_empty() {
            Action::Reject
        } else {
            taken.sort_unstable();
            Action::Accept(taken)
        });
    }

    let sample_weights: BTreeMap<usize, W> = sample_matching.iter().map(|c| (c.index, c.weight)).collect();
    NaiveGroupedOutcome {
        selected: EdgeSet::collect(accepted.keys().copied(), |i| accepted[&i]),
        log: stream.finish(),
        sample_size: seen,
        sample_solution: EdgeSet::collect(sample_weights.keys().copied(), |i| sample_weights[&i]),
        left_prices,
        right_prices,
    }
}

/// The natural sample-and-price for edge groups. The sampled groups are the
/// first `k ~ Binomial(g, p)` arrivals, which under a random arrival order is
/// the same as sampling each group independently with probability `p`.
pub fn naive_grouped_sample_and_price<W, S, R>(
    stream: S,
    left_count: usize,
    right_count: usize,
    p: f64,
    rng: &mut R,
) -> Result<NaiveGroupedOutcome<W>>
where
    W: Weight,
    S: OnlineStream<Unit = GroupArrival<W>>,
    R: Rng + ?Sized,
{
    check_open_unit("p", p)?;
    let k = binomial_inverse_cdf(stream.len(), p, rng);
    Ok(naive_grouped_sample_and_price_with_sample(stream, left_count, right_count, k))
}

/// SampleWithGroups with caller-supplied coins, one per group in group-id
/// order. Heads means sampled. The returned `coins` are keyed by group.
pub fn sample_with_groups_with_coins<W: Weight>(
    inst: &GroupedInstance<W>,
    mut coin: impl FnMut(usize) -> Coin,
) -> Result<SimulateResult<W>> {
    if inst.mode() != GroupingMode::LeftVertexGroups {
        return Err(Error::KindMismatch {
            expected: GroupingMode::LeftVertexGroups.as_str(),
            found: inst.mode().as_str(),
        });
    }
    let g = inst.base();
    let group_edges = inst.group_edges();
    let cands_of = |group: usize| {
        group_edges[group].iter().map(|&i| {
            let e = g.edges()[i];
            Candidate {
                index: i,
                left: e.left,
                right: e.right,
                weight: e.weight,
            }
        })
    };

    let coins: BTreeMap<usize, Coin> = (0..group_edges.len()).map(|gi| (gi, coin(gi))).collect();
    let sampled: Vec<Candidate<W>> = coins
        .iter()
        .filter(|(_, &c)| c == Coin::Heads)
        .flat_map(|(&gi, _)| cands_of(gi))
        .collect();
    let m1 = greedy_candidates(sampled.clone(), g.left_count(), g.right_count());

    let mut m2 = Vec::new();
    for (&gi, _) in coins.iter().filter(|(_, &c)| c == Coin::Tails) {
        let mut cands = sampled.clone();
        cands.extend(cands_of(gi));
        let own: Vec<usize> = group_edges[gi].clone();
        m2.extend(
            greedy_candidates(cands, g.left_count(), g.right_count())
                .into_iter()
                .filter(|c| own.binary_search(&c.index).is_ok())
                .map(|c| c.index),
        );
    }

    let mut degree = vec![0usize; g.right_count()];
    for &i in &m2 {
        degree[g.edges()[i].right] += 1;
    }
    let m3: Vec<usize> = m2.iter().copied().filter(|&i| degree[g.edges()[i].right] == 1).collect();
    Ok(SimulateResult {
        m1: g.edge_set(m1.into_iter().map(|c| c.index)),
        m2: g.edge_set(m2),
        m3: g.edge_set(m3),
        coins,
    })
}

/// SampleWithGroups: sample each group with probability `p`, take `m1` as
/// greedy on the sampled groups, and for every unsampled group `g` put into
/// `m2` the edges that greedy on (sampled ∪ g) assigns to `g`. `m3` deletes
/// all `m2` edges at right vertices of `m2`-degree above one.
pub fn sample_with_groups<W: Weight, R: Rng + ?Sized>(
    inst: &GroupedInstance<W>,
    p: f64,
    rng: &mut R,
) -> Result<SimulateResult<W>> {
    check_open_unit("p", p)?;
    sample_with_groups_with_coins(inst, |_| Coin::flip(p, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_figure2, gen_groups_counterexample};
    use crate::online::stream::ArrivalStream;
    use crate::online::units::group_arrivals;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exponent_range() {
        assert_eq!(max_threshold_exponent(4), 3);
        assert_eq!(max_threshold_exponent(3), 3);
        assert_eq!(max_threshold_exponent(1), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = [false; 4];
        for _ in 0..200 {
            let fig = gen_figure2::<f64>();
            let out = grouped_threshold_match(ArrivalStream::in_order(group_arrivals(&fig)), 3, 2, 4, &mut rng).unwrap();
            seen[out.exponent as usize] = true;
        }
        assert_eq!(seen, [true; 4]);
    }

    #[test]
    fn single_group_is_only_observed() {
        let fig = gen_figure2::<f64>();
        let units: Vec<_> = group_arrivals(&fig).into_iter().take(1).collect();
        let out = grouped_threshold_match_with_exponent(ArrivalStream::in_order(units), 3, 2, 0);
        assert!(out.selected.is_empty());
        assert_eq!(out.observed_max, 4.0);
    }

    #[test]
    fn figure2_threshold_trace() {
        // {B} observed (w = 3); j = 1 gives threshold 1.5, so group {A, C}
        // takes A–X (4) and rejects C–Y (1).
        let fig = gen_figure2::<f64>();
        let mut units = group_arrivals(&fig);
        units.reverse();
        let out = grouped_threshold_match_with_exponent(ArrivalStream::in_order(units), 3, 2, 1);
        assert_eq!(out.threshold, 1.5);
        assert_eq!(out.selected.indices(), &[0]);
        // j = 2: threshold 0.75 lets C–Y in as well
        let mut units = group_arrivals(&fig);
        units.reverse();
        let out = grouped_threshold_match_with_exponent(ArrivalStream::in_order(units), 3, 2, 2);
        assert_eq!(out.selected.indices(), &[0, 3]);
        assert_eq!(out.log.accepted(), vec![0, 3]);
    }

    #[test]
    fn counterexample_cases() {
        let n = 6;
        let inst = gen_groups_counterexample::<f64>(n, 1e-3).unwrap();
        let units = group_arrivals(&inst);
        let (l, r) = (inst.base().left_count(), inst.base().right_count());

        // E1 sampled, E2 arrives: nothing beats the right prices
        let out = naive_grouped_sample_and_price_with_sample(ArrivalStream::in_order(units.clone()), l, r, 1);
        assert!(out.selected.is_empty());

        // E2 sampled, E1 arrives: only (l_n, r_n)
        let rev: Vec<_> = units.iter().rev().cloned().collect();
        let out = naive_grouped_sample_and_price_with_sample(ArrivalStream::in_order(rev), l, r, 1);
        assert_eq!(out.selected.indices(), &[n - 1]);

        let out = naive_grouped_sample_and_price_with_sample(ArrivalStream::in_order(units), l, r, 2);
        assert!(out.selected.is_empty());
    }

    #[test]
    fn figure2_sample_with_groups() {
        // group 1 = {B} sampled, group 0 = {A, C} not
        let fig = gen_figure2::<f64>();
        let r = sample_with_groups_with_coins(&fig, |g| if g == 1 { Coin::Heads } else { Coin::Tails }).unwrap();
        assert_eq!(r.m1.indices(), &[1]);
        assert_eq!(r.m1.total_weight(), 3.0);
        assert_eq!(r.m2.indices(), &[0]);
        assert_eq!(r.m3.indices(), &[0]);
    }

    #[test]
    fn all_sampled_leaves_m2_empty() {
        let fig = gen_figure2::<f64>();
        let r = sample_with_groups_with_coins(&fig, |_| Coin::Heads).unwrap();
        assert!(r.m2.is_empty() && r.m3.is_empty());
        assert_eq!(r.m1.total_weight(), 6.0);
    }

    #[test]
    fn edge_groups_rejected() {
        let inst = gen_groups_counterexample::<f64>(2, 0.01).unwrap();
        assert!(sample_with_groups_with_coins(&inst, |_| Coin::Heads).is_err());
    }
}
