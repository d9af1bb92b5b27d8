//! Experiments beyond plain bound checks: the degree/revenue probe of the
//! tighter pruning analysis, the SampleWithGroups conjecture table, the
//! naive grouped counterexample and the classical secretary frequency.

use serde::Serialize;

use crate::error::{invalid_param, Error, Result};
use crate::harness::estimate::{BoundCheck, Comparison, Estimate, OptSource};
use crate::harness::registry::Params;
use crate::harness::seeds::derive_seed;
use crate::harness::suites::{check_bounds, Suite, SuiteConfig};
use crate::harness::trials::run_trials;
use crate::instances::{gen_groups_counterexample, GroupedInstance, Instance, WeightedBipartiteGraph};
use crate::online::sampling::check_open_unit;
use crate::online::{
    bvm_simulate, elements, group_arrivals, naive_grouped_sample_and_price_with_sample, run_classical_secretary,
    ArrivalStream, GroupArrival,
};

/// Degree inequalities are only checked where the previous degree occurs in
/// more than this fraction of (trial, vertex) pairs.
pub const PROBE_MIN_FREQUENCY: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeRevenueStats {
    pub p: f64,
    pub trials: usize,
    pub right_count: usize,
    /// `P̂ᵢ` at index `i`: the fraction of (trial, right vertex) pairs in which
    /// the vertex has `i` edges of `m2`.
    pub degree_frequencies: Vec<f64>,
    /// `ŵᵢ` at index `i`: mean `m2` revenue of a right vertex given degree `i`.
    pub conditional_revenue: Vec<Option<f64>>,
    /// Per-trial `Σ_v Rev₂(v)`, which equals `w(m2)`.
    pub rev2: Estimate,
    /// Per-trial `Σ_v Rev₂(v)/deg(v)`: the expected revenue of a right vertex
    /// that keeps one of its `m2` edges chosen uniformly at random.
    pub rev3: Estimate,
    pub checks: Vec<BoundCheck>,
}

struct DegreeTrial {
    /// Count of right vertices per degree.
    counts: Vec<usize>,
    /// Sum of Rev₂ over right vertices per degree.
    revenue: Vec<f64>,
    rev2: f64,
    rev3: f64,
}

/// Tabulates right-vertex `m2` degrees and revenues of Simulate and checks
/// `P̂ᵢ ≤ (1−p)·P̂ᵢ₋₁` and `Rev₃ ≥ p·Rev₂` at three standard errors, using
/// paired per-trial differences.
pub fn degree_revenue_probe(
    g: &WeightedBipartiteGraph<f64>,
    p: f64,
    trials: usize,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<DegreeRevenueStats> {
    check_open_unit("p", p)?;
    let rc = g.right_count();
    let per_trial = run_trials(trials, master_seed, workers, |_, rng| {
        let sim = bvm_simulate(g, p, rng).expect("p validated");
        let mut degree = vec![0usize; rc];
        let mut rev = vec![0.0; rc];
        for &i in sim.m2.indices() {
            let e = g.edges()[i];
            degree[e.right] += 1;
            rev[e.right] += e.weight;
        }
        let top = degree.iter().copied().max().unwrap_or(0);
        let mut t = DegreeTrial {
            counts: vec![0; top + 1],
            revenue: vec![0.0; top + 1],
            rev2: 0.0,
            rev3: 0.0,
        };
        for v in 0..rc {
            t.counts[degree[v]] += 1;
            t.revenue[degree[v]] += rev[v];
            t.rev2 += rev[v];
            if degree[v] > 0 {
                t.rev3 += rev[v] / degree[v] as f64;
            }
        }
        t
    })?;

    let top = per_trial.iter().map(|t| t.counts.len()).max().unwrap_or(1);
    let share = |t: &DegreeTrial, i: usize| {
        if rc == 0 {
            0.0
        } else {
            t.counts.get(i).copied().unwrap_or(0) as f64 / rc as f64
        }
    };
    let pairs = (trials * rc) as f64;
    let mut degree_frequencies = Vec::with_capacity(top);
    let mut conditional_revenue = Vec::with_capacity(top);
    for i in 0..top {
        let count: usize = per_trial.iter().map(|t| t.counts.get(i).copied().unwrap_or(0)).sum();
        let revenue: f64 = per_trial.iter().map(|t| t.revenue.get(i).copied().unwrap_or(0.0)).sum();
        degree_frequencies.push(if pairs > 0.0 { count as f64 / pairs } else { 0.0 });
        conditional_revenue.push((count > 0).then(|| revenue / count as f64));
    }

    let mut checks = Vec::new();
    for i in 2..top {
        if degree_frequencies[i - 1] <= PROBE_MIN_FREQUENCY {
            continue;
        }
        let diff: Vec<f64> = per_trial
            .iter()
            .map(|t| (1.0 - p) * share(t, i - 1) - share(t, i))
            .collect();
        checks.push(BoundCheck::at_least(
            &format!("P{i}<=(1-p)P{}", i - 1),
            "bvm_simulate",
            0.0,
            Estimate::from_samples(&diff),
            OptSource::None,
        ));
    }
    let rev2: Vec<f64> = per_trial.iter().map(|t| t.rev2).collect();
    let rev3: Vec<f64> = per_trial.iter().map(|t| t.rev3).collect();
    let diff: Vec<f64> = rev3.iter().zip(&rev2).map(|(a, b)| a - p * b).collect();
    checks.push(BoundCheck::at_least(
        "rev3>=p*rev2",
        "bvm_simulate",
        0.0,
        Estimate::from_samples(&diff),
        OptSource::None,
    ));

    Ok(DegreeRevenueStats {
        p,
        trials,
        right_count: rc,
        degree_frequencies,
        conditional_revenue,
        rev2: Estimate::from_samples(&rev2),
        rev3: Estimate::from_samples(&rev3),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub instance_id: String,
    pub m1: Estimate,
    pub m2: Estimate,
    pub m3: Estimate,
    /// `E[w(m3)] / E[w(m2)]`, absent when `m2` is always empty.
    pub ratio: Option<Estimate>,
    /// `E[w(m2)] = (1−p)/p · E[w(m1)]` within three standard errors.
    pub balance: BoundCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureTable {
    pub p: f64,
    pub master_seed: u64,
    pub rows: Vec<ConjectureRow>,
    pub min_ratio: Option<f64>,
}

impl ConjectureTable {
    /// The table as CSV text.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance_id,m1_mean,m1_se,m2_mean,m2_se,m3_mean,m3_se,ratio_m3_m2,ratio_se,m2_balance\n");
        for r in &self.rows {
            let (ratio, se) = match r.ratio {
                Some(e) => (e.mean.to_string(), e.std_error.to_string()),
                None => (String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.instance_id,
                r.m1.mean,
                r.m1.std_error,
                r.m2.mean,
                r.m2.std_error,
                r.m3.mean,
                r.m3.std_error,
                ratio,
                se,
                r.balance.verdict
            ));
        }
        out.push_str(&format!(
            "# min_ratio,{}\n",
            self.min_ratio.map(|x| x.to_string()).unwrap_or_default()
        ));
        out
    }
}

/// Runs SampleWithGroups on every instance and tabulates `m1`, `m2`, `m3`
/// and the ratio `m3/m2`. Each instance gets a seed derived from its id.
pub fn conjecture_probe(
    instances: &[(String, GroupedInstance<f64>)],
    p: f64,
    trials: usize,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<ConjectureTable> {
    check_open_unit("p", p)?;
    let mut rows = Vec::with_capacity(instances.len());
    for (id, gi) in instances {
        let mut cfg = SuiteConfig::new(trials, derive_seed(master_seed, id)).with_workers(workers);
        cfg.params = Params { p: Some(p) };
        let report = check_bounds(&Instance::Grouped(gi.clone()), Suite::Conjecture, &cfg)?;
        let sample = |name: &str| &report.samples.iter().find(|(n, _)| n == name).expect("suite column").1;
        let (m1, m2, m3) = (sample("m1"), sample("m2"), sample("m3"));
        let balance = report
            .checks
            .iter()
            .find(|c| c.comparison == Comparison::Within)
            .expect("balance check")
            .clone();
        rows.push(ConjectureRow {
            instance_id: id.clone(),
            m1: Estimate::from_samples(m1),
            m2: Estimate::from_samples(m2),
            m3: Estimate::from_samples(m3),
            ratio: Estimate::ratio(m3, m2),
            balance,
        });
    }
    let min_ratio = rows
        .iter()
        .filter_map(|r| r.ratio.map(|e| e.mean))
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.min(x))));
    Ok(ConjectureTable {
        p,
        master_seed,
        rows,
        min_ratio,
    })
}

/// Largest group count for which the naive algorithm's expectation is
/// computed by enumeration.
pub const NAIVE_EXACT_GROUP_BUDGET: usize = 8;

fn for_each_permutation(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        for_each_permutation(items, k - 1, f);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

/// Exact expected revenue of the naive edge-group sample-and-price: every
/// sampled set of groups (each group independently with probability `p`)
/// and every order of the unsampled groups, weighted by probability.
pub fn naive_grouped_exact_expectation(gi: &GroupedInstance<f64>, p: f64) -> Result<f64> {
    check_open_unit("p", p)?;
    let units = group_arrivals(gi);
    let g = units.len();
    if g > NAIVE_EXACT_GROUP_BUDGET {
        return Err(Error::BudgetExceeded {
            size: g,
            budget: NAIVE_EXACT_GROUP_BUDGET,
        });
    }
    let (l, r) = (gi.base().left_count(), gi.base().right_count());
    let mut total = 0.0;
    for mask in 0u32..(1 << g) {
        let sampled: Vec<usize> = (0..g).filter(|&i| mask >> i & 1 == 1).collect();
        let mut rest: Vec<usize> = (0..g).filter(|&i| mask >> i & 1 == 0).collect();
        let prob = p.powi(sampled.len() as i32) * (1.0 - p).powi(rest.len() as i32);
        let (mut sum, mut orders) = (0.0, 0usize);
        let k = rest.len();
        for_each_permutation(&mut rest, k, &mut |perm| {
            let order: Vec<GroupArrival<f64>> = sampled.iter().chain(perm).map(|&i| units[i].clone()).collect();
            let out = naive_grouped_sample_and_price_with_sample(ArrivalStream::in_order(order), l, r, sampled.len());
            sum += out.selected.total_weight();
            orders += 1;
        });
        total += prob * sum / orders as f64;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleResult {
    pub n: usize,
    pub epsilon: f64,
    pub naive: Estimate,
    /// `w(E₁)`, the optimum.
    pub opt: f64,
    pub exact_expectation: f64,
    /// Revenue when only `E₁` is sampled.
    pub e1_only_revenue: f64,
    /// Revenue when only `E₂` is sampled.
    pub e2_only_revenue: f64,
    pub both_sampled_revenue: f64,
    /// Mean revenue over the two arrival orders when neither is sampled.
    pub neither_sampled_revenue: f64,
    pub checks: Vec<BoundCheck>,
}

/// Runs the naive edge-group sample-and-price on the two-group
/// counterexample at `p = 1/2`, together with its four sampling cases.
pub fn counterexample_experiment(
    n: usize,
    epsilon: f64,
    trials: usize,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<CounterexampleResult> {
    let gi = gen_groups_counterexample::<f64>(n, epsilon)?;
    let cfg = SuiteConfig::new(trials, master_seed).with_p(0.5).with_workers(workers);
    let inst = Instance::Grouped(gi.clone());
    let report = check_bounds(&inst, Suite::Counterexample, &cfg)?;
    let naive = Estimate::from_samples(&report.samples[0].1);
    let exact = naive_grouped_exact_expectation(&gi, 0.5)?;

    let units = group_arrivals(&gi);
    let (l, r) = (gi.base().left_count(), gi.base().right_count());
    let revenue = |order: [usize; 2], k: usize| {
        let order = order.iter().map(|&i| units[i].clone()).collect();
        naive_grouped_sample_and_price_with_sample(ArrivalStream::in_order(order), l, r, k)
            .selected
            .total_weight()
    };
    let opt = gi.groups()[0].iter().map(|&i| gi.base().edges()[i].weight).sum();

    let mut checks = report.checks;
    checks.push(BoundCheck::new(
        "e2_only_revenue=1+2n*eps",
        "naive_grouped_sample_and_price",
        1.0 + 2.0 * n as f64 * epsilon,
        Comparison::Within,
        Estimate::from(revenue([1, 0], 1)),
        0.0,
        OptSource::None,
    ));
    Ok(CounterexampleResult {
        n,
        epsilon,
        naive,
        opt,
        exact_expectation: exact,
        e1_only_revenue: revenue([0, 1], 1),
        e2_only_revenue: revenue([1, 0], 1),
        both_sampled_revenue: revenue([0, 1], 2),
        neither_sampled_revenue: (revenue([0, 1], 0) + revenue([1, 0], 0)) / 2.0,
        checks,
    })
}

/// Success frequency of the classical `n/e` rule on `n` distinct weights:
/// the fraction of trials that select the maximum.
pub fn secretary_success_frequency(n: usize, trials: usize, master_seed: u64, workers: Option<usize>) -> Result<Estimate> {
    if n == 0 {
        return Err(invalid_param("n", "must be at least 1"));
    }
    let weights: Vec<f64> = (0..n).map(|i| i as f64).collect();
    let units = elements(&weights);
    let hits = run_trials(trials, master_seed, workers, |_, rng| {
        let out = run_classical_secretary(ArrivalStream::shuffled(units.clone(), rng));
        if out.selected.map(|e| e.id) == Some(n - 1) {
            1.0
        } else {
            0.0
        }
    })?;
    Ok(Estimate::from_samples(&hits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_figure2;
    use crate::harness::estimate::Verdict;

    #[test]
    fn permutations_are_all_visited() {
        let mut items = vec![0, 1, 2, 3];
        let mut seen = std::collections::BTreeSet::new();
        for_each_permutation(&mut items, 4, &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn counterexample_exact_value_small_n() {
        // four equally likely cases at p = 1/2:
        // both sampled 0; E1 only 0; E2 only 1 + 2nε;
        // neither: E1 first earns w(E1), E2 first earns w(E2)
        let (n, eps) = (2usize, 0.01);
        let gi = gen_groups_counterexample::<f64>(n, eps).unwrap();
        let w1 = (1.0 + 2.0 * eps) + (1.0 + 4.0 * eps);
        let w2 = 1.0 + 3.0 * eps;
        let expected = 0.25 * (1.0 + 2.0 * n as f64 * eps) + 0.125 * (w1 + w2);
        let exact = naive_grouped_exact_expectation(&gi, 0.5).unwrap();
        assert!((exact - expected).abs() < 1e-12, "{exact} vs {expected}");
    }

    #[test]
    fn single_edge_probe() {
        let g = WeightedBipartiteGraph::from_triples(1, 1, [(0, 0, 1.0)]).unwrap();
        let s = degree_revenue_probe(&g, 0.5, 4000, 9, None).unwrap();
        let p1 = s.degree_frequencies[1];
        let se = (0.25f64 / 4000.0).sqrt();
        assert!((p1 - 0.5).abs() <= 3.0 * se, "{p1}");
        assert_eq!(s.degree_frequencies.len(), 2);
        assert!(s.degree_frequencies.iter().sum::<f64>() <= 1.0 + 1e-12);
    }

    #[test]
    fn two_edge_star_exact_degrees() {
        // Heads on the heavier edge ends v's m2 run at 0; otherwise the
        // lighter edge's coin decides between 1 and 2. P2 = (1-p)^2 exceeds
        // (1-p)·P1 whenever there is no third edge.
        let g = WeightedBipartiteGraph::from_triples(2, 1, [(0, 0, 2.0), (1, 0, 1.0)]).unwrap();
        let p = 0.3;
        let trials = 20_000;
        let s = degree_revenue_probe(&g, p, trials, 4, None).unwrap();
        let exact = [p, (1.0 - p) * p, (1.0 - p) * (1.0 - p)];
        for (i, want) in exact.iter().enumerate() {
            let se = (want * (1.0 - want) / trials as f64).sqrt();
            assert!((s.degree_frequencies[i] - want).abs() <= 3.0 * se, "P{i}");
        }
        let row = s.checks.iter().find(|c| c.bound_name == "P2<=(1-p)P1").unwrap();
        assert_eq!(row.verdict, Verdict::Fail);
    }

    #[test]
    fn empty_conjecture_table() {
        let t = conjecture_probe(&[], 0.5, 10, 1, None).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.min_ratio, None);
    }

    #[test]
    fn figure2_conjecture_row() {
        let t = conjecture_probe(&[("fig2".into(), gen_figure2())], 0.5, 20_000, 4, None).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].balance.verdict, crate::harness::estimate::Verdict::Pass);
    }

    #[test]
    fn secretary_n1() {
        let e = secretary_success_frequency(1, 50, 0, None).unwrap();
        assert_eq!(e.mean, 1.0);
    }
}
