//! Named online algorithms and single-quantity revenue estimation.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::harness::estimate::Estimate;
use crate::harness::trials::run_trials;
use crate::instances::{reduce_hem_to_hvm, GroupedInstance, GroupingMode, HvmHypergraph, Instance};
use crate::online::sampling::check_open_unit;
use crate::online::{
    bundle_arrivals, bvm_sample_and_price, bvm_simulate, edge_arrivals, graphic_matroid_secretary, group_arrivals,
    grouped_threshold_match, hvm_sample_and_price, hvm_sample_probability, hvm_simulate,
    naive_grouped_sample_and_price, sample_with_groups, vertex_arrivals, ArrivalStream,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    BvmSampleAndPrice,
    BvmSimulateM1,
    BvmSimulateM2,
    BvmSimulateM3,
    HvmSampleAndPrice,
    HvmSimulateM1,
    HvmSimulateM2,
    HvmSimulateM3,
    GroupedThreshold,
    NaiveGroupedSampleAndPrice,
    SampleWithGroupsM1,
    SampleWithGroupsM2,
    SampleWithGroupsM3,
    GraphicMatroidSecretary,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 14] = [
        AlgorithmId::BvmSampleAndPrice,
        AlgorithmId::BvmSimulateM1,
        AlgorithmId::BvmSimulateM2,
        AlgorithmId::BvmSimulateM3,
        AlgorithmId::HvmSampleAndPrice,
        AlgorithmId::HvmSimulateM1,
        AlgorithmId::HvmSimulateM2,
        AlgorithmId::HvmSimulateM3,
        AlgorithmId::GroupedThreshold,
        AlgorithmId::NaiveGroupedSampleAndPrice,
        AlgorithmId::SampleWithGroupsM1,
        AlgorithmId::SampleWithGroupsM2,
        AlgorithmId::SampleWithGroupsM3,
        AlgorithmId::GraphicMatroidSecretary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::BvmSampleAndPrice => "bvm_sample_and_price",
            AlgorithmId::BvmSimulateM1 => "bvm_simulate_m1",
            AlgorithmId::BvmSimulateM2 => "bvm_simulate_m2",
            AlgorithmId::BvmSimulateM3 => "bvm_simulate_m3",
            AlgorithmId::HvmSampleAndPrice => "hvm_sample_and_price",
            AlgorithmId::HvmSimulateM1 => "hvm_simulate_m1",
            AlgorithmId::HvmSimulateM2 => "hvm_simulate_m2",
            AlgorithmId::HvmSimulateM3 => "hvm_simulate_m3",
            AlgorithmId::GroupedThreshold => "grouped_threshold_match",
            AlgorithmId::NaiveGroupedSampleAndPrice => "naive_grouped_sample_and_price",
            AlgorithmId::SampleWithGroupsM1 => "sample_with_groups_m1",
            AlgorithmId::SampleWithGroupsM2 => "sample_with_groups_m2",
            AlgorithmId::SampleWithGroupsM3 => "sample_with_groups_m3",
            AlgorithmId::GraphicMatroidSecretary => "graphic_matroid_secretary",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Tunable parameters. `p` defaults to 1/2 for the bipartite and grouped
/// algorithms and to `1 − 1/(2d)` for the hypergraph ones.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Params {
    pub p: Option<f64>,
}

/// The hypergraph view of an instance, if it has one.
pub fn as_hypergraph(inst: &Instance<f64>) -> Option<HvmHypergraph<f64>> {
    match inst {
        Instance::Hvm(h) => Some(h.clone()),
        Instance::Hem(h) => Some(reduce_hem_to_hvm(h)),
        Instance::Bipartite(g) => Some(HvmHypergraph::from_bipartite(g)),
        _ => None,
    }
}

fn mismatch(expected: &'static str, inst: &Instance<f64>) -> Error {
    Error::KindMismatch {
        expected,
        found: inst.kind(),
    }
}

fn grouped(inst: &Instance<f64>, mode: Option<GroupingMode>) -> Result<&GroupedInstance<f64>> {
    match inst {
        Instance::Grouped(gi) => match mode {
            Some(m) if gi.mode() != m => Err(Error::KindMismatch {
                expected: m.as_str(),
                found: gi.mode().as_str(),
            }),
            _ => Ok(gi),
        },
        _ => Err(mismatch("grouped", inst)),
    }
}

type TrialFn<'a> = Box<dyn Fn(&mut ChaCha8Rng) -> f64 + Sync + Send + 'a>;

/// Validates `alg` against `inst` and returns the revenue of one trial as a
/// function of the trial generator. Each trial first draws the arrival order
/// and then whatever the algorithm draws.
pub fn revenue_trial<'a>(alg: AlgorithmId, inst: &'a Instance<f64>, params: Params) -> Result<TrialFn<'a>> {
    use AlgorithmId::*;
    let p_or_half = || -> Result<f64> {
        let p = params.p.unwrap_or(0.5);
        check_open_unit("p", p)?;
        Ok(p)
    };
    Ok(match alg {
        BvmSampleAndPrice | BvmSimulateM1 | BvmSimulateM2 | BvmSimulateM3 => {
            let Instance::Bipartite(g) = inst else {
                return Err(mismatch("bipartite", inst));
            };
            let p = p_or_half()?;
            if alg == BvmSampleAndPrice {
                let units = vertex_arrivals(g);
                let right = g.right_count();
                Box::new(move |rng| {
                    let stream = ArrivalStream::shuffled(units.clone(), rng);
                    bvm_sample_and_price(stream, right, p, rng).expect("p validated").selected.total_weight()
                })
            } else {
                Box::new(move |rng| {
                    let r = bvm_simulate(g, p, rng).expect("p validated");
                    match alg {
                        BvmSimulateM1 => r.m1.total_weight(),
                        BvmSimulateM2 => r.m2.total_weight(),
                        _ => r.m3.total_weight(),
                    }
                })
            }
        }
        HvmSampleAndPrice | HvmSimulateM1 | HvmSimulateM2 | HvmSimulateM3 => {
            let h = as_hypergraph(inst).ok_or_else(|| mismatch("hvm", inst))?;
            let d = h.d();
            if alg == HvmSampleAndPrice {
                let units = bundle_arrivals(&h);
                let right = h.right_count();
                Box::new(move |rng| {
                    let stream = ArrivalStream::shuffled(units.clone(), rng);
                    hvm_sample_and_price(stream, right, d, rng).expect("d ≥ 1").selected.total_weight()
                })
            } else {
                let p = params.p.unwrap_or_else(|| hvm_sample_probability(d));
                check_open_unit("p", p)?;
                Box::new(move |rng| {
                    let r = hvm_simulate(&h, p, rng).expect("p validated");
                    match alg {
                        HvmSimulateM1 => r.m1.total_weight(),
                        HvmSimulateM2 => r.m2.total_weight(),
                        _ => r.m3.total_weight(),
                    }
                })
            }
        }
        GroupedThreshold => {
            let gi = grouped(inst, None)?;
            let units = group_arrivals(gi);
            let (l, r) = (gi.base().left_count(), gi.base().right_count());
            let n = l.max(1);
            Box::new(move |rng| {
                let stream = ArrivalStream::shuffled(units.clone(), rng);
                grouped_threshold_match(stream, l, r, n, rng).expect("n ≥ 1").selected.total_weight()
            })
        }
        NaiveGroupedSampleAndPrice => {
            let gi = grouped(inst, Some(GroupingMode::EdgeGroups))?;
            let p = p_or_half()?;
            let units = group_arrivals(gi);
            let (l, r) = (gi.base().left_count(), gi.base().right_count());
            Box::new(move |rng| {
                let stream = ArrivalStream::shuffled(units.clone(), rng);
                naive_grouped_sample_and_price(stream, l, r, p, rng)
                    .expect("p validated")
                    .selected
                    .total_weight()
            })
        }
        SampleWithGroupsM1 | SampleWithGroupsM2 | SampleWithGroupsM3 => {
            let gi = grouped(inst, Some(GroupingMode::LeftVertexGroups))?;
            let p = p_or_half()?;
            Box::new(move |rng| {
                let r = sample_with_groups(gi, p, rng).expect("validated");
                match alg {
                    SampleWithGroupsM1 => r.m1.total_weight(),
                    SampleWithGroupsM2 => r.m2.total_weight(),
                    _ => r.m3.total_weight(),
                }
            })
        }
        GraphicMatroidSecretary => {
            let Instance::Graph(g) = inst else {
                return Err(mismatch("graph", inst));
            };
            let units = edge_arrivals(g);
            let n = g.vertex_count();
            Box::new(move |rng| {
                let stream = ArrivalStream::shuffled(units.clone(), rng);
                graphic_matroid_secretary(stream, n, rng).selected.total_weight()
            })
        }
    })
}

/// Expected revenue of `alg` on `inst` over `trials` seeded trials.
pub fn estimate_revenue(
    alg: AlgorithmId,
    inst: &Instance<f64>,
    params: Params,
    trials: usize,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<Estimate> {
    let f = revenue_trial(alg, inst, params)?;
    let samples = run_trials(trials, master_seed, workers, |_, rng| f(rng))?;
    Ok(Estimate::from_samples(&samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_figure2, WeightedBipartiteGraph};

    #[test]
    fn names_round_trip() {
        for a in AlgorithmId::ALL {
            assert_eq!(a.name().parse::<AlgorithmId>().unwrap(), a);
        }
        assert!(matches!("nope".parse::<AlgorithmId>(), Err(Error::UnknownAlgorithm(_))));
    }

    #[test]
    fn kind_mismatch() {
        let inst = Instance::Grouped(gen_figure2::<f64>());
        let err = estimate_revenue(AlgorithmId::BvmSampleAndPrice, &inst, Params::default(), 10, 0, None);
        assert!(matches!(err, Err(Error::KindMismatch { .. })));
        let err = estimate_revenue(AlgorithmId::NaiveGroupedSampleAndPrice, &inst, Params::default(), 10, 0, None);
        assert!(matches!(err, Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn single_edge_earns_half() {
        // the edge is earned exactly when its vertex is not sampled
        let g = WeightedBipartiteGraph::from_triples(1, 1, [(0, 0, 2.0)]).unwrap();
        let inst = Instance::Bipartite(g);
        let e = estimate_revenue(AlgorithmId::BvmSampleAndPrice, &inst, Params { p: Some(0.5) }, 20_000, 11, None)
            .unwrap();
        assert!((e.mean - 1.0).abs() <= 3.0 * e.std_error, "{e:?}");
        let again = estimate_revenue(AlgorithmId::BvmSampleAndPrice, &inst, Params { p: Some(0.5) }, 20_000, 11, None)
            .unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn one_trial() {
        let g = WeightedBipartiteGraph::from_triples(1, 1, [(0, 0, 2.0)]).unwrap();
        let e = estimate_revenue(AlgorithmId::BvmSimulateM1, &Instance::Bipartite(g), Params::default(), 1, 3, None)
            .unwrap();
        assert_eq!(e.std_error, 0.0);
        assert_eq!(e.min, e.mean);
        assert_eq!(e.max, e.mean);
    }
}
