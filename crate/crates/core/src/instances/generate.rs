//! Random and adversarial instance generators.
//!
//! All generators are pure functions of their seed. Random weight draws are
//! rejection-resampled until distinct (unless the law is degenerate), so the
//! global comparator never has to fall back to edge indices on generated data.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid_param, Error, Result};
use crate::instances::types::{
    BipartiteEdge, GraphEdge, GroupedInstance, GroupingMode, HemEdge, HemHypergraph, HvmHypergraph,
    HyperEdge, UndirectedGraph, WeightedBipartiteGraph,
};
use crate::scalar::Weight;

const RESAMPLE_LIMIT: usize = 256;

/// Distribution of generated edge weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightLaw {
    /// Uniform on `[low, high]`.
    Uniform { low: f64, high: f64 },
    /// Exponential with the given rate.
    Exponential { rate: f64 },
    /// Pareto with scale 1 and the given shape.
    PowerLaw { shape: f64 },
}

impl WeightLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightLaw::Uniform { low, high } => {
                if !(low.is_finite() && high.is_finite() && low >= 0.0 && low <= high) {
                    return Err(invalid_param("weight_law", format!("uniform({low}, {high})")));
                }
            }
            WeightLaw::Exponential { rate } => {
                if !(rate.is_finite() && rate > 0.0) {
                    return Err(invalid_param("weight_law", format!("exponential rate {rate}")));
                }
            }
            WeightLaw::PowerLaw { shape } => {
                if !(shape.is_finite() && shape > 0.0) {
                    return Err(invalid_param("weight_law", format!("powerlaw shape {shape}")));
                }
            }
        }
        Ok(())
    }

    fn is_degenerate(&self) -> bool {
        matches!(*self, WeightLaw::Uniform { low, high } if low == high)
    }

    /// One draw by inverse CDF from a single uniform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        match *self {
            WeightLaw::Uniform { low, high } => low + (high - low) * u,
            WeightLaw::Exponential { rate } => -(1.0 - u).ln() / rate,
            WeightLaw::PowerLaw { shape } => (1.0 - u).powf(-1.0 / shape),
        }
    }
}

impl fmt::Display for WeightLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightLaw::Uniform { low, high } => write!(f, "uniform:{low}:{high}"),
            WeightLaw::Exponential { rate } => write!(f, "exp:{rate}"),
            WeightLaw::PowerLaw { shape } => write!(f, "powerlaw:{shape}"),
        }
    }
}

impl FromStr for WeightLaw {
    type Err = Error;

    /// `uniform:a:b`, `exp:rate` or `powerlaw:shape`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .ok_or_else(|| invalid_param("weight_law", format!("missing parameter in `{s}`")))?
                .parse::<f64>()
                .map_err(|e| invalid_param("weight_law", format!("`{s}`: {e}")))
        };
        let law = match parts[0] {
            "uniform" if parts.len() == 3 => WeightLaw::Uniform {
                low: num(1)?,
                high: num(2)?,
            },
            "exp" | "exponential" if parts.len() == 2 => WeightLaw::Exponential { rate: num(1)? },
            "powerlaw" if parts.len() == 2 => WeightLaw::PowerLaw { shape: num(1)? },
            _ => return Err(invalid_param("weight_law", format!("unrecognised law `{s}`"))),
        };
        law.validate()?;
        Ok(law)
    }
}

/// Draws weights from a law, resampling values already handed out.
struct WeightSource<'a> {
    law: WeightLaw,
    rng: &'a mut ChaCha8Rng,
    seen: BTreeSet<u64>,
}

impl<'a> WeightSource<'a> {
    fn new(law: WeightLaw, rng: &'a mut ChaCha8Rng) -> Self {
        Self {
            law,
            rng,
            seen: BTreeSet::new(),
        }
    }

    fn draw<W: Weight>(&mut self) -> W {
        let mut w = W::from_f64_lossy(self.law.sample(self.rng));
        if self.law.is_degenerate() {
            return w;
        }
        for _ in 0..RESAMPLE_LIMIT {
            if self.seen.insert(w.as_f64().to_bits()) {
                return w;
            }
            w = W::from_f64_lossy(self.law.sample(self.rng));
        }
        w
    }
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid_param(name, format!("{p} is not in [0, 1]")))
    }
}

fn check_positive(name: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        Err(invalid_param(name, "must be at least 1"))
    } else {
        Ok(())
    }
}

/// Each `(l, r)` pair is an edge independently with `edge_probability`.
pub fn gen_random_bipartite<W: Weight>(
    left_count: usize,
    right_count: usize,
    edge_probability: f64,
    law: WeightLaw,
    seed: u64,
) -> Result<WeightedBipartiteGraph<W>> {
    check_positive("left_count", left_count)?;
    check_positive("right_count", right_count)?;
    check_probability("edge_probability", edge_probability)?;
    law.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut present = Vec::new();
    for l in 0..left_count {
        for r in 0..right_count {
            if rng.random_bool(edge_probability) {
                present.push((l, r));
            }
        }
    }
    let mut weights = WeightSource::new(law, &mut rng);
    for (left, right) in present {
        edges.push(BipartiteEdge {
            left,
            right,
            weight: weights.draw(),
        });
    }
    WeightedBipartiteGraph::new(left_count, right_count, edges)
}

/// Every left vertex gets `1..=max_options` bundles, each a uniformly random
/// set of `1..=d` right vertices.
pub fn gen_random_hvm<W: Weight>(
    left_count: usize,
    right_count: usize,
    d: usize,
    max_options: usize,
    law: WeightLaw,
    seed: u64,
) -> Result<HvmHypergraph<W>> {
    check_positive("left_count", left_count)?;
    check_positive("right_count", right_count)?;
    check_positive("d", d)?;
    check_positive("max_options", max_options)?;
    if d > right_count {
        return Err(invalid_param("d", format!("{d} exceeds right_count {right_count}")));
    }
    law.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all_rights: Vec<usize> = (0..right_count).collect();
    let mut shapes = Vec::new();
    for left in 0..left_count {
        let options = rng.random_range(1..=max_options);
        for _ in 0..options {
            let size = rng.random_range(1..=d);
            let rights: Vec<usize> = all_rights.choose_multiple(&mut rng, size).copied().collect();
            shapes.push((left, rights));
        }
    }
    let mut weights = WeightSource::new(law, &mut rng);
    let edges = shapes
        .into_iter()
        .map(|(left, rights)| HyperEdge {
            left,
            rights,
            weight: weights.draw(),
        })
        .collect();
    HvmHypergraph::new(right_count, left_count, d, edges)
}

/// `edge_count` hyperedges of `1..=d` uniformly random vertices each.
pub fn gen_random_hem<W: Weight>(
    vertex_count: usize,
    edge_count: usize,
    d: usize,
    law: WeightLaw,
    seed: u64,
) -> Result<HemHypergraph<W>> {
    check_positive("vertex_count", vertex_count)?;
    check_positive("d", d)?;
    if d > vertex_count {
        return Err(invalid_param("d", format!("{d} exceeds vertex_count {vertex_count}")));
    }
    law.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..vertex_count).collect();
    let shapes: Vec<Vec<usize>> = (0..edge_count)
        .map(|_| {
            let size = rng.random_range(1..=d);
            all.choose_multiple(&mut rng, size).copied().collect()
        })
        .collect();
    let mut weights = WeightSource::new(law, &mut rng);
    let edges = shapes
        .into_iter()
        .map(|vertices| HemEdge {
            vertices,
            weight: weights.draw(),
        })
        .collect();
    HemHypergraph::new(vertex_count, d, edges)
}

/// G(n, p) with weighted edges; edges are listed with `u < v`.
pub fn gen_random_graph<W: Weight>(
    vertex_count: usize,
    edge_probability: f64,
    law: WeightLaw,
    seed: u64,
) -> Result<UndirectedGraph<W>> {
    check_positive("vertex_count", vertex_count)?;
    check_probability("edge_probability", edge_probability)?;
    law.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..vertex_count {
        for v in (u + 1)..vertex_count {
            if rng.random_bool(edge_probability) {
                pairs.push((u, v));
            }
        }
    }
    let mut weights = WeightSource::new(law, &mut rng);
    let edges = pairs
        .into_iter()
        .map(|(u, v)| GraphEdge {
            u,
            v,
            weight: weights.draw(),
        })
        .collect();
    UndirectedGraph::new(vertex_count, edges)
}

/// Random bipartite graph whose left vertices are split into
/// `group_count` nonempty groups uniformly at random.
pub fn gen_random_grouped<W: Weight>(
    left_count: usize,
    right_count: usize,
    edge_probability: f64,
    group_count: usize,
    law: WeightLaw,
    seed: u64,
) -> Result<GroupedInstance<W>> {
    check_positive("group_count", group_count)?;
    if group_count > left_count {
        return Err(invalid_param(
            "group_count",
            format!("{group_count} groups for {left_count} left vertices"),
        ));
    }
    let base = gen_random_bipartite(left_count, right_count, edge_probability, law, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a09_e667_f3bc_c908);
    let mut lefts: Vec<usize> = (0..left_count).collect();
    lefts.shuffle(&mut rng);
    let mut groups: Vec<Vec<usize>> = lefts[..group_count].iter().map(|&l| vec![l]).collect();
    for &l in &lefts[group_count..] {
        let g = rng.random_range(0..group_count);
        groups[g].push(l);
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    GroupedInstance::new(base, GroupingMode::LeftVertexGroups, groups)
}

/// The two-group edge instance on which the naive grouped sample-and-price
/// rule earns about 1 while OPT is about `n`.
///
/// Vertex `l_i` has id `i - 1`, likewise `r_i`. Edges `0..n` form group
/// `E1 = {(l_i, r_i)}` with weight `1 + 2iε`; edges `n..2n-1` form group
/// `E2 = {(l_i, r_{i+1})}` with weight `1 + (2i+1)ε`.
pub fn gen_groups_counterexample<W: Weight>(n: usize, epsilon: f64) -> Result<GroupedInstance<W>> {
    if n < 2 {
        return Err(invalid_param("n", format!("{n} < 2")));
    }
    let limit = 1.0 / (2.0 * (n as f64).powi(2));
    if !(epsilon > 0.0 && epsilon < limit) {
        return Err(invalid_param(
            "epsilon",
            format!("{epsilon} outside (0, 1/(2n^2)) = (0, {limit})"),
        ));
    }
    let w = |k: usize| W::from_f64_lossy(1.0 + k as f64 * epsilon);
    let mut edges = Vec::with_capacity(2 * n - 1);
    for i in 1..=n {
        edges.push(BipartiteEdge {
            left: i - 1,
            right: i - 1,
            weight: w(2 * i),
        });
    }
    for i in 1..n {
        edges.push(BipartiteEdge {
            left: i - 1,
            right: i,
            weight: w(2 * i + 1),
        });
    }
    let base = WeightedBipartiteGraph::new(n, n, edges)?;
    let groups = vec![(0..n).collect(), (n..2 * n - 1).collect()];
    GroupedInstance::new(base, GroupingMode::EdgeGroups, groups)
}

/// Left ids of the small grouped example: A, B, C.
pub const FIGURE2_LEFT: [&str; 3] = ["A", "B", "C"];
/// Right ids of the small grouped example: X, Y.
pub const FIGURE2_RIGHT: [&str; 2] = ["X", "Y"];

/// A–X:4, B–X:3, B–Y:2, C–Y:1 with vertex groups {A, C} and {B}.
pub fn gen_figure2<W: Weight>() -> GroupedInstance<W> {
    let w = |x: f64| W::from_f64_lossy(x);
    let base = WeightedBipartiteGraph::from_triples(3, 2, [(0, 0, w(4.0)), (1, 0, w(3.0)), (1, 1, w(2.0)), (2, 1, w(1.0))])
        .expect("static instance is valid");
    GroupedInstance::new(base, GroupingMode::LeftVertexGroups, vec![vec![0, 2], vec![1]])
        .expect("static grouping is valid")
}
