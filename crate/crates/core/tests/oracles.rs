use proptest::prelude::*;
use seclab::instances::*;
use seclab::oracles::*;

const UNIFORM: WeightLaw = WeightLaw::Uniform { low: 0.0, high: 1.0 };

/// Best matching weight by trying every partner (or none) for each left vertex.
fn brute_matching(g: &WeightedBipartiteGraph<f64>) -> f64 {
    fn go(l: usize, adj: &[Vec<(usize, f64)>], used: &mut Vec<bool>) -> f64 {
        if l == adj.len() {
            return 0.0;
        }
        let mut best = go(l + 1, adj, used);
        for &(r, w) in &adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(w + go(l + 1, adj, used));
                used[r] = false;
            }
        }
        best
    }
    let mut adj = vec![Vec::new(); g.left_count()];
    for e in g.edges() {
        adj[e.left].push((e.right, e.weight));
    }
    go(0, &adj, &mut vec![false; g.right_count()])
}

/// Best disjoint subfamily by scanning every subset of edges.
fn brute_hypergraph(h: &HvmHypergraph<f64>) -> f64 {
    let m = h.edges().len();
    let mut best = 0.0f64;
    for mask in 0u32..(1 << m) {
        let mut lefts = vec![false; h.left_count()];
        let mut rights = vec![false; h.right_count()];
        let mut ok = true;
        let mut w = 0.0;
        for (i, e) in h.edges().iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            if lefts[e.left] || e.rights.iter().any(|&r| rights[r]) {
                ok = false;
                break;
            }
            lefts[e.left] = true;
            for &r in &e.rights {
                rights[r] = true;
            }
            w += e.weight;
        }
        if ok {
            best = best.max(w);
        }
    }
    best
}

fn brute_forest(g: &UndirectedGraph<f64>) -> f64 {
    fn go(i: usize, g: &UndirectedGraph<f64>, chosen: &mut Vec<usize>) -> f64 {
        if i == g.edges().len() {
            return 0.0;
        }
        let skip = go(i + 1, g, chosen);
        chosen.push(i);
        let set = g.edge_set(chosen.iter().copied());
        let take = if is_acyclic(g, &set) {
            g.edges()[i].weight + go(i + 1, g, chosen)
        } else {
            f64::NEG_INFINITY
        };
        chosen.pop();
        skip.max(take)
    }
    go(0, g, &mut Vec::new())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn assignment_matches_brute_force(l in 1usize..=8, r in 1usize..=8, density in 0.1f64..0.9, seed: u64) {
        let g: WeightedBipartiteGraph<f64> = gen_random_bipartite(l, r, density, UNIFORM, seed).unwrap();
        let opt = optimal_bipartite(&g);
        prop_assert!(g.is_matching(&opt));
        prop_assert!(close(opt.total_weight(), brute_matching(&g)));
    }

    #[test]
    fn greedy_is_half_approximate(l in 1usize..=8, r in 1usize..=8, density in 0.1f64..0.9, seed: u64) {
        let g: WeightedBipartiteGraph<f64> = gen_random_bipartite(l, r, density, UNIFORM, seed).unwrap();
        let greedy = greedy_matching(&g);
        prop_assert!(g.is_matching(&greedy));
        prop_assert!(greedy.total_weight() >= brute_matching(&g) / 2.0 - 1e-12);
    }

    #[test]
    fn hypergraph_optimum_matches_brute_force(l in 1usize..=5, r in 1usize..=6, d in 1usize..=3, seed: u64) {
        let h: HvmHypergraph<f64> = gen_random_hvm(l, r, d.min(r), 2, UNIFORM, seed).unwrap();
        prop_assume!(h.edges().len() <= 12);
        let opt = optimal_hypergraph(&h).unwrap();
        prop_assert!(h.is_disjoint_set(&opt));
        let brute = brute_hypergraph(&h);
        prop_assert!(close(opt.total_weight(), brute));
        let greedy = greedy_hypergraph(&h);
        prop_assert!(h.is_disjoint_set(&greedy));
        prop_assert!(greedy.total_weight() >= brute / (h.d() + 1) as f64 - 1e-12);
    }

    #[test]
    fn forest_matches_brute_force(n in 1usize..=7, density in 0.1f64..0.8, seed: u64) {
        let g: UndirectedGraph<f64> = gen_random_graph(n, density, UNIFORM, seed).unwrap();
        prop_assume!(g.edges().len() <= 14);
        let f = max_weight_forest(&g);
        prop_assert!(is_acyclic(&g, &f));
        prop_assert!(close(f.total_weight(), brute_forest(&g)));
        prop_assert!(check_orientation_bound(&g).holds());
    }
}

#[test]
fn hypergraph_budget_is_enforced() {
    let edges = (0..EXACT_HYPERGRAPH_BUDGET + 1)
        .map(|i| HyperEdge { left: i, rights: vec![0], weight: 1.0 })
        .collect();
    let h = HvmHypergraph::new(1, EXACT_HYPERGRAPH_BUDGET + 1, 1, edges).unwrap();
    assert!(matches!(optimal_hypergraph(&h), Err(seclab::Error::BudgetExceeded { .. })));
}

/// Success count of the cutoff rule by walking every permutation.
fn count_by_permutations(n: usize, cutoff: usize) -> u64 {
    fn permute(items: &mut Vec<usize>, k: usize, cutoff: usize, hits: &mut u64) {
        if k == items.len() {
            let seen = items[..cutoff].iter().copied().max();
            let pick = items[cutoff..]
                .iter()
                .copied()
                .find(|&x| seen.is_none_or(|s| x > s));
            if pick == Some(items.len() - 1) {
                *hits += 1;
            }
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, cutoff, hits);
            items.swap(k, i);
        }
    }
    let mut hits = 0;
    permute(&mut (0..n).collect(), 0, cutoff, &mut hits);
    hits
}

#[test]
fn secretary_counts_match_permutation_walk() {
    for n in 1..=7usize {
        for cutoff in 0..n {
            let (hits, total) = secretary_success_count(n, cutoff).unwrap();
            assert_eq!(total, (1..=n as u64).product::<u64>());
            assert_eq!(hits, count_by_permutations(n, cutoff), "n={n} cutoff={cutoff}");
        }
    }
}

#[test]
fn secretary_harmonic_closed_form() {
    // For r ≥ 1 the rule succeeds with probability (r/n)·Σ_{i=r}^{n-1} 1/i.
    for n in 2..=9usize {
        for r in 1..n {
            let closed = r as f64 / n as f64 * (r..n).map(|i| 1.0 / i as f64).sum::<f64>();
            assert!(close(secretary_success_prob_exact(n, r).unwrap(), closed), "n={n} r={r}");
        }
    }
    assert_eq!(secretary_success_prob_exact(3, 1).unwrap(), 0.5);
}
