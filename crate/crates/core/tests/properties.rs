//! Property tests against the brute-force oracles in `common`.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use septree::parse::{parse_edge_list, to_edge_list};
use septree::profile::enumerate_k_profiles;
use septree::strategy::{
    check_task, is_feasible, run_k_strategy, run_strategy, KStrategy, Strategy as Sigma, StrategyOptions,
};
use septree::treedec::{build_from_nested, verify, DecompositionJson};
use septree::{
    corner_separations, enumerate_separations, is_l_connected, Graph, Limits, Separation, SeparationSet, VertexSet,
};

fn graph(n: usize, mask: [u64; 2]) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[bit / 64] >> (bit % 64) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn small_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (1..=max_n, any::<[u64; 2]>()).prop_map(|(n, mask)| graph(n, mask))
}

fn connected_without(g: &Graph, removed: VertexSet) -> bool {
    let rest = g.vertices().difference(removed);
    let Some(start) = rest.first() else {
        return true;
    };
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v).intersection(rest).difference(seen).iter() {
            seen.insert(u);
            stack.push(u);
        }
    }
    seen == rest
}

fn brute_l_connected(g: &Graph, l: usize) -> bool {
    g.n() > l
        && (0u64..1 << g.n())
            .map(VertexSet::from_bits)
            .filter(|x| x.len() < l)
            .all(|x| connected_without(g, x))
}

/// Every k-profile by backtracking over the pairs of separations of order
/// `< k`, pruning as soon as the chosen sides are inconsistent.
fn brute_profiles(g: &Graph, k: usize) -> BTreeSet<SeparationSet> {
    fn go(
        pairs: &[(Separation, Separation)],
        i: usize,
        chosen: &mut SeparationSet,
        k: usize,
        below_k: &[(VertexSet, VertexSet)],
        out: &mut BTreeSet<SeparationSet>,
    ) {
        if !consistent(chosen) {
            return;
        }
        if i == pairs.len() {
            if is_k_profile(chosen, k, below_k) {
                out.insert(chosen.clone());
            }
            return;
        }
        for s in [pairs[i].0, pairs[i].1] {
            chosen.insert(s);
            go(pairs, i + 1, chosen, k, below_k, out);
            chosen.remove(&s);
        }
    }
    let below_k = brute_separations(g, k);
    let pairs: Vec<(Separation, Separation)> = brute_separation_set(g, k, false)
        .iter()
        .filter(|s| **s <= s.inverse())
        .map(|s| (*s, s.inverse()))
        .collect();
    let mut out = BTreeSet::new();
    go(&pairs, 0, &mut SeparationSet::new(), k, &below_k, &mut out);
    out
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn quiet() -> StrategyOptions {
    StrategyOptions {
        parallel: false,
        verify: true,
    }
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn vertex_set_matches_btreeset(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (VertexSet::from_bits(a), VertexSet::from_bits(b));
        let sx: BTreeSet<usize> = x.iter().collect();
        let sy: BTreeSet<usize> = y.iter().collect();
        prop_assert_eq!(x.len(), sx.len());
        prop_assert_eq!(x.union(y).to_vec(), sx.union(&sy).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.intersection(y).to_vec(), sx.intersection(&sy).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.difference(y).to_vec(), sx.difference(&sy).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.is_subset(y), sx.is_subset(&sy));
        prop_assert_eq!(x.meets(y), !sx.is_disjoint(&sy));
    }

    #[test]
    fn separations_match_brute_force(g in small_graph(7), k in 0usize..4, proper in any::<bool>()) {
        prop_assert_eq!(enumerate_separations(&g, k, proper), brute_separation_set(&g, k, proper));
    }

    #[test]
    fn separation_order_and_nesting(g in small_graph(7), k in 1usize..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let all: Vec<Separation> = enumerate_separations(&g, k, false).iter().copied().collect();
        prop_assume!(!all.is_empty());
        let (s, t) = (all[i.index(all.len())], all[j.index(all.len())]);
        prop_assert_eq!(s.order(), order(&s));
        prop_assert_eq!(s.leq(&t), le(&s, &t));
        prop_assert_eq!(s.is_nested(&t), nested(&s, &t));
        prop_assert_eq!(s.is_nested(&t), !s.crosses(&t));
        prop_assert_eq!(s.inverse().inverse(), s);
        let corners = corner_separations(&s, &t);
        prop_assert_eq!(corners[0].order() + corners[2].order(), s.order() + t.order());
        prop_assert_eq!(corners[1].order() + corners[3].order(), s.order() + t.order());
    }

    #[test]
    fn connectivity_matches_brute_force(g in small_graph(7), l in 0usize..5) {
        prop_assert_eq!(is_l_connected(&g, l), brute_l_connected(&g, l));
    }

    #[test]
    fn edge_list_round_trip(g in small_graph(12)) {
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn relabel_preserves_edges(g in small_graph(9), seed in any::<u64>()) {
        let perm = random_permutation(&mut rng(seed), g.n());
        let h = g.relabel(&perm);
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(perm[u], perm[v]));
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn profiles_match_backtracking(g in small_graph(5), k in 1usize..3) {
        let found: BTreeSet<SeparationSet> = enumerate_k_profiles(&g, k, &Limits::default())
            .unwrap()
            .into_iter()
            .map(|p| p.separations().clone())
            .collect();
        prop_assert_eq!(found, brute_profiles(&g, k));
    }

    #[test]
    fn strategies_give_nested_distinguishing_sets(g in small_graph(7).prop_filter("dense", |g| g.edge_count() * 3 >= g.n() * g.n()), k in 1usize..4, pick in 0usize..4) {
        let sigma: Sigma = ["|ext_r", "|loc_r", "|all_r", "all,ext|loc_r"][pick].parse().unwrap();
        prop_assume!(is_l_connected(&g, k - 1));
        let profiles = enumerate_k_profiles(&g, k, &Limits::default()).unwrap();
        let s = enumerate_separations(&g, k, true);
        let task = check_task(s.clone(), profiles.clone()).unwrap();
        prop_assert!(is_feasible(&task));
        let n = run_strategy(&sigma, &task, &quiet()).unwrap();
        prop_assert!(n.is_subset(&s));
        prop_assert!(all_nested(&n));
        for (i, p) in profiles.iter().enumerate() {
            for q in &profiles[i + 1..] {
                prop_assert!(n.iter().any(|x| distinguishes(x, p.separations(), q.separations())));
            }
        }
    }

    #[test]
    fn k_strategy_decomposition_round_trips(g in small_graph(8), k in 1usize..4, seed in any::<u64>()) {
        let lim = Limits::default();
        let sigma = KStrategy::parse_for("|ext_r", k).unwrap();
        let profiles = enumerate_k_profiles(&g, k, &lim).unwrap();
        let n = run_k_strategy(&sigma, &g, &profiles, &quiet(), &lim).unwrap().separations;
        let td = build_from_nested(&n, &g).unwrap();
        prop_assert!(verify(&td, &g, Some(&n)).passed());
        prop_assert_eq!(td.node_count(), n.len() / 2 + 1);

        let json = serde_json::to_string(&DecompositionJson::new(&td, &g)).unwrap();
        let back: DecompositionJson = serde_json::from_str(&json).unwrap();
        let td2 = back.to_decomposition(&g).unwrap();
        prop_assert_eq!(td2.parts(), td.parts());
        prop_assert_eq!(td2.edges(), td.edges());

        let perm = random_permutation(&mut rng(seed), g.n());
        let h = g.relabel(&perm);
        let hp = enumerate_k_profiles(&h, k, &lim).unwrap();
        let nh = run_k_strategy(&sigma, &h, &hp, &quiet(), &lim).unwrap().separations;
        prop_assert_eq!(nh, n.map(&perm));
    }
}
