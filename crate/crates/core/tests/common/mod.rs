//! Brute-force oracles and random graph generators shared by the
//! integration tests. Nothing here calls the library's search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use septree::{is_l_connected, Graph, Separation, SeparationSet, VertexSet};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut TestRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A random `l`-connected graph on `lo..=hi` vertices.
pub fn random_connected(rng: &mut TestRng, lo: usize, hi: usize, l: usize) -> Graph {
    loop {
        let n = rng.gen_range(lo.max(l + 1)..=hi);
        let p = rng.gen_range(0.25..0.85);
        let g = random_graph(rng, n, p);
        if is_l_connected(&g, l) {
            return g;
        }
    }
}

pub fn random_permutation(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Every separation `(A, B)` of order `< k`, by assigning each vertex to
/// `A \ B`, `B \ A` or `A ∩ B`.
pub fn brute_separations(g: &Graph, k: usize) -> Vec<(VertexSet, VertexSet)> {
    fn go(
        g: &Graph,
        v: usize,
        k: usize,
        a_only: VertexSet,
        b_only: VertexSet,
        both: VertexSet,
        out: &mut Vec<(VertexSet, VertexSet)>,
    ) {
        if v == g.n() {
            out.push((a_only.union(both), b_only.union(both)));
            return;
        }
        let nb = g.neighbors(v);
        if !nb.meets(b_only) {
            go(g, v + 1, k, a_only.with(v), b_only, both, out);
        }
        if !nb.meets(a_only) {
            go(g, v + 1, k, a_only, b_only.with(v), both, out);
        }
        if both.len() + 1 < k {
            go(g, v + 1, k, a_only, b_only, both.with(v), out);
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    go(g, 0, k, VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY, &mut out);
    out.sort();
    out
}

pub fn brute_separation_set(g: &Graph, k: usize, proper_only: bool) -> SeparationSet {
    brute_separations(g, k)
        .into_iter()
        .filter(|(a, b)| !proper_only || (!a.is_subset(*b) && !b.is_subset(*a)))
        .map(|(a, b)| Separation::new(g, a, b).unwrap())
        .collect()
}

pub fn order(s: &Separation) -> usize {
    s.a().intersection(s.b()).len()
}

pub fn le(s: &Separation, t: &Separation) -> bool {
    s.a().is_subset(t.a()) && t.b().is_subset(s.b())
}

pub fn nested(s: &Separation, t: &Separation) -> bool {
    let ti = t.inverse();
    le(s, t) || le(t, s) || le(s, &ti) || le(&ti, s)
}

pub fn all_nested(set: &SeparationSet) -> bool {
    set.iter().all(|s| set.iter().all(|t| nested(s, t)))
}

pub fn distinguishes(s: &Separation, p: &SeparationSet, q: &SeparationSet) -> bool {
    let si = s.inverse();
    (p.contains(s) && q.contains(&si)) || (p.contains(&si) && q.contains(s))
}

/// `(A, B) ∈ P` and `(C, D) <= (A, B)` imply `(D, C) ∉ P`.
pub fn consistent(p: &SeparationSet) -> bool {
    p.iter().all(|x| p.iter().all(|y| !le(&y.inverse(), x)))
}

/// Condition (P): for members `(A, B), (C, D)` (possibly equal), the
/// separation `(B ∩ D, A ∪ C)` is not a member.
pub fn property_p(p: &SeparationSet) -> bool {
    p.iter().all(|x| {
        p.iter().all(|y| {
            let a = x.b().intersection(y.b());
            let b = x.a().union(y.a());
            !p.iter().any(|z| z.a() == a && z.b() == b)
        })
    })
}

/// A k-profile: consistent, (P), and orienting every separation of order `< k`.
pub fn is_k_profile(p: &SeparationSet, k: usize, below_k: &[(VertexSet, VertexSet)]) -> bool {
    let members: BTreeSet<(VertexSet, VertexSet)> = p.iter().map(|s| (s.a(), s.b())).collect();
    let orients = below_k
        .iter()
        .all(|&(a, b)| members.contains(&(a, b)) != members.contains(&(b, a)));
    let in_range = members.iter().all(|x| below_k.binary_search(x).is_ok());
    orients && in_range && p.iter().all(|s| order(s) < k) && consistent(p) && property_p(p)
}

/// Least order of a separation of order `< k` distinguishing `p` and `q`.
pub fn brute_kappa(
    g: &Graph,
    below_k: &[(VertexSet, VertexSet)],
    p: &SeparationSet,
    q: &SeparationSet,
) -> Option<usize> {
    below_k
        .iter()
        .map(|&(a, b)| Separation::new(g, a, b).unwrap())
        .filter(|s| distinguishes(s, p, q))
        .map(|s| order(&s))
        .min()
}

/// All orientations of a symmetric set as sets of chosen separations.
pub fn all_orientations(n: &SeparationSet) -> Vec<SeparationSet> {
    let reps: Vec<Separation> = n.iter().copied().filter(|s| *s < s.inverse()).collect();
    (0u64..1 << reps.len())
        .map(|mask| {
            reps.iter()
                .enumerate()
                .map(|(i, s)| if mask >> i & 1 == 1 { s.inverse() } else { *s })
                .collect()
        })
        .collect()
}

pub fn splits(s: &Separation, o: &SeparationSet) -> bool {
    let mut with = o.clone();
    with.insert(*s);
    let mut against = o.clone();
    against.insert(s.inverse());
    consistent(&with) && consistent(&against)
}

/// A random nested proper symmetric subset of `pool`, at most `pairs` pairs.
pub fn random_nested(rng: &mut TestRng, pool: &SeparationSet, pairs: usize) -> SeparationSet {
    let mut order: Vec<Separation> = pool.iter().copied().filter(|s| s.is_proper()).collect();
    order.shuffle(rng);
    let mut out = SeparationSet::new();
    for s in order {
        if out.len() / 2 >= pairs {
            break;
        }
        if out.iter().all(|t| nested(&s, t)) {
            out.insert(s);
            out.insert(s.inverse());
        }
    }
    out
}

pub fn edge_list(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} edges=[{}]", g.n(), edges.join(" "))
}

/// Every permutation of `0..n` preserving adjacency, by trying them all.
pub fn brute_automorphism_count(g: &Graph) -> usize {
    fn go(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
        let v = perm.len();
        if v == g.n() {
            *count += 1;
            return;
        }
        for w in 0..g.n() {
            if used[w] {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(perm[u], w)) {
                used[w] = true;
                perm.push(w);
                go(g, perm, used, count);
                perm.pop();
                used[w] = false;
            }
        }
    }
    let mut count = 0;
    go(g, &mut Vec::new(), &mut vec![false; g.n()], &mut count);
    count
}

/// Cliques of 2 to 6 vertices glued one after another along 1 to 3 existing
/// vertices, then about a tenth of the edges dropped. Gives many small
/// separators and many blocks.
pub fn glued_cliques(rng: &mut TestRng, lo: usize, hi: usize) -> Graph {
    let target = rng.gen_range(lo..=hi);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let m = rng.gen_range(3..=5);
    let mut n = m;
    for u in 0..m {
        for v in u + 1..m {
            edges.push((u, v));
        }
    }
    while n < target {
        let glue = rng.gen_range(1..=3).min(n);
        let mut old: Vec<usize> = (0..n).collect();
        old.shuffle(rng);
        let mut clique: Vec<usize> = old[..glue].to_vec();
        let fresh = rng.gen_range(1..=3).min(target - n);
        for _ in 0..fresh {
            clique.push(n);
            n += 1;
        }
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                let e = (a.min(b), a.max(b));
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
    }
    edges.retain(|_| rng.gen_bool(0.9));
    let mut g = Graph::new(n).unwrap();
    for (u, v) in edges {
        g.add_edge(u, v).unwrap();
    }
    g
}
