//! Automorphism enumeration by backtracking over colour-refined vertex
//! classes. Exhaustive and only meant for small graphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::vertex_set::VertexSet;

/// Stable colouring from iterated degree refinement. Automorphisms preserve it.
pub fn refined_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&colour);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|u| colour[u]).collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in &signatures {
            let next = ids.len();
            ids.entry(sig).or_insert(next);
        }
        let refined: Vec<usize> = signatures.iter().map(|s| ids[s]).collect();
        let count = count_distinct(&refined);
        colour = refined;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

fn count_distinct(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Visit order: breadth-first within each component, so every vertex after
/// the first of its component already has a placed neighbour.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut placed = VertexSet::EMPTY;
    while placed != g.vertices() {
        let root = g
            .vertices()
            .difference(placed)
            .iter()
            .max_by_key(|v| (g.degree(*v), std::cmp::Reverse(*v)))
            .expect("unplaced vertex");
        placed.insert(root);
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for u in g.neighbors(v).difference(placed).iter() {
                placed.insert(u);
                order.push(u);
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    colour: Vec<usize>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: VertexSet,
    found: Vec<Vec<usize>>,
    cap: usize,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            if self.found.len() >= self.cap {
                return Err(Error::Resource(format!("more than {} automorphisms", self.cap)));
            }
            self.found.push(self.image.clone());
            return Ok(());
        }
        let v = self.order[depth];
        for w in self.g.vertices().difference(self.used).iter() {
            if self.colour[w] != self.colour[v] || !self.fits(depth, v, w) {
                continue;
            }
            self.image[v] = w;
            self.used.insert(w);
            self.extend(depth + 1)?;
            self.used.remove(w);
        }
        Ok(())
    }

    /// Adjacency to every already placed vertex is preserved by `v ↦ w`.
    fn fits(&self, depth: usize, v: usize, w: usize) -> bool {
        self.order[..depth]
            .iter()
            .all(|&u| self.g.has_edge(u, v) == self.g.has_edge(self.image[u], w))
    }
}

/// All automorphisms of `g`; `perm[v]` is the image of `v`. Sorted, identity first.
pub fn automorphisms(g: &Graph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    limits.check_vertices(g.n())?;
    let mut search = Search {
        g,
        colour: refined_colours(g),
        order: search_order(g),
        image: vec![usize::MAX; g.n()],
        used: VertexSet::EMPTY,
        found: Vec::new(),
        cap: limits.max_automorphisms,
    };
    search.extend(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// Whether `perm` maps edges onto edges.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    perm.len() == g.n()
        && count_distinct(perm) == g.n()
        && perm.iter().all(|&v| v < g.n())
        && g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]))
}

/// `(p ∘ q)(v) = p[q[v]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&v| p[v]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (v, &w) in p.iter().enumerate() {
        inv[w] = v;
    }
    inv
}
