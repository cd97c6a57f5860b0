//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices, plus
//! component and connectivity queries.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::vertex_set::{subsets_of_size, VertexSet, MAX_VERTICES};

/// A finite simple undirected graph with vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            names: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Invalid(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::Invalid(format!("loop at vertex {u}")));
        }
        if self.adj[u].contains(v) {
            return Err(Error::Invalid(format!("duplicate edge {u}-{v}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Invalid(format!(
                "expected {} vertex names, got {}",
                self.n,
                names.len()
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Invalid("vertex names are not distinct".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        match &self.names {
            Some(names) => names.iter().position(|x| x == name),
            None => name.parse().ok().filter(|&v| v < self.n),
        }
    }

    /// Set of named vertices. Panics on unknown names; meant for fixtures and tests.
    pub fn set(&self, names: &[&str]) -> VertexSet {
        names
            .iter()
            .map(|x| self.vertex_by_name(x).unwrap_or_else(|| panic!("unknown vertex {x}")))
            .collect()
    }

    /// Union of the neighbourhoods of `set`.
    pub fn neighborhood(&self, set: VertexSet) -> VertexSet {
        set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
    }

    /// The graph `π(G)` where vertex `v` becomes `perm[v]`; names travel along.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in 0..self.n {
            adj[perm[v]] = self.adj[v].map(perm);
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); self.n];
            for v in 0..self.n {
                out[perm[v]] = names[v].clone();
            }
            out
        });
        Graph { n: self.n, adj, names }
    }

    /// Whether `set` induces a connected subgraph (the empty set counts as connected).
    pub fn is_connected_within(&self, set: VertexSet) -> bool {
        match set.first() {
            None => true,
            Some(v) => self.reach(v, set) == set,
        }
    }

    fn reach(&self, start: usize, allowed: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let next = self.neighborhood(frontier).intersection(allowed).difference(comp);
            comp = comp.union(next);
            frontier = next;
        }
        comp
    }
}

/// Vertex sets of the components of `G - removed`, sorted.
pub fn components(g: &Graph, removed: VertexSet) -> Vec<VertexSet> {
    let mut rest = g.vertices().difference(removed);
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let comp = g.reach(v, rest);
        rest = rest.difference(comp);
        out.push(comp);
    }
    out.sort();
    out
}

/// Whether `G` is `l`-connected: more than `l` vertices and no set of fewer
/// than `l` vertices disconnects it. Exhaustive over candidate separators.
pub fn is_l_connected(g: &Graph, l: usize) -> bool {
    if g.n() <= l {
        return false;
    }
    let all = g.vertices();
    (0..l).all(|size| subsets_of_size(all, size).all(|x| components(g, x).len() <= 1))
}
