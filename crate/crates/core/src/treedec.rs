//! Tree-decompositions built from nested separation systems, and their
//! verification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::{compute_blocks, Orientation};
use crate::separation::{Separation, SeparationSet};
use crate::strategy::consistent_orientations;
use crate::vertex_set::VertexSet;

/// A tree with a part per node. Nodes built from a nested system remember
/// the consistent orientation they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    parts: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
    orientations: Option<Vec<Orientation>>,
}

impl TreeDecomposition {
    /// A decomposition given directly by parts and tree edges; nothing is
    /// checked here, see [`verify`].
    pub fn from_parts(parts: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Result<TreeDecomposition> {
        if let Some(&(u, v)) = edges.iter().find(|(u, v)| *u >= parts.len() || *v >= parts.len()) {
            return Err(Error::Invalid(format!("tree edge ({u}, {v}) names a missing node")));
        }
        let edges = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(TreeDecomposition {
            parts,
            edges,
            orientations: None,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part(&self, t: usize) -> VertexSet {
        self.parts[t]
    }

    /// Tree edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn orientations(&self) -> Option<&[Orientation]> {
        self.orientations.as_deref()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.parts.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Nodes reachable from `start` without using the edge `start`–`cut`.
    fn side(&self, adj: &[Vec<usize>], start: usize, cut: usize) -> Vec<usize> {
        let mut seen = vec![false; self.parts.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(t) = stack.pop() {
            out.push(t);
            for &u in &adj[t] {
                if !seen[u] && !(t == start && u == cut) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        out
    }

    fn is_tree(&self) -> bool {
        let n = self.parts.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// The adhesion set `V_u ∩ V_v` of a tree edge.
    pub fn adhesion_set(&self, edge: (usize, usize)) -> VertexSet {
        self.parts[edge.0].intersection(self.parts[edge.1])
    }
}

/// The decomposition whose nodes are the consistent orientations of `n`.
pub fn build_from_nested(n: &SeparationSet, g: &Graph) -> Result<TreeDecomposition> {
    let orientations = consistent_orientations(n)?;
    let parts: Vec<VertexSet> = orientations
        .iter()
        .map(|o| o.choice().iter().fold(g.vertices(), |acc, s| acc.intersection(s.b())))
        .collect();
    let mut edges = Vec::new();
    for i in 0..orientations.len() {
        for j in i + 1..orientations.len() {
            if orientations[i].choice().difference(orientations[j].choice()).len() == 1 {
                edges.push((i, j));
            }
        }
    }
    let td = TreeDecomposition {
        parts,
        edges,
        orientations: Some(orientations),
    };
    let report = verify(&td, g, Some(n));
    if !report.passed() {
        return Err(Error::Invariant(format!("decomposition failed verification: {report}")));
    }
    for (block, _) in compute_blocks(g, n) {
        if !td.parts.contains(&block) {
            return Err(Error::Invariant(format!("N-block {block} is not a part")));
        }
    }
    let hubs = hub_nodes(&td);
    let blocks: BTreeSet<VertexSet> = compute_blocks(g, n).into_iter().map(|(b, _)| b).collect();
    for (t, part) in td.parts.iter().enumerate() {
        if !blocks.contains(part) && !hubs.contains(&t) {
            return Err(Error::Invariant(format!("part {part} is neither an N-block nor a hub")));
        }
    }
    Ok(td)
}

/// The separations induced by the oriented tree edges, with inverses.
pub fn induced_separations(td: &TreeDecomposition) -> SeparationSet {
    let adj = td.neighbours();
    let mut out = SeparationSet::new();
    for &(u, v) in &td.edges {
        let union = |nodes: Vec<usize>| {
            nodes
                .into_iter()
                .fold(VertexSet::EMPTY, |acc, t| acc.union(td.parts[t]))
        };
        let a = union(td.side(&adj, u, v));
        let b = union(td.side(&adj, v, u));
        out.insert(Separation::from_sides(a, b));
        out.insert(Separation::from_sides(b, a));
    }
    out
}

/// Largest adhesion set over the tree edges, 0 without edges.
pub fn adhesion(td: &TreeDecomposition) -> usize {
    td.edges.iter().map(|e| td.adhesion_set(*e).len()).max().unwrap_or(0)
}

/// Nodes whose part is the separator of a separation induced by an
/// incident edge.
pub fn hub_nodes(td: &TreeDecomposition) -> BTreeSet<usize> {
    let adj = td.neighbours();
    let mut hubs = BTreeSet::new();
    for &(u, v) in &td.edges {
        let a = td
            .side(&adj, u, v)
            .iter()
            .fold(VertexSet::EMPTY, |acc, t| acc.union(td.parts[*t]));
        let b = td
            .side(&adj, v, u)
            .iter()
            .fold(VertexSet::EMPTY, |acc, t| acc.union(td.parts[*t]));
        let separator = a.intersection(b);
        for t in [u, v] {
            if td.parts[t] == separator {
                hubs.insert(t);
            }
        }
    }
    hubs
}

/// Outcome of [`verify`], one flag per axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tree: bool,
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    /// Present when a nested system was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_equals_n: Option<bool>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.tree && self.t1 && self.t2 && self.t3 && self.induced_equals_n != Some(false)
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        write!(
            f,
            "tree {} T1 {} T2 {} T3 {}",
            mark(self.tree),
            mark(self.t1),
            mark(self.t2),
            mark(self.t3)
        )?;
        if let Some(b) = self.induced_equals_n {
            write!(f, " induced=N {}", mark(b))?;
        }
        Ok(())
    }
}

/// Checks tree-ness, (T1)-(T3) and, when `n` is given, that the induced
/// separations are exactly `n`.
pub fn verify(td: &TreeDecomposition, g: &Graph, n: Option<&SeparationSet>) -> VerifyReport {
    let tree = td.is_tree();
    let covered = td.parts.iter().fold(VertexSet::EMPTY, |acc, p| acc.union(*p));
    let t1 = covered == g.vertices();
    let t2 = g
        .edges()
        .iter()
        .all(|&(u, v)| td.parts.iter().any(|p| p.contains(u) && p.contains(v)));
    let t3 = tree && path_condition(td, g);
    let induced_equals_n = n.map(|n| tree && induced_separations(td) == *n);
    VerifyReport {
        tree,
        t1,
        t2,
        t3,
        induced_equals_n,
    }
}

/// Every vertex lies in the parts of a connected subtree.
fn path_condition(td: &TreeDecomposition, g: &Graph) -> bool {
    let adj = td.neighbours();
    g.vertices().iter().all(|v| {
        let holding: Vec<usize> = (0..td.parts.len()).filter(|t| td.parts[*t].contains(v)).collect();
        let Some(&start) = holding.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if td.parts[u].contains(v) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == holding.len()
    })
}

/// The node map `t ↦ π(t)` induced by a vertex permutation on a
/// decomposition built from a nested system, if it is a tree automorphism
/// carrying each part `V_t` onto `V_π(t)`.
pub fn induced_tree_map(td: &TreeDecomposition, perm: &[usize]) -> Option<Vec<usize>> {
    let orientations = td.orientations.as_ref()?;
    let index: BTreeMap<&SeparationSet, usize> =
        orientations.iter().enumerate().map(|(i, o)| (o.choice(), i)).collect();
    let map: Vec<usize> = orientations
        .iter()
        .map(|o| index.get(o.map(perm).choice()).copied())
        .collect::<Option<_>>()?;
    let parts_ok = (0..td.parts.len()).all(|t| td.parts[map[t]] == td.parts[t].map(perm));
    let edges: BTreeSet<(usize, usize)> = td.edges.iter().copied().collect();
    let edges_ok = td.edges.iter().all(|&(u, v)| {
        let (a, b) = (map[u], map[v]);
        edges.contains(&(a.min(b), a.max(b)))
    });
    (parts_ok && edges_ok).then_some(map)
}

/// A vertex written by name when the graph has names, else by index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Index(usize),
    Name(String),
}

impl Label {
    pub fn of(g: &Graph, v: usize) -> Label {
        match g.names() {
            Some(names) => Label::Name(names[v].clone()),
            None => Label::Index(v),
        }
    }

    pub fn resolve(&self, g: &Graph) -> Result<usize> {
        match self {
            Label::Index(v) if *v < g.n() => Ok(*v),
            Label::Name(name) => g
                .vertex_by_name(name)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex `{name}`"))),
            Label::Index(v) => Err(Error::Invalid(format!("vertex {v} out of range"))),
        }
    }
}

pub fn labels(g: &Graph, set: VertexSet) -> Vec<Label> {
    set.iter().map(|v| Label::of(g, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub id: usize,
    pub part: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    #[serde(default)]
    pub adhesion: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

impl DecompositionJson {
    pub fn new(td: &TreeDecomposition, g: &Graph) -> DecompositionJson {
        let nodes = td
            .parts
            .iter()
            .enumerate()
            .map(|(id, p)| NodeJson {
                id,
                part: labels(g, *p),
            })
            .collect();
        let edges = td
            .edges
            .iter()
            .map(|&(u, v)| EdgeJson {
                u,
                v,
                adhesion: labels(g, td.adhesion_set((u, v))),
            })
            .collect();
        DecompositionJson { nodes, edges }
    }

    /// Rebuilds the decomposition; node ids must be `0..len` in any order.
    pub fn to_decomposition(&self, g: &Graph) -> Result<TreeDecomposition> {
        let count = self.nodes.len();
        let mut parts = vec![None; count];
        for node in &self.nodes {
            let slot = parts
                .get_mut(node.id)
                .ok_or_else(|| Error::Invalid(format!("node id {} out of range", node.id)))?;
            if slot.is_some() {
                return Err(Error::Invalid(format!("duplicate node id {}", node.id)));
            }
            let vertices = node.part.iter().map(|l| l.resolve(g)).collect::<Result<VertexSet>>()?;
            *slot = Some(vertices);
        }
        let parts = parts.into_iter().map(|p| p.expect("every id filled")).collect();
        TreeDecomposition::from_parts(parts, self.edges.iter().map(|e| (e.u, e.v)).collect())
    }
}

fn braces(labels: &[Label]) -> String {
    let items: Vec<String> = labels
        .iter()
        .map(|l| match l {
            Label::Index(v) => v.to_string(),
            Label::Name(s) => s.clone(),
        })
        .collect();
    format!("{{{}}}", items.join(","))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: nodes labelled by parts, edges by adhesion sets.
pub fn to_dot(td: &TreeDecomposition, g: &Graph) -> String {
    let mut out = String::from("graph decomposition {\n");
    for (t, p) in td.parts.iter().enumerate() {
        let _ = writeln!(out, "  n{t} [label=\"{}\"];", dot_escape(&braces(&labels(g, *p))));
    }
    for &(u, v) in &td.edges {
        let adhesion = braces(&labels(g, td.adhesion_set((u, v))));
        let _ = writeln!(out, "  n{u} -- n{v} [label=\"{}\"];", dot_escape(&adhesion));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::separation::enumerate_separations;

    fn pair(g: &Graph, a: &[&str], b: &[&str]) -> SeparationSet {
        let s = Separation::new(g, g.set(a), g.set(b)).unwrap();
        [s, s.inverse()].into_iter().collect()
    }

    #[test]
    fn empty_system_gives_one_node() {
        let g = fixtures::k4();
        let td = build_from_nested(&SeparationSet::new(), &g).unwrap();
        assert_eq!(td.parts(), &[g.vertices()]);
        assert!(induced_separations(&td).is_empty());
        assert_eq!(adhesion(&td), 0);
        assert!(to_dot(&td, &g).contains("n0 [label=\"{w,x,y,z}\"]"));
    }

    #[test]
    fn path_three() {
        let g = fixtures::p3();
        let n = pair(&g, &["a", "b"], &["b", "c"]);
        let td = build_from_nested(&n, &g).unwrap();
        assert_eq!(td.node_count(), 2);
        let parts: BTreeSet<VertexSet> = td.parts().iter().copied().collect();
        assert_eq!(parts, BTreeSet::from([g.set(&["a", "b"]), g.set(&["b", "c"])]));
        assert_eq!(td.adhesion_set(td.edges()[0]), g.set(&["b"]));
        assert_eq!(induced_separations(&td), n);
        assert_eq!(adhesion(&td), 1);
        assert!(hub_nodes(&td).is_empty());
    }

    #[test]
    fn three_blobs_ext() {
        let g = fixtures::three_blobs();
        let s = enumerate_separations(&g, 2, true);
        let ext = s.filter(|x| {
            let sep = x.separator();
            sep == g.set(&["x1"]) || sep == g.set(&["x3"])
        });
        assert_eq!(ext.len(), 4);
        let td = build_from_nested(&ext, &g).unwrap();
        assert_eq!(td.node_count(), 3);
        let x1 = g.set(&["a1", "a2", "a3", "a4", "x1"]);
        let x3 = g.set(&["x3", "c1", "c2", "c3", "c4"]);
        let middle = g
            .vertices()
            .difference(x1.difference(g.set(&["x1"])).union(x3.difference(g.set(&["x3"]))));
        let parts: BTreeSet<VertexSet> = td.parts().iter().copied().collect();
        assert_eq!(parts, BTreeSet::from([x1, middle, x3]));
        assert_eq!(induced_separations(&td), ext);
        assert_eq!(adhesion(&td), 1);
        assert!(hub_nodes(&td).is_empty());
    }

    #[test]
    fn star_centre_is_hub() {
        let g = fixtures::star_of_four();
        let mut full = SeparationSet::new();
        for c in ["c1", "c2", "c3", "c4"] {
            let a = g.set(&[c, "z1", "z2"]);
            let b = g.vertices().difference(g.set(&[c]));
            let s = Separation::new(&g, a, b).unwrap();
            full.insert(s);
            full.insert(s.inverse());
        }
        let td = build_from_nested(&full, &g).unwrap();
        assert_eq!(td.node_count(), 5);
        let z = g.set(&["z1", "z2"]);
        let hubs = hub_nodes(&td);
        assert_eq!(hubs.len(), 1);
        let hub = *hubs.iter().next().unwrap();
        assert_eq!(td.part(hub), z);
    }

    #[test]
    fn negative_axioms() {
        let g = fixtures::p3();
        let ab = g.set(&["a", "b"]);
        let bc = g.set(&["b", "c"]);
        let td = TreeDecomposition::from_parts(vec![g.set(&["a"]), bc], vec![(0, 1)]).unwrap();
        let r = verify(&td, &g, None);
        assert!(r.tree && r.t1 && !r.t2 && r.t3);
        let td = TreeDecomposition::from_parts(vec![ab, g.set(&["c"]), bc], vec![(0, 1), (1, 2)]).unwrap();
        let r = verify(&td, &g, None);
        assert!(r.t1 && r.t2 && !r.t3);
        assert!(!r.passed());
        let td = TreeDecomposition::from_parts(vec![ab, bc], vec![]).unwrap();
        assert!(!verify(&td, &g, None).tree);
        assert!(TreeDecomposition::from_parts(vec![ab], vec![(0, 3)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = fixtures::p3();
        let n = pair(&g, &["a", "b"], &["b", "c"]);
        let td = build_from_nested(&n, &g).unwrap();
        let doc = DecompositionJson::new(&td, &g);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"adhesion\":[\"b\"]"));
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        let td2 = back.to_decomposition(&g).unwrap();
        assert_eq!(td2.parts(), td.parts());
        assert!(verify(&td2, &g, Some(&n)).passed());
    }
}
