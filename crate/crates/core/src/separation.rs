//! Separations of a graph, their partial order and nestedness, and the
//! exhaustive enumeration of all separations below a given order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, Graph};
use crate::limits::Limits;
use crate::vertex_set::{subsets_of_size, VertexSet};

/// An ordered pair `(A, B)` of vertex sets with `A ∪ B = V` and no edge
/// between `A \ B` and `B \ A`.
///
/// Values are only created through [`Separation::new`] (which checks both
/// conditions) or by set operations that provably preserve them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Separation {
    a: VertexSet,
    b: VertexSet,
}

impl Separation {
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Separation> {
        let all = g.vertices();
        if !a.is_subset(all) || !b.is_subset(all) {
            return Err(Error::Invalid("side contains a vertex outside the graph".into()));
        }
        let missing = all.difference(a.union(b));
        if !missing.is_empty() {
            return Err(Error::Cover {
                missing: missing.to_string(),
            });
        }
        let left = a.difference(b);
        let right = b.difference(a);
        for u in left {
            if let Some(v) = g.neighbors(u).intersection(right).first() {
                return Err(Error::EdgeViolation {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        Ok(Separation { a, b })
    }

    /// Caller guarantees the separation axioms.
    pub(crate) fn from_sides(a: VertexSet, b: VertexSet) -> Separation {
        Separation { a, b }
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(self.b)
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    pub fn inverse(&self) -> Separation {
        Separation { a: self.b, b: self.a }
    }

    pub fn is_proper(&self) -> bool {
        !self.a.is_subset(self.b) && !self.b.is_subset(self.a)
    }

    /// `(A, B) <= (C, D)` iff `A ⊆ C` and `B ⊇ D`.
    pub fn leq(&self, other: &Separation) -> bool {
        self.a.is_subset(other.a) && self.b.is_superset(other.b)
    }

    pub fn less(&self, other: &Separation) -> bool {
        self != other && self.leq(other)
    }

    /// Comparable with `other` or with its inverse.
    pub fn is_nested(&self, other: &Separation) -> bool {
        let inv = other.inverse();
        self.leq(other) || other.leq(self) || self.leq(&inv) || inv.leq(self)
    }

    pub fn crosses(&self, other: &Separation) -> bool {
        !self.is_nested(other)
    }

    /// Whether `x` meets both `A \ B` and `B \ A`.
    pub fn separates(&self, x: VertexSet) -> bool {
        x.meets(self.a.difference(self.b)) && x.meets(self.b.difference(self.a))
    }

    /// Image under a vertex permutation.
    pub fn map(&self, perm: &[usize]) -> Separation {
        Separation {
            a: self.a.map(perm),
            b: self.b.map(perm),
        }
    }

    /// Human-readable form using vertex names.
    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a Separation, &'a Graph);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let side = |s: VertexSet| s.iter().map(|v| self.1.name(v)).collect::<Vec<_>>().join(",");
                write!(f, "({{{}}}, {{{}}})", side(self.0.a), side(self.0.b))
            }
        }
        Named(self, g)
    }
}

impl fmt::Debug for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `s1 <= s2` in the separation order.
pub fn le(s1: &Separation, s2: &Separation) -> bool {
    s1.leq(s2)
}

pub fn is_nested(s1: &Separation, s2: &Separation) -> bool {
    s1.is_nested(s2)
}

/// The four corner separations of `s` and `t`, in the order
/// `(A∩C, B∪D)`, `(A∪C, B∩D)`, `(B∩D, A∪C)`, `(B∪D, A∩C)`.
pub fn corner_separations(s: &Separation, t: &Separation) -> [Separation; 4] {
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    [
        Separation::from_sides(a.intersection(c), b.union(d)),
        Separation::from_sides(a.union(c), b.intersection(d)),
        Separation::from_sides(b.intersection(d), a.union(c)),
        Separation::from_sides(b.union(d), a.intersection(c)),
    ]
}

/// A duplicate-free set of separations, iterated in canonical order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeparationSet(BTreeSet<Separation>);

impl SeparationSet {
    pub fn new() -> Self {
        SeparationSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Separation) -> bool {
        self.0.contains(s)
    }

    pub fn insert(&mut self, s: Separation) -> bool {
        self.0.insert(s)
    }

    pub fn remove(&mut self, s: &Separation) -> bool {
        self.0.remove(s)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Separation> + ExactSizeIterator + '_ {
        self.0.iter()
    }

    pub fn extend<I: IntoIterator<Item = Separation>>(&mut self, iter: I) {
        self.0.extend(iter)
    }

    pub fn union(&self, other: &SeparationSet) -> SeparationSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &SeparationSet) -> SeparationSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &SeparationSet) -> SeparationSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &SeparationSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Separation) -> bool) -> SeparationSet {
        self.0.iter().filter(|s| keep(s)).copied().collect()
    }

    /// Members of order `< order`.
    pub fn below_order(&self, order: usize) -> SeparationSet {
        self.filter(|s| s.order() < order)
    }

    pub fn max_order(&self) -> Option<usize> {
        self.0.iter().map(Separation::order).max()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|s| self.0.contains(&s.inverse()))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.0
            .iter()
            .all(|s| *s == s.inverse() || !self.0.contains(&s.inverse()))
    }

    pub fn all_proper(&self) -> bool {
        self.0.iter().all(Separation::is_proper)
    }

    /// Every two members are nested.
    pub fn is_nested(&self) -> bool {
        let v: Vec<&Separation> = self.0.iter().collect();
        v.iter()
            .enumerate()
            .all(|(i, s)| v[i + 1..].iter().all(|t| s.is_nested(t)))
    }

    /// Whether `s` is nested with every member.
    pub fn nested_with(&self, s: &Separation) -> bool {
        self.0.iter().all(|t| t.is_nested(s))
    }

    /// Every member is nested with every member of `other`.
    pub fn nested_with_set(&self, other: &SeparationSet) -> bool {
        self.0.iter().all(|s| other.nested_with(s))
    }

    /// The set together with all inverses.
    pub fn symmetric_closure(&self) -> SeparationSet {
        self.0.iter().flat_map(|s| [*s, s.inverse()]).collect()
    }

    /// Members that are `<=`-maximal within the set.
    pub fn maximal(&self) -> SeparationSet {
        self.filter(|s| !self.0.iter().any(|t| s.less(t)))
    }

    /// One representative per inverse pair: the smaller of `s` and its inverse.
    pub fn pairs(&self) -> Vec<Separation> {
        self.0
            .iter()
            .filter(|s| **s <= s.inverse() || !self.0.contains(&s.inverse()))
            .copied()
            .collect()
    }

    /// Image under a vertex permutation.
    pub fn map(&self, perm: &[usize]) -> SeparationSet {
        self.0.iter().map(|s| s.map(perm)).collect()
    }

    /// Sorted vertex-index encoding, `[{"A": [...], "B": [...]}, ...]`.
    pub fn to_json(&self) -> Vec<SeparationJson> {
        self.0.iter().map(SeparationJson::from).collect()
    }

    pub fn from_json(g: &Graph, items: &[SeparationJson]) -> Result<SeparationSet> {
        items.iter().map(|j| j.to_separation(g)).collect()
    }
}

impl FromIterator<Separation> for SeparationSet {
    fn from_iter<I: IntoIterator<Item = Separation>>(iter: I) -> Self {
        SeparationSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a SeparationSet {
    type Item = &'a Separation;
    type IntoIter = std::collections::btree_set::Iter<'a, Separation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for SeparationSet {
    type Item = Separation;
    type IntoIter = std::collections::btree_set::IntoIter<Separation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Debug for SeparationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Wire form of a separation: sorted vertex indices per side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationJson {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
}

impl From<&Separation> for SeparationJson {
    fn from(s: &Separation) -> Self {
        SeparationJson {
            a: s.a.to_vec(),
            b: s.b.to_vec(),
        }
    }
}

impl SeparationJson {
    pub fn to_separation(&self, g: &Graph) -> Result<Separation> {
        let side = |v: &[usize]| -> Result<VertexSet> {
            v.iter()
                .map(|&x| {
                    if x < g.n() {
                        Ok(x)
                    } else {
                        Err(Error::Invalid(format!("vertex {x} out of range")))
                    }
                })
                .collect()
        };
        Separation::new(g, side(&self.a)?, side(&self.b)?)
    }
}

/// All separations of order `< k`, in both orientations, optionally only
/// the proper ones.
pub fn enumerate_separations(g: &Graph, k: usize, proper_only: bool) -> SeparationSet {
    enumerate_separations_limited(g, k, proper_only, &Limits::unlimited())
        .expect("unlimited enumeration cannot trip a guard")
}

/// As [`enumerate_separations`], failing with [`Error::Resource`] when a
/// guard in `limits` trips.
///
/// Every separation `(A, B)` is recovered from its separator `X = A ∩ B`:
/// `A \ X` and `B \ X` are unions of components of `G - X`, so iterating over
/// all `X` with `|X| < k` and all 2-colourings of the components of `G - X`
/// yields each separation exactly once.
pub fn enumerate_separations_limited(g: &Graph, k: usize, proper_only: bool, limits: &Limits) -> Result<SeparationSet> {
    let all = g.vertices();
    let mut out = BTreeSet::new();
    for size in 0..k.min(g.n() + 1) {
        for x in subsets_of_size(all, size) {
            let comps = components(g, x);
            if comps.len() > 24 {
                return Err(Error::Resource(format!(
                    "G - {x} has {} components; too many side assignments",
                    comps.len()
                )));
            }
            for mask in 0u64..1 << comps.len() {
                let mut a = x;
                let mut b = x;
                for (i, c) in comps.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        a = a.union(*c);
                    } else {
                        b = b.union(*c);
                    }
                }
                let s = Separation::from_sides(a, b);
                if !proper_only || s.is_proper() {
                    out.insert(s);
                }
            }
            if out.len() > limits.max_separations {
                return Err(Error::Resource(format!(
                    "more than {} separations of order < {k}",
                    limits.max_separations
                )));
            }
            limits.check_time()?;
        }
    }
    Ok(SeparationSet(out))
}
