//! Consistent sets of separations, profiles, blocks and tangles, and
//! orientations of separation systems.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::separation::{enumerate_separations, enumerate_separations_limited, Separation, SeparationSet};
use crate::vertex_set::VertexSet;

/// What a profile was recognised as.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// Induced by this k-block.
    Block(VertexSet),
    /// Not a block profile, but a tangle.
    Tangle,
    /// Neither.
    Other,
    /// Never classified.
    Unclassified,
}

/// A consistent set of separations satisfying (P), with an optional
/// classification. Equality and ordering look only at the separations.
#[derive(Clone, Debug)]
pub struct Profile {
    separations: SeparationSet,
    kind: ProfileKind,
    tangle: Option<bool>,
}

impl Profile {
    pub fn new(separations: SeparationSet) -> Profile {
        Profile {
            separations,
            kind: ProfileKind::Unclassified,
            tangle: None,
        }
    }

    pub fn classified(separations: SeparationSet, kind: ProfileKind, tangle: Option<bool>) -> Profile {
        Profile {
            separations,
            kind,
            tangle,
        }
    }

    pub fn separations(&self) -> &SeparationSet {
        &self.separations
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Whether the profile is a tangle, if that was determined.
    pub fn tangle(&self) -> Option<bool> {
        self.tangle
    }

    pub fn block(&self) -> Option<VertexSet> {
        match self.kind {
            ProfileKind::Block(b) => Some(b),
            _ => None,
        }
    }

    pub fn contains(&self, s: &Separation) -> bool {
        self.separations.contains(s)
    }

    pub fn len(&self) -> usize {
        self.separations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.separations.is_empty()
    }
}

impl PartialEq for Profile {
    fn eq(&self, other: &Self) -> bool {
        self.separations == other.separations
    }
}

impl Eq for Profile {}

impl PartialOrd for Profile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Profile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.separations.cmp(&other.separations)
    }
}

impl std::hash::Hash for Profile {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.separations.hash(state)
    }
}

/// No `(A, B), (X, Y)` in `p` with `(Y, X) <= (A, B)`.
pub fn is_consistent(p: &SeparationSet) -> bool {
    let members: Vec<&Separation> = p.iter().collect();
    members.iter().all(|s| members.iter().all(|t| !t.inverse().leq(s)))
}

/// Whether `p ∪ {s}` is consistent, given that `p` is.
pub fn consistent_with(p: &SeparationSet, s: &Separation) -> bool {
    if s.inverse().leq(s) {
        return false;
    }
    let inv = s.inverse();
    p.iter().all(|t| !t.inverse().leq(s) && !inv.leq(t))
}

/// Condition (P): for all members `(A, B), (C, D)`, including equal ones,
/// `(B ∩ D, A ∪ C)` is not a member.
pub fn satisfies_p(p: &SeparationSet) -> bool {
    let members: Vec<&Separation> = p.iter().collect();
    members.iter().enumerate().all(|(i, s)| {
        members[i..].iter().all(|t| {
            let corner = Separation::from_sides(s.b().intersection(t.b()), s.a().union(t.a()));
            !p.contains(&corner)
        })
    })
}

pub fn is_profile(p: &SeparationSet) -> bool {
    is_consistent(p) && satisfies_p(p)
}

/// A profile of order `< k` that orients every separation of order `< k`
/// (improper ones included) exactly once.
pub fn is_k_profile(p: &SeparationSet, k: usize, g: &Graph) -> bool {
    if p.iter().any(|s| s.order() >= k) {
        return false;
    }
    let all = enumerate_separations(g, k, false);
    is_k_profile_in(p, &all)
}

fn is_k_profile_in(p: &SeparationSet, all: &SeparationSet) -> bool {
    if !p.is_subset(all) {
        return false;
    }
    let oriented_once = all.iter().all(|s| p.contains(s) != p.contains(&s.inverse()));
    oriented_once && is_consistent(p) && satisfies_p(p)
}

/// `(A, B)` lies in one of the sets and `(B, A)` in the other, each only there.
pub fn distinguishes(s: &Separation, p: &SeparationSet, q: &SeparationSet) -> bool {
    let inv = s.inverse();
    let one_way =
        |x: &SeparationSet, y: &SeparationSet| x.contains(s) && !y.contains(s) && y.contains(&inv) && !x.contains(&inv);
    one_way(p, q) || one_way(q, p)
}

/// Whether some member of `s` distinguishes `p` from `q`.
pub fn set_distinguishes(s: &SeparationSet, p: &SeparationSet, q: &SeparationSet) -> bool {
    s.iter().any(|x| distinguishes(x, p, q))
}

/// Maximal `S`-inseparable vertex sets, each flagged `large` when it lies in
/// no separator of `S`. Sorted by vertex set.
pub fn compute_blocks(g: &Graph, s: &SeparationSet) -> Vec<(VertexSet, bool)> {
    let mut family: Vec<VertexSet> = vec![g.vertices()];
    // A separation that separates no member now will never separate a
    // subset of one later, so a single pass reaches the fixpoint.
    for sep in s.iter().filter(|x| x.is_proper()) {
        if !family.iter().any(|x| sep.separates(*x)) {
            continue;
        }
        let mut next: BTreeSet<VertexSet> = BTreeSet::new();
        for x in &family {
            if sep.separates(*x) {
                next.insert(x.intersection(sep.a()));
                next.insert(x.intersection(sep.b()));
            } else {
                next.insert(*x);
            }
        }
        family = drop_subsumed(next);
    }
    family.sort();
    family
        .into_iter()
        .map(|x| {
            let large = !s.iter().any(|t| x.is_subset(t.separator()));
            (x, large)
        })
        .collect()
}

fn drop_subsumed(sets: BTreeSet<VertexSet>) -> Vec<VertexSet> {
    let mut by_size: Vec<VertexSet> = sets.into_iter().collect();
    by_size.sort_by_key(|x| std::cmp::Reverse(x.len()));
    let mut kept: Vec<VertexSet> = Vec::new();
    for x in by_size {
        if !kept.iter().any(|y| x.is_subset(*y)) {
            kept.push(x);
        }
    }
    kept
}

/// The k-blocks of `g`: maximal `(< k)`-inseparable sets of at least `k` vertices.
pub fn k_blocks(g: &Graph, k: usize) -> Vec<VertexSet> {
    let s = enumerate_separations(g, k, true);
    k_blocks_from(g, k, &s)
}

fn k_blocks_from(g: &Graph, k: usize, proper: &SeparationSet) -> Vec<VertexSet> {
    compute_blocks(g, proper)
        .into_iter()
        .map(|(x, _)| x)
        .filter(|x| x.len() >= k)
        .collect()
}

/// `P_k(b) = {(A, B) : |A ∩ B| < k, b ⊆ B}`; fails unless `b` is a k-block.
pub fn block_profile(g: &Graph, b: VertexSet, k: usize) -> Result<Profile> {
    if !k_blocks(g, k).contains(&b) {
        return Err(Error::Precondition(format!("{b} is not a {k}-block")));
    }
    let all = enumerate_separations(g, k, false);
    Ok(Profile::classified(
        induced_by_set(&all, b),
        ProfileKind::Block(b),
        None,
    ))
}

fn induced_by_set(all: &SeparationSet, x: VertexSet) -> SeparationSet {
    all.filter(|s| x.is_subset(s.b()))
}

/// The S-profile `{(A, B) ∈ S : X ⊆ B}` of a vertex set `X`.
pub fn s_profile(s: &SeparationSet, x: VertexSet) -> SeparationSet {
    induced_by_set(s, x)
}

/// Tangle test: no three members, repetition allowed, whose left sides
/// induce subgraphs jointly covering every vertex and edge of `g`.
pub fn is_tangle(p: &SeparationSet, k: usize, g: &Graph) -> Result<bool> {
    if !is_k_profile(p, k, g) {
        return Err(Error::Precondition(format!("not a {k}-profile")));
    }
    Ok(no_covering_triple(p, g))
}

fn no_covering_triple(p: &SeparationSet, g: &Graph) -> bool {
    let edges = g.edges();
    let words = edges.len().div_ceil(64).max(1);
    let lefts: BTreeSet<VertexSet> = p.iter().map(|s| s.a()).collect();
    let mut maximal = drop_subsumed(lefts);
    maximal.sort_by_key(|a| std::cmp::Reverse(a.len()));
    let masks: Vec<Vec<u64>> = maximal
        .iter()
        .map(|&a| {
            let mut m = vec![0u64; words];
            for (i, &(u, v)) in edges.iter().enumerate() {
                if a.contains(u) && a.contains(v) {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            m
        })
        .collect();
    let mut full = vec![0u64; words];
    for i in 0..edges.len() {
        full[i / 64] |= 1 << (i % 64);
    }
    let n = g.n();
    let all = g.vertices();
    let size: Vec<usize> = maximal.iter().map(|a| a.len()).collect();
    let mut pair = vec![0u64; words];
    // sides are sorted by size, so each loop stops once the sizes cannot reach n
    for i in 0..maximal.len() {
        if 3 * size[i] < n {
            break;
        }
        for j in i..maximal.len() {
            if size[i] + 2 * size[j] < n {
                break;
            }
            let vs = maximal[i].union(maximal[j]);
            for (w, slot) in pair.iter_mut().enumerate() {
                *slot = masks[i][w] | masks[j][w];
            }
            for l in j..maximal.len() {
                if size[i] + size[j] + size[l] < n {
                    break;
                }
                if vs.union(maximal[l]) != all {
                    continue;
                }
                if (0..words).all(|w| pair[w] | masks[l][w] == full[w]) {
                    return false;
                }
            }
        }
    }
    true
}

/// A choice of exactly one separation from every inverse pair of `base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    base: SeparationSet,
    choice: SeparationSet,
}

impl Orientation {
    pub fn empty() -> Orientation {
        Orientation {
            base: SeparationSet::new(),
            choice: SeparationSet::new(),
        }
    }

    /// Checks that `choice ⊆ base` and every pair of `base` is oriented once.
    pub fn new(base: SeparationSet, choice: SeparationSet) -> Result<Orientation> {
        if !choice.is_subset(&base) {
            return Err(Error::Precondition("choice is not a subset of the base".into()));
        }
        for s in base.iter() {
            if choice.contains(s) == choice.contains(&s.inverse()) && *s != s.inverse() {
                return Err(Error::Unoriented(*s));
            }
        }
        Ok(Orientation { base, choice })
    }

    pub fn base(&self) -> &SeparationSet {
        &self.base
    }

    pub fn choice(&self) -> &SeparationSet {
        &self.choice
    }

    pub fn is_consistent(&self) -> bool {
        is_consistent(&self.choice)
    }

    /// Intersection of the sides `B` over the choice; `V` when empty.
    pub fn towards(&self, g: &Graph) -> VertexSet {
        self.choice.iter().fold(g.vertices(), |acc, s| acc.intersection(s.b()))
    }

    /// Image under a vertex permutation.
    pub fn map(&self, perm: &[usize]) -> Orientation {
        Orientation {
            base: self.base.map(perm),
            choice: self.choice.map(perm),
        }
    }

    /// Replace `s` by its inverse.
    pub fn flipped(&self, s: &Separation) -> Orientation {
        let mut choice = self.choice.clone();
        choice.remove(s);
        choice.insert(s.inverse());
        Orientation {
            base: self.base.clone(),
            choice,
        }
    }
}

/// `P ∩ S` as an orientation of `S`; fails if `P` leaves some pair unoriented.
pub fn orientation_of(p: &SeparationSet, s: &SeparationSet) -> Result<Orientation> {
    let choice = p.intersection(s);
    for x in s.iter() {
        if !choice.contains(x) && !choice.contains(&x.inverse()) {
            return Err(Error::Unoriented(*x));
        }
        if choice.contains(x) && choice.contains(&x.inverse()) && *x != x.inverse() {
            return Err(Error::Precondition(format!("{x} oriented both ways")));
        }
    }
    Ok(Orientation {
        base: s.clone(),
        choice,
    })
}

/// The set `X` that `o` orients its base towards.
pub fn orients_towards(o: &Orientation, g: &Graph) -> VertexSet {
    o.towards(g)
}

/// Both `choice ∪ {s}` and `choice ∪ {s⁻¹}` are consistent.
pub fn splits(s: &Separation, o: &Orientation) -> bool {
    if !o.is_consistent() {
        return false;
    }
    consistent_with(o.choice(), s) && consistent_with(o.choice(), &s.inverse())
}

/// The unique consistent orientation of the nested system `n` that `s` splits:
/// `{(C, D) ∈ N : (C, D) <= s or (C, D) <= s⁻¹}`.
pub fn split_orientation(s: &Separation, n: &SeparationSet) -> Result<Orientation> {
    if !n.is_symmetric() || !n.is_nested() {
        return Err(Error::Precondition("N must be a nested separation system".into()));
    }
    split_orientation_unchecked(s, n)
}

/// As [`split_orientation`] without re-checking that `n` is a nested system.
pub(crate) fn split_orientation_unchecked(s: &Separation, n: &SeparationSet) -> Result<Orientation> {
    if !s.is_proper() {
        return Err(Error::Precondition(format!("{s} is improper")));
    }
    if n.contains(s) {
        return Err(Error::Precondition(format!("{s} already lies in N")));
    }
    if !n.nested_with(s) {
        return Err(Error::Precondition(format!("{s} crosses N")));
    }
    let inv = s.inverse();
    let choice = n.filter(|c| c.leq(s) || c.leq(&inv));
    let o = Orientation {
        base: n.clone(),
        choice,
    };
    let oriented = n
        .iter()
        .all(|c| o.choice.contains(c) != o.choice.contains(&c.inverse()));
    if !oriented || !o.is_consistent() || !splits(s, &o) {
        return Err(Error::Invariant(format!(
            "split orientation of {s} is not a consistent orientation split by it"
        )));
    }
    Ok(o)
}

/// A consistent orientation built greedily: take the lexicographically least
/// unoriented proper separation together with everything below it in `S`,
/// repeat, then add every improper `(A, V)` of `S`.
pub fn greedy_consistent_orientation(s: &SeparationSet) -> Result<Orientation> {
    if !s.is_symmetric() {
        return Err(Error::Precondition("separation set is not symmetric".into()));
    }
    let mut choice = SeparationSet::new();
    for x in s.iter().filter(|x| x.is_proper()) {
        if choice.contains(x) || choice.contains(&x.inverse()) {
            continue;
        }
        choice.extend(s.iter().filter(|y| y.leq(x)).copied());
    }
    for x in s.iter().filter(|x| !x.is_proper()) {
        if x.a().is_subset(x.b()) {
            choice.insert(*x);
        }
    }
    let o = Orientation::new(s.clone(), choice)?;
    if !o.is_consistent() {
        return Err(Error::Invariant("greedy orientation is inconsistent".into()));
    }
    Ok(o)
}

/// Every k-profile of `g`, classified as block profile, tangle or other.
pub fn enumerate_k_profiles(g: &Graph, k: usize, limits: &Limits) -> Result<Vec<Profile>> {
    limits.check_vertices(g.n())?;
    let all = enumerate_separations_limited(g, k, false, limits)?;
    let raw = search_k_profiles(&all, k, limits)?;
    let proper = all.filter(|s| s.is_proper());
    let blocks = k_blocks_from(g, k, &proper);
    let block_profiles: HashMap<SeparationSet, VertexSet> =
        blocks.iter().map(|&b| (induced_by_set(&all, b), b)).collect();
    let mut out: Vec<Profile> = raw
        .into_iter()
        .map(|p| {
            let tangle = no_covering_triple(&p, g);
            let kind = match block_profiles.get(&p) {
                Some(&b) => ProfileKind::Block(b),
                None if tangle => ProfileKind::Tangle,
                None => ProfileKind::Other,
            };
            Profile::classified(p, kind, Some(tangle))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Backtracking over the proper inverse pairs of `all` (the separations of
/// order `< k`). Adding a separation forces everything below it (consistency)
/// and the inverse of every small corner `(B∩D, A∪C)` it forms with a
/// member (condition (P)).
pub(crate) fn search_k_profiles(all: &SeparationSet, k: usize, limits: &Limits) -> Result<Vec<SeparationSet>> {
    let seps: Vec<Separation> = all.iter().copied().collect();
    let index: HashMap<Separation, usize> = seps.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let inv: Vec<usize> = seps.iter().map(|s| index[&s.inverse()]).collect();
    if (0..seps.len()).any(|i| inv[i] == i) {
        // (V, V) has order < k: it would have to lie in the profile together with its inverse.
        return Ok(Vec::new());
    }
    let proper: Vec<usize> = (0..seps.len()).filter(|&i| seps[i].is_proper()).collect();
    let pair_count = proper.len() / 2;
    if pair_count > limits.max_pairs {
        return Err(Error::Resource(format!(
            "{pair_count} proper separation pairs exceeds the limit of {}",
            limits.max_pairs
        )));
    }
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); seps.len()];
    for &i in &proper {
        down[i] = proper
            .iter()
            .copied()
            .filter(|&j| j != i && seps[j].leq(&seps[i]))
            .collect();
    }
    let ctx = SearchCtx {
        seps: &seps,
        index: &index,
        inv: &inv,
        down: &down,
        k,
        limits,
    };
    let mut state = SearchState {
        status: vec![0; seps.len()],
        members: Vec::new(),
    };
    for (i, s) in seps.iter().enumerate() {
        // every (A, V) is forced, its inverse (V, A) is excluded
        if !s.is_proper() && s.a().is_subset(s.b()) && !ctx.add(&mut state, i) {
            return Ok(Vec::new());
        }
    }
    let mut pairs: Vec<usize> = proper.iter().copied().filter(|&i| seps[i] < seps[inv[i]]).collect();
    pairs.sort_by(|&x, &y| seps[x].cmp(&seps[y]));
    let mut found = Vec::new();
    ctx.branch(state, &pairs, 0, &mut found)?;
    Ok(found)
}

struct SearchCtx<'a> {
    seps: &'a [Separation],
    index: &'a HashMap<Separation, usize>,
    inv: &'a [usize],
    down: &'a [Vec<usize>],
    k: usize,
    limits: &'a Limits,
}

#[derive(Clone)]
struct SearchState {
    /// 1: in the profile, -1: its inverse is, 0: open.
    status: Vec<i8>,
    members: Vec<usize>,
}

impl SearchCtx<'_> {
    /// Adds separation `i` and everything it forces; false on contradiction.
    fn add(&self, st: &mut SearchState, i: usize) -> bool {
        let mut queue = vec![i];
        while let Some(x) = queue.pop() {
            match st.status[x] {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            st.status[x] = 1;
            st.status[self.inv[x]] = -1;
            st.members.push(x);
            queue.extend(self.down[x].iter().copied());
            let sx = self.seps[x];
            let x_improper = !sx.is_proper();
            for &y in &st.members {
                let sy = self.seps[y];
                if x_improper && !sy.is_proper() {
                    // corner of two (A, V)'s is some (V, C), excluded already
                    continue;
                }
                let a = sx.b().intersection(sy.b());
                let b = sx.a().union(sy.a());
                if a.intersection(b).len() >= self.k {
                    continue;
                }
                let corner = self.index[&Separation::from_sides(a, b)];
                match st.status[corner] {
                    1 => return false,
                    -1 => {}
                    _ => queue.push(self.inv[corner]),
                }
            }
        }
        true
    }

    fn branch(&self, st: SearchState, pairs: &[usize], from: usize, found: &mut Vec<SeparationSet>) -> Result<()> {
        let Some(pos) = (from..pairs.len()).find(|&p| st.status[pairs[p]] == 0) else {
            found.push(st.members.iter().map(|&i| self.seps[i]).collect());
            return Ok(());
        };
        self.limits.check_time()?;
        let rep = pairs[pos];
        for pick in [rep, self.inv[rep]] {
            let mut next = st.clone();
            if self.add(&mut next, pick) {
                self.branch(next, pairs, pos + 1, found)?;
            }
        }
        Ok(())
    }
}
