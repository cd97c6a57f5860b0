//! Tasks `(S, 𝒫)`, the selectors ext/loc/all and their reduced forms, the
//! subtask partition over consistent orientations, and the recursive
//! strategy and k-strategy algorithms.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::profile::{
    distinguishes, greedy_consistent_orientation, is_consistent, is_k_profile, split_orientation_unchecked,
    Orientation, Profile,
};
use crate::separation::{enumerate_separations_limited, Separation, SeparationSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    Ext,
    Loc,
    All,
    ExtR,
    LocR,
    AllR,
}

impl Selector {
    pub fn is_reduced(self) -> bool {
        matches!(self, Selector::ExtR | Selector::LocR | Selector::AllR)
    }

    /// The selector applied after reduction.
    pub fn unreduced(self) -> Selector {
        match self {
            Selector::ExtR => Selector::Ext,
            Selector::LocR => Selector::Loc,
            Selector::AllR => Selector::All,
            s => s,
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selector::Ext => "ext",
            Selector::Loc => "loc",
            Selector::All => "all",
            Selector::ExtR => "ext_r",
            Selector::LocR => "loc_r",
            Selector::AllR => "all_r",
        })
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Selector> {
        Ok(match s.trim() {
            "ext" => Selector::Ext,
            "loc" => Selector::Loc,
            "all" => Selector::All,
            "ext_r" => Selector::ExtR,
            "loc_r" => Selector::LocR,
            "all_r" => Selector::AllR,
            other => return Err(Error::Invalid(format!("unknown selector `{other}`"))),
        })
    }
}

/// A selector schedule `σ`: the prefix once, then the cycle forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strategy {
    prefix: Vec<Selector>,
    cycle: Vec<Selector>,
}

impl Strategy {
    /// The cycle must contain a reduced selector, so reduction happens
    /// infinitely often.
    pub fn new(prefix: Vec<Selector>, cycle: Vec<Selector>) -> Result<Strategy> {
        if !cycle.iter().any(|s| s.is_reduced()) {
            return Err(Error::Invalid(
                "strategy cycle needs at least one reduced selector".into(),
            ));
        }
        Ok(Strategy { prefix, cycle })
    }

    /// Constant strategy `σ(i) = sel`.
    pub fn constant(sel: Selector) -> Result<Strategy> {
        Strategy::new(Vec::new(), vec![sel])
    }

    pub fn ext() -> Strategy {
        Strategy::constant(Selector::ExtR).expect("reduced")
    }

    pub fn loc() -> Strategy {
        Strategy::constant(Selector::LocR).expect("reduced")
    }

    pub fn all() -> Strategy {
        Strategy::constant(Selector::AllR).expect("reduced")
    }

    /// `σ(i)`.
    pub fn at(&self, i: usize) -> Selector {
        match self.prefix.get(i) {
            Some(s) => *s,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// Least `r >= 0` with `σ(i + r)` reduced.
    pub fn steps_to_reduction(&self, i: usize) -> usize {
        (0..)
            .find(|&r| self.at(i + r).is_reduced())
            .expect("cycle has a reduced selector")
    }

    pub fn only_reduced(&self) -> bool {
        self.prefix.iter().chain(&self.cycle).all(|s| s.is_reduced())
    }
}

fn join(sels: &[Selector]) -> String {
    sels.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn split_list(s: &str) -> Result<Vec<Selector>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", join(&self.prefix), join(&self.cycle))
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// `prefix|cycle`, each a comma list; a string without `|` is a cycle.
    fn from_str(s: &str) -> Result<Strategy> {
        let (prefix, cycle) = match s.split_once('|') {
            Some((p, c)) => (split_list(p)?, split_list(c)?),
            None => (Vec::new(), split_list(s)?),
        };
        Strategy::new(prefix, cycle)
    }
}

/// One strategy per order `1..=k`, each using reduced selectors only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KStrategy {
    stages: Vec<Strategy>,
}

impl KStrategy {
    pub fn new(stages: Vec<Strategy>) -> Result<KStrategy> {
        if stages.is_empty() {
            return Err(Error::Invalid("a k-strategy needs at least one stage".into()));
        }
        if let Some(bad) = stages.iter().find(|s| !s.only_reduced()) {
            return Err(Error::Invalid(format!(
                "k-strategy stage `{bad}` uses an unreduced selector"
            )));
        }
        Ok(KStrategy { stages })
    }

    /// The same strategy at every one of `k` stages.
    pub fn uniform(stage: Strategy, k: usize) -> Result<KStrategy> {
        KStrategy::new(vec![stage; k])
    }

    pub fn k(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[Strategy] {
        &self.stages
    }

    /// Parses `text` and, when it names a single stage, repeats it `k` times.
    pub fn parse_for(text: &str, k: usize) -> Result<KStrategy> {
        let parsed: KStrategy = text.parse()?;
        match parsed.k() {
            n if n == k => Ok(parsed),
            1 => KStrategy::uniform(parsed.stages[0].clone(), k),
            n => Err(Error::Invalid(format!("k-strategy has {n} stages but k = {k}"))),
        }
    }
}

impl fmt::Display for KStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.stages.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for KStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<KStrategy> {
        KStrategy::new(s.split(';').map(str::parse).collect::<Result<_>>()?)
    }
}

/// A proper separation system `S` with a set of profiles, each orienting `S`,
/// that `S` distinguishes pairwise.
#[derive(Clone, Debug)]
pub struct Task {
    separations: SeparationSet,
    profiles: Vec<Arc<Profile>>,
}

impl Task {
    pub fn separations(&self) -> &SeparationSet {
        &self.separations
    }

    pub fn profiles(&self) -> &[Arc<Profile>] {
        &self.profiles
    }

    /// Builds a task without checking the task axioms. Profiles are
    /// deduplicated and sorted.
    pub fn unchecked(separations: SeparationSet, profiles: Vec<Arc<Profile>>) -> Task {
        let mut profiles = profiles;
        profiles.sort();
        profiles.dedup();
        Task { separations, profiles }
    }

    /// The task axioms: `S` is a proper system, every profile orients it, and
    /// it distinguishes every two profiles.
    pub fn validate(&self) -> Result<()> {
        let s = &self.separations;
        if !s.is_symmetric() {
            return Err(Error::Precondition("task separations are not symmetric".into()));
        }
        if let Some(x) = s.iter().find(|x| !x.is_proper()) {
            return Err(Error::Precondition(format!("task contains improper {x}")));
        }
        for p in &self.profiles {
            for x in s.iter() {
                if p.contains(x) == p.contains(&x.inverse()) {
                    return Err(Error::Unoriented(*x));
                }
            }
        }
        for i in 0..self.profiles.len() {
            for j in i + 1..self.profiles.len() {
                let (p, q) = (self.profiles[i].separations(), self.profiles[j].separations());
                if !s.iter().any(|x| distinguishes(x, p, q)) {
                    return Err(Error::Undistinguished(i, j));
                }
            }
        }
        Ok(())
    }

    /// `P ∩ S`.
    pub fn oriented_part(&self, p: &Profile) -> SeparationSet {
        self.separations.filter(|s| p.contains(s))
    }
}

/// Builds and validates a task.
pub fn check_task(s: SeparationSet, profiles: Vec<Profile>) -> Result<Task> {
    let count = profiles.len();
    let task = Task::unchecked(s, profiles.into_iter().map(Arc::new).collect());
    if task.profiles.len() != count {
        return Err(Error::Precondition("duplicate profiles cannot be distinguished".into()));
    }
    task.validate()?;
    Ok(task)
}

/// Feasibility: whenever `(A, B), (C, D) ∈ S` cross and some profile
/// contains both while another contains both inverses, the first profile
/// also contains some `(E, F) ∈ S` with `(A ∪ C, B ∩ D) <= (E, F)`.
pub fn is_feasible(t: &Task) -> bool {
    let seps: Vec<Separation> = t.separations.iter().copied().collect();
    let member: Vec<Vec<bool>> = t
        .profiles
        .iter()
        .map(|p| seps.iter().map(|s| p.contains(s)).collect())
        .collect();
    let index: BTreeMap<Separation, usize> = seps.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    for i in 0..seps.len() {
        for j in 0..seps.len() {
            let (s, u) = (seps[i], seps[j]);
            if s.is_nested(&u) {
                continue;
            }
            let (si, ui) = (index[&s.inverse()], index[&u.inverse()]);
            let has_inverse_side = member.iter().any(|m| m[si] && m[ui]);
            if !has_inverse_side {
                continue;
            }
            let join = Separation::from_sides(s.a().union(u.a()), s.b().intersection(u.b()));
            for m in member.iter().filter(|m| m[i] && m[j]) {
                let dominated = (0..seps.len()).any(|e| m[e] && join.leq(&seps[e]));
                if !dominated {
                    return false;
                }
            }
        }
    }
    true
}

/// Members of `S` that distinguish some two profiles.
pub fn relevant(t: &Task) -> SeparationSet {
    t.separations.filter(|s| {
        let inv = s.inverse();
        let holds = |p: &Arc<Profile>, x: &Separation, y: &Separation| p.contains(x) && !p.contains(y);
        t.profiles.iter().any(|p| holds(p, s, &inv)) && t.profiles.iter().any(|q| holds(q, &inv, s))
    })
}

/// The reduction `(R, 𝒫)` with `R` the relevant separations of `S`.
pub fn reduce(t: &Task) -> Task {
    Task {
        separations: relevant(t),
        profiles: t.profiles.clone(),
    }
}

/// Extremal separations of `S` (every other member or its inverse lies
/// below), closed under inverses.
pub fn extremal_set(t: &Task) -> SeparationSet {
    let s = &t.separations;
    s.filter(|x| s.iter().all(|y| y.leq(x) || y.inverse().leq(x)))
        .symmetric_closure()
}

/// Whether the `<=`-maximal members of `P ∩ S` are pairwise nested.
pub fn is_well_separated(p: &Profile, s: &SeparationSet) -> bool {
    s.filter(|x| p.contains(x)).maximal().is_nested()
}

/// Every maximal member of `P ∩ S` is nested with all of `S`.
pub fn maxima_nested_with_all(p: &Profile, s: &SeparationSet) -> bool {
    let maxima = s.filter(|x| p.contains(x)).maximal();
    let ok = maxima.iter().all(|m| s.nested_with(m));
    ok
}

/// Every two crossing `(A, B), (C, D) ∈ P ∩ S` have some `(E, F) ∈ P ∩ S`
/// above `(A ∪ C, B ∩ D)`.
pub fn crossing_pairs_dominated(p: &Profile, s: &SeparationSet) -> bool {
    let ps = s.filter(|x| p.contains(x));
    let ok = ps.iter().all(|x| {
        ps.iter().all(|y| {
            if x.is_nested(y) {
                return true;
            }
            let join = Separation::from_sides(x.a().union(y.a()), x.b().intersection(y.b()));
            ps.iter().any(|e| join.leq(e))
        })
    });
    ok
}

/// Locally maximal separations: maximal in `P ∩ S` for a well-separated
/// `P ∈ 𝒫`; closed under inverses.
pub fn loc_set(t: &Task) -> SeparationSet {
    let mut out = SeparationSet::new();
    for p in &t.profiles {
        let maxima = t.oriented_part(p).maximal();
        if maxima.is_nested() {
            out.extend(maxima);
        }
    }
    let out = out.symmetric_closure();
    debug_assert!(
        t.separations.nested_with_set(&out),
        "locally maximal separations must be nested with all of S"
    );
    out
}

/// Members of `S` nested with every member of `S`.
pub fn all_set(t: &Task) -> SeparationSet {
    let s = &t.separations;
    s.filter(|x| s.nested_with(x))
}

/// Applies an unreduced selector, or a reduced one to the reduction.
pub fn apply_selector(sel: Selector, t: &Task) -> SeparationSet {
    let reduced;
    let task = if sel.is_reduced() {
        reduced = reduce(t);
        &reduced
    } else {
        t
    };
    match sel.unreduced() {
        Selector::Ext => extremal_set(task),
        Selector::Loc => loc_set(task),
        _ => all_set(task),
    }
}

/// All consistent orientations of a nested proper system `N`, explored from
/// the greedy orientation by flipping one maximal member at a time. Sorted.
pub fn consistent_orientations(n: &SeparationSet) -> Result<Vec<Orientation>> {
    if !n.is_symmetric() || !n.all_proper() {
        return Err(Error::Precondition("N must be a proper separation system".into()));
    }
    if !n.is_nested() {
        return Err(Error::Precondition("N is not nested".into()));
    }
    let start = greedy_consistent_orientation(n)?;
    let mut seen: BTreeSet<Orientation> = BTreeSet::new();
    let mut edges: BTreeSet<(Orientation, Orientation)> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(o) = queue.pop_front() {
        for m in o.choice().maximal().iter() {
            let next = o.flipped(m);
            if !is_consistent(next.choice()) {
                continue;
            }
            let key = if o < next {
                (o.clone(), next.clone())
            } else {
                (next.clone(), o.clone())
            };
            edges.insert(key);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let expected = n.len() / 2 + 1;
    if seen.len() != expected || edges.len() + 1 != seen.len() {
        return Err(Error::Invariant(format!(
            "flip graph of {} orientations and {} edges is not a tree on {expected} nodes",
            seen.len(),
            edges.len()
        )));
    }
    Ok(seen.into_iter().collect())
}

/// One part `(S_O, 𝒫_O)` of a subtask partition.
#[derive(Clone, Debug)]
pub struct Subtask {
    pub orientation: Orientation,
    pub task: Task,
}

/// The subtasks left by a nested system `N`: one per consistent orientation.
#[derive(Clone, Debug)]
pub struct SubtaskPartition {
    pub nested: SeparationSet,
    pub parts: Vec<Subtask>,
}

/// Partitions `S \ N` by the unique orientation of `N` each separation
/// splits, and `𝒫` by how each profile orients `N`.
pub fn partition_subtasks(t: &Task, n: &SeparationSet) -> Result<SubtaskPartition> {
    let orientations = consistent_orientations(n)?;
    if !t.separations.nested_with_set(n) {
        return Err(Error::Precondition("N is not nested with S".into()));
    }
    let slot: BTreeMap<&SeparationSet, usize> = orientations.iter().enumerate().map(|(i, o)| (o.choice(), i)).collect();
    let mut seps: Vec<SeparationSet> = vec![SeparationSet::new(); orientations.len()];
    for s in t.separations.difference(n) {
        let o = split_orientation_unchecked(&s, n)?;
        let i = slot
            .get(o.choice())
            .ok_or_else(|| Error::Invariant(format!("{s} splits an orientation missing from O_N")))?;
        seps[*i].insert(s);
    }
    let mut profiles: Vec<Vec<Arc<Profile>>> = vec![Vec::new(); orientations.len()];
    for p in &t.profiles {
        let choice = n.filter(|x| p.contains(x));
        if let Some(x) = n.iter().find(|x| p.contains(x) == p.contains(&x.inverse())) {
            return Err(Error::Precondition(format!("a profile does not orient N at {x}")));
        }
        let i = slot
            .get(&choice)
            .ok_or_else(|| Error::Invariant("profile induces an inconsistent orientation of N".into()))?;
        profiles[*i].push(p.clone());
    }
    let parts = orientations
        .into_iter()
        .zip(seps)
        .zip(profiles)
        .map(|((orientation, s), p)| Subtask {
            orientation,
            task: Task::unchecked(s, p),
        })
        .collect();
    Ok(SubtaskPartition {
        nested: n.clone(),
        parts,
    })
}

#[derive(Clone, Debug)]
pub struct StrategyOptions {
    /// Solve independent subtasks on the rayon pool.
    pub parallel: bool,
    /// Re-check task axioms and feasibility at every recursion entry.
    pub verify: bool,
}

impl Default for StrategyOptions {
    fn default() -> Self {
        StrategyOptions {
            parallel: false,
            verify: cfg!(debug_assertions),
        }
    }
}

/// `N_σ(S, 𝒫)`: a nested subset of `S` distinguishing `𝒫`.
pub fn run_strategy(sigma: &Strategy, t: &Task, opts: &StrategyOptions) -> Result<SeparationSet> {
    t.validate()?;
    if !is_feasible(t) {
        return Err(Error::Precondition("task is not feasible".into()));
    }
    let n = solve(sigma, 0, t, opts)?;
    check_solution(t, &n)?;
    Ok(n)
}

/// Postcondition: `N ⊆ S`, nested, distinguishing all profiles.
fn check_solution(t: &Task, n: &SeparationSet) -> Result<()> {
    if !n.is_subset(&t.separations) {
        return Err(Error::Invariant("strategy output is not a subset of S".into()));
    }
    if !n.is_nested() {
        return Err(Error::Invariant("strategy output is not nested".into()));
    }
    for (i, p) in t.profiles.iter().enumerate() {
        for (j, q) in t.profiles.iter().enumerate().skip(i + 1) {
            if !n.iter().any(|x| distinguishes(x, p.separations(), q.separations())) {
                return Err(Error::Invariant(format!(
                    "strategy output leaves profiles #{i} and #{j} undistinguished"
                )));
            }
        }
    }
    Ok(())
}

fn solve(sigma: &Strategy, pos: usize, t: &Task, opts: &StrategyOptions) -> Result<SeparationSet> {
    if t.separations.is_empty() {
        return Ok(SeparationSet::new());
    }
    if opts.verify {
        t.validate()
            .map_err(|e| Error::Invariant(format!("subtask is not a task: {e}")))?;
        if !is_feasible(t) {
            return Err(Error::Invariant("subtask is not feasible".into()));
        }
    }
    let sel = sigma.at(pos);
    if sel.is_reduced() {
        let r = reduce(t);
        if r.separations.len() < t.separations.len() {
            return solve(sigma, pos, &r, opts);
        }
    }
    let n = apply_selector(sel.unreduced(), t);
    if sel.is_reduced() && n.is_empty() {
        return Err(Error::Invariant(
            "reduced feasible task with S nonempty gave an empty selection".into(),
        ));
    }
    let partition = partition_subtasks(t, &n)?;
    let size = t.separations.len();
    if sel.is_reduced() && partition.parts.iter().any(|p| p.task.separations.len() >= size) {
        return Err(Error::Invariant("recursion measure |S| did not decrease".into()));
    }
    let results: Vec<SeparationSet> = if opts.parallel {
        partition
            .parts
            .par_iter()
            .map(|p| solve(sigma, pos + 1, &p.task, opts))
            .collect::<Result<_>>()?
    } else {
        partition
            .parts
            .iter()
            .map(|p| solve(sigma, pos + 1, &p.task, opts))
            .collect::<Result<_>>()?
    };
    let mut out = n;
    for r in results {
        out.extend(r);
    }
    Ok(out)
}

/// Least order of a separation distinguishing `p` and `q`.
pub fn kappa(p: &Profile, q: &Profile) -> Result<usize> {
    if p == q {
        return Err(Error::Precondition("kappa of a profile with itself".into()));
    }
    p.separations()
        .iter()
        .filter(|s| distinguishes(s, p.separations(), q.separations()))
        .map(Separation::order)
        .min()
        .ok_or_else(|| Error::Precondition("no separation distinguishes the profiles".into()))
}

/// `s` distinguishes some two profiles of `profiles` at order `kappa`.
pub fn is_essential(s: &Separation, profiles: &[Profile]) -> bool {
    profiles.iter().enumerate().any(|(i, p)| {
        profiles[i + 1..].iter().any(|q| {
            distinguishes(s, p.separations(), q.separations()) && kappa(p, q).map(|k| k == s.order()).unwrap_or(false)
        })
    })
}

/// `P_ℓ`: the members of order `< l`.
pub fn induce_profile(p: &Profile, l: usize) -> Profile {
    Profile::new(p.separations().below_order(l))
}

/// Result of a k-strategy run.
#[derive(Clone, Debug)]
pub struct KStrategyOutcome {
    /// `N_Σ`.
    pub separations: SeparationSet,
    /// The nested system after each stage `1..=k`.
    pub stages: Vec<SeparationSet>,
}

/// `N_Σ(G, 𝒫)` for a set of k-profiles, `k` the number of stages of `sigma`.
pub fn run_k_strategy(
    sigma: &KStrategy,
    g: &Graph,
    profiles: &[Profile],
    opts: &StrategyOptions,
    limits: &Limits,
) -> Result<KStrategyOutcome> {
    let k = sigma.k();
    limits.check_vertices(g.n())?;
    let all = enumerate_separations_limited(g, k, false, limits)?;
    for (i, p) in profiles.iter().enumerate() {
        let in_range = p.separations().is_subset(&all);
        if !in_range || !is_k_profile(p.separations(), k, g) {
            return Err(Error::Precondition(format!("profile #{i} is not a {k}-profile")));
        }
    }
    let proper = all.filter(|s| s.is_proper());
    let mut n = SeparationSet::new();
    let mut stages = Vec::with_capacity(k);
    for (stage, strategy) in sigma.stages().iter().enumerate() {
        let l = stage + 1;
        limits.check_time()?;
        let induced: Vec<Arc<Profile>> = profiles.iter().map(|p| Arc::new(induce_profile(p, l))).collect();
        let s = proper.filter(|x| x.order() == l - 1 && n.nested_with(x));
        let task = Task::unchecked(s, induced);
        let partition = partition_subtasks(&task, &n)?;
        let mut added = SeparationSet::new();
        for part in &partition.parts {
            part.task
                .validate()
                .map_err(|e| Error::Invariant(format!("stage {l} subtask is not a task: {e}")))?;
            if !is_feasible(&part.task) {
                return Err(Error::Invariant(format!("stage {l} subtask is not feasible")));
            }
            added.extend(solve(strategy, 0, &part.task, opts)?);
        }
        n.extend(added);
        stages.push(n.clone());
    }
    check_efficient(&n, profiles)?;
    Ok(KStrategyOutcome { separations: n, stages })
}

/// Nested, only essential members, every profile pair distinguished at
/// exactly its `kappa`.
fn check_efficient(n: &SeparationSet, profiles: &[Profile]) -> Result<()> {
    if !n.is_nested() {
        return Err(Error::Invariant("N_Σ is not nested".into()));
    }
    if let Some(s) = n.iter().find(|s| !is_essential(s, profiles)) {
        return Err(Error::Invariant(format!("{s} in N_Σ is not essential")));
    }
    for (i, p) in profiles.iter().enumerate() {
        for (j, q) in profiles.iter().enumerate().skip(i + 1) {
            let want = kappa(p, q)?;
            let ok = n
                .iter()
                .any(|s| s.order() == want && distinguishes(s, p.separations(), q.separations()));
            if !ok {
                return Err(Error::Invariant(format!(
                    "profiles #{i} and #{j} are not distinguished efficiently"
                )));
            }
        }
    }
    Ok(())
}
