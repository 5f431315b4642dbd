//! Machine checks of the structural facts about N-saturated families.
//!
//! Every verifier returns a [`LemmaVerdict`] whose certificates (and
//! counterexample, if any) can be re-validated against the family with
//! [`recheck`], which only uses subset tests and a naive quadruple scan.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::detect::{copies_through, Embedding};
use crate::error::VerifyError;
use crate::family::{complement_family, components, extremes, SetFamily, SubsetMask};
use crate::pattern::PosetPattern;
use crate::saturation::check_saturated;

/// Role indices of [`PosetPattern::n_poset`]: `LOW_ONE < HIGH_BOTH`,
/// `LOW_BOTH < HIGH_BOTH`, `LOW_BOTH < HIGH_ONE`.
pub const LOW_ONE: usize = 0;
/// The minimal element below both maximals.
pub const LOW_BOTH: usize = 1;
/// The maximal element above both minimals.
pub const HIGH_BOTH: usize = 2;
pub const HIGH_ONE: usize = 3;

fn is_low(role: usize) -> bool {
    role == LOW_ONE || role == LOW_BOTH
}

fn is_high(role: usize) -> bool {
    role == HIGH_BOTH || role == HIGH_ONE
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// Minimal and maximal elements of a component are comparable.
    MaxMinComparability,
    /// Complete bipartite configurations have a member in between.
    Midpoint,
    /// Each component has a midpoint comparable to all of its members.
    Valve,
    /// The singleton-pair graph is a forest.
    PairGraphForest,
    /// Size lower bounds and the singleton-pair count bound.
    MainBounds,
    /// Witness shape, singleton budget and position of added sets.
    Extension,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::MaxMinComparability,
        LemmaId::Midpoint,
        LemmaId::Valve,
        LemmaId::PairGraphForest,
        LemmaId::MainBounds,
        LemmaId::Extension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::MaxMinComparability => "maxmin",
            LemmaId::Midpoint => "midpoint",
            LemmaId::Valve => "valve",
            LemmaId::PairGraphForest => "forest",
            LemmaId::MainBounds => "bounds",
            LemmaId::Extension => "extension",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name() == name)
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set comparable to every member of one component, lying between the
/// union of its minimals and the intersection of its maximals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ValveCertificate {
    pub component_index: usize,
    /// `⊆`-minimal candidate (canonically smallest).
    pub m_min: SubsetMask,
    /// `⊆`-maximal candidate (canonically smallest among the maximal ones).
    pub m_max: SubsetMask,
}

/// Which extension sub-check a witness belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionCheck {
    /// Added `A' ⊂ A` used as a maximal: some copy has its other maximal `⊆ A`.
    OtherMaximalBelow,
    /// Added `B' ⊃ B` used as a minimal: some copy has its other minimal `⊇ B`.
    OtherMinimalAbove,
    /// Added `M ∪ {i}` used as a maximal: some copy has it above both
    /// minimals with the valve `M` as a minimal.
    ValveStep,
    /// An intersection of members is only ever a minimal, and some copy has
    /// it below both maximals.
    IntersectionPosition,
    /// A union of members is only ever a maximal, and some copy has it above
    /// both minimals.
    UnionPosition,
}

impl ExtensionCheck {
    pub const ALL: [ExtensionCheck; 5] = [
        ExtensionCheck::OtherMaximalBelow,
        ExtensionCheck::OtherMinimalAbove,
        ExtensionCheck::ValveStep,
        ExtensionCheck::IntersectionPosition,
        ExtensionCheck::UnionPosition,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtensionCheck::OtherMaximalBelow => "other-maximal-below",
            ExtensionCheck::OtherMinimalAbove => "other-minimal-above",
            ExtensionCheck::ValveStep => "valve-step",
            ExtensionCheck::IntersectionPosition => "intersection-position",
            ExtensionCheck::UnionPosition => "union-position",
        }
    }
}

/// A structured, re-checkable claim about a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `minimal ⊆ maximal` inside one component.
    ComponentPair {
        component: usize,
        minimal: SubsetMask,
        maximal: SubsetMask,
    },
    /// Some member lies between `∪ bottoms` and `∩ tops`.
    Midpoint {
        bottoms: Vec<SubsetMask>,
        tops: Vec<SubsetMask>,
        midpoint: Option<SubsetMask>,
    },
    Valve(ValveCertificate),
    /// `valve` and `member` of the same component are comparable.
    ValveContact {
        component: usize,
        valve: SubsetMask,
        member: SubsetMask,
    },
    /// `lower` and `lower ∪ {element}` are both members.
    PairEdge {
        element: u32,
        lower: SubsetMask,
    },
    /// A closed walk `vertices[0], …, vertices[k] = vertices[0]` where step
    /// `j` adds or removes `elements[j]`.
    PairCycle {
        vertices: Vec<SubsetMask>,
        elements: Vec<u32>,
    },
    /// The pair graph on all members has `edges` edges and `trees` trees.
    Forest {
        vertices: usize,
        edges: usize,
        trees: usize,
    },
    /// The three size inequalities.
    Bounds {
        n: u32,
        size: usize,
        singleton_pairs: usize,
        complemented: bool,
    },
    /// An extension claim; `copy` is a copy in `F ∪ {added}` realizing it.
    Extension {
        check: ExtensionCheck,
        added: SubsetMask,
        anchor: Option<SubsetMask>,
        copy: Option<Embedding>,
    },
    /// At most `limit` elements `i ∉ valve` make `valve ∪ {i}` a maximal of
    /// a new copy.
    SingletonBudget {
        component: usize,
        valve: SubsetMask,
        maximal_any: Vec<u32>,
        maximal_only: Vec<u32>,
        limit: usize,
    },
}

/// Result of one structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaVerdict {
    pub lemma_id: LemmaId,
    pub holds: bool,
    pub counterexample: Option<Witness>,
    pub certificates: Vec<Witness>,
}

impl LemmaVerdict {
    fn new(lemma_id: LemmaId) -> Self {
        LemmaVerdict {
            lemma_id,
            holds: true,
            counterexample: None,
            certificates: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, w: Witness) {
        if ok {
            self.certificates.push(w);
        } else if self.holds {
            self.holds = false;
            self.counterexample = Some(w);
        }
    }
}

fn require_saturated(f: &SetFamily) -> Result<(), VerifyError> {
    if f.n() > crate::family::GroundSet::SEARCH_MAX || !check_saturated(f, &PosetPattern::n_poset()).saturated {
        return Err(VerifyError::NotSaturated);
    }
    Ok(())
}

fn union_all(sets: &[SubsetMask]) -> SubsetMask {
    sets.iter().fold(SubsetMask::EMPTY, |a, &b| a.union(b))
}

fn intersect_all(sets: &[SubsetMask], full: SubsetMask) -> SubsetMask {
    sets.iter().fold(full, |a, &b| a.intersection(b))
}

/// In every component, every minimal element is below every maximal one.
pub fn verify_maxmin_comparability(f: &SetFamily) -> Result<LemmaVerdict, VerifyError> {
    require_saturated(f)?;
    let mut v = LemmaVerdict::new(LemmaId::MaxMinComparability);
    for (c, part) in components(f).parts.iter().enumerate() {
        let (mins, maxs) = extremes(part);
        for &s in &mins {
            for &t in &maxs {
                let w = Witness::ComponentPair {
                    component: c,
                    minimal: s,
                    maximal: t,
                };
                v.record(s.is_subset_of(t), w);
            }
        }
    }
    Ok(v)
}

/// Distinct values of `op` over all collections of `1..=max` distinct
/// members, each with the first collection producing it.
fn combine_members(
    f: &SetFamily,
    max: usize,
    op: impl Fn(&[SubsetMask]) -> SubsetMask,
) -> BTreeMap<SubsetMask, Vec<SubsetMask>> {
    let m = f.members();
    let mut out = BTreeMap::new();
    let mut add = |sets: &[SubsetMask]| {
        out.entry(op(sets)).or_insert_with(|| sets.to_vec());
    };
    for &a in m {
        add(&[a]);
    }
    if max >= 2 {
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                add(&[m[a], m[b]]);
            }
        }
    }
    if max >= 3 {
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                for c in b + 1..m.len() {
                    add(&[m[a], m[b], m[c]]);
                }
            }
        }
    }
    out
}

/// For all `k ≤ max_k` members `A_j` and `l ≤ max_l` members `B_i` with
/// every `B_i ⊆ A_j`, some member `M` has `∪B_i ⊆ M ⊆ ∩A_j`.
///
/// The condition only depends on the pair `(∪B_i, ∩A_j)`, so each distinct
/// pair is checked once, with the first generating collections recorded.
pub fn verify_midpoint(f: &SetFamily, max_k: usize, max_l: usize) -> Result<LemmaVerdict, VerifyError> {
    if !(1..=3).contains(&max_k) || !(1..=3).contains(&max_l) {
        return Err(VerifyError::ConfigurationBounds { max_k, max_l });
    }
    require_saturated(f)?;
    let full = f.ground().full();
    let tops = combine_members(f, max_k, |s| intersect_all(s, full));
    let bottoms = combine_members(f, max_l, union_all);
    let mut v = LemmaVerdict::new(LemmaId::Midpoint);
    for (&low, bs) in &bottoms {
        for (&high, ts) in &tops {
            if !low.is_subset_of(high) {
                continue;
            }
            let midpoint = f.iter().find(|&m| low.is_subset_of(m) && m.is_subset_of(high));
            let w = Witness::Midpoint {
                bottoms: bs.clone(),
                tops: ts.clone(),
                midpoint,
            };
            v.record(midpoint.is_some(), w);
        }
    }
    Ok(v)
}

/// One valve per component. Fails with an error if a component has no
/// member between its extremes or a chosen valve misses a member.
pub fn find_valve(f: &SetFamily) -> Result<Vec<ValveCertificate>, VerifyError> {
    let v = verify_valve(f)?;
    if let Some(w) = v.counterexample {
        return Err(VerifyError::ValveFailure(w));
    }
    Ok(v.certificates
        .into_iter()
        .filter_map(|w| match w {
            Witness::Valve(c) => Some(c),
            _ => None,
        })
        .collect())
}

/// [`find_valve`] as a verdict: certificates are the valves and every
/// valve/member contact.
pub fn verify_valve(f: &SetFamily) -> Result<LemmaVerdict, VerifyError> {
    require_saturated(f)?;
    let mut v = LemmaVerdict::new(LemmaId::Valve);
    for (c, part) in components(f).parts.iter().enumerate() {
        let (mins, maxs) = extremes(part);
        let low = union_all(&mins);
        let high = intersect_all(&maxs, f.ground().full());
        let candidates: Vec<SubsetMask> = f
            .iter()
            .filter(|&m| low.is_subset_of(m) && m.is_subset_of(high))
            .collect();
        let Some(&m_min) = candidates.first() else {
            let w = Witness::Midpoint {
                bottoms: mins,
                tops: maxs,
                midpoint: None,
            };
            v.record(false, w);
            continue;
        };
        let m_max = candidates
            .iter()
            .copied()
            .find(|&x| !candidates.iter().any(|&y| x.is_proper_subset_of(y)))
            .unwrap_or(m_min);
        let mut ok = true;
        for valve in [m_min, m_max] {
            for member in part.iter() {
                let touching = valve.comparable(member);
                ok &= touching;
                v.record(
                    touching,
                    Witness::ValveContact {
                        component: c,
                        valve,
                        member,
                    },
                );
            }
        }
        if ok {
            v.certificates.push(Witness::Valve(ValveCertificate {
                component_index: c,
                m_min,
                m_max,
            }));
        }
    }
    Ok(v)
}

/// Returns `f` if some component valve has `|m_min| ≤ n/2`, otherwise the
/// complement family (flag `true`), which then has such a valve.
pub fn normalize_small_valve(f: &SetFamily) -> Result<(SetFamily, bool), VerifyError> {
    let valves = find_valve(f)?;
    let n = f.n();
    let small = |vs: &[ValveCertificate]| vs.iter().any(|c| 2 * c.m_min.len() <= n);
    if valves.is_empty() || small(&valves) {
        return Ok((f.clone(), false));
    }
    let flipped = complement_family(f);
    let flipped_valves = find_valve(&flipped)?;
    if !small(&flipped_valves) {
        return Err(VerifyError::NoSmallValve);
    }
    Ok((flipped, true))
}

/// Ground elements `i` with some member `S_i ∌ i` such that `S_i ∪ {i}` is
/// also a member, each with its canonically smallest `S_i`.
pub fn count_singleton_pairs(f: &SetFamily) -> (usize, Vec<(u32, SubsetMask)>) {
    let pairs: Vec<(u32, SubsetMask)> = (1..=f.n())
        .filter_map(|i| {
            f.iter()
                .find(|&s| !s.contains(i) && f.contains(s.with(i)))
                .map(|s| (i, s))
        })
        .collect();
    (pairs.len(), pairs)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Path between two vertices over the accepted edges, as vertex/element
/// sequences. Edges are `(a, b, element)` position triples.
fn forest_path(edges: &[(usize, usize, u32)], from: usize, to: usize, n: usize) -> (Vec<usize>, Vec<u32>) {
    let mut prev: Vec<Option<(usize, u32)>> = alloc::vec![None; n];
    let mut seen = alloc::vec![false; n];
    let mut queue = alloc::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(a, b, e) in edges {
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let (mut verts, mut elems) = (alloc::vec![to], Vec::new());
    let mut cur = to;
    while let Some((p, e)) = prev[cur] {
        verts.push(p);
        elems.push(e);
        cur = p;
    }
    verts.reverse();
    elems.reverse();
    (verts, elems)
}

/// The graph on the members with one edge `(S_i, S_i ∪ {i})` per counted
/// element is acyclic.
pub fn verify_pair_graph_forest(f: &SetFamily) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(LemmaId::PairGraphForest);
    let (_, pairs) = count_singleton_pairs(f);
    let mut uf = UnionFind::new(f.len());
    let mut accepted: Vec<(usize, usize, u32)> = Vec::new();
    for &(i, lower) in &pairs {
        let a = f.position(lower).expect("pair sets are members");
        let b = f.position(lower.with(i)).expect("pair sets are members");
        if uf.union(a, b) {
            accepted.push((a, b, i));
            v.certificates.push(Witness::PairEdge { element: i, lower });
        } else {
            // Close the cycle through the existing path from b back to a.
            let (path, mut elements) = forest_path(&accepted, b, a, f.len());
            let mut vertices: Vec<SubsetMask> = path.iter().map(|&x| f.members()[x]).collect();
            vertices.push(f.members()[b]);
            elements.push(i);
            v.record(false, Witness::PairCycle { vertices, elements });
        }
    }
    let trees = (0..f.len()).filter(|&x| uf.find(x) == x).count();
    v.certificates.push(Witness::Forest {
        vertices: f.len(),
        edges: accepted.len(),
        trees,
    });
    v
}

fn bounds_hold(n: u32, size: usize, pairs: usize) -> bool {
    let (n, size, pairs) = (n as i64, size as i64, pairs as i64);
    // |F| ≥ (n+6)/4, |F| ≥ 2√n, and pairs ≥ n/2 − |F| + 2, all in integers.
    4 * size >= n + 6 && size * size >= 4 * n && 2 * pairs >= n - 2 * size + 4
}

/// `|F| ≥ (n+6)/4`, `|F| ≥ 2√n` and, after valve normalization, at least
/// `n/2 − |F| + 2` singleton pairs. Exact integer arithmetic.
pub fn verify_main_bounds(f: &SetFamily) -> Result<LemmaVerdict, VerifyError> {
    let (normalized, complemented) = normalize_small_valve(f)?;
    let (pairs, _) = count_singleton_pairs(&normalized);
    let mut v = LemmaVerdict::new(LemmaId::MainBounds);
    let w = Witness::Bounds {
        n: f.n(),
        size: f.len(),
        singleton_pairs: pairs,
        complemented,
    };
    v.record(bounds_hold(f.n(), f.len(), pairs), w);
    Ok(v)
}

/// Three families of claims about how a missing set can enter a copy of N:
/// the shape of witnesses for sets below (above) a member, the number of
/// one-element steps up from a valve that act as maximals, and the position
/// of intersections (unions) of up to three members.
pub fn verify_extension_lemmas(f: &SetFamily) -> Result<LemmaVerdict, VerifyError> {
    let valves = find_valve(f)?;
    let n_poset = PosetPattern::n_poset();
    let mut v = LemmaVerdict::new(LemmaId::Extension);
    let mut cache: BTreeMap<SubsetMask, Vec<Embedding>> = BTreeMap::new();
    let mut through = |s: SubsetMask| -> Vec<Embedding> {
        cache
            .entry(s)
            .or_insert_with(|| copies_through(f, s, &n_poset).expect("s is not a member"))
            .clone()
    };

    // Witness shape for sets just below or above a member.
    for added in f.ground().all_subsets() {
        if f.contains(added) {
            continue;
        }
        let copies = through(added);
        let as_high: Vec<&Embedding> = copies
            .iter()
            .filter(|c| c.role_of(added).is_some_and(is_high))
            .collect();
        let as_low: Vec<&Embedding> = copies.iter().filter(|c| c.role_of(added).is_some_and(is_low)).collect();
        for anchor in f.iter() {
            if !as_high.is_empty() && added.is_proper_subset_of(anchor) {
                let copy = as_high.iter().find(|c| {
                    let other = if c.role_of(added) == Some(HIGH_BOTH) {
                        HIGH_ONE
                    } else {
                        HIGH_BOTH
                    };
                    c.image(other).is_subset_of(anchor)
                });
                let w = Witness::Extension {
                    check: ExtensionCheck::OtherMaximalBelow,
                    added,
                    anchor: Some(anchor),
                    copy: copy.map(|c| (*c).clone()),
                };
                v.record(copy.is_some(), w);
            }
            if !as_low.is_empty() && anchor.is_proper_subset_of(added) {
                let copy = as_low.iter().find(|c| {
                    let other = if c.role_of(added) == Some(LOW_BOTH) {
                        LOW_ONE
                    } else {
                        LOW_BOTH
                    };
                    anchor.is_subset_of(c.image(other))
                });
                let w = Witness::Extension {
                    check: ExtensionCheck::OtherMinimalAbove,
                    added,
                    anchor: Some(anchor),
                    copy: copy.map(|c| (*c).clone()),
                };
                v.record(copy.is_some(), w);
            }
        }
    }

    // One-element steps up from each valve.
    let limit = f.len().saturating_sub(2);
    for valve in &valves {
        let m = valve.m_min;
        let mut maximal_any = Vec::new();
        let mut maximal_only = Vec::new();
        for i in (1..=f.n()).filter(|&i| !m.contains(i)) {
            let step = m.with(i);
            if f.contains(step) {
                continue;
            }
            let copies = through(step);
            if copies.iter().any(|c| c.role_of(step).is_some_and(is_high)) {
                maximal_any.push(i);
                let copy = copies
                    .iter()
                    .find(|c| c.image(HIGH_BOTH) == step && (c.image(LOW_ONE) == m || c.image(LOW_BOTH) == m));
                let w = Witness::Extension {
                    check: ExtensionCheck::ValveStep,
                    added: step,
                    anchor: Some(m),
                    copy: copy.cloned(),
                };
                v.record(copy.is_some(), w);
            }
            if !copies.is_empty() && copies.iter().all(|c| c.role_of(step).is_some_and(is_high)) {
                maximal_only.push(i);
            }
        }
        let ok = maximal_any.len() <= limit;
        let w = Witness::SingletonBudget {
            component: valve.component_index,
            valve: m,
            maximal_any,
            maximal_only,
            limit,
        };
        v.record(ok, w);
    }

    // Positions of intersections and unions of up to three members.
    let full = f.ground().full();
    let positions = [
        (
            ExtensionCheck::IntersectionPosition,
            combine_members(f, 3, |s| intersect_all(s, full)),
        ),
        (ExtensionCheck::UnionPosition, combine_members(f, 3, union_all)),
    ];
    for (check, values) in positions {
        let (allowed, preferred): (fn(usize) -> bool, usize) = match check {
            ExtensionCheck::IntersectionPosition => (is_low, LOW_BOTH),
            _ => (is_high, HIGH_BOTH),
        };
        for (&added, _) in values.iter().filter(|(s, _)| !f.contains(**s)) {
            let copies = through(added);
            if let Some(bad) = copies.iter().find(|c| !c.role_of(added).is_some_and(allowed)) {
                let w = Witness::Extension {
                    check,
                    added,
                    anchor: None,
                    copy: Some(bad.clone()),
                };
                v.record(false, w);
                continue;
            }
            let copy = copies.iter().find(|c| c.role_of(added) == Some(preferred)).cloned();
            let ok = copy.is_some();
            v.record(
                ok,
                Witness::Extension {
                    check,
                    added,
                    anchor: None,
                    copy,
                },
            );
        }
    }
    Ok(v)
}

/// Runs the selected verifiers in a fixed order.
pub fn run_suite(f: &SetFamily, lemmas: &[LemmaId]) -> Result<Vec<LemmaVerdict>, VerifyError> {
    require_saturated(f)?;
    let mut out = Vec::with_capacity(lemmas.len());
    for &id in LemmaId::ALL.iter().filter(|id| lemmas.contains(id)) {
        out.push(match id {
            LemmaId::MaxMinComparability => verify_maxmin_comparability(f)?,
            LemmaId::Midpoint => verify_midpoint(f, 3, 3)?,
            LemmaId::Valve => verify_valve(f)?,
            LemmaId::PairGraphForest => verify_pair_graph_forest(f),
            LemmaId::MainBounds => verify_main_bounds(f)?,
            LemmaId::Extension => verify_extension_lemmas(f)?,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Independent re-validation.

/// Copies of N in `f ∪ {s}` using `s`, by scanning ordered quadruples.
fn naive_copies_through(f: &SetFamily, s: SubsetMask) -> Vec<[SubsetMask; 4]> {
    let n_poset = PosetPattern::n_poset();
    let mut pool: Vec<SubsetMask> = f.iter().collect();
    if !f.contains(s) {
        pool.push(s);
    }
    let mut out = Vec::new();
    for &a in &pool {
        for &b in &pool {
            for &c in &pool {
                for &d in &pool {
                    let q = [a, b, c, d];
                    if !q.contains(&s) {
                        continue;
                    }
                    let ok = (0..4).all(|i| {
                        (0..4).all(|j| i == j || (q[i] != q[j] && n_poset.less(i, j) == q[i].is_proper_subset_of(q[j])))
                    });
                    if ok {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

fn copy_is_valid(f: &SetFamily, added: SubsetMask, c: &Embedding) -> bool {
    c.is_induced_copy_of(&PosetPattern::n_poset())
        && c.contains(added)
        && !f.contains(added)
        && c.map().iter().all(|&x| x == added || f.contains(x))
}

fn role(q: &[SubsetMask], s: SubsetMask) -> usize {
    q.iter().position(|&x| x == s).unwrap_or(usize::MAX)
}

impl Witness {
    /// Whether the claim this witness describes is true in `f`, or `None`
    /// if the witness does not even refer to `f` correctly.
    pub fn instance_holds(&self, f: &SetFamily) -> Option<bool> {
        let all_in = |xs: &[SubsetMask]| xs.iter().all(|&x| f.contains(x));
        match self {
            Witness::ComponentPair {
                component,
                minimal,
                maximal,
            } => {
                let d = components(f);
                let part = d.parts.get(*component)?;
                let (mins, maxs) = extremes(part);
                (mins.contains(minimal) && maxs.contains(maximal)).then(|| minimal.is_subset_of(*maximal))
            }
            Witness::Midpoint {
                bottoms,
                tops,
                midpoint,
            } => {
                if !all_in(bottoms) || !all_in(tops) {
                    return None;
                }
                let low = union_all(bottoms);
                let high = intersect_all(tops, f.ground().full());
                if !low.is_subset_of(high) {
                    return None;
                }
                let between = |m: SubsetMask| f.contains(m) && low.is_subset_of(m) && m.is_subset_of(high);
                Some(match midpoint {
                    Some(m) => between(*m),
                    None => f.iter().any(between),
                })
            }
            Witness::Valve(c) => {
                let d = components(f);
                let part = d.parts.get(c.component_index)?;
                let (mins, maxs) = extremes(part);
                let low = union_all(&mins);
                let high = intersect_all(&maxs, f.ground().full());
                let placed = |m: SubsetMask| f.contains(m) && low.is_subset_of(m) && m.is_subset_of(high);
                let touches = |m: SubsetMask| part.iter().all(|x| x.comparable(m));
                Some(
                    placed(c.m_min)
                        && placed(c.m_max)
                        && c.m_min.is_subset_of(c.m_max)
                        && touches(c.m_min)
                        && touches(c.m_max),
                )
            }
            Witness::ValveContact {
                component,
                valve,
                member,
            } => {
                let d = components(f);
                let part = d.parts.get(*component)?;
                (f.contains(*valve) && part.contains(*member)).then(|| valve.comparable(*member))
            }
            Witness::PairEdge { element, lower } => {
                Some(!lower.contains(*element) && f.contains(*lower) && f.contains(lower.with(*element)))
            }
            Witness::PairCycle { vertices, elements } => {
                if vertices.len() != elements.len() + 1 || !all_in(vertices) {
                    return None;
                }
                let steps_ok = vertices
                    .windows(2)
                    .zip(elements)
                    .all(|(w, &e)| (w[0].bits() ^ w[1].bits()) == 1u64 << (e - 1));
                let mut distinct = elements.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let closed = vertices.first() == vertices.last() && elements.len() >= 2;
                // A genuine cycle means the acyclicity claim fails.
                (steps_ok && closed && distinct.len() == elements.len()).then_some(false)
            }
            Witness::Forest { vertices, edges, trees } => {
                let pairs = (1..=f.n())
                    .filter(|&i| f.iter().any(|s| !s.contains(i) && f.contains(s.with(i))))
                    .count();
                Some(*vertices == f.len() && *edges == pairs && edges + trees == *vertices)
            }
            Witness::Bounds {
                n,
                size,
                singleton_pairs,
                ..
            } => {
                let pairs = (1..=f.n())
                    .filter(|&i| f.iter().any(|s| !s.contains(i) && f.contains(s.with(i))))
                    .count();
                (*n == f.n() && *size == f.len() && *singleton_pairs == pairs).then(|| bounds_hold(*n, *size, pairs))
            }
            Witness::Extension {
                check,
                added,
                anchor,
                copy,
            } => {
                if f.contains(*added) {
                    return None;
                }
                let naive = naive_copies_through(f, *added);
                let s = *added;
                let shape = |q: &[SubsetMask]| -> bool {
                    let r = role(q, s);
                    match (check, anchor) {
                        (ExtensionCheck::OtherMaximalBelow, Some(a)) => {
                            is_high(r) && q[if r == HIGH_BOTH { HIGH_ONE } else { HIGH_BOTH }].is_subset_of(*a)
                        }
                        (ExtensionCheck::OtherMinimalAbove, Some(b)) => {
                            is_low(r) && b.is_subset_of(q[if r == LOW_BOTH { LOW_ONE } else { LOW_BOTH }])
                        }
                        (ExtensionCheck::ValveStep, Some(m)) => {
                            r == HIGH_BOTH && (q[LOW_ONE] == *m || q[LOW_BOTH] == *m)
                        }
                        (ExtensionCheck::IntersectionPosition, None) => r == LOW_BOTH,
                        (ExtensionCheck::UnionPosition, None) => r == HIGH_BOTH,
                        _ => false,
                    }
                };
                let position_ok = match check {
                    ExtensionCheck::IntersectionPosition => naive.iter().all(|q| is_low(role(q, s))),
                    ExtensionCheck::UnionPosition => naive.iter().all(|q| is_high(role(q, s))),
                    _ => true,
                };
                match copy {
                    Some(c) if !copy_is_valid(f, s, c) => None,
                    Some(c) => Some(position_ok && shape(c.map())),
                    None => Some(position_ok && naive.iter().any(|q| shape(q))),
                }
            }
            Witness::SingletonBudget {
                valve,
                maximal_any,
                limit,
                ..
            } => {
                if !f.contains(*valve) || *limit != f.len().saturating_sub(2) {
                    return None;
                }
                let recount: Vec<u32> = (1..=f.n())
                    .filter(|&i| !valve.contains(i) && !f.contains(valve.with(i)))
                    .filter(|&i| {
                        let step = valve.with(i);
                        naive_copies_through(f, step).iter().any(|q| is_high(role(q, step)))
                    })
                    .collect();
                (recount == *maximal_any).then_some(recount.len() <= *limit)
            }
        }
    }
}

/// Re-validates a verdict against `f`: every certificate must describe a
/// true claim, and the counterexample (if any) a false one.
pub fn recheck(f: &SetFamily, verdict: &LemmaVerdict) -> bool {
    let certs_ok = verdict.certificates.iter().all(|w| w.instance_holds(f) == Some(true));
    let counter_ok = match &verdict.counterexample {
        Some(w) => !verdict.holds && w.instance_holds(f) == Some(false),
        None => verdict.holds,
    };
    certs_ok && counter_ok
}
