//! Subsets of `[n]` as bitmasks, canonically ordered families, and the
//! order-theoretic plumbing built on `⊆` (covers, components, extremes).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::FamilyError;

/// The ground set `[n] = {1, …, n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    /// Hard cap: masks are single `u64` words.
    pub const MAX: u32 = 63;
    /// Soft cap for anything that enumerates all `2^n` subsets.
    pub const SEARCH_MAX: u32 = 24;

    pub fn new(n: u32) -> Result<Self, FamilyError> {
        if n == 0 || n > Self::MAX {
            return Err(FamilyError::GroundSetSize { n });
        }
        Ok(GroundSet { n })
    }

    /// Like [`GroundSet::new`] but additionally enforces the search cap.
    pub fn for_search(n: u32) -> Result<Self, FamilyError> {
        if n > Self::SEARCH_MAX {
            return Err(FamilyError::TooLargeForSearch { n });
        }
        Self::new(n)
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    #[inline]
    pub fn empty(self) -> SubsetMask {
        SubsetMask(0)
    }

    #[inline]
    pub fn full(self) -> SubsetMask {
        SubsetMask((1u64 << self.n) - 1)
    }

    #[inline]
    pub fn contains_mask(self, s: SubsetMask) -> bool {
        s.0 >> self.n == 0
    }

    pub fn subset_count(self) -> u64 {
        1u64 << self.n
    }

    /// Every subset of `[n]` in canonical order. Allocates `2^n` masks, so
    /// only meaningful under the search cap.
    pub fn all_subsets(self) -> Vec<SubsetMask> {
        debug_assert!(self.n <= Self::SEARCH_MAX);
        let mut out = Vec::with_capacity(1usize << self.n);
        out.push(SubsetMask(0));
        for size in 1..=self.n {
            // Gosper's hack walks the size-`size` masks in increasing value.
            let mut x: u64 = (1u64 << size) - 1;
            let limit = 1u64 << self.n;
            while x < limit {
                out.push(SubsetMask(x));
                let c = x & x.wrapping_neg();
                let r = x + c;
                x = (((r ^ x) >> 2) / c) | r;
            }
        }
        out
    }

    pub fn complement(self, s: SubsetMask) -> SubsetMask {
        SubsetMask(!s.0 & self.full().0)
    }
}

/// One subset of `[n]`; bit `i - 1` is set iff element `i` belongs to it.
///
/// `Ord` is the canonical order used everywhere: cardinality first, then
/// numeric value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// Builds a mask from 1-based element labels. Labels outside `1..=63` are
    /// rejected.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self, FamilyError> {
        let mut bits = 0u64;
        for e in elems {
            if e == 0 || e > GroundSet::MAX {
                return Err(FamilyError::ElementOutOfRange {
                    element: e,
                    n: GroundSet::MAX,
                });
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// `{1, …, i}`
    pub fn prefix(i: u32) -> Self {
        SubsetMask((1u64 << i) - 1)
    }

    /// `{i}`
    pub fn singleton(i: u32) -> Self {
        debug_assert!((1..=GroundSet::MAX).contains(&i));
        SubsetMask(1u64 << (i - 1))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, element: u32) -> Self {
        SubsetMask(self.0 | 1u64 << (element - 1))
    }

    #[inline]
    pub fn without(self, element: u32) -> Self {
        SubsetMask(self.0 & !(1u64 << (element - 1)))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & other.0 == self.0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: Self) -> bool {
        self.0 != other.0 && self.is_subset_of(other)
    }

    #[inline]
    pub fn comparable(self, other: Self) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }
}

/// Iterator over the 1-based elements of a mask.
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a ⊆ b`
#[inline]
pub fn subset_leq(a: SubsetMask, b: SubsetMask) -> bool {
    a.is_subset_of(b)
}

/// A set of subsets of `[n]`, stored strictly sorted in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn empty(ground: GroundSet) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    /// Strict constructor: rejects masks outside `[n]` and repeated sets.
    pub fn new<I>(ground: GroundSet, sets: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        let mut members: Vec<SubsetMask> = sets.into_iter().collect();
        for &s in &members {
            if !ground.contains_mask(s) {
                return Err(FamilyError::MaskOutOfRange { mask: s, n: ground.n() });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateSet(w[0]));
        }
        Ok(SetFamily { ground, members })
    }

    /// Lenient constructor: repeated sets collapse to one.
    pub fn from_sets<I>(ground: GroundSet, sets: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        let mut members: Vec<SubsetMask> = sets.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self::new(ground, members)
    }

    /// Caller guarantees `members` is strictly sorted and inside `[n]`.
    pub(crate) fn from_sorted_unchecked(ground: GroundSet, members: Vec<SubsetMask>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|&s| ground.contains_mask(s)));
        SetFamily { ground, members }
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.ground.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> core::iter::Copied<core::slice::Iter<'_, SubsetMask>> {
        self.members.iter().copied()
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn position(&self, s: SubsetMask) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    /// Inserts `s`, keeping canonical order. Returns `false` if it was already
    /// present.
    pub fn insert(&mut self, s: SubsetMask) -> Result<bool, FamilyError> {
        if !self.ground.contains_mask(s) {
            return Err(FamilyError::MaskOutOfRange { mask: s, n: self.n() });
        }
        match self.members.binary_search(&s) {
            Ok(_) => Ok(false),
            Err(at) => {
                self.members.insert(at, s);
                Ok(true)
            }
        }
    }

    pub fn remove(&mut self, s: SubsetMask) -> bool {
        match self.members.binary_search(&s) {
            Ok(at) => {
                self.members.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    /// `self ∪ {s}` as a new family.
    pub fn with(&self, s: SubsetMask) -> Result<SetFamily, FamilyError> {
        let mut out = self.clone();
        out.insert(s)?;
        Ok(out)
    }

    pub fn into_members(self) -> Vec<SubsetMask> {
        self.members
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} ", self.n())?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = SubsetMask;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, SubsetMask>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Cover pairs `(X, Y)`: `X ⊂ Y` with nothing from `f` strictly between.
/// Sorted by `(X, Y)` in canonical order.
pub fn hasse_edges(f: &SetFamily) -> Vec<(SubsetMask, SubsetMask)> {
    let m = f.members();
    let mut edges = Vec::new();
    for (i, &x) in m.iter().enumerate() {
        // Members are sorted by size, so anything strictly above x comes later.
        for j in i + 1..m.len() {
            let y = m[j];
            if !x.is_proper_subset_of(y) {
                continue;
            }
            let covered = m[i + 1..j]
                .iter()
                .all(|&z| !(x.is_proper_subset_of(z) && z.is_proper_subset_of(y)));
            if covered {
                edges.push((x, y));
            }
        }
    }
    edges
}

/// Connected components of the comparability graph on `F ∖ {∅, [n]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Ordered by their canonically smallest member.
    pub parts: Vec<SetFamily>,
    pub contains_empty: bool,
    pub contains_full: bool,
}

impl ComponentDecomposition {
    /// Index of the part holding `s`, if any.
    pub fn part_of(&self, s: SubsetMask) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(s))
    }
}

pub fn components(f: &SetFamily) -> ComponentDecomposition {
    let ground = f.ground();
    let (empty, full) = (ground.empty(), ground.full());
    let inner: Vec<SubsetMask> = f.iter().filter(|&s| s != empty && s != full).collect();

    let mut label = alloc::vec![usize::MAX; inner.len()];
    let mut parts = Vec::new();
    let mut stack = Vec::new();
    for start in 0..inner.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        label[start] = id;
        stack.push(start);
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(inner[v]);
            for w in 0..inner.len() {
                if label[w] == usize::MAX && inner[v].comparable(inner[w]) {
                    label[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        parts.push(SetFamily::from_sorted_unchecked(ground, members));
    }
    ComponentDecomposition {
        parts,
        contains_empty: f.contains(empty),
        contains_full: f.contains(full),
    }
}

/// `{[n] ∖ X : X ∈ f}`.
pub fn complement_family(f: &SetFamily) -> SetFamily {
    let ground = f.ground();
    let mut members: Vec<SubsetMask> = f.iter().map(|s| ground.complement(s)).collect();
    members.sort_unstable();
    SetFamily::from_sorted_unchecked(ground, members)
}

/// Minimal and maximal members of `part` (in canonical order). An isolated
/// member shows up in both lists.
pub fn extremes(part: &SetFamily) -> (Vec<SubsetMask>, Vec<SubsetMask>) {
    let m = part.members();
    let minimals = m
        .iter()
        .copied()
        .filter(|&x| !m.iter().any(|&y| y.is_proper_subset_of(x)))
        .collect();
    let maximals = m
        .iter()
        .copied()
        .filter(|&x| !m.iter().any(|&y| x.is_proper_subset_of(y)))
        .collect();
    (minimals, maximals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(elems.iter().copied()).unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(GroundSet::new(n).unwrap(), sets.iter().map(|e| s(e))).unwrap()
    }

    #[test]
    fn subset_leq_examples() {
        assert!(subset_leq(s(&[]), s(&[1, 2])));
        assert!(subset_leq(s(&[1, 3]), s(&[1, 2, 3])));
        assert!(!subset_leq(s(&[1, 3]), s(&[1, 2])));
    }

    #[test]
    fn subset_leq_is_a_partial_order() {
        for n in 1..=5u32 {
            let all = GroundSet::new(n).unwrap().all_subsets();
            for &a in &all {
                assert!(subset_leq(a, a));
                for &b in &all {
                    if subset_leq(a, b) && subset_leq(b, a) {
                        assert_eq!(a, b);
                    }
                    for &c in &all {
                        if subset_leq(a, b) && subset_leq(b, c) {
                            assert!(subset_leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_subsets_are_canonically_sorted() {
        let all = GroundSet::new(6).unwrap().all_subsets();
        assert_eq!(all.len(), 64);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ground_set_caps() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(63).is_ok());
        assert!(GroundSet::new(64).is_err());
        assert!(GroundSet::for_search(24).is_ok());
        assert!(GroundSet::for_search(25).is_err());
    }

    #[test]
    fn strict_constructor_rejects_duplicates_and_range() {
        let g = GroundSet::new(2).unwrap();
        assert_eq!(
            SetFamily::new(g, [s(&[1]), s(&[1])]),
            Err(FamilyError::DuplicateSet(s(&[1])))
        );
        assert!(matches!(
            SetFamily::new(g, [s(&[3])]),
            Err(FamilyError::MaskOutOfRange { .. })
        ));
        assert_eq!(SetFamily::from_sets(g, [s(&[1]), s(&[1])]).unwrap().len(), 1);
    }

    #[test]
    fn hasse_edges_examples() {
        let chain = fam(2, &[&[], &[1], &[1, 2]]);
        assert_eq!(hasse_edges(&chain), vec![(s(&[]), s(&[1])), (s(&[1]), s(&[1, 2]))]);
        assert!(hasse_edges(&fam(2, &[&[1], &[2]])).is_empty());
        let square = fam(2, &[&[], &[1], &[2], &[1, 2]]);
        assert_eq!(
            hasse_edges(&square),
            vec![
                (s(&[]), s(&[1])),
                (s(&[]), s(&[2])),
                (s(&[1]), s(&[1, 2])),
                (s(&[2]), s(&[1, 2])),
            ]
        );
    }

    #[test]
    fn components_examples() {
        let f = fam(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 2, 3]]);
        let d = components(&f);
        assert!(d.contains_empty && d.contains_full);
        assert_eq!(d.parts, vec![fam(3, &[&[1], &[2], &[1, 2]]), fam(3, &[&[3]])]);

        let d = components(&fam(3, &[&[], &[1, 2, 3]]));
        assert!(d.parts.is_empty());

        let d = components(&fam(2, &[&[1], &[2]]));
        assert!(!d.contains_empty && !d.contains_full);
        assert_eq!(d.parts, vec![fam(2, &[&[1]]), fam(2, &[&[2]])]);
    }

    #[test]
    fn complement_examples() {
        let f = fam(3, &[&[], &[1, 2, 3]]);
        assert_eq!(complement_family(&f), f);
        assert_eq!(complement_family(&fam(3, &[&[1], &[1, 2]])), fam(3, &[&[3], &[2, 3]]));
        // Elementwise complement of the n = 3 construction, sorted by hand:
        // ∅↔[3], {1}→{2,3}, {2}→{1,3}, {3}→{1,2}, {1,2}→{3}.
        let canon = fam(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 2, 3]]);
        assert_eq!(
            complement_family(&canon),
            fam(3, &[&[], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]])
        );
    }

    #[test]
    fn extremes_examples() {
        let (lo, hi) = extremes(&fam(3, &[&[1], &[2], &[1, 2]]));
        assert_eq!(lo, vec![s(&[1]), s(&[2])]);
        assert_eq!(hi, vec![s(&[1, 2])]);
        let (lo, hi) = extremes(&fam(3, &[&[3]]));
        assert_eq!((lo, hi), (vec![s(&[3])], vec![s(&[3])]));
        let (lo, hi) = extremes(&fam(3, &[&[1], &[1, 2], &[1, 3]]));
        assert_eq!(lo, vec![s(&[1])]);
        assert_eq!(hi, vec![s(&[1, 2]), s(&[1, 3])]);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(alloc::format!("{}", s(&[1, 3])), "{1,3}");
        assert_eq!(alloc::format!("{}", SubsetMask::EMPTY), "{}");
    }
}
