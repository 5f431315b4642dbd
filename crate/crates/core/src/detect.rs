//! Induced-copy detection by backtracking over bitset relation rows.
//!
//! Pattern elements are assigned in index order; the candidates for the next
//! element are the intersection of one precomputed row per already-assigned
//! element (strict up-set, strict down-set, or incomparable set). Scanning the
//! surviving bits in increasing order yields embeddings in lexicographic
//! order of their images, so truncation at a limit never needs a sort.

use alloc::vec::Vec;

use crate::error::DetectError;
use crate::family::{SetFamily, SubsetMask};
use crate::pattern::{PosetPattern, MAX_PATTERN_SIZE};

/// An induced copy: `map[i]` is the set playing pattern element `i`.
///
/// `Ord` is lexicographic on `map` under the canonical set order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    map: Vec<SubsetMask>,
}

impl Embedding {
    pub fn new(map: Vec<SubsetMask>) -> Self {
        Embedding { map }
    }

    pub fn map(&self) -> &[SubsetMask] {
        &self.map
    }

    pub fn image(&self, element: usize) -> SubsetMask {
        self.map[element]
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.map.contains(&s)
    }

    /// Pattern element played by `s`, if any.
    pub fn role_of(&self, s: SubsetMask) -> Option<usize> {
        self.map.iter().position(|&x| x == s)
    }

    /// Injective and `less(i, j) ⇔ map[i] ⊂ map[j]` for all `i, j`.
    pub fn is_induced_copy_of(&self, p: &PosetPattern) -> bool {
        let k = p.size();
        if self.map.len() != k {
            return false;
        }
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                if self.map[i] == self.map[j] {
                    return false;
                }
                if p.less(i, j) != self.map[i].is_proper_subset_of(self.map[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn into_map(self) -> Vec<SubsetMask> {
        self.map
    }
}

/// Strict up/down rows for a list of sets, as bitsets over list positions.
#[derive(Clone, Debug)]
pub(crate) struct RelationTable {
    masks: Vec<SubsetMask>,
    words: usize,
    up: Vec<u64>,
    down: Vec<u64>,
}

impl RelationTable {
    pub(crate) fn with_capacity(capacity: usize) -> Self {
        let words = capacity.div_ceil(64).max(1);
        RelationTable {
            masks: Vec::with_capacity(capacity),
            words,
            up: Vec::with_capacity(capacity * words),
            down: Vec::with_capacity(capacity * words),
        }
    }

    pub(crate) fn from_masks(masks: &[SubsetMask], spare: usize) -> Self {
        let mut t = Self::with_capacity(masks.len() + spare);
        for &m in masks {
            t.push(m);
        }
        t
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.masks.len()
    }

    #[inline]
    pub(crate) fn masks(&self) -> &[SubsetMask] {
        &self.masks
    }

    /// Appends a member; the caller keeps the capacity promise. Position order
    /// is append order, not necessarily canonical.
    pub(crate) fn push(&mut self, s: SubsetMask) {
        let idx = self.masks.len();
        if idx >= self.words * 64 {
            self.grow();
        }
        let w = self.words;
        self.up.resize((idx + 1) * w, 0);
        self.down.resize((idx + 1) * w, 0);
        let (word, bit) = (idx / 64, 1u64 << (idx % 64));
        for (j, &t) in self.masks.iter().enumerate() {
            if s.is_proper_subset_of(t) {
                self.up[idx * w + j / 64] |= 1 << (j % 64);
                self.down[j * w + word] |= bit;
            } else if t.is_proper_subset_of(s) {
                self.down[idx * w + j / 64] |= 1 << (j % 64);
                self.up[j * w + word] |= bit;
            }
        }
        self.masks.push(s);
    }

    /// Removes the most recently pushed member.
    pub(crate) fn pop(&mut self) -> Option<SubsetMask> {
        let s = self.masks.pop()?;
        let idx = self.masks.len();
        let w = self.words;
        let (word, bit) = (idx / 64, !(1u64 << (idx % 64)));
        for j in 0..idx {
            self.up[j * w + word] &= bit;
            self.down[j * w + word] &= bit;
        }
        self.up.truncate(idx * w);
        self.down.truncate(idx * w);
        Some(s)
    }

    fn grow(&mut self) {
        let masks = core::mem::take(&mut self.masks);
        *self = Self::with_capacity((masks.len() + 1) * 2);
        for m in masks {
            self.push(m);
        }
    }

    #[inline]
    fn up_row(&self, x: usize) -> &[u64] {
        &self.up[x * self.words..(x + 1) * self.words]
    }

    #[inline]
    fn down_row(&self, x: usize) -> &[u64] {
        &self.down[x * self.words..(x + 1) * self.words]
    }

    /// Backtracking enumeration of embeddings as position tuples. `forced`
    /// restricts to embeddings using that position. `visit` returns `false`
    /// to stop; the return value reports whether the search was stopped.
    pub(crate) fn for_each_embedding<F>(&self, p: &PosetPattern, forced: Option<usize>, mut visit: F) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        let k = p.size();
        let m = self.len();
        if k > m {
            return false;
        }
        let mut full = alloc::vec![0u64; self.words];
        for (i, w) in full.iter_mut().enumerate() {
            let lo = i * 64;
            if m >= lo + 64 {
                *w = u64::MAX;
            } else if m > lo {
                *w = (1u64 << (m - lo)) - 1;
            }
        }
        let mut state = Search {
            table: self,
            pattern: p,
            forced,
            full,
            cands: alloc::vec![0u64; k * self.words],
            assign: [usize::MAX; MAX_PATTERN_SIZE],
        };
        state.descend(0, &mut visit)
    }

    pub(crate) fn any_embedding(&self, p: &PosetPattern, forced: Option<usize>) -> bool {
        self.for_each_embedding(p, forced, |_| false)
    }

    pub(crate) fn collect(&self, p: &PosetPattern, forced: Option<usize>, limit: usize) -> Vec<Embedding> {
        let mut out = Vec::new();
        self.for_each_embedding(p, forced, |pos| {
            out.push(Embedding::new(pos.iter().map(|&i| self.masks[i]).collect()));
            limit == 0 || out.len() < limit
        });
        out
    }
}

struct Search<'a> {
    table: &'a RelationTable,
    pattern: &'a PosetPattern,
    forced: Option<usize>,
    full: Vec<u64>,
    cands: Vec<u64>,
    assign: [usize; MAX_PATTERN_SIZE],
}

impl Search<'_> {
    /// Returns `true` if the visitor asked to stop.
    fn descend<F: FnMut(&[usize]) -> bool>(&mut self, depth: usize, visit: &mut F) -> bool {
        let k = self.pattern.size();
        if depth == k {
            return !visit(&self.assign[..k]);
        }
        let w = self.table.words;
        let base = depth * w;
        self.cands[base..base + w].copy_from_slice(&self.full);
        let forced_used = match self.forced {
            Some(f) => self.assign[..depth].contains(&f),
            None => true,
        };
        for j in 0..depth {
            let x = self.assign[j];
            let cand = &mut self.cands[base..base + w];
            if self.pattern.less(j, depth) {
                for (c, r) in cand.iter_mut().zip(self.table.up_row(x)) {
                    *c &= r;
                }
            } else if self.pattern.less(depth, j) {
                for (c, r) in cand.iter_mut().zip(self.table.down_row(x)) {
                    *c &= r;
                }
            } else {
                let (up, down) = (self.table.up_row(x), self.table.down_row(x));
                for (i, c) in cand.iter_mut().enumerate() {
                    *c &= !(up[i] | down[i]);
                }
            }
            cand[x / 64] &= !(1u64 << (x % 64));
        }
        if !forced_used && depth + 1 == k {
            let f = self.forced.unwrap_or_default();
            let keep = self.cands[base + f / 64] & 1u64 << (f % 64);
            self.cands[base..base + w].fill(0);
            self.cands[base + f / 64] = keep;
        }
        for word in 0..w {
            loop {
                let bits = self.cands[base + word];
                if bits == 0 {
                    break;
                }
                let b = bits.trailing_zeros() as usize;
                self.cands[base + word] &= bits - 1;
                self.assign[depth] = word * 64 + b;
                if self.descend(depth + 1, visit) {
                    return true;
                }
            }
        }
        self.assign[depth] = usize::MAX;
        false
    }
}

/// Induced embeddings of `p` into `f`, lexicographic by image, truncated at
/// `limit` (`0` means all).
pub fn induced_embeddings(f: &SetFamily, p: &PosetPattern, limit: usize) -> Vec<Embedding> {
    RelationTable::from_masks(f.members(), 0).collect(p, None, limit)
}

/// The lexicographically first induced embedding, if any.
pub fn contains_induced(f: &SetFamily, p: &PosetPattern) -> Option<Embedding> {
    induced_embeddings(f, p, 1).pop()
}

/// Embeddings of `p` into `f ∪ {s}` whose image contains `s`, i.e. exactly
/// the copies created by adding `s`.
pub fn copies_through(f: &SetFamily, s: SubsetMask, p: &PosetPattern) -> Result<Vec<Embedding>, DetectError> {
    if f.contains(s) {
        return Err(DetectError::AlreadyMember(s));
    }
    let extended = f.with(s)?;
    let pos = extended.position(s).unwrap_or_default();
    Ok(RelationTable::from_masks(extended.members(), 0).collect(p, Some(pos), 0))
}

/// Whether adding `s` (not in `f`) creates a copy of `p`.
pub fn creates_copy(f: &SetFamily, s: SubsetMask, p: &PosetPattern) -> bool {
    let mut t = RelationTable::from_masks(f.members(), 1);
    t.push(s);
    t.any_embedding(p, Some(t.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GroundSet;
    use crate::pattern::StandardPattern;
    use alloc::vec;

    fn s(elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(elems.iter().copied()).unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(GroundSet::new(n).unwrap(), sets.iter().map(|e| s(e))).unwrap()
    }

    fn canonical3() -> SetFamily {
        fam(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 2, 3]])
    }

    fn pat(p: StandardPattern) -> PosetPattern {
        PosetPattern::standard(p).unwrap()
    }

    #[test]
    fn canonical_family_is_n_free() {
        assert!(induced_embeddings(&canonical3(), &pat(StandardPattern::N), 0).is_empty());
        assert!(contains_induced(&canonical3(), &pat(StandardPattern::N)).is_none());
    }

    #[test]
    fn single_n_copy() {
        // m2 = {1} is below both {1,2} and {1,3}; {1,3} also covers m1 = {3}.
        let f = fam(3, &[&[1], &[3], &[1, 2], &[1, 3]]);
        let all = induced_embeddings(&f, &pat(StandardPattern::N), 0);
        assert_eq!(
            all,
            vec![Embedding::new(vec![s(&[3]), s(&[1]), s(&[1, 3]), s(&[1, 2])])]
        );
        assert_eq!(contains_induced(&f, &pat(StandardPattern::N)), Some(all[0].clone()));
    }

    #[test]
    fn chain_has_no_butterfly() {
        let chain = fam(4, &[&[], &[1], &[1, 2], &[1, 2, 3], &[1, 2, 3, 4]]);
        assert!(induced_embeddings(&chain, &pat(StandardPattern::Butterfly), 0).is_empty());
    }

    #[test]
    fn empty_family_contains_nothing() {
        let empty = SetFamily::empty(GroundSet::new(3).unwrap());
        assert!(contains_induced(&empty, &pat(StandardPattern::Chain(1))).is_none());
    }

    #[test]
    fn copies_through_examples() {
        let n = pat(StandardPattern::N);
        let through = copies_through(&canonical3(), s(&[2, 3]), &n).unwrap();
        assert!(!through.is_empty());
        // {2} below both {1,2} and {2,3}; {1} below {1,2} only.
        let witness = Embedding::new(vec![s(&[1]), s(&[2]), s(&[1, 2]), s(&[2, 3])]);
        assert!(through.contains(&witness));
        assert!(through
            .iter()
            .all(|e| e.contains(s(&[2, 3])) && e.is_induced_copy_of(&n)));
        assert!(!copies_through(&canonical3(), s(&[1, 3]), &n).unwrap().is_empty());

        let chain = fam(2, &[&[], &[1], &[1, 2]]);
        assert!(copies_through(&chain, s(&[2]), &pat(StandardPattern::Butterfly))
            .unwrap()
            .is_empty());
        assert_eq!(
            copies_through(&canonical3(), s(&[1]), &n),
            Err(DetectError::AlreadyMember(s(&[1])))
        );
    }

    #[test]
    fn limit_truncates_in_order() {
        let f = GroundSet::new(3).unwrap().all_subsets();
        let f = SetFamily::new(GroundSet::new(3).unwrap(), f).unwrap();
        let p = pat(StandardPattern::Chain(2));
        let all = induced_embeddings(&f, &p, 0);
        // ordered pairs X ⊂ Y among subsets of [3]: 3^3 - 2^3
        assert_eq!(all.len(), 19);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(induced_embeddings(&f, &p, 5), all[..5].to_vec());
    }

    #[test]
    fn table_push_pop_round_trip() {
        let masks = [s(&[]), s(&[1]), s(&[2]), s(&[1, 2])];
        let mut t = RelationTable::from_masks(&masks[..3], 1);
        let before = (t.up.clone(), t.down.clone());
        t.push(masks[3]);
        let full = RelationTable::from_masks(&masks, 0);
        assert_eq!((t.up.clone(), t.down.clone()), (full.up.clone(), full.down.clone()));
        t.pop();
        assert_eq!((t.up.clone(), t.down.clone()), before);
    }

    #[test]
    fn wide_families_cross_word_boundaries() {
        // All 128 subsets of [7]: more than one bitset word per row.
        let g = GroundSet::new(7).unwrap();
        let f = SetFamily::new(g, g.all_subsets()).unwrap();
        let chains = induced_embeddings(&f, &pat(StandardPattern::Chain(2)), 0);
        // ordered pairs X ⊂ Y: 3^7 - 2^7
        assert_eq!(chains.len(), 3usize.pow(7) - 128);
        assert!(creates_copy(
            &SetFamily::new(g, [s(&[1]), s(&[2])]).unwrap(),
            s(&[1, 2]),
            &pat(StandardPattern::Chevron)
        ));
    }
}
