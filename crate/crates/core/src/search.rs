//! Exact saturation numbers by iterative deepening over the family size.
//!
//! For a target size `k`, a depth-first search walks the subsets of `[n]` in
//! canonical order and decides include/exclude for each. Inclusion is only
//! allowed while the family stays free of the pattern, so every leaf of size
//! `k` is a free family; leaves are then filtered by the saturation test.
//! Saturated families are exactly the maximal free ones, so the first `k`
//! with a surviving leaf is `sat*(n, P)`.
//!
//! Isomorph rejection: the canonical form of a family (lexicographically
//! least relabeling) has every prefix canonical as well, so prefixes of up
//! to [`ISOMORPH_DEPTH`] sets that are not canonical are cut without losing
//! any isomorphism class.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::detect::RelationTable;
use crate::error::FamilyError;
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::pattern::PosetPattern;
use crate::perm::for_each_permutation;

/// Prefix length up to which partial families are canonicalized.
pub const ISOMORPH_DEPTH: usize = 3;

/// Applies the relabeling `element j+1 ↦ perm[j]+1` to a mask.
fn relabel(s: SubsetMask, perm: &[usize]) -> SubsetMask {
    let mut out = 0u64;
    let mut bits = s.bits();
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1u64 << perm[j];
    }
    SubsetMask(out)
}

/// The lexicographically least image of `f` under relabelings of `[n]`,
/// comparing member lists in canonical order. Brute force over all `n!`
/// permutations.
pub fn canonical_form(f: &SetFamily) -> SetFamily {
    let mut best: Vec<SubsetMask> = f.members().to_vec();
    let mut image: Vec<SubsetMask> = Vec::with_capacity(f.len());
    for_each_permutation(f.n() as usize, |perm| {
        image.clear();
        image.extend(f.iter().map(|s| relabel(s, perm)));
        image.sort_unstable();
        if image < best {
            best.clone_from(&image);
        }
    });
    SetFamily::from_sorted_unchecked(f.ground(), best)
}

/// Applies a permutation of `0..n` (as 0-based element indices) to a family.
pub fn relabel_family(f: &SetFamily, perm: &[usize]) -> SetFamily {
    debug_assert_eq!(perm.len(), f.n() as usize);
    let mut members: Vec<SubsetMask> = f.iter().map(|s| relabel(s, perm)).collect();
    members.sort_unstable();
    SetFamily::from_sorted_unchecked(f.ground(), members)
}

fn is_canonical_prefix(ground: GroundSet, prefix: &[SubsetMask]) -> bool {
    let mut image: Vec<SubsetMask> = Vec::with_capacity(prefix.len());
    let mut canonical = true;
    for_each_permutation(ground.n() as usize, |perm| {
        if !canonical {
            return;
        }
        image.clear();
        image.extend(prefix.iter().map(|&s| relabel(s, perm)));
        image.sort_unstable();
        if image.as_slice() < prefix {
            canonical = false;
        }
    });
    canonical
}

/// Node counts of a search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes visited, summed over all target sizes.
    pub nodes: u64,
    /// Free families of the target size that reached the saturation test.
    pub leaves: u64,
    /// Prefixes cut by isomorph rejection.
    pub isomorph_cuts: u64,
    /// `(k, nodes)` for each target size tried.
    pub per_size: Vec<(usize, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: u32,
    pub pattern: PosetPattern,
    pub sat_star: usize,
    /// Minimum saturated families, one canonical form per isomorphism
    /// class, in canonical order.
    pub witnesses: Vec<SetFamily>,
    pub explored: SearchStats,
    /// No smaller saturated family exists (every smaller size was searched
    /// to completion).
    pub exhaustive: bool,
    /// The size-`sat_star` level itself was searched to completion, so
    /// `witnesses` lists every class.
    pub witnesses_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    Family(FamilyError),
    /// No saturated family up to `k_max`; with `proven` set, none exists.
    KMaxExceeded {
        k_max: usize,
        proven: bool,
        explored: SearchStats,
    },
    /// Budget ran out at `lower_bound` before any saturated family was
    /// found; every size below `lower_bound` was ruled out.
    BudgetExhausted {
        lower_bound: usize,
        explored: SearchStats,
    },
    /// Witness enumeration needs a completed search.
    NotExhaustive,
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Family(e) => e.fmt(f),
            SearchError::KMaxExceeded { k_max, proven, .. } => {
                if *proven {
                    write!(f, "no saturated family of size <= {k_max}")
                } else {
                    write!(f, "none found up to size {k_max} (search incomplete)")
                }
            }
            SearchError::BudgetExhausted { lower_bound, .. } => {
                write!(f, "node budget exhausted; saturation number is at least {lower_bound}")
            }
            SearchError::NotExhaustive => f.write_str("search did not complete"),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<FamilyError> for SearchError {
    fn from(e: FamilyError) -> Self {
        SearchError::Family(e)
    }
}

struct Level<'a> {
    ground: GroundSet,
    pattern: &'a PosetPattern,
    candidates: &'a [SubsetMask],
    forced: &'a [bool],
    /// `forced_after[i]` = forced candidates at positions `≥ i`.
    forced_after: &'a [usize],
    target: usize,
    budget: u64,
    table: RelationTable,
    nodes: u64,
    leaves: u64,
    cuts: u64,
    exhausted: bool,
    found: BTreeSet<Vec<SubsetMask>>,
}

impl Level<'_> {
    fn descend(&mut self, idx: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let size = self.table.len();
        let left = self.target - size;
        if self.forced_after[idx] > left {
            return;
        }
        if left == 0 {
            self.leaf();
            return;
        }
        if self.candidates.len() - idx < left {
            return;
        }
        let s = self.candidates[idx];
        self.table.push(s);
        let probe = self.table.len() - 1;
        if !self.table.any_embedding(self.pattern, Some(probe)) {
            if size < ISOMORPH_DEPTH && !is_canonical_prefix(self.ground, self.table.masks()) {
                self.cuts += 1;
            } else {
                self.descend(idx + 1);
            }
        }
        self.table.pop();
        if !self.forced[idx] {
            self.descend(idx + 1);
        }
    }

    fn leaf(&mut self) {
        self.leaves += 1;
        let members: Vec<SubsetMask> = self.table.masks().to_vec();
        let probe = members.len();
        for &s in self.candidates {
            if members.binary_search(&s).is_ok() {
                continue;
            }
            self.table.push(s);
            let blocked = self.table.any_embedding(self.pattern, Some(probe));
            self.table.pop();
            if !blocked {
                return;
            }
        }
        let family = SetFamily::from_sorted_unchecked(self.ground, members);
        self.found.insert(canonical_form(&family).into_members());
    }
}

/// Exact `sat*(n, P)`: the least `k ≤ k_max` admitting a `P`-saturated
/// family of size `k`. `budget` caps the search nodes per target size.
pub fn sat_star_exact(n: u32, p: &PosetPattern, k_max: usize, budget: u64) -> Result<SearchResult, SearchError> {
    let ground = GroundSet::for_search(n)?;
    let candidates = ground.all_subsets();
    // When no pattern element is comparable to all others, ∅ and [n] can
    // never join a copy, so every saturated family contains them.
    let universal = p.has_universal_element();
    let forced: Vec<bool> = candidates
        .iter()
        .map(|&s| !universal && (s == ground.empty() || s == ground.full()))
        .collect();
    let mut forced_after = alloc::vec![0usize; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        forced_after[i] = forced_after[i + 1] + forced[i] as usize;
    }

    let mut stats = SearchStats::default();
    let mut exhaustive = true;
    let mut first_gap = None;
    let top = k_max.min(candidates.len());
    for target in 1..=top {
        let mut level = Level {
            ground,
            pattern: p,
            candidates: &candidates,
            forced: &forced,
            forced_after: &forced_after,
            target,
            budget,
            table: RelationTable::with_capacity(target + 1),
            nodes: 0,
            leaves: 0,
            cuts: 0,
            exhausted: false,
            found: BTreeSet::new(),
        };
        level.descend(0);
        stats.nodes += level.nodes.min(budget);
        stats.leaves += level.leaves;
        stats.isomorph_cuts += level.cuts;
        stats.per_size.push((target, level.nodes.min(budget)));
        if !level.found.is_empty() {
            return Ok(SearchResult {
                n,
                pattern: *p,
                sat_star: target,
                witnesses: level
                    .found
                    .into_iter()
                    .map(|m| SetFamily::from_sorted_unchecked(ground, m))
                    .collect(),
                explored: stats,
                exhaustive,
                witnesses_complete: !level.exhausted,
            });
        }
        if level.exhausted {
            exhaustive = false;
            first_gap.get_or_insert(target);
        }
    }
    match first_gap {
        Some(lower_bound) => Err(SearchError::BudgetExhausted {
            lower_bound,
            explored: stats,
        }),
        None => Err(SearchError::KMaxExceeded {
            k_max,
            proven: true,
            explored: stats,
        }),
    }
}

/// Up to `limit` minimum saturated families (one per isomorphism class, in
/// canonical order; `0` means all). Requires the search to complete within
/// `budget` nodes per size.
pub fn enumerate_minimum_saturated(
    n: u32,
    p: &PosetPattern,
    limit: usize,
    budget: u64,
) -> Result<Vec<SetFamily>, SearchError> {
    let result = match sat_star_exact(n, p, usize::MAX, budget) {
        Ok(r) => r,
        Err(SearchError::BudgetExhausted { .. }) => return Err(SearchError::NotExhaustive),
        Err(e) => return Err(e),
    };
    if !result.exhaustive || !result.witnesses_complete {
        return Err(SearchError::NotExhaustive);
    }
    let mut out = result.witnesses;
    if limit > 0 {
        out.truncate(limit);
    }
    Ok(out)
}
