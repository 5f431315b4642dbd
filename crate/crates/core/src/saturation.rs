//! Pattern-freeness, saturation verdicts, greedy completion, and the `2n`
//! construction for N.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detect::{contains_induced, Embedding, RelationTable};
use crate::error::SaturationError;
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::pattern::PosetPattern;

/// Outcome of [`check_saturated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    pub free: bool,
    /// The first copy found, present iff `!free`.
    pub violating_copy: Option<Embedding>,
    /// Missing sets whose addition keeps the family free, in canonical order.
    pub unblocked: Vec<SubsetMask>,
    pub saturated: bool,
}

pub fn is_pattern_free(f: &SetFamily, p: &PosetPattern) -> bool {
    contains_induced(f, p).is_none()
}

/// Full saturation verdict. Enumerates every subset of `[n]`, so `n` must be
/// within the search cap.
///
/// # Panics
///
/// If `n` exceeds [`GroundSet::SEARCH_MAX`].
pub fn check_saturated(f: &SetFamily, p: &PosetPattern) -> SaturationReport {
    assert!(f.n() <= GroundSet::SEARCH_MAX, "check_saturated enumerates 2^n subsets");
    if let Some(copy) = contains_induced(f, p) {
        return SaturationReport {
            free: false,
            violating_copy: Some(copy),
            unblocked: Vec::new(),
            saturated: false,
        };
    }
    let mut table = RelationTable::from_masks(f.members(), 1);
    let probe = table.len();
    let mut unblocked = Vec::new();
    for s in f.ground().all_subsets() {
        if f.contains(s) {
            continue;
        }
        table.push(s);
        if !table.any_embedding(p, Some(probe)) {
            unblocked.push(s);
        }
        table.pop();
    }
    let saturated = unblocked.is_empty();
    SaturationReport {
        free: true,
        violating_copy: None,
        unblocked,
        saturated,
    }
}

/// Completes a free `seed` by one pass over all subsets in canonical order,
/// adding each set that keeps the family free.
pub fn greedy_saturate(seed: &SetFamily, p: &PosetPattern) -> Result<SetFamily, SaturationError> {
    let order = seed.ground().all_subsets();
    greedy_saturate_in_order(seed, p, &order)
}

/// Like [`greedy_saturate`] with the candidate order shuffled by a ChaCha8
/// stream seeded with `rng_seed`.
pub fn greedy_saturate_shuffled(
    seed: &SetFamily,
    p: &PosetPattern,
    rng_seed: u64,
) -> Result<SetFamily, SaturationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut order = seed.ground().all_subsets();
    order.shuffle(&mut rng);
    greedy_saturate_in_order(seed, p, &order)
}

/// One greedy pass over `order`. Every subset of `[n]` missing from `order`
/// is simply never considered, so the result is only guaranteed saturated
/// when `order` covers `2^[n]`.
pub fn greedy_saturate_in_order(
    seed: &SetFamily,
    p: &PosetPattern,
    order: &[SubsetMask],
) -> Result<SetFamily, SaturationError> {
    if !is_pattern_free(seed, p) {
        return Err(SaturationError::SeedNotFree);
    }
    let mut family = seed.clone();
    let mut table = RelationTable::from_masks(seed.members(), order.len());
    for &s in order {
        if family.contains(s) {
            continue;
        }
        table.push(s);
        if table.any_embedding(p, Some(table.len() - 1)) {
            table.pop();
        } else {
            family.insert(s)?;
        }
    }
    Ok(family)
}

/// A reproducible random saturated family: a few random sets are kept as a
/// seed while they stay free, then a shuffled greedy pass completes it.
pub fn random_saturated(ground: GroundSet, p: &PosetPattern, rng_seed: u64) -> SetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seed = SetFamily::empty(ground);
    let tries = rng.gen_range(0..=ground.n() as usize);
    let full = ground.full().bits();
    for _ in 0..tries {
        let s = SubsetMask(rng.gen::<u64>() & full);
        if seed.contains(s) {
            continue;
        }
        let mut next = seed.clone();
        next.insert(s).expect("mask is inside the ground set");
        if is_pattern_free(&next, p) {
            seed = next;
        }
    }
    let mut order = ground.all_subsets();
    order.shuffle(&mut rng);
    greedy_saturate_in_order(&seed, p, &order).expect("seed was kept free")
}

/// `{∅, [n]} ∪ {{i}} ∪ {{1, …, i}}`, which has `2n` members and is
/// N-saturated for every `n ≥ 3`.
pub fn canonical_construction(n: u32) -> Result<SetFamily, SaturationError> {
    if n < 3 {
        return Err(SaturationError::ConstructionTooSmall { n });
    }
    let ground = GroundSet::new(n)?;
    let sets = core::iter::once(ground.empty())
        .chain((1..=n).map(SubsetMask::singleton))
        .chain((1..=n).map(SubsetMask::prefix));
    Ok(SetFamily::from_sets(ground, sets)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::copies_through;
    use crate::pattern::StandardPattern;

    fn s(elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(elems.iter().copied()).unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(GroundSet::new(n).unwrap(), sets.iter().map(|e| s(e))).unwrap()
    }

    fn pat(p: StandardPattern) -> PosetPattern {
        PosetPattern::standard(p).unwrap()
    }

    #[test]
    fn construction_sizes() {
        assert_eq!(
            canonical_construction(3).unwrap(),
            fam(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 2, 3]])
        );
        for n in 3..=16 {
            assert_eq!(canonical_construction(n).unwrap().len(), 2 * n as usize);
        }
        assert_eq!(
            canonical_construction(2),
            Err(SaturationError::ConstructionTooSmall { n: 2 })
        );
        assert_eq!(canonical_construction(63).unwrap().len(), 126);
    }

    #[test]
    fn freeness_examples() {
        let n = pat(StandardPattern::N);
        assert!(is_pattern_free(&canonical_construction(3).unwrap(), &n));
        assert!(!is_pattern_free(&fam(3, &[&[1], &[3], &[1, 2], &[1, 3]]), &n));
        let point = pat(StandardPattern::Chain(1));
        assert!(!is_pattern_free(&fam(2, &[&[1]]), &point));
        assert!(is_pattern_free(&SetFamily::empty(GroundSet::new(2).unwrap()), &point));
    }

    #[test]
    fn check_saturated_examples() {
        let n = pat(StandardPattern::N);
        let r = check_saturated(&canonical_construction(3).unwrap(), &n);
        assert!(r.free && r.saturated && r.unblocked.is_empty() && r.violating_copy.is_none());

        let r = check_saturated(&fam(3, &[&[], &[1, 2, 3]]), &n);
        assert!(r.free && !r.saturated);
        assert!(r.unblocked.contains(&s(&[1])));
        assert_eq!(r.unblocked.len(), 6);

        let r = check_saturated(&fam(2, &[&[]]), &pat(StandardPattern::Chain(2)));
        assert!(r.free && r.saturated);

        let bad = fam(3, &[&[1], &[3], &[1, 2], &[1, 3]]);
        let r = check_saturated(&bad, &n);
        assert!(!r.free && !r.saturated);
        assert!(r.violating_copy.unwrap().is_induced_copy_of(&n));
    }

    #[test]
    fn unblocked_sets_are_really_unblocked() {
        let n = pat(StandardPattern::N);
        let f = fam(4, &[&[], &[1], &[1, 2], &[1, 2, 3, 4]]);
        let r = check_saturated(&f, &n);
        for &u in &r.unblocked {
            assert!(!f.contains(u));
            assert!(copies_through(&f, u, &n).unwrap().is_empty());
        }
    }

    #[test]
    fn greedy_examples() {
        let n = pat(StandardPattern::N);
        let seed = fam(3, &[&[], &[1, 2, 3]]);
        let out = greedy_saturate(&seed, &n).unwrap();
        assert!(check_saturated(&out, &n).saturated);
        // Canonical order adds ∅, {1}, {2}, {3}, {1,2} and then {1,3} would
        // close an N around {1}; every remaining set is rejected.
        assert_eq!(out, canonical_construction(3).unwrap());

        let canon = canonical_construction(3).unwrap();
        assert_eq!(greedy_saturate(&canon, &n).unwrap(), canon);

        let chain2 = pat(StandardPattern::Chain(2));
        let only_empty = fam(2, &[&[]]);
        assert_eq!(greedy_saturate(&only_empty, &chain2).unwrap(), only_empty);

        let bad = fam(3, &[&[1], &[3], &[1, 2], &[1, 3]]);
        assert_eq!(greedy_saturate(&bad, &n), Err(SaturationError::SeedNotFree));
    }

    #[test]
    fn shuffled_greedy_is_reproducible_and_saturated() {
        let n = pat(StandardPattern::N);
        let ground = GroundSet::new(5).unwrap();
        let seed = SetFamily::empty(ground);
        for rng_seed in 0..10u64 {
            let a = greedy_saturate_shuffled(&seed, &n, rng_seed).unwrap();
            let b = greedy_saturate_shuffled(&seed, &n, rng_seed).unwrap();
            assert_eq!(a, b);
            assert!(check_saturated(&a, &n).saturated);
            let r = random_saturated(ground, &n, rng_seed);
            assert_eq!(r, random_saturated(ground, &n, rng_seed));
            assert!(check_saturated(&r, &n).saturated);
            assert!(r.contains(ground.empty()) && r.contains(ground.full()));
        }
    }

    #[test]
    fn saturated_means_maximal_free() {
        let p = pat(StandardPattern::Butterfly);
        let ground = GroundSet::new(4).unwrap();
        let f = random_saturated(ground, &p, 7);
        let r = check_saturated(&f, &p);
        assert!(r.saturated);
        for x in ground.all_subsets() {
            if !f.contains(x) {
                assert!(!is_pattern_free(&f.with(x).unwrap(), &p));
            }
        }
        assert!(r.unblocked.is_empty());
    }
}
