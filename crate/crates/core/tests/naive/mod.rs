//! Brute-force references for cross-checking. Nothing here uses the crate's
//! relation tables, pruning or canonical forms; subsets are raw bitmasks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nsat_core::{PosetPattern, SubsetMask};

pub fn strictly_below(a: SubsetMask, b: SubsetMask) -> bool {
    a.0 != b.0 && a.0 & !b.0 == 0
}

/// Subsets of `[n]` ordered by size, then value.
pub fn all_subsets(n: u32) -> Vec<SubsetMask> {
    let mut v: Vec<u64> = (0..1u64 << n).collect();
    v.sort_by_key(|&m| (m.count_ones(), m));
    v.into_iter().map(SubsetMask).collect()
}

fn realizes(tuple: &[SubsetMask], p: &PosetPattern) -> bool {
    let k = tuple.len();
    (0..k)
        .all(|i| (0..k).all(|j| i == j || (tuple[i] != tuple[j] && p.less(i, j) == strictly_below(tuple[i], tuple[j]))))
}

/// Every `k`-tuple of members (with repetition, filtered afterwards) that is
/// an induced copy of `p`, in lexicographic order of member indices.
pub fn embeddings(members: &[SubsetMask], p: &PosetPattern) -> Vec<Vec<SubsetMask>> {
    let k = p.size();
    let m = members.len();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<SubsetMask> = idx.iter().map(|&i| members[i]).collect();
        if realizes(&tuple, p) {
            out.push(tuple);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Distinct images of induced copies.
pub fn copies(members: &[SubsetMask], p: &PosetPattern) -> BTreeSet<BTreeSet<u64>> {
    embeddings(members, p)
        .into_iter()
        .map(|t| t.iter().map(|s| s.0).collect())
        .collect()
}

/// Some induced copy of `p` in `members ∪ {s}` uses `s`.
pub fn copy_through(members: &[SubsetMask], s: SubsetMask, p: &PosetPattern) -> bool {
    let k = p.size();
    let others: Vec<SubsetMask> = members.iter().copied().filter(|&x| x != s).collect();
    let mut tuple = vec![s; k];
    for slot in 0..k {
        tuple[slot] = s;
        if fill(&others, p, &mut tuple, slot, 0) {
            return true;
        }
    }
    false
}

fn fill(others: &[SubsetMask], p: &PosetPattern, tuple: &mut [SubsetMask], slot: usize, pos: usize) -> bool {
    if pos == tuple.len() {
        return realizes(tuple, p);
    }
    if pos == slot {
        return fill(others, p, tuple, slot, pos + 1);
    }
    for &x in others {
        tuple[pos] = x;
        if fill(others, p, tuple, slot, pos + 1) {
            return true;
        }
    }
    false
}

pub fn is_free(members: &[SubsetMask], p: &PosetPattern) -> bool {
    embeddings(members, p).is_empty()
}

pub fn is_saturated(n: u32, members: &[SubsetMask], p: &PosetPattern) -> bool {
    is_free(members, p)
        && all_subsets(n)
            .into_iter()
            .filter(|s| !members.contains(s))
            .all(|s| copy_through(members, s, p))
}

/// Permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn automorphism_count(p: &PosetPattern) -> usize {
    let k = p.size();
    permutations(k)
        .into_iter()
        .filter(|pi| (0..k).all(|i| (0..k).all(|j| p.less(i, j) == p.less(pi[i], pi[j]))))
        .count()
}

fn relabel(s: SubsetMask, pi: &[usize]) -> SubsetMask {
    let mut out = 0u64;
    for (j, &target) in pi.iter().enumerate() {
        if s.0 >> j & 1 == 1 {
            out |= 1 << target;
        }
    }
    SubsetMask(out)
}

/// Least relabeled member list, members compared by (size, value).
pub fn canonical(n: u32, members: &[SubsetMask]) -> Vec<SubsetMask> {
    permutations(n as usize)
        .into_iter()
        .map(|pi| {
            let mut v: Vec<SubsetMask> = members.iter().map(|&s| relabel(s, &pi)).collect();
            v.sort_by_key(|s| (s.0.count_ones(), s.0));
            v
        })
        .min_by(|a, b| {
            let ka: Vec<(u32, u64)> = a.iter().map(|s| (s.0.count_ones(), s.0)).collect();
            let kb: Vec<(u32, u64)> = b.iter().map(|s| (s.0.count_ones(), s.0)).collect();
            ka.cmp(&kb)
        })
        .unwrap()
}

/// Result of sweeping every family of subsets of `[n]`.
pub struct Sweep {
    pub sat_star: usize,
    /// All minimum saturated families (labeled).
    pub minimum: Vec<Vec<SubsetMask>>,
    pub families: u64,
}

/// Enumerates all `2^(2^n)` families. Freeness is built up one set at a time
/// (a family is free iff removing its last set leaves a free family and that
/// set is in no copy); saturation is then a lookup over one-set extensions.
pub fn sweep(n: u32, p: &PosetPattern) -> Sweep {
    assert!(n <= 4, "2^(2^n) families");
    let universe = all_subsets(n);
    let u = universe.len();
    let total = 1usize << u;
    let mut free = vec![false; total];
    free[0] = true;
    let members_of =
        |fam: usize| -> Vec<SubsetMask> { (0..u).filter(|&i| fam >> i & 1 == 1).map(|i| universe[i]).collect() };
    for fam in 1..total {
        let top = usize::BITS - 1 - fam.leading_zeros();
        let rest = fam & !(1 << top);
        free[fam] = free[rest] && !copy_through(&members_of(rest), universe[top as usize], p);
    }
    let mut best = usize::MAX;
    let mut minimum = Vec::new();
    for fam in 0..total {
        if !free[fam] {
            continue;
        }
        let maximal = (0..u).all(|i| fam >> i & 1 == 1 || !free[fam | 1 << i]);
        if !maximal {
            continue;
        }
        let size = fam.count_ones() as usize;
        if size < best {
            best = size;
            minimum.clear();
        }
        if size == best {
            minimum.push(members_of(fam));
        }
    }
    Sweep {
        sat_star: best,
        minimum,
        families: total as u64,
    }
}
