//! Permutation enumeration (Heap's algorithm) shared by automorphism and
//! canonical-form brute force.

use alloc::vec::Vec;

/// Calls `visit` once for every permutation of `0..k`, starting with the
/// identity. Order is Heap's order, not lexicographic.
pub(crate) fn for_each_permutation<F: FnMut(&[usize])>(k: usize, mut visit: F) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = alloc::vec![0usize; k];
    visit(&perm);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn visits_every_permutation_once() {
        for k in 0..=6usize {
            let mut seen = BTreeSet::new();
            let mut count = 0;
            for_each_permutation(k, |p| {
                count += 1;
                seen.insert(p.to_vec());
            });
            let fact: usize = (1..=k).product();
            assert_eq!(count, fact);
            assert_eq!(seen.len(), fact);
        }
    }
}
