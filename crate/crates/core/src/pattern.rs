//! Finite posets used as forbidden patterns.

use alloc::vec::Vec;
use core::fmt;

use crate::error::PatternError;
use crate::perm::for_each_permutation;

/// Largest supported pattern.
pub const MAX_PATTERN_SIZE: usize = 8;

/// A strict partial order on `0..k`, stored transitively closed.
///
/// Row `i` of `below` has bit `j` set iff `i < j` in the pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PosetPattern {
    k: usize,
    below: [u8; MAX_PATTERN_SIZE],
}

/// Checks irreflexivity, antisymmetry and transitivity of a square strict
/// relation matrix, and the size bound.
pub fn validate_pattern<R: AsRef<[bool]>>(less: &[R]) -> bool {
    check_matrix(less).is_ok()
}

fn check_matrix<R: AsRef<[bool]>>(less: &[R]) -> Result<(), PatternError> {
    let k = less.len();
    if k == 0 || k > MAX_PATTERN_SIZE {
        return Err(PatternError::Size { k });
    }
    if let Some(row) = less.iter().find(|r| r.as_ref().len() != k) {
        return Err(PatternError::IndexOutOfRange {
            index: row.as_ref().len(),
            k,
        });
    }
    let at = |i: usize, j: usize| less[i].as_ref()[j];
    for i in 0..k {
        if at(i, i) {
            return Err(PatternError::Reflexive { element: i });
        }
        for j in 0..k {
            if at(i, j) && at(j, i) {
                return Err(PatternError::NotAntisymmetric { a: i, b: j });
            }
            for m in 0..k {
                if at(i, j) && at(j, m) && !at(i, m) {
                    return Err(PatternError::NotTransitive { a: i, b: j, c: m });
                }
            }
        }
    }
    Ok(())
}

impl PosetPattern {
    /// Closes `less` transitively, then validates.
    pub fn from_matrix<R: AsRef<[bool]>>(less: &[R]) -> Result<Self, PatternError> {
        let k = less.len();
        if k == 0 || k > MAX_PATTERN_SIZE {
            return Err(PatternError::Size { k });
        }
        let mut below = [0u8; MAX_PATTERN_SIZE];
        for (i, row) in less.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != k {
                return Err(PatternError::IndexOutOfRange { index: row.len(), k });
            }
            for (j, &b) in row.iter().enumerate() {
                if b {
                    below[i] |= 1 << j;
                }
            }
        }
        Self::close_and_check(k, below)
    }

    /// Builds a pattern from strict pairs `(a, b)` meaning `a < b`,
    /// closing transitively.
    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Self, PatternError> {
        if k == 0 || k > MAX_PATTERN_SIZE {
            return Err(PatternError::Size { k });
        }
        let mut below = [0u8; MAX_PATTERN_SIZE];
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= k {
                    return Err(PatternError::IndexOutOfRange { index, k });
                }
            }
            below[a] |= 1 << b;
        }
        Self::close_and_check(k, below)
    }

    fn close_and_check(k: usize, mut below: [u8; MAX_PATTERN_SIZE]) -> Result<Self, PatternError> {
        // Warshall on bit rows.
        for mid in 0..k {
            for i in 0..k {
                if below[i] >> mid & 1 == 1 {
                    below[i] |= below[mid];
                }
            }
        }
        let p = PosetPattern { k, below };
        check_matrix(&p.matrix())?;
        Ok(p)
    }

    pub fn standard(which: StandardPattern) -> Result<Self, PatternError> {
        use StandardPattern::*;
        match which {
            // m1 = 0, m2 = 1, M1 = 2, M2 = 3; m2 sits below both maximals.
            N => Self::from_pairs(4, &[(0, 2), (1, 2), (1, 3)]),
            Butterfly => Self::from_pairs(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]),
            Diamond => Self::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
            Chevron => Self::from_pairs(3, &[(0, 2), (1, 2)]),
            Vee => Self::from_pairs(3, &[(0, 1), (0, 2)]),
            Antichain(k) => Self::from_pairs(k, &[]),
            Chain(k) => {
                let pairs: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
                Self::from_pairs(k, &pairs)
            }
        }
    }

    /// The four-element N poset.
    pub fn n_poset() -> Self {
        Self::standard(StandardPattern::N).expect("N is a valid poset")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.k
    }

    /// `i < j` in the pattern.
    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[i] >> j & 1 == 1
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.k)
            .map(|i| (0..self.k).map(|j| self.less(i, j)).collect())
            .collect()
    }

    /// Strict pairs `(a, b)` with `a < b`, in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in 0..self.k {
                if self.less(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn related_pairs(&self) -> usize {
        self.below[..self.k].iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        (0..self.k).all(|j| !self.less(j, i))
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.below[i] == 0
    }

    /// Whether some element is comparable to every other element. If none
    /// is, `∅` and `[n]` can never take part in a copy.
    pub fn has_universal_element(&self) -> bool {
        (0..self.k).any(|i| (0..self.k).all(|j| i == j || self.comparable(i, j)))
    }

    /// The order dual (transpose).
    pub fn dual(&self) -> Self {
        let mut below = [0u8; MAX_PATTERN_SIZE];
        for (j, row) in below.iter_mut().enumerate().take(self.k) {
            for i in 0..self.k {
                if self.less(i, j) {
                    *row |= 1 << i;
                }
            }
        }
        PosetPattern { k: self.k, below }
    }

    fn preserved_by(&self, other: &Self, perm: &[usize]) -> bool {
        (0..self.k).all(|i| (0..self.k).all(|j| self.less(i, j) == other.less(perm[i], perm[j])))
    }

    /// Brute-force isomorphism test over all `k!` relabelings.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.k != other.k || self.related_pairs() != other.related_pairs() {
            return false;
        }
        let mut found = false;
        for_each_permutation(self.k, |perm| {
            if !found && self.preserved_by(other, perm) {
                found = true;
            }
        });
        found
    }
}

impl fmt::Debug for PosetPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PosetPattern")
            .field("k", &self.k)
            .field("less", &self.pairs())
            .finish()
    }
}

/// All permutations `π` of `0..k` with `i < j ⇔ π(i) < π(j)`, sorted
/// lexicographically.
pub fn pattern_automorphisms(p: &PosetPattern) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_permutation(p.size(), |perm| {
        if p.preserved_by(p, perm) {
            out.push(perm.to_vec());
        }
    });
    out.sort_unstable();
    out
}

/// The named patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardPattern {
    N,
    Butterfly,
    Diamond,
    /// Λ₂: one element above two incomparable ones.
    Chevron,
    /// Order dual of the chevron.
    Vee,
    Antichain(usize),
    Chain(usize),
}

impl StandardPattern {
    /// Accepts `N`, `butterfly`, `diamond`, `chevron` (or `lambda2`), `vee`,
    /// and `antichain(k)` / `chain(k)` (also written `antichain:k`, `chain:k`).
    pub fn parse(name: &str) -> Result<Self, PatternError> {
        let lower = name.trim().to_ascii_lowercase();
        let simple = match lower.as_str() {
            "n" => Some(StandardPattern::N),
            "butterfly" => Some(StandardPattern::Butterfly),
            "diamond" => Some(StandardPattern::Diamond),
            "chevron" | "lambda2" => Some(StandardPattern::Chevron),
            "vee" | "v" => Some(StandardPattern::Vee),
            _ => None,
        };
        if let Some(p) = simple {
            return Ok(p);
        }
        let (stem, arg) = if let Some(rest) = lower.strip_suffix(')') {
            rest.split_once('(').ok_or(PatternError::UnknownName)?
        } else {
            lower.split_once(':').ok_or(PatternError::UnknownName)?
        };
        let k: usize = arg.trim().parse().map_err(|_| PatternError::UnknownName)?;
        if k == 0 || k > MAX_PATTERN_SIZE {
            return Err(PatternError::Size { k });
        }
        match stem.trim() {
            "antichain" => Ok(StandardPattern::Antichain(k)),
            "chain" => Ok(StandardPattern::Chain(k)),
            _ => Err(PatternError::UnknownName),
        }
    }
}

impl fmt::Display for StandardPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardPattern::N => f.write_str("N"),
            StandardPattern::Butterfly => f.write_str("butterfly"),
            StandardPattern::Diamond => f.write_str("diamond"),
            StandardPattern::Chevron => f.write_str("chevron"),
            StandardPattern::Vee => f.write_str("vee"),
            StandardPattern::Antichain(k) => write!(f, "antichain({k})"),
            StandardPattern::Chain(k) => write!(f, "chain({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn std(p: StandardPattern) -> PosetPattern {
        PosetPattern::standard(p).unwrap()
    }

    const ALL: [StandardPattern; 9] = [
        StandardPattern::N,
        StandardPattern::Butterfly,
        StandardPattern::Diamond,
        StandardPattern::Chevron,
        StandardPattern::Vee,
        StandardPattern::Antichain(1),
        StandardPattern::Antichain(3),
        StandardPattern::Chain(2),
        StandardPattern::Chain(5),
    ];

    #[test]
    fn validate_examples() {
        assert!(validate_pattern(&[[false, true], [false, false]]));
        assert!(!validate_pattern(&[[false, true], [true, false]]));
        assert!(!validate_pattern(&[
            [false, true, false],
            [false, false, true],
            [false, false, false],
        ]));
        assert!(!validate_pattern(&[[true]]));
        let empty: [[bool; 0]; 0] = [];
        assert!(!validate_pattern(&empty));
    }

    #[test]
    fn constructors_close_and_reject() {
        let p = PosetPattern::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert_eq!(
            PosetPattern::from_pairs(2, &[(0, 1), (1, 0)]).unwrap_err(),
            PatternError::Reflexive { element: 0 }
        );
        assert!(matches!(
            PosetPattern::from_pairs(2, &[(0, 2)]),
            Err(PatternError::IndexOutOfRange { index: 2, k: 2 })
        ));
        assert!(matches!(
            PosetPattern::from_pairs(9, &[]),
            Err(PatternError::Size { k: 9 })
        ));
        let m =
            PosetPattern::from_matrix(&[[false, true, false], [false, false, true], [false, false, false]]).unwrap();
        assert_eq!(m, p);
    }

    #[test]
    fn standard_sizes_and_relations() {
        let n = std(StandardPattern::N);
        assert_eq!((n.size(), n.related_pairs()), (4, 3));
        let b = std(StandardPattern::Butterfly);
        assert_eq!((b.size(), b.related_pairs()), (4, 4));
        let a = std(StandardPattern::Antichain(3));
        assert_eq!((a.size(), a.related_pairs()), (3, 0));
        let d = std(StandardPattern::Diamond);
        assert_eq!((d.size(), d.related_pairs()), (4, 5));
        assert_eq!(std(StandardPattern::Chain(4)).related_pairs(), 6);
        for p in ALL {
            assert!(validate_pattern(&std(p).matrix()), "{p}");
        }
    }

    #[test]
    fn n_has_two_minimal_and_two_maximal() {
        let n = std(StandardPattern::N);
        assert!(n.is_minimal(0) && n.is_minimal(1));
        assert!(n.is_maximal(2) && n.is_maximal(3));
        // exactly one maximal above both minimals, exactly one minimal below both maximals
        assert!(n.less(0, 2) && n.less(1, 2) && n.less(1, 3) && !n.less(0, 3));
        assert!(!n.has_universal_element());
        assert!(std(StandardPattern::Chain(2)).has_universal_element());
    }

    #[test]
    fn duality() {
        let chevron = std(StandardPattern::Chevron);
        let vee = std(StandardPattern::Vee);
        assert!(chevron.dual().is_isomorphic(&vee));
        assert!(!chevron.is_isomorphic(&vee));
        let n = std(StandardPattern::N);
        assert!(n.dual().is_isomorphic(&n));
        let b = std(StandardPattern::Butterfly);
        assert!(b.dual().is_isomorphic(&b));
        let d = std(StandardPattern::Diamond);
        assert!(d.dual().is_isomorphic(&d));
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(pattern_automorphisms(&std(StandardPattern::N)), vec![vec![0, 1, 2, 3]]);
        let b = pattern_automorphisms(&std(StandardPattern::Butterfly));
        assert_eq!(
            b,
            vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![1, 0, 2, 3], vec![1, 0, 3, 2]]
        );
        assert_eq!(pattern_automorphisms(&std(StandardPattern::Antichain(3))).len(), 6);
        assert_eq!(pattern_automorphisms(&std(StandardPattern::Diamond)).len(), 2);
        assert_eq!(pattern_automorphisms(&std(StandardPattern::Chain(4))).len(), 1);
    }

    #[test]
    fn parse_names() {
        assert_eq!(StandardPattern::parse("N").unwrap(), StandardPattern::N);
        assert_eq!(StandardPattern::parse("Butterfly").unwrap(), StandardPattern::Butterfly);
        assert_eq!(StandardPattern::parse("chain(2)").unwrap(), StandardPattern::Chain(2));
        assert_eq!(
            StandardPattern::parse("antichain:3").unwrap(),
            StandardPattern::Antichain(3)
        );
        assert!(StandardPattern::parse("antichain(9)").is_err());
        assert!(StandardPattern::parse("zigzag").is_err());
        for p in ALL {
            assert_eq!(StandardPattern::parse(&alloc::format!("{p}")).unwrap(), p);
        }
    }
}
