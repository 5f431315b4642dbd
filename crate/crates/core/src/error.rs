use core::fmt;

use crate::family::SubsetMask;
use crate::verify::Witness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    GroundSetSize { n: u32 },
    TooLargeForSearch { n: u32 },
    ElementOutOfRange { element: u32, n: u32 },
    MaskOutOfRange { mask: SubsetMask, n: u32 },
    DuplicateSet(SubsetMask),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::GroundSetSize { n } => write!(f, "ground set size {n} outside 1..=63"),
            FamilyError::TooLargeForSearch { n } => {
                write!(f, "ground set size {n} exceeds the search cap of 24")
            }
            FamilyError::ElementOutOfRange { element, n } => {
                write!(f, "element {element} outside 1..={n}")
            }
            FamilyError::MaskOutOfRange { mask, n } => write!(f, "set {mask} is not a subset of [{n}]"),
            FamilyError::DuplicateSet(s) => write!(f, "set {s} appears more than once"),
        }
    }
}

impl core::error::Error for FamilyError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternError {
    Size { k: usize },
    IndexOutOfRange { index: usize, k: usize },
    Reflexive { element: usize },
    NotAntisymmetric { a: usize, b: usize },
    NotTransitive { a: usize, b: usize, c: usize },
    UnknownName,
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::Size { k } => write!(f, "pattern size {k} outside 1..=8"),
            PatternError::IndexOutOfRange { index, k } => {
                write!(f, "pattern element {index} outside 0..{k}")
            }
            PatternError::Reflexive { element } => write!(f, "element {element} is below itself"),
            PatternError::NotAntisymmetric { a, b } => {
                write!(f, "elements {a} and {b} are each below the other")
            }
            PatternError::NotTransitive { a, b, c } => {
                write!(f, "{a} < {b} < {c} but not {a} < {c}")
            }
            PatternError::UnknownName => f.write_str("unknown pattern name"),
        }
    }
}

impl core::error::Error for PatternError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectError {
    /// `copies_through` requires the added set to be new.
    AlreadyMember(SubsetMask),
    Family(FamilyError),
}

impl fmt::Display for DetectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetectError::AlreadyMember(s) => write!(f, "set {s} is already in the family"),
            DetectError::Family(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for DetectError {}

impl From<FamilyError> for DetectError {
    fn from(e: FamilyError) -> Self {
        DetectError::Family(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationError {
    /// The seed of a greedy completion already contains the pattern.
    SeedNotFree,
    /// The explicit construction needs `n ≥ 3`.
    ConstructionTooSmall {
        n: u32,
    },
    Family(FamilyError),
}

impl fmt::Display for SaturationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SaturationError::SeedNotFree => f.write_str("seed family already contains the pattern"),
            SaturationError::ConstructionTooSmall { n } => {
                write!(f, "the 2n construction needs n >= 3, got {n}")
            }
            SaturationError::Family(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for SaturationError {}

impl From<FamilyError> for SaturationError {
    fn from(e: FamilyError) -> Self {
        SaturationError::Family(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// Structural verifiers only apply to N-saturated families.
    NotSaturated,
    /// Midpoint enumeration is bounded to at most three sets per side.
    ConfigurationBounds { max_k: usize, max_l: usize },
    /// A component has no valve; carries the failing witness.
    ValveFailure(Witness),
    /// Neither the family nor its complement has a valve of size at most n/2.
    NoSmallValve,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NotSaturated => f.write_str("family is not N-saturated"),
            VerifyError::ConfigurationBounds { max_k, max_l } => {
                write!(f, "configuration bounds ({max_k}, {max_l}) outside 1..=3")
            }
            VerifyError::ValveFailure(w) => write!(f, "valve check failed: {w:?}"),
            VerifyError::NoSmallValve => f.write_str("no component valve of size at most n/2"),
        }
    }
}

impl core::error::Error for VerifyError {}
