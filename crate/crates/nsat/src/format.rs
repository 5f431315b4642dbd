//! Family and pattern JSON, DOT Hasse diagrams, and the CSV summary row.
//!
//! Elements are 1-based everywhere outside the core (`[n] = {1, …, n}`);
//! pattern element indices stay 0-based.

use std::fmt::Write as _;

use nsat_core::{hasse_edges, FamilyError, GroundSet, PatternError, PosetPattern, SetFamily, SubsetMask};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("element {element} listed twice in one set")]
    RepeatedElement { element: u32 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    n: u32,
    sets: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternDoc {
    k: usize,
    less: Vec<[usize; 2]>,
}

/// 1-based elements of `s`, ascending.
pub fn elements(s: SubsetMask) -> Vec<u32> {
    s.elements().collect()
}

/// Mask of a 1-based element list, checked against `[n]`.
pub fn mask_in(n: u32, elems: &[u32]) -> Result<SubsetMask, FormatError> {
    let mut bits = 0u64;
    for &e in elems {
        if e == 0 || e > n {
            return Err(FamilyError::ElementOutOfRange { element: e, n }.into());
        }
        let bit = 1u64 << (e - 1);
        if bits & bit != 0 {
            return Err(FormatError::RepeatedElement { element: e });
        }
        bits |= bit;
    }
    Ok(SubsetMask(bits))
}

/// Parses `{"n":3,"sets":[[],[1],…]}`. Sets may come in any order, but a set
/// listed twice is an error.
pub fn parse_family(text: &str) -> Result<SetFamily, FormatError> {
    let doc: FamilyDoc = serde_json::from_str(text)?;
    let ground = GroundSet::new(doc.n)?;
    let masks = doc
        .sets
        .iter()
        .map(|s| mask_in(doc.n, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SetFamily::new(ground, masks)?)
}

/// Compact JSON with sets in canonical order and elements ascending.
pub fn serialize_family(f: &SetFamily) -> String {
    let doc = FamilyDoc {
        n: f.n(),
        sets: f.iter().map(elements).collect(),
    };
    serde_json::to_string(&doc).expect("plain integers always serialize")
}

/// Parses `{"k":4,"less":[[0,2],[1,2],[1,3]]}`; the relation is closed
/// transitively before validation.
pub fn parse_pattern(text: &str) -> Result<PosetPattern, FormatError> {
    let doc: PatternDoc = serde_json::from_str(text)?;
    let pairs: Vec<(usize, usize)> = doc.less.iter().map(|&[a, b]| (a, b)).collect();
    Ok(PosetPattern::from_pairs(doc.k, &pairs)?)
}

/// Lists every strict pair of the (closed) order, row-major.
pub fn serialize_pattern(p: &PosetPattern) -> String {
    let doc = PatternDoc {
        k: p.size(),
        less: p.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string(&doc).expect("plain integers always serialize")
}

fn node_id(s: SubsetMask) -> String {
    format!("s{}", s.bits())
}

/// Hasse diagram as a DOT digraph drawn bottom-up: one node per member,
/// one edge per cover pair, members of equal size on one rank.
pub fn export_dot(f: &SetFamily) -> String {
    let mut out = String::new();
    out.push_str("digraph family {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for s in f.iter() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", node_id(s), s);
    }
    let mut i = 0;
    let members = f.members();
    while i < members.len() {
        let size = members[i].len();
        let j = members[i..]
            .iter()
            .position(|s| s.len() != size)
            .map_or(members.len(), |d| i + d);
        let ids: Vec<String> = members[i..j].iter().map(|&s| node_id(s)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        i = j;
    }
    for (x, y) in hasse_edges(f) {
        let _ = writeln!(out, "  {} -> {};", node_id(x), node_id(y));
    }
    out.push_str("}\n");
    out
}

pub const CSV_HEADER: &str = "n,pattern,sat_star,exhaustive,nodes,seconds";

/// One CSV row; an unknown `sat_star` is left empty and the pattern name is
/// always quoted.
pub fn csv_row(n: u32, pattern: &str, sat_star: Option<usize>, exhaustive: bool, nodes: u64, seconds: f64) -> String {
    let sat = sat_star.map(|k| k.to_string()).unwrap_or_default();
    format!(
        "{n},\"{}\",{sat},{exhaustive},{nodes},{seconds:.3}",
        pattern.replace('"', "\"\"")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANONICAL3: &str = r#"{"n":3,"sets":[[],[1],[2],[3],[1,2],[1,2,3]]}"#;

    #[test]
    fn family_round_trip() {
        let f = parse_family(CANONICAL3).unwrap();
        assert_eq!(f.len(), 6);
        assert_eq!(serialize_family(&f), CANONICAL3);
        let shuffled = r#"{ "sets": [[3,2,1],[2,1],[],[3],[1],[2]], "n": 3 }"#;
        assert_eq!(serialize_family(&parse_family(shuffled).unwrap()), CANONICAL3);
    }

    #[test]
    fn family_errors() {
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[1],[1]]}"#),
            Err(FormatError::Family(FamilyError::DuplicateSet(_)))
        ));
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[1],[2,1],[1,2]]}"#),
            Err(FormatError::Family(FamilyError::DuplicateSet(_)))
        ));
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[3]]}"#),
            Err(FormatError::Family(FamilyError::ElementOutOfRange { element: 3, n: 2 }))
        ));
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[0]]}"#),
            Err(FormatError::Family(_))
        ));
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[1,1]]}"#),
            Err(FormatError::RepeatedElement { element: 1 })
        ));
        assert!(matches!(
            parse_family(r#"{"n":0,"sets":[]}"#),
            Err(FormatError::Family(_))
        ));
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[1]],"x":1}"#),
            Err(FormatError::Json(_))
        ));
        assert!(matches!(parse_family("[1,2"), Err(FormatError::Json(_))));
    }

    #[test]
    fn pattern_round_trip() {
        let text = r#"{"k":4,"less":[[0,2],[1,2],[1,3]]}"#;
        let p = parse_pattern(text).unwrap();
        assert_eq!(p, PosetPattern::n_poset());
        assert_eq!(serialize_pattern(&p), text);
        // Closure fills in 0 < 2 for a chain given by covers.
        let chain = parse_pattern(r#"{"k":3,"less":[[0,1],[1,2]]}"#).unwrap();
        assert!(chain.less(0, 2));
        assert!(matches!(
            parse_pattern(r#"{"k":2,"less":[[0,1],[1,0]]}"#),
            Err(FormatError::Pattern(_))
        ));
        assert!(matches!(
            parse_pattern(r#"{"k":2,"less":[[0,5]]}"#),
            Err(FormatError::Pattern(_))
        ));
    }

    #[test]
    fn dot_edges() {
        let chain = parse_family(r#"{"n":2,"sets":[[],[1],[1,2]]}"#).unwrap();
        assert_eq!(export_dot(&chain).matches("->").count(), 2);
        let anti = parse_family(r#"{"n":2,"sets":[[1],[2]]}"#).unwrap();
        let dot = export_dot(&anti);
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches("[label=").count(), 2);
        assert!(dot.contains("{ rank=same; s1; s2; }"));
    }

    #[test]
    fn csv_format() {
        assert_eq!(
            csv_row(3, "chain(2)", Some(1), true, 12, 0.0),
            "3,\"chain(2)\",1,true,12,0.000"
        );
        assert_eq!(csv_row(6, "N", None, false, 5, 1.23456), "6,\"N\",,false,5,1.235");
    }
}
