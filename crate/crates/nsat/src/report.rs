//! JSON documents for saturation reports, verifier verdicts and search
//! results. Verdicts decode back into core types so a separate process can
//! re-validate every certificate with [`nsat_core::verify::recheck`].

use nsat_core::saturation::SaturationReport;
use nsat_core::search::SearchResult;
use nsat_core::verify::{ExtensionCheck, LemmaId, LemmaVerdict, ValveCertificate, Witness};
use nsat_core::{Embedding, SetFamily, SubsetMask};
use serde::{Deserialize, Serialize};

use crate::format::{elements, parse_family, serialize_family, FormatError};

type Set = Vec<u32>;

fn set(s: SubsetMask) -> Set {
    elements(s)
}

fn sets(xs: &[SubsetMask]) -> Vec<Set> {
    xs.iter().map(|&s| set(s)).collect()
}

fn mask(s: &[u32]) -> Result<SubsetMask, FormatError> {
    Ok(SubsetMask::from_elements(s.iter().copied())?)
}

fn masks(xs: &[Set]) -> Result<Vec<SubsetMask>, FormatError> {
    xs.iter().map(|s| mask(s)).collect()
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

impl From<serde_json::Error> for ReportError {
    fn from(e: serde_json::Error) -> Self {
        ReportError::Format(FormatError::Json(e))
    }
}

impl From<nsat_core::FamilyError> for ReportError {
    fn from(e: nsat_core::FamilyError) -> Self {
        ReportError::Format(FormatError::Family(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WitnessDoc {
    ComponentPair {
        component: usize,
        minimal: Set,
        maximal: Set,
    },
    Midpoint {
        bottoms: Vec<Set>,
        tops: Vec<Set>,
        midpoint: Option<Set>,
    },
    Valve {
        component: usize,
        m_min: Set,
        m_max: Set,
    },
    ValveContact {
        component: usize,
        valve: Set,
        member: Set,
    },
    PairEdge {
        element: u32,
        lower: Set,
    },
    PairCycle {
        vertices: Vec<Set>,
        elements: Vec<u32>,
    },
    Forest {
        vertices: usize,
        edges: usize,
        trees: usize,
    },
    Bounds {
        n: u32,
        size: usize,
        singleton_pairs: usize,
        complemented: bool,
    },
    Extension {
        check: String,
        added: Set,
        anchor: Option<Set>,
        copy: Option<Vec<Set>>,
    },
    SingletonBudget {
        component: usize,
        valve: Set,
        maximal_any: Vec<u32>,
        maximal_only: Vec<u32>,
        limit: usize,
    },
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::ComponentPair {
                component,
                minimal,
                maximal,
            } => WitnessDoc::ComponentPair {
                component: *component,
                minimal: set(*minimal),
                maximal: set(*maximal),
            },
            Witness::Midpoint {
                bottoms,
                tops,
                midpoint,
            } => WitnessDoc::Midpoint {
                bottoms: sets(bottoms),
                tops: sets(tops),
                midpoint: midpoint.map(set),
            },
            Witness::Valve(c) => WitnessDoc::Valve {
                component: c.component_index,
                m_min: set(c.m_min),
                m_max: set(c.m_max),
            },
            Witness::ValveContact {
                component,
                valve,
                member,
            } => WitnessDoc::ValveContact {
                component: *component,
                valve: set(*valve),
                member: set(*member),
            },
            Witness::PairEdge { element, lower } => WitnessDoc::PairEdge {
                element: *element,
                lower: set(*lower),
            },
            Witness::PairCycle { vertices, elements } => WitnessDoc::PairCycle {
                vertices: sets(vertices),
                elements: elements.clone(),
            },
            Witness::Forest { vertices, edges, trees } => WitnessDoc::Forest {
                vertices: *vertices,
                edges: *edges,
                trees: *trees,
            },
            Witness::Bounds {
                n,
                size,
                singleton_pairs,
                complemented,
            } => WitnessDoc::Bounds {
                n: *n,
                size: *size,
                singleton_pairs: *singleton_pairs,
                complemented: *complemented,
            },
            Witness::Extension {
                check,
                added,
                anchor,
                copy,
            } => WitnessDoc::Extension {
                check: check.name().to_string(),
                added: set(*added),
                anchor: anchor.map(set),
                copy: copy.as_ref().map(|c| sets(c.map())),
            },
            Witness::SingletonBudget {
                component,
                valve,
                maximal_any,
                maximal_only,
                limit,
            } => WitnessDoc::SingletonBudget {
                component: *component,
                valve: set(*valve),
                maximal_any: maximal_any.clone(),
                maximal_only: maximal_only.clone(),
                limit: *limit,
            },
        }
    }
}

impl TryFrom<&WitnessDoc> for Witness {
    type Error = ReportError;

    fn try_from(d: &WitnessDoc) -> Result<Self, ReportError> {
        Ok(match d {
            WitnessDoc::ComponentPair {
                component,
                minimal,
                maximal,
            } => Witness::ComponentPair {
                component: *component,
                minimal: mask(minimal)?,
                maximal: mask(maximal)?,
            },
            WitnessDoc::Midpoint {
                bottoms,
                tops,
                midpoint,
            } => Witness::Midpoint {
                bottoms: masks(bottoms)?,
                tops: masks(tops)?,
                midpoint: midpoint.as_deref().map(mask).transpose()?,
            },
            WitnessDoc::Valve {
                component,
                m_min,
                m_max,
            } => Witness::Valve(ValveCertificate {
                component_index: *component,
                m_min: mask(m_min)?,
                m_max: mask(m_max)?,
            }),
            WitnessDoc::ValveContact {
                component,
                valve,
                member,
            } => Witness::ValveContact {
                component: *component,
                valve: mask(valve)?,
                member: mask(member)?,
            },
            WitnessDoc::PairEdge { element, lower } => {
                if *element == 0 || *element > 63 {
                    return Err(nsat_core::FamilyError::ElementOutOfRange {
                        element: *element,
                        n: 63,
                    }
                    .into());
                }
                Witness::PairEdge {
                    element: *element,
                    lower: mask(lower)?,
                }
            }
            WitnessDoc::PairCycle { vertices, elements } => {
                if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > 63) {
                    return Err(nsat_core::FamilyError::ElementOutOfRange { element: e, n: 63 }.into());
                }
                Witness::PairCycle {
                    vertices: masks(vertices)?,
                    elements: elements.clone(),
                }
            }
            WitnessDoc::Forest { vertices, edges, trees } => Witness::Forest {
                vertices: *vertices,
                edges: *edges,
                trees: *trees,
            },
            WitnessDoc::Bounds {
                n,
                size,
                singleton_pairs,
                complemented,
            } => Witness::Bounds {
                n: *n,
                size: *size,
                singleton_pairs: *singleton_pairs,
                complemented: *complemented,
            },
            WitnessDoc::Extension {
                check,
                added,
                anchor,
                copy,
            } => Witness::Extension {
                check: ExtensionCheck::from_name(check).ok_or_else(|| ReportError::UnknownName(check.clone()))?,
                added: mask(added)?,
                anchor: anchor.as_deref().map(mask).transpose()?,
                copy: copy.as_deref().map(masks).transpose()?.map(Embedding::new),
            },
            WitnessDoc::SingletonBudget {
                component,
                valve,
                maximal_any,
                maximal_only,
                limit,
            } => Witness::SingletonBudget {
                component: *component,
                valve: mask(valve)?,
                maximal_any: maximal_any.clone(),
                maximal_only: maximal_only.clone(),
                limit: *limit,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub lemma: String,
    pub holds: bool,
    pub counterexample: Option<WitnessDoc>,
    pub certificates: Vec<WitnessDoc>,
}

impl From<&LemmaVerdict> for VerdictDoc {
    fn from(v: &LemmaVerdict) -> Self {
        VerdictDoc {
            lemma: v.lemma_id.name().to_string(),
            holds: v.holds,
            counterexample: v.counterexample.as_ref().map(WitnessDoc::from),
            certificates: v.certificates.iter().map(WitnessDoc::from).collect(),
        }
    }
}

impl TryFrom<&VerdictDoc> for LemmaVerdict {
    type Error = ReportError;

    fn try_from(d: &VerdictDoc) -> Result<Self, ReportError> {
        Ok(LemmaVerdict {
            lemma_id: LemmaId::from_name(&d.lemma).ok_or_else(|| ReportError::UnknownName(d.lemma.clone()))?,
            holds: d.holds,
            counterexample: d.counterexample.as_ref().map(Witness::try_from).transpose()?,
            certificates: d.certificates.iter().map(Witness::try_from).collect::<Result<_, _>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyDoc {
    family: serde_json::Value,
    verdicts: Vec<VerdictDoc>,
}

/// `{"family":{…},"verdicts":[…]}`, carrying the family so the report can be
/// re-checked on its own.
pub fn verify_report(f: &SetFamily, verdicts: &[LemmaVerdict]) -> String {
    let family: serde_json::Value = serde_json::from_str(&serialize_family(f)).expect("family JSON is well formed");
    let doc = VerifyDoc {
        family,
        verdicts: verdicts.iter().map(VerdictDoc::from).collect(),
    };
    serde_json::to_string(&doc).expect("report serializes")
}

pub fn parse_verify_report(text: &str) -> Result<(SetFamily, Vec<LemmaVerdict>), ReportError> {
    let doc: VerifyDoc = serde_json::from_str(text)?;
    let family = parse_family(&doc.family.to_string())?;
    let verdicts = doc
        .verdicts
        .iter()
        .map(LemmaVerdict::try_from)
        .collect::<Result<_, _>>()?;
    Ok((family, verdicts))
}

#[derive(Serialize)]
struct CheckDoc {
    pattern: String,
    free: bool,
    saturated: bool,
    violating_copy: Option<Vec<Set>>,
    unblocked: Vec<Set>,
}

pub fn saturation_report(pattern: &str, r: &SaturationReport) -> String {
    let doc = CheckDoc {
        pattern: pattern.to_string(),
        free: r.free,
        saturated: r.saturated,
        violating_copy: r.violating_copy.as_ref().map(|c| sets(c.map())),
        unblocked: sets(&r.unblocked),
    };
    serde_json::to_string(&doc).expect("report serializes")
}

#[derive(Serialize)]
struct StatsDoc {
    nodes: u64,
    leaves: u64,
    isomorph_cuts: u64,
    per_size: Vec<(usize, u64)>,
}

#[derive(Serialize)]
struct SearchDoc {
    n: u32,
    pattern: String,
    sat_star: Option<usize>,
    lower_bound: usize,
    exhaustive: bool,
    witnesses_complete: bool,
    witnesses: Vec<Vec<Set>>,
    explored: StatsDoc,
}

/// Outcome of `satstar` as JSON. A failed search reports `sat_star: null`
/// with the best proven lower bound.
pub fn search_report(
    n: u32,
    pattern: &str,
    result: Result<&SearchResult, (usize, &nsat_core::search::SearchStats)>,
) -> String {
    let doc = match result {
        Ok(r) => SearchDoc {
            n,
            pattern: pattern.to_string(),
            sat_star: Some(r.sat_star),
            lower_bound: r.sat_star,
            exhaustive: r.exhaustive,
            witnesses_complete: r.witnesses_complete,
            witnesses: r.witnesses.iter().map(|w| sets(w.members())).collect(),
            explored: stats(&r.explored),
        },
        Err((lower_bound, s)) => SearchDoc {
            n,
            pattern: pattern.to_string(),
            sat_star: None,
            lower_bound,
            exhaustive: false,
            witnesses_complete: false,
            witnesses: Vec::new(),
            explored: stats(s),
        },
    };
    serde_json::to_string(&doc).expect("report serializes")
}

fn stats(s: &nsat_core::search::SearchStats) -> StatsDoc {
    StatsDoc {
        nodes: s.nodes,
        leaves: s.leaves,
        isomorph_cuts: s.isomorph_cuts,
        per_size: s.per_size.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsat_core::saturation::canonical_construction;
    use nsat_core::verify::{recheck, run_suite};

    #[test]
    fn verdicts_survive_json() {
        let f = canonical_construction(4).unwrap();
        let verdicts = run_suite(&f, &LemmaId::ALL).unwrap();
        let text = verify_report(&f, &verdicts);
        let (g, back) = parse_verify_report(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(back, verdicts);
        assert!(back.iter().all(|v| v.holds && recheck(&g, v)));
    }

    #[test]
    fn unknown_names_are_rejected() {
        let text = r#"{"family":{"n":3,"sets":[]},"verdicts":[{"lemma":"nope","holds":true,"counterexample":null,"certificates":[]}]}"#;
        assert!(matches!(parse_verify_report(text), Err(ReportError::UnknownName(_))));
    }
}
