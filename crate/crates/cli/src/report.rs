use serde::Serialize;

use nielsen_core::nielsen::format_log;
use nielsen_core::quotient::{Distinction, DistinctionReport, SameOrbit};
use nielsen_core::trisection::{CompareMode, TrisectionComparison, TrisectionData};

pub const REPORT_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
    pub notes: Vec<String>,
    pub summary: Vec<String>,
}

#[derive(Serialize)]
pub struct Answer {
    pub quotient: String,
    /// `same`, `different` or `unknown`.
    pub answer: &'static str,
    /// Moves taking the first image to the second, when found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Size of the fully enumerated orbit, for `different`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    /// States visited before hitting the cap, for `unknown`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explored: Option<usize>,
}

#[derive(Serialize)]
pub struct Distinguish {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certifying_quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    pub cap: usize,
    pub answers: Vec<Answer>,
}

impl Distinguish {
    pub fn new(r: &DistinctionReport, cap: usize) -> Distinguish {
        let (verdict, certifying_quotient, orbit_size) = match &r.verdict {
            Distinction::Distinct { quotient, orbit_size } => ("Distinct", Some(quotient.clone()), Some(*orbit_size)),
            Distinction::Inconclusive => ("Inconclusive", None, None),
        };
        let answers = r
            .outcomes
            .iter()
            .map(|o| {
                let mut a =
                    Answer { quotient: o.quotient.clone(), answer: "", witness: None, orbit_size: None, explored: None };
                match &o.answer {
                    SameOrbit::Yes { witness } => {
                        a.answer = "same";
                        a.witness = Some(format_log(witness).lines().map(str::to_string).collect());
                    }
                    SameOrbit::No { orbit_size } => {
                        a.answer = "different";
                        a.orbit_size = Some(*orbit_size);
                    }
                    SameOrbit::Inconclusive { explored } => {
                        a.answer = "unknown";
                        a.explored = Some(*explored);
                    }
                }
                a
            })
            .collect();
        Distinguish { verdict, certifying_quotient, orbit_size, cap, answers }
    }
}

#[derive(Serialize)]
pub struct SectorPair {
    pub left: usize,
    pub right: usize,
    /// Set when the two sectors have different genera.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus_mismatch: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Distinguish>,
}

#[derive(Serialize)]
pub struct Matching {
    pub matching: [usize; 3],
    pub ruled_out_by: Option<[usize; 2]>,
}

#[derive(Serialize)]
pub struct Comparison {
    pub mode: &'static str,
    pub verdict: String,
    pub pairs: Vec<SectorPair>,
    pub matchings: Vec<Matching>,
}

impl Comparison {
    pub fn new(c: &TrisectionComparison, k1: [usize; 3], k2: [usize; 3], cap: usize) -> Comparison {
        Comparison {
            mode: match c.mode {
                CompareMode::Labeled => "labeled",
                CompareMode::Unlabeled => "unlabeled",
            },
            verdict: c.verdict.to_string(),
            pairs: c
                .pairs
                .iter()
                .map(|p| SectorPair {
                    left: p.left,
                    right: p.right,
                    genus_mismatch: p.report.is_none().then(|| [k1[p.left - 1], k2[p.right - 1]]),
                    result: p.report.as_ref().map(|r| Distinguish::new(r, cap)),
                })
                .collect(),
            matchings: c
                .matchings
                .iter()
                .map(|m| Matching { matching: m.matching, ruled_out_by: m.ruled_out_by.map(|(a, b)| [a, b]) })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Shape {
    pub g: usize,
    pub k: [usize; 3],
}

impl From<&TrisectionData> for Shape {
    fn from(t: &TrisectionData) -> Shape {
        Shape { g: t.g, k: t.k }
    }
}
