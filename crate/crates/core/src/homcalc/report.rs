use serde::{Deserialize, Serialize};

use crate::exactalg::presentation::PresentationJson;
use crate::exactalg::{DegreeResult, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<serde_json::Value>,
    pub upper_bound_only: bool,
}

/// `{"theory": …, "ring": …, "results": [{"n", "rank", "torsion", "upper_bound_only"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub theory: String,
    pub ring: String,
    pub results: Vec<ReportEntry>,
}

impl Report {
    pub fn new(theory: &str, ring: Ring, results: &[DegreeResult]) -> Self {
        Report {
            theory: theory.to_string(),
            ring: ring.to_string(),
            results: results
                .iter()
                .map(|r| {
                    let p = PresentationJson::from(&r.group);
                    ReportEntry { n: r.n, rank: p.rank, torsion: p.torsion, upper_bound_only: r.upper_bound_only }
                })
                .collect(),
        }
    }
}
