use serde::{Deserialize, Serialize};

use super::Fibration;
use crate::error::Result;
use crate::exactalg::presentation::PresentationJson;
use crate::exactalg::{induced_map, GroupPresentation};
use crate::homcalc::{bw_cochain_complex, restriction_maps};
use crate::natsys::NaturalSystem;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalStatus {
    /// The restriction along j_b is invertible (field coefficients).
    Isomorphic,
    NotIsomorphic,
    /// Over ℤ only the two presentations are compared.
    PresentationEqual,
    PresentationDiffers,
}

impl LocalStatus {
    pub fn is_local(self) -> bool {
        matches!(self, LocalStatus::Isomorphic | LocalStatus::PresentationEqual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityEntry {
    pub b: u32,
    pub q: usize,
    /// H^q(b/u, D_b)
    pub comma: GroupPresentation,
    /// H^q(E_b, D∘F i_b)
    pub fiber: GroupPresentation,
    pub status: LocalStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityReport {
    pub entries: Vec<LocalityEntry>,
}

impl LocalityReport {
    pub fn is_local(&self) -> bool {
        self.entries.iter().all(|e| e.status.is_local())
    }

    pub fn to_json(&self, fib: &Fibration) -> LocalityJson {
        LocalityJson {
            local: self.is_local(),
            entries: self
                .entries
                .iter()
                .map(|e| LocalityEntryJson {
                    b: fib.base().object_name(e.b).to_string(),
                    q: e.q,
                    comma: PresentationJson::from(&e.comma),
                    fiber: PresentationJson::from(&e.fiber),
                    verdict: e.status,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityEntryJson {
    pub b: String,
    pub q: usize,
    pub comma: PresentationJson,
    pub fiber: PresentationJson,
    pub verdict: LocalStatus,
}

/// `{"local": bool, "entries": [{"b", "q", "comma", "fiber", "verdict"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityJson {
    pub local: bool,
    pub entries: Vec<LocalityEntryJson>,
}

/// Compares H^q(b/u, D_b) with H^q(E_b, D∘F i_b) through restriction along j_b for every
/// object b of the base and q ≤ q_max.
pub fn is_local(fib: &Fibration, d: &NaturalSystem, q_max: usize) -> Result<LocalityReport> {
    let per_b = par::try_map_range(fib.base().num_objects(), |b| -> Result<Vec<LocalityEntry>> {
        let b = b as u32;
        let data = fib.fiber_data(b)?;
        let db = fib.db_system(d, &data)?;
        let restricted = db.pullback(&data.j)?;
        let source = bw_cochain_complex(&db, q_max + 1, true)?;
        let target = bw_cochain_complex(&restricted, q_max + 1, true)?;
        let (hs, ht) = (source.complex.all_homology()?, target.complex.all_homology()?);
        let maps = if d.ring().is_field() { Some(restriction_maps(&source, &target, &data.j)?) } else { None };
        (0..=q_max)
            .map(|q| {
                let (comma, fiber) = (hs[q].group.clone(), ht[q].group.clone());
                let status = match &maps {
                    Some(maps) => {
                        let m = induced_map(&source.complex, &target.complex, maps, q)?;
                        if m.rows() == m.cols() && m.is_invertible() {
                            LocalStatus::Isomorphic
                        } else {
                            LocalStatus::NotIsomorphic
                        }
                    }
                    None if comma == fiber => LocalStatus::PresentationEqual,
                    None => LocalStatus::PresentationDiffers,
                };
                Ok(LocalityEntry { b, q, comma, fiber, status })
            })
            .collect()
    })?;
    Ok(LocalityReport { entries: per_b.into_iter().flatten().collect() })
}
