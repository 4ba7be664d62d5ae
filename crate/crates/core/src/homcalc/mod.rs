//! (Co)homology engines: the Baues-Wirsching cochain complex, bar complexes of modules
//! (giving lim^n and colim_n, and BW homology over the factorization category),
//! Hochschild-Mitchell (co)homology, direct limit/colimit oracles and induced maps.

mod assemble;
mod limits;
mod report;

use std::sync::Arc;

pub use assemble::{restriction_maps, BuiltComplex};
pub use limits::{colimit, limit};
pub use report::{Report, ReportEntry};

use crate::error::{Error, Result};
use crate::exactalg::{induced_map, DegreeResult, ExactMatrix, GroupPresentation, Ring};
use crate::fincat::{factorization, FinFunctor, Nerve};
use crate::natsys::{Bimodule, Module, NaturalSystem};

/// How far to build a complex for a requested range of degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degrees {
    /// Highest degree reported.
    pub max: usize,
    /// Build exactly to `max`, leaving the top degree as an upper bound; otherwise the
    /// complex is built one degree further so every reported value is exact.
    pub truncated: bool,
    pub normalized: bool,
}

impl Degrees {
    pub fn exact(max: usize) -> Self {
        Degrees { max, truncated: false, normalized: true }
    }

    fn top(&self) -> usize {
        if self.truncated {
            self.max
        } else {
            self.max + 1
        }
    }
}

fn results(built: &BuiltComplex, deg: Degrees) -> Result<Vec<DegreeResult>> {
    let mut all = built.complex.all_homology()?;
    all.truncate(deg.max + 1);
    Ok(all)
}

/// The BW cochain complex C^n = ∏_λ D(f_1∘…∘f_n) in degrees `0..=top`.
pub fn bw_cochain_complex(d: &NaturalSystem, top: usize, normalized: bool) -> Result<BuiltComplex> {
    let nerve = Nerve::new(d.base(), top, normalized);
    assemble::bw(d, nerve)
}

pub fn bw_cohomology_range(d: &NaturalSystem, deg: Degrees) -> Result<Vec<DegreeResult>> {
    results(&bw_cochain_complex(d, deg.top(), deg.normalized)?, deg)
}

pub fn bw_cohomology(d: &NaturalSystem, n: usize) -> Result<GroupPresentation> {
    Ok(bw_cohomology_range(d, Degrees::exact(n))?.swap_remove(n).group)
}

/// Bar cochain complex of a covariant module: C^n = ∏ M(x_0) over chains x_0 ← … ← x_n.
pub fn bar_cochain_complex(m: &Module, top: usize, normalized: bool) -> Result<BuiltComplex> {
    let nerve = Nerve::new(m.base(), top, normalized);
    assemble::bar_cochain(m, nerve)
}

/// Bar chain complex of a covariant module: C_n = ⊕ M(x_n) over chains x_0 ← … ← x_n.
pub fn bar_chain_complex(m: &Module, top: usize, normalized: bool) -> Result<BuiltComplex> {
    let nerve = Nerve::new(m.base(), top, normalized);
    assemble::bar_chain(m, nerve)
}

/// lim^n over the base category of `m`.
pub fn module_cohomology_range(m: &Module, deg: Degrees) -> Result<Vec<DegreeResult>> {
    results(&bar_cochain_complex(m, deg.top(), deg.normalized)?, deg)
}

pub fn module_cohomology(m: &Module, n: usize) -> Result<GroupPresentation> {
    Ok(module_cohomology_range(m, Degrees::exact(n))?.swap_remove(n).group)
}

/// colim_n over the base category of `m`.
pub fn module_homology_range(m: &Module, deg: Degrees) -> Result<Vec<DegreeResult>> {
    results(&bar_chain_complex(m, deg.top(), deg.normalized)?, deg)
}

pub fn module_homology(m: &Module, n: usize) -> Result<GroupPresentation> {
    Ok(module_homology_range(m, Degrees::exact(n))?.swap_remove(n).group)
}

/// H^n(F C, D) with D read as a covariant module on the factorization category.
pub fn cohomology_via_fc_range(d: &NaturalSystem, deg: Degrees) -> Result<Vec<DegreeResult>> {
    let fc = factorization(d.base().clone())?;
    module_cohomology_range(&d.to_fc_module(&fc)?, deg)
}

pub fn cohomology_via_fc(d: &NaturalSystem, n: usize) -> Result<GroupPresentation> {
    Ok(cohomology_via_fc_range(d, Degrees::exact(n))?.swap_remove(n).group)
}

/// BW homology as colim_n over F C of D.
pub fn bw_homology_range(d: &NaturalSystem, deg: Degrees) -> Result<Vec<DegreeResult>> {
    let fc = factorization(d.base().clone())?;
    module_homology_range(&d.to_fc_module(&fc)?, deg)
}

pub fn bw_homology(d: &NaturalSystem, n: usize) -> Result<GroupPresentation> {
    Ok(bw_homology_range(d, Degrees::exact(n))?.swap_remove(n).group)
}

pub fn hochschild_cohomology_range(m: &Bimodule, deg: Degrees) -> Result<Vec<DegreeResult>> {
    bw_cohomology_range(&NaturalSystem::from_bimodule(m)?, deg)
}

pub fn hochschild_cohomology(m: &Bimodule, n: usize) -> Result<GroupPresentation> {
    bw_cohomology(&NaturalSystem::from_bimodule(m)?, n)
}

pub fn hochschild_homology_range(m: &Bimodule, deg: Degrees) -> Result<Vec<DegreeResult>> {
    bw_homology_range(&NaturalSystem::from_bimodule(m)?, deg)
}

pub fn hochschild_homology(m: &Bimodule, n: usize) -> Result<GroupPresentation> {
    bw_homology(&NaturalSystem::from_bimodule(m)?, n)
}

/// The map H^n_BW(C, D) → H^n_BW(C', φ^*D) induced by φ: C' → C, as a matrix in the
/// deterministic cocycle bases. Field coefficients only.
pub fn induced_on_bw(phi: &FinFunctor, d: &NaturalSystem, n: usize) -> Result<ExactMatrix> {
    if !d.ring().is_field() {
        return Err(Error::RingNotField(d.ring().to_string()));
    }
    let pulled = d.pullback(phi)?;
    let source = bw_cochain_complex(d, n + 1, true)?;
    let target = bw_cochain_complex(&pulled, n + 1, true)?;
    let maps = restriction_maps(&source, &target, phi)?;
    induced_map(&source.complex, &target.complex, &maps, n)
}

/// The constant coefficient system on a category, as used by the CLI `--ring` default.
pub fn trivial(cat: Arc<crate::fincat::FinCat>, ring: Ring) -> Result<NaturalSystem> {
    NaturalSystem::trivial(cat, ring, 1)
}
