//! Spectral sequences of a functor u: E → B.
//!
//! For each morphism β of B the comma category β/Fu (or Fu/β in homology mode) over the
//! factorization functor Fu: F E → F B carries the module D∘Q^β. Its (co)homology,
//! varying with β, is a module 𝓗^q on F B, i.e. a natural system on B, and
//!
//!   E2^{p,q} = H^p_BW(B, 𝓗^q) ⇒ H^{p+q}_BW(E, D).
//!
//! Structure maps come from restriction along τ_m: β₂/Fu → β₁/Fu, (f, φ) ↦ (f, φ∘m),
//! for each F B-morphism m: β₁ → β₂, read in fixed cocycle bases.

mod random;
mod verdict;

use serde::{Deserialize, Serialize};

pub use random::random_instance;
pub use verdict::{check_consistency, Degeneration, Verdict};

use crate::error::{Error, Result};
use crate::exactalg::field::{with_field, Field, SparseVec};
use crate::exactalg::induced::{induced_matrix, HomologyBasis};
use crate::exactalg::{ExactMatrix, GroupPresentation, Ring, SparseMatrix};
use crate::fincat::{comma_over, comma_under, factorization, factorization_functor, Comma, Factorization, FinFunctor};
use crate::homcalc::{
    bar_chain_complex, bar_cochain_complex, bw_cohomology_range, bw_homology_range, restriction_maps, BuiltComplex,
    Degrees,
};
use crate::natsys::{Module, NaturalSystem};
use crate::par;

pub const DEFAULT_COMMA_GUARD: usize = 3000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cohomology,
    Homology,
}

/// β/Fu or Fu/β.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Under,
    Over,
}

impl Mode {
    pub fn direction(self) -> Direction {
        match self {
            Mode::Cohomology => Direction::Under,
            Mode::Homology => Direction::Over,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct E2Options {
    pub mode: Mode,
    pub normalized: bool,
    pub comma_guard: usize,
}

impl Default for E2Options {
    fn default() -> Self {
        E2Options { mode: Mode::Cohomology, normalized: true, comma_guard: DEFAULT_COMMA_GUARD }
    }
}

/// u together with F E, F B and Fu, built once and shared by all commas.
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub u: FinFunctor,
    pub fe: Factorization,
    pub fb: Factorization,
    pub fu: FinFunctor,
}

impl FunctorData {
    pub fn new(u: &FinFunctor) -> Result<Self> {
        let fe = factorization(u.source().clone())?;
        let fb = factorization(u.target().clone())?;
        let fu = factorization_functor(u, &fe, &fb)?;
        Ok(FunctorData { u: u.clone(), fe, fb, fu })
    }

    /// β/Fu or Fu/β for a morphism β of B.
    pub fn comma(&self, beta: u32, direction: Direction, guard: usize) -> Result<Comma> {
        if beta as usize >= self.fb.cat.num_objects() {
            return Err(Error::MorphismNotFound(format!("morphism index {beta}")));
        }
        match direction {
            Direction::Under => comma_under(&self.fu, beta, guard),
            Direction::Over => comma_over(&self.fu, beta, guard),
        }
    }
}

/// The comma category of a morphism β of B over Fu, with its forgetful functor to F E.
pub fn comma_of_morphism(u: &FinFunctor, beta: u32, direction: Direction, guard: usize) -> Result<Comma> {
    FunctorData::new(u)?.comma(beta, direction, guard)
}

/// 𝓗^q (or 𝓗_q) as a module on F B and as a natural system on B.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    pub q: usize,
    pub mode: Mode,
    pub module: Module,
    pub system: NaturalSystem,
}

/// Everything computed over the commas, reused by the page and its bounded extension.
struct Commas {
    systems: Vec<CoefficientSystem>,
    /// Longest nondegenerate chain over all commas, when every comma is loop-free.
    longest: Option<usize>,
}

struct Side<F: Field> {
    comma: Comma,
    built: BuiltComplex,
    bases: Vec<HomologyBasis<F>>,
}

fn side<F: Field>(field: &F, data: &FunctorData, dfe: &Module, beta: u32, q_top: usize, opts: &E2Options) -> Result<Side<F>> {
    let comma = data.comma(beta, opts.mode.direction(), opts.comma_guard)?;
    let m = dfe.pullback(&comma.q)?;
    let built = match opts.mode {
        Mode::Cohomology => bar_cochain_complex(&m, q_top + 1, opts.normalized)?,
        Mode::Homology => bar_chain_complex(&m, q_top + 1, opts.normalized)?,
    };
    let bases = (0..=q_top)
        .map(|q| HomologyBasis::new(field.clone(), &built.complex, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(Side { comma, built, bases })
}

/// τ_m between the commas of β₁ = src m and β₂ = tgt m: from β₂/Fu to β₁/Fu in
/// cohomology, from Fu/β₁ to Fu/β₂ in homology. Checked against Q on the nose.
fn tau(fb: &Factorization, m: u32, from: &Comma, to: &Comma) -> Result<FinFunctor> {
    let obj_map = from
        .objects()
        .iter()
        .map(|&(f, phi)| {
            let phi2 = if from.under { fb.cat.compose(phi, m) } else { fb.cat.compose(m, phi) };
            to.object_id(f, phi2).ok_or_else(|| Error::NotAFunctor(format!("comma object ({f}, {phi2}) missing")))
        })
        .collect::<Result<Vec<u32>>>()?;
    let mor_map = (0..from.cat.num_morphisms() as u32)
        .map(|k| {
            let anchor = if from.under { from.cat.src(k) } else { from.cat.tgt(k) };
            let g = from.q.morphism(k);
            to.morphism(obj_map[anchor as usize], g)
                .ok_or_else(|| Error::NotAFunctor(format!("comma morphism over {g} missing")))
        })
        .collect::<Result<Vec<u32>>>()?;
    let t = FinFunctor::new(from.cat.clone(), to.cat.clone(), obj_map, mor_map)?;
    let commutes = (0..from.cat.num_objects() as u32).all(|o| to.q.object(t.object(o)) == from.q.object(o))
        && (0..from.cat.num_morphisms() as u32).all(|k| to.q.morphism(t.morphism(k)) == from.q.morphism(k));
    if !commutes {
        return Err(Error::NotAFunctor(format!("comma functor of F B-morphism {m} does not commute with Q")));
    }
    Ok(t)
}

fn to_exact<F: Field>(field: &F, ring: Ring, rows: usize, cols: usize, m: Vec<Vec<F::Elem>>) -> Result<ExactMatrix> {
    let entries = m.into_iter().map(|r| r.iter().map(|x| field.to_rational(x)).collect()).collect();
    ExactMatrix::from_rows(ring, rows, cols, entries)
}

fn commas_over_field<F: Field>(field: F, data: &FunctorData, d: &NaturalSystem, q_top: usize, opts: &E2Options) -> Result<Commas> {
    let dfe = d.to_fc_module(&data.fe)?;
    let fb = &data.fb;
    let sides: Vec<Side<F>> =
        par::try_map_range(fb.cat.num_objects(), |beta| side(&field, data, &dfe, beta as u32, q_top, opts))?;
    let longest = sides.iter().map(|s| s.comma.cat.longest_nondegenerate_chain()).collect::<Option<Vec<_>>>();
    let longest = longest.map(|v| v.into_iter().max().unwrap_or(0));
    let ring = field.ring();
    // maps[m][q]
    let maps: Vec<Vec<ExactMatrix>> = par::try_map_range(fb.cat.num_morphisms(), |m| -> Result<Vec<ExactMatrix>> {
        let m = m as u32;
        let (s1, s2) = (&sides[fb.cat.src(m) as usize], &sides[fb.cat.tgt(m) as usize]);
        let columns: Vec<Vec<SparseVec<F::Elem>>> = match opts.mode {
            Mode::Cohomology => {
                let t = tau(fb, m, &s2.comma, &s1.comma)?;
                let r = restriction_maps(&s1.built, &s2.built, &t)?;
                r.iter().map(|x| x.field_columns(&field)).collect()
            }
            Mode::Homology => {
                let t = tau(fb, m, &s1.comma, &s2.comma)?;
                let r: Vec<SparseMatrix> = restriction_maps(&s2.built, &s1.built, &t)?;
                // Columns of the pushforward are rows of the restriction.
                r.iter().map(|x| x.field_rows(&field)).collect()
            }
        };
        (0..=q_top)
            .map(|q| {
                let (a, b) = (&s1.bases[q], &s2.bases[q]);
                to_exact(&field, ring, b.dim(), a.dim(), induced_matrix(&field, a, b, &columns[q])?)
            })
            .collect()
    })?;
    let systems = (0..=q_top)
        .map(|q| {
            let dims = sides.iter().map(|s| s.bases[q].dim()).collect();
            let matrices = maps.iter().map(|v| v[q].clone()).collect();
            let module = Module::new(fb.cat.clone(), ring, dims, matrices)?;
            let system = NaturalSystem::from_fc_module(fb, &module)?;
            Ok(CoefficientSystem { q, mode: opts.mode, module, system })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Commas { systems, longest })
}

fn commas(data: &FunctorData, d: &NaturalSystem, q_top: usize, opts: &E2Options) -> Result<Commas> {
    if **d.base() != **data.u.source() {
        return Err(Error::NotAFunctor("natural system does not live on the source of u".into()));
    }
    with_field(
        d.ring(),
        |f| commas_over_field(f, data, d, q_top, opts),
        |f| commas_over_field(f, data, d, q_top, opts),
    )
}

/// 𝓗^q for q = 0..=q_max.
pub fn coefficient_systems(u: &FinFunctor, d: &NaturalSystem, q_max: usize, opts: &E2Options) -> Result<Vec<CoefficientSystem>> {
    Ok(commas(&FunctorData::new(u)?, d, q_max, opts)?.systems)
}

pub fn coefficient_system(u: &FinFunctor, d: &NaturalSystem, q: usize, opts: &E2Options) -> Result<CoefficientSystem> {
    Ok(coefficient_systems(u, d, q, opts)?.swap_remove(q))
}

/// The page restricted to p + q ≤ N, the abutment to N and, when every complex involved
/// is bounded, the whole page for the Euler check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    pub ring: Ring,
    pub mode: Mode,
    pub n_max: usize,
    /// `grid[p][q]` for p + q ≤ N.
    pub grid: Vec<Vec<GroupPresentation>>,
    pub abutment: Vec<GroupPresentation>,
    pub bounded: Option<BoundedPage>,
}

/// All nonzero dimensions of a page whose complexes are bounded by loop-freeness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPage {
    /// `grid[p][q]` for p ≤ P, q ≤ Q.
    pub grid: Vec<Vec<usize>>,
    pub abutment: Vec<usize>,
}

impl E2Page {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.grid[p][q].dim()
    }

    pub fn abutment_dims(&self) -> Vec<usize> {
        self.abutment.iter().map(|g| g.dim()).collect()
    }
}

fn base_page(system: &NaturalSystem, mode: Mode, p_max: usize, normalized: bool) -> Result<Vec<GroupPresentation>> {
    let deg = Degrees { max: p_max, truncated: false, normalized };
    let r = match mode {
        Mode::Cohomology => bw_cohomology_range(system, deg)?,
        Mode::Homology => bw_homology_range(system, deg)?,
    };
    Ok(r.into_iter().map(|x| x.group).collect())
}

fn abutment(d: &NaturalSystem, mode: Mode, n_max: usize, normalized: bool) -> Result<Vec<GroupPresentation>> {
    base_page(d, mode, n_max, normalized)
}

/// The E2 page of u with coefficients D up to total degree N, and its abutment.
pub fn e2_page(u: &FinFunctor, d: &NaturalSystem, n_max: usize, opts: &E2Options) -> Result<E2Page> {
    if !d.ring().is_field() {
        return Err(Error::RingNotField(d.ring().to_string()));
    }
    let data = FunctorData::new(u)?;
    let (e, b) = (u.source(), u.target());
    let outer = match (e.longest_nondegenerate_chain(), b.longest_nondegenerate_chain()) {
        (Some(le), Some(lb)) => Some((le, lb)),
        _ => None,
    };
    // A first pass to N decides loop-freeness of the commas; bounded pages are then
    // recomputed to their full height only when that exceeds N.
    let mut c = commas(&data, d, n_max, opts)?;
    let mut bounds = match (outer, c.longest) {
        (Some((le, lb)), Some(lq)) => Some((le, lb, lq)),
        _ => None,
    };
    if let Some((_, _, lq)) = bounds {
        if lq > n_max {
            c = commas(&data, d, lq, opts)?;
            if c.longest.is_none() {
                bounds = None;
            }
        }
    }
    let p_top = bounds.map_or(n_max, |(_, lb, _)| lb.max(n_max));
    let columns: Vec<Vec<GroupPresentation>> = par::try_map_range(c.systems.len(), |q| {
        let p_max = if bounds.is_some() { p_top } else { n_max - q.min(n_max) };
        base_page(&c.systems[q].system, opts.mode, p_max, opts.normalized)
    })?;
    let grid: Vec<Vec<GroupPresentation>> =
        (0..=n_max).map(|p| (0..=n_max - p).map(|q| columns[q][p].clone()).collect()).collect();
    let abut_top = bounds.map_or(n_max, |(le, _, _)| le.max(n_max));
    let full_abutment = abutment(d, opts.mode, abut_top, opts.normalized)?;
    let bounded = bounds.map(|(_, lb, lq)| BoundedPage {
        grid: (0..=lb).map(|p| (0..=lq).map(|q| columns[q][p].dim()).collect()).collect(),
        abutment: full_abutment.iter().map(|g| g.dim()).collect(),
    });
    Ok(E2Page {
        ring: d.ring(),
        mode: opts.mode,
        n_max,
        grid,
        abutment: full_abutment[..=n_max].to_vec(),
        bounded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub inequalities: String,
    pub degenerate: String,
    pub euler: String,
    pub violations: Vec<String>,
}

/// `{"ring", "N", "grid": [{p, q, dim}], "abutment", "verdict"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub ring: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub grid: Vec<GridEntry>,
    pub abutment: Vec<usize>,
    pub verdict: VerdictJson,
}

impl E2Report {
    pub fn new(page: &E2Page, verdict: &Verdict) -> Self {
        let mut grid = Vec::new();
        for (p, col) in page.grid.iter().enumerate() {
            for (q, g) in col.iter().enumerate() {
                grid.push(GridEntry { p, q, dim: g.dim() });
            }
        }
        E2Report {
            ring: page.ring.to_string(),
            n: page.n_max,
            grid,
            abutment: page.abutment_dims(),
            verdict: verdict.to_json(),
        }
    }
}


#[cfg(test)]
mod tests;
