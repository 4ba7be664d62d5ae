use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{grothendieck, Fibration, StrictAction};
use crate::andre::{check_consistency, E2Page, E2Report, Mode};
use crate::error::{Error, Result};
use crate::exactalg::field::{with_field, Field};
use crate::exactalg::induced::{check_chain_map, induced_matrix, HomologyBasis};
use crate::exactalg::{ExactMatrix, GroupPresentation, SparseMatrix};
use crate::fincat::{FinCat, FinFunctor, Morphism, Skeleton};
use crate::homcalc::{bw_cochain_complex, bw_cohomology_range, module_cohomology_range, BuiltComplex, Degrees};
use crate::natsys::json::{matrix_to_raw, RawMatrix};
use crate::natsys::{Module, NaturalSystem};
use crate::par;

/// H^q_BW(C, D|) as a G-module, one per q.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    pub q: usize,
    pub module: Module,
}

#[derive(Clone, Debug)]
pub struct CartanLeray {
    pub page: E2Page,
    pub modules: Vec<CoefficientModule>,
}

fn require_group(action: &StrictAction) -> Result<()> {
    if !action.is_group_action() {
        return Err(Error::NotAGroup(format!(
            "base has {} objects and {} morphisms, not all invertible",
            action.base().num_objects(),
            action.base().num_morphisms()
        )));
    }
    Ok(())
}

/// Checks that κ^* = D(κ, 1) is invertible for every cartesian κ and every f after it.
pub fn check_cartesian_inverting(fib: &Fibration, d: &NaturalSystem) -> Result<()> {
    let e = &*fib.total;
    for kappa in 0..e.num_morphisms() as u32 {
        if !fib.is_cartesian(kappa) {
            continue;
        }
        for &f in e.outgoing(e.tgt(kappa)) {
            if !d.right(f, kappa).is_invertible() {
                return Err(Error::NotCartesianInverting(format!("{} (acting on D({}))", e.name(kappa), e.name(f))));
            }
        }
    }
    Ok(())
}

/// The cochain map σ ↦ T∘σ∘G(γ) on the BW complex of D| over the fiber C, where
/// T_f = D(κ_x, 1)^{-1}∘D(1, κ_y): D(G(γ)f) → D(f) for f: x → y.
fn transport_maps(fib: &Fibration, d: &NaturalSystem, built: &BuiltComplex, gamma: u32) -> Result<Vec<SparseMatrix>> {
    let c = fib.action.fiber(0).clone();
    let g = fib.action.map(gamma);
    let ring = d.ring();
    let inc = |f: u32| {
        let (x2, h) = (c.tgt(f), f);
        fib.morphism(fib.base().identity(0), x2, h).expect("fiber morphism")
    };
    let transports: Vec<ExactMatrix> = (0..c.num_morphisms() as u32)
        .map(|f| {
            let kx = fib.lift(gamma, fib.object(0, c.src(f)))?;
            let ky = fib.lift(gamma, fib.object(0, c.tgt(f)))?;
            let right = d.right(inc(f), kx).inverse().ok_or_else(|| {
                Error::NotCartesianInverting(format!("{} (acting on D({}))", fib.total.name(kx), fib.total.name(inc(f))))
            })?;
            right.mul(d.left(ky, inc(g.morphism(f))))
        })
        .collect::<Result<Vec<_>>>()?;
    let nerve = &built.nerve;
    (0..=nerve.max_degree())
        .map(|n| {
            let level = nerve.level(n);
            let mut rows: Vec<Vec<(u32, BigRational)>> = Vec::with_capacity(built.complex.dims()[n]);
            for i in 0..level.len() {
                let chain = level.chain(i);
                let (image, comp): (Vec<u32>, u32) = if n == 0 {
                    (vec![g.object(chain[0])], c.identity(chain[0]))
                } else {
                    (chain.iter().map(|&f| g.morphism(f)).collect(), level.composite(i))
                };
                let j = level
                    .index_of(&image)
                    .ok_or_else(|| Error::NotAFunctor("action does not permute nerve chains".into()))?;
                let cols = built.block(n, j);
                let t = &transports[comp as usize];
                for r in 0..t.rows() {
                    let row = (0..t.cols())
                        .filter(|&k| !num_traits::Zero::is_zero(t.get(r, k)))
                        .map(|k| ((cols.start + k) as u32, t.get(r, k).clone()))
                        .collect();
                    rows.push(row);
                }
            }
            Ok(SparseMatrix::from_row_entries(ring, built.complex.dims()[n], built.complex.dims()[n], rows))
        })
        .collect()
}

fn coefficient_modules_over<F: Field>(
    field: F,
    fib: &Fibration,
    d: &NaturalSystem,
    restricted: &NaturalSystem,
    q_max: usize,
) -> Result<Vec<CoefficientModule>> {
    let built = bw_cochain_complex(restricted, q_max + 1, true)?;
    let bases =
        (0..=q_max).map(|q| HomologyBasis::new(field.clone(), &built.complex, q)).collect::<Result<Vec<_>>>()?;
    let group = fib.base().clone();
    let per_gamma = par::try_map_range(group.num_morphisms(), |gamma| -> Result<Vec<ExactMatrix>> {
        let maps = transport_maps(fib, d, &built, gamma as u32)?;
        check_chain_map(&built.complex, &built.complex, &maps)?;
        (0..=q_max)
            .map(|q| {
                let cols = maps[q].field_columns(&field);
                let m = induced_matrix(&field, &bases[q], &bases[q], &cols)?;
                let rows = m.iter().map(|r| r.iter().map(|x| field.to_rational(x)).collect()).collect();
                ExactMatrix::from_rows(field.ring(), bases[q].dim(), bases[q].dim(), rows)
            })
            .collect()
    })?;
    (0..=q_max)
        .map(|q| {
            let matrices = per_gamma.iter().map(|v| v[q].clone()).collect();
            let module = Module::new(group.clone(), field.ring(), vec![bases[q].dim()], matrices)?;
            Ok(CoefficientModule { q, module })
        })
        .collect()
}

/// The G-modules H^q_BW(C, D|) for q ≤ q_max, via transport along the cleavage.
///
/// The cartesian-inverting check runs before the group check: over a group every
/// cartesian morphism is invertible, so only a monoid base can fail it.
pub fn coefficient_modules(fib: &Fibration, d: &NaturalSystem, q_max: usize) -> Result<Vec<CoefficientModule>> {
    if **d.base() != *fib.total {
        return Err(Error::NotAFunctor("natural system does not live on the total category".into()));
    }
    check_cartesian_inverting(fib, d)?;
    require_group(&fib.action)?;
    if !d.ring().is_field() {
        return Err(Error::RingNotField(d.ring().to_string()));
    }
    let data = fib.fiber_data(0)?;
    let restricted = d.pullback(&data.i)?;
    with_field(
        d.ring(),
        |f| coefficient_modules_over(f, fib, d, &restricted, q_max),
        |f| coefficient_modules_over(f, fib, d, &restricted, q_max),
    )
}

/// E2^{p,q} = H^p(G, H^q_BW(C, D|)) ⇒ H^{p+q}_BW(∫, D) for a strict group action.
pub fn cartan_leray(action: &StrictAction, d: &NaturalSystem, n_max: usize) -> Result<CartanLeray> {
    let fib = grothendieck(action)?;
    let modules = coefficient_modules(&fib, d, n_max)?;
    let columns = par::try_map_range(modules.len(), |q| -> Result<Vec<GroupPresentation>> {
        let r = module_cohomology_range(&modules[q].module, Degrees::exact(n_max - q))?;
        Ok(r.into_iter().map(|x| x.group).collect())
    })?;
    let grid = (0..=n_max).map(|p| (0..=n_max - p).map(|q| columns[q][p].clone()).collect()).collect();
    let abutment = bw_cohomology_range(d, Degrees::exact(n_max))?.into_iter().map(|x| x.group).collect();
    let page = E2Page { ring: d.ring(), mode: Mode::Cohomology, n_max, grid, abutment, bounded: None };
    Ok(CartanLeray { page, modules })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientModuleJson {
    pub q: usize,
    pub dim: usize,
    /// One matrix per non-identity group element, in morphism order.
    pub action: Vec<RawMatrix>,
}

/// The E2 report extended with `"coefficient_modules"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanLerayReport {
    #[serde(flatten)]
    pub e2: E2Report,
    pub coefficient_modules: Vec<CoefficientModuleJson>,
}

impl CartanLerayReport {
    pub fn new(cl: &CartanLeray) -> Self {
        let verdict = check_consistency(&cl.page);
        CartanLerayReport {
            e2: E2Report::new(&cl.page, &verdict),
            coefficient_modules: cl
                .modules
                .iter()
                .map(|m| {
                    let g = m.module.base();
                    CoefficientModuleJson {
                        q: m.q,
                        dim: m.module.dim(0),
                        action: (0..g.num_morphisms() as u32)
                            .filter(|&x| !g.is_identity(x))
                            .map(|x| matrix_to_raw(m.module.matrix(x)))
                            .collect(),
                    }
                })
                .collect(),
        }
    }
}

/// Free iff no non-identity group element fixes an object of the fiber.
pub fn is_free(action: &StrictAction) -> Result<bool> {
    require_group(action)?;
    let g = action.base();
    let c = action.fiber(0);
    Ok((0..g.num_morphisms() as u32)
        .filter(|&x| !g.is_identity(x))
        .all(|x| (0..c.num_objects() as u32).all(|o| action.map(x).object(o) != o)))
}

/// The orbit category C/G of a free action, with the comparison functor ∫G → C/G.
pub fn orbit_category(action: &StrictAction) -> Result<(Arc<FinCat>, FinFunctor)> {
    if !is_free(action)? {
        return Err(Error::InvalidArgument("orbit categories are only built for free actions".into()));
    }
    let g = action.base();
    let c = action.fiber(0).clone();
    let orbit = |n: usize, image: &dyn Fn(u32, u32) -> u32| -> (Vec<u32>, Vec<u32>) {
        // rep[k] = least element of the orbit of k; reps lists them in order.
        let rep: Vec<u32> = (0..n as u32).map(|k| (0..g.num_morphisms() as u32).map(|x| image(x, k)).min().unwrap()).collect();
        let mut reps: Vec<u32> = rep.clone();
        reps.sort_unstable();
        reps.dedup();
        (rep, reps)
    };
    let (obj_rep, obj_reps) = orbit(c.num_objects(), &|x, o| action.map(x).object(o));
    let (mor_rep, mor_reps) = orbit(c.num_morphisms(), &|x, f| action.map(x).morphism(f));
    let obj_id: HashMap<u32, u32> = obj_reps.iter().enumerate().map(|(i, &o)| (o, i as u32)).collect();
    let mor_id: HashMap<u32, u32> = mor_reps.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    let morphisms = mor_reps
        .iter()
        .map(|&f| Morphism {
            name: format!("[{}]", c.name(f)),
            src: obj_id[&obj_rep[c.src(f) as usize]],
            tgt: obj_id[&obj_rep[c.tgt(f) as usize]],
        })
        .collect();
    let identities = obj_reps.iter().map(|&o| mor_id[&mor_rep[c.identity(o) as usize]]).collect();
    let objects = obj_reps.iter().map(|&o| format!("[{}]", c.object_name(o))).collect();
    let quotient = FinCat::construct(Skeleton { objects, morphisms, identities }, |second, first| {
        let (f, h) = (mor_reps[first as usize], mor_reps[second as usize]);
        // Translate h so that it starts where f ends; freeness makes the translate unique.
        let y = c.tgt(f);
        let shifted = (0..g.num_morphisms() as u32)
            .map(|x| action.map(x).morphism(h))
            .find(|&h2| c.src(h2) == y)
            .ok_or_else(|| Error::InvalidArgument("orbits are not composable".into()))?;
        Ok(mor_id[&mor_rep[c.compose(shifted, f) as usize]])
    })?;
    let quotient = Arc::new(quotient);
    let fib = grothendieck(action)?;
    let e = &*fib.total;
    let obj_map = (0..e.num_objects() as u32).map(|o| obj_id[&obj_rep[fib.object_pair(o).1 as usize]]).collect();
    let mor_map = (0..e.num_morphisms() as u32).map(|k| mor_id[&mor_rep[fib.morphism_triple(k).2 as usize]]).collect();
    let pi = FinFunctor::new(fib.total.clone(), quotient.clone(), obj_map, mor_map)?;
    Ok((quotient, pi))
}
