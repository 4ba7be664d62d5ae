//! Seeded random instances (u: E → B, D over F_2) with E free on a small acyclic quiver.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactalg::{ExactMatrix, Ring};
use crate::fincat::{self as fixtures, FinCat, FinFunctor};
use crate::natsys::{zc_bimodule, Module, NaturalSystem};

/// A random functor and F_2 natural system; |Mor E| ≤ `max_morphisms`.
pub fn random_instance(seed: u64, max_morphisms: usize) -> Result<(FinFunctor, NaturalSystem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Ring::ModP(2);
    let (b, poset_like) = match rng.gen_range(0..5) {
        0 => (fixtures::terminal(), true),
        1 => (fixtures::arrow(), true),
        2 => (fixtures::chain_poset(2)?, true),
        3 => (fixtures::cyclic_group(2)?, false),
        _ => (fixtures::walking_iso(), false),
    };
    let b = Arc::new(b);
    let (e, edges) = loop {
        let k = rng.gen_range(2..=4usize);
        let mut edges = Vec::new();
        for s in 0..k {
            for t in s + 1..k {
                let extra = usize::from(rng.gen_bool(0.2));
                for _ in 0..rng.gen_range(0..=1 + extra) {
                    edges.push((s, t));
                }
            }
        }
        let objects: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
        let names: Vec<String> = (0..edges.len()).map(|i| format!("e{i}")).collect();
        let quiver: Vec<(&str, &str, &str)> =
            edges.iter().zip(&names).map(|(&(s, t), n)| (n.as_str(), objects[s].as_str(), objects[t].as_str())).collect();
        let objs: Vec<&str> = objects.iter().map(String::as_str).collect();
        let e = fixtures::free_category(&objs, &quiver)?;
        if e.num_morphisms() <= max_morphisms {
            break (e, edges);
        }
    };
    let e = Arc::new(e);
    // Objects are topologically sorted, so a monotone object map into a chain poset
    // leaves every edge a nonempty hom-set.
    let nb = b.num_objects() as u32;
    let mut obj_map: Vec<u32> = (0..e.num_objects()).map(|_| rng.gen_range(0..nb)).collect();
    if poset_like {
        obj_map.sort_unstable();
    }
    let edge_image: Vec<u32> = edges
        .iter()
        .map(|&(s, t)| {
            let hom = b.hom(obj_map[s], obj_map[t]);
            hom[rng.gen_range(0..hom.len())]
        })
        .collect();
    let u = extend_from_edges(e.clone(), b.clone(), obj_map, |k| edge_image[k])?;
    let d = match rng.gen_range(0..4) {
        0 => NaturalSystem::trivial(e.clone(), ring, 1)?,
        1 => NaturalSystem::from_bimodule(&zc_bimodule(e.clone(), ring)?)?,
        2 => NaturalSystem::from_bimodule(&zc_bimodule(b.clone(), ring)?)?.pullback(&u)?,
        _ => {
            let dims: Vec<usize> = (0..e.num_objects()).map(|_| rng.gen_range(0..=2)).collect();
            let edge_mats: Vec<ExactMatrix> = edges
                .iter()
                .map(|&(s, t)| {
                    let mut m = ExactMatrix::zeros(ring, dims[t], dims[s]);
                    for i in 0..dims[t] {
                        for j in 0..dims[s] {
                            if rng.gen_bool(0.5) {
                                m.set(i, j, BigRational::from_integer(1.into()));
                            }
                        }
                    }
                    m
                })
                .collect();
            let matrices = (0..e.num_morphisms() as u32)
                .map(|f| path_product(&e, f, ring, &dims, &edge_mats))
                .collect::<Result<Vec<_>>>()?;
            NaturalSystem::from_module(&Module::new(e.clone(), ring, dims, matrices)?)?
        }
    };
    Ok((u, d))
}

/// Edge indices of a path morphism of a free category, first edge first.
fn path(e: &FinCat, f: u32) -> Vec<usize> {
    if e.is_identity(f) {
        return Vec::new();
    }
    e.name(f).rsplit('.').map(|s| s[1..].parse().expect("edge name")).collect()
}

fn path_product(e: &FinCat, f: u32, ring: Ring, dims: &[usize], edge_mats: &[ExactMatrix]) -> Result<ExactMatrix> {
    let mut acc = ExactMatrix::identity(ring, dims[e.src(f) as usize]);
    for k in path(e, f) {
        acc = edge_mats[k].mul(&acc)?;
    }
    Ok(acc)
}

/// The functor out of a free category determined by its values on edges.
fn extend_from_edges(e: Arc<FinCat>, b: Arc<FinCat>, obj_map: Vec<u32>, edge: impl Fn(usize) -> u32) -> Result<FinFunctor> {
    let mor_map = (0..e.num_morphisms() as u32)
        .map(|f| path(&e, f).into_iter().fold(b.identity(obj_map[e.src(f) as usize]), |acc, k| b.compose(edge(k), acc)))
        .collect();
    FinFunctor::new(e, b, obj_map, mor_map)
}
