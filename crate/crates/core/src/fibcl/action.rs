use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::json::{base_dir, read_file, resolve_category, CatRef, RawMapping};
use crate::fincat::{FinCat, FinFunctor};

/// A strict functor G: B^op → Cat: a category per object of B and, for β: b → b',
/// a functor G(β): G(b') → G(b), with G(id) = id and G(β'∘β) = G(β)∘G(β') on the nose.
#[derive(Clone, Debug, PartialEq)]
pub struct StrictAction {
    base: Arc<FinCat>,
    fibers: Vec<Arc<FinCat>>,
    maps: Vec<FinFunctor>,
}

impl StrictAction {
    pub fn new(base: Arc<FinCat>, fibers: Vec<Arc<FinCat>>, maps: Vec<FinFunctor>) -> Result<Self> {
        if fibers.len() != base.num_objects() || maps.len() != base.num_morphisms() {
            return Err(Error::NotStrict("one fiber per object and one functor per morphism are required".into()));
        }
        for beta in 0..base.num_morphisms() as u32 {
            let g = &maps[beta as usize];
            let (b, b2) = (base.src(beta), base.tgt(beta));
            if **g.source() != *fibers[b2 as usize] || **g.target() != *fibers[b as usize] {
                return Err(Error::NotStrict(format!(
                    "G({}) must go from G({}) to G({})",
                    base.name(beta),
                    base.object_name(b2),
                    base.object_name(b)
                )));
            }
            if base.is_identity(beta) && !g.is_identity() {
                return Err(Error::NotStrict(format!("G({}) is not the identity", base.name(beta))));
            }
        }
        for (second, first) in base.pairs() {
            let composite = &maps[base.compose(second, first) as usize];
            let expected = maps[second as usize].then(&maps[first as usize])?;
            if expected.object_map() != composite.object_map() || expected.morphism_map() != composite.morphism_map() {
                return Err(Error::NotStrict(format!(
                    "G({}∘{}) differs from G({})∘G({})",
                    base.name(second),
                    base.name(first),
                    base.name(first),
                    base.name(second)
                )));
            }
        }
        Ok(StrictAction { base, fibers, maps })
    }

    /// The constant functor at `c`: every G(β) is the identity.
    pub fn constant(base: Arc<FinCat>, c: Arc<FinCat>) -> Self {
        let fibers = vec![c.clone(); base.num_objects()];
        let maps = vec![FinFunctor::identity(c); base.num_morphisms()];
        StrictAction { base, fibers, maps }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn fiber(&self, b: u32) -> &Arc<FinCat> {
        &self.fibers[b as usize]
    }

    /// G(β): G(tgt β) → G(src β).
    pub fn map(&self, beta: u32) -> &FinFunctor {
        &self.maps[beta as usize]
    }

    /// Whether the base is a group (one object, every morphism invertible).
    pub fn is_group_action(&self) -> bool {
        self.base.num_objects() == 1 && (0..self.base.num_morphisms() as u32).all(|g| self.base.is_iso(g))
    }

    pub fn from_raw(raw: &RawStrictAction, dir: &Path, size_guard: usize) -> Result<Self> {
        let base = Arc::new(resolve_category(&raw.base, dir, size_guard)?);
        for name in raw.fibers.keys() {
            base.object_id(name)?;
        }
        let fibers = base
            .objects()
            .iter()
            .map(|o| {
                let r = raw.fibers.get(o).ok_or_else(|| Error::MissingStructureMap(format!("fiber over {o}")))?;
                Ok(Arc::new(resolve_category(r, dir, size_guard)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut given: BTreeMap<u32, &RawMapping> = BTreeMap::new();
        for m in &raw.maps {
            let beta = base.morphism_id(&m.beta)?;
            if given.insert(beta, &m.functor).is_some() {
                return Err(Error::InvalidEntry(format!("functor for {} given twice", m.beta)));
            }
        }
        let maps = (0..base.num_morphisms() as u32)
            .map(|beta| {
                let (s, t) = (fibers[base.tgt(beta) as usize].clone(), fibers[base.src(beta) as usize].clone());
                match given.get(&beta) {
                    Some(m) => FinFunctor::from_name_maps(&m.object_map, &m.morphism_map, s, t),
                    None if base.is_identity(beta) => Ok(FinFunctor::identity(s)),
                    None => Err(Error::MissingStructureMap(format!("functor for {}", base.name(beta)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        StrictAction::new(base, fibers, maps)
    }

    /// Inline categories; identity functors of identity morphisms are omitted.
    pub fn to_raw(&self) -> RawStrictAction {
        let b = &*self.base;
        RawStrictAction {
            base: CatRef::Inline(b.to_raw()),
            fibers: (0..b.num_objects() as u32)
                .map(|o| (b.object_name(o).to_string(), CatRef::Inline(self.fibers[o as usize].to_raw())))
                .collect(),
            maps: (0..b.num_morphisms() as u32)
                .filter(|&beta| !b.is_identity(beta))
                .map(|beta| RawActionMap { beta: b.name(beta).to_string(), functor: self.maps[beta as usize].to_mapping() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawActionMap {
    pub beta: String,
    pub functor: RawMapping,
}

/// `{"base": <category>, "fibers": {object: <category>}, "maps": [{"beta", "functor"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStrictAction {
    pub base: CatRef,
    pub fibers: BTreeMap<String, CatRef>,
    pub maps: Vec<RawActionMap>,
}

pub fn load_action(path: &Path, size_guard: usize) -> Result<StrictAction> {
    StrictAction::from_raw(&read_file::<RawStrictAction>(path)?, &base_dir(path), size_guard)
}
