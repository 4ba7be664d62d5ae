//! Finite categories, functors, nerves and the standard constructions on them.
//!
//! Objects and morphisms carry string names that are unique within their category;
//! internally everything is addressed by `u32` indices in declaration order.

mod constructions;
mod fixtures;
mod functor;
pub mod json;
mod nerve;

use std::collections::HashMap;

pub use constructions::{
    comma_over, comma_under, factorization, factorization_functor, is_equivalence, opposite, product, Comma,
    Factorization,
};
pub use fixtures::{
    arrow, chain_poset, cyclic_group, discrete, free_category, monoid_from_table, poset, standard_example, terminal,
    walking_iso, FIXTURE_NAMES,
};
pub use functor::FinFunctor;
pub use nerve::{Level, Nerve};

use crate::error::{Error, Result};

/// Default bound on the number of morphisms accepted when loading a category.
pub const DEFAULT_SIZE_GUARD: usize = 200;

/// The size guard in effect: `CATCOHOM_SIZE_GUARD` if set and valid, else the default.
pub fn default_size_guard() -> usize {
    std::env::var("CATCOHOM_SIZE_GUARD").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SIZE_GUARD)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: u32,
    pub tgt: u32,
}

/// A validated finite category.
///
/// Composition is stored per morphism `g` as a row indexed by the position of `f`
/// among the morphisms into `src g`, so `g∘f` is a single table lookup.
#[derive(Clone, Debug)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<u32>,
    is_identity: Vec<bool>,
    incoming: Vec<Vec<u32>>,
    outgoing: Vec<Vec<u32>>,
    in_pos: Vec<u32>,
    comp: Vec<Vec<u32>>,
    pair_offset: Vec<usize>,
    num_pairs: usize,
    object_index: HashMap<String, u32>,
    morphism_index: HashMap<String, u32>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

/// Unvalidated description: object names, morphisms by object index, identity per object.
pub(crate) struct Skeleton {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<u32>,
}

/// Constructions validate exhaustively only up to this many morphisms; beyond it the
/// construction itself is trusted (and covered by tests on small instances).
const CONSTRUCTION_CHECK_LIMIT: usize = 200;

impl FinCat {
    /// Builds the composition table from `compose` and checks the category axioms.
    /// Associativity is checked when `check_assoc` is set.
    pub(crate) fn assemble<C>(sk: Skeleton, compose: C, check_assoc: bool) -> Result<FinCat>
    where
        C: Fn(u32, u32) -> Result<u32>,
    {
        let Skeleton { objects, morphisms, identities } = sk;
        let n_obj = objects.len();
        let mut object_index = HashMap::with_capacity(n_obj);
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i as u32).is_some() {
                return Err(Error::MalformedCategory(format!("duplicate object {o}")));
            }
        }
        let mut morphism_index = HashMap::with_capacity(morphisms.len());
        let mut incoming = vec![Vec::new(); n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut in_pos = vec![0u32; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            if morphism_index.insert(m.name.clone(), i as u32).is_some() {
                return Err(Error::MalformedCategory(format!("duplicate morphism {}", m.name)));
            }
            if m.src as usize >= n_obj || m.tgt as usize >= n_obj {
                return Err(Error::ObjectNotFound(format!("endpoint of {}", m.name)));
            }
            in_pos[i] = incoming[m.tgt as usize].len() as u32;
            incoming[m.tgt as usize].push(i as u32);
            outgoing[m.src as usize].push(i as u32);
        }
        if identities.len() != n_obj {
            return Err(Error::BadIdentity("every object needs exactly one identity".into()));
        }
        let mut is_identity = vec![false; morphisms.len()];
        for (o, &id) in identities.iter().enumerate() {
            let m = morphisms
                .get(id as usize)
                .ok_or_else(|| Error::BadIdentity(format!("identity of {} is out of range", objects[o])))?;
            if m.src as usize != o || m.tgt as usize != o {
                return Err(Error::BadIdentity(format!("{} is not an endomorphism of {}", m.name, objects[o])));
            }
            is_identity[id as usize] = true;
        }
        let mut comp = Vec::with_capacity(morphisms.len());
        let mut pair_offset = Vec::with_capacity(morphisms.len());
        let mut num_pairs = 0usize;
        for (g, mg) in morphisms.iter().enumerate() {
            let row = incoming[mg.src as usize]
                .iter()
                .map(|&f| {
                    let h = compose(g as u32, f)?;
                    let mh = morphisms
                        .get(h as usize)
                        .ok_or_else(|| Error::MalformedCategory(format!("composite index {h} out of range")))?;
                    let mf = &morphisms[f as usize];
                    if mh.src != mf.src || mh.tgt != mg.tgt {
                        return Err(Error::MalformedCategory(format!(
                            "{}∘{} = {} has the wrong source or target",
                            mg.name, mf.name, mh.name
                        )));
                    }
                    Ok(h)
                })
                .collect::<Result<Vec<u32>>>()?;
            pair_offset.push(num_pairs);
            num_pairs += row.len();
            comp.push(row);
        }
        let cat = FinCat {
            objects,
            morphisms,
            identities,
            is_identity,
            incoming,
            outgoing,
            in_pos,
            comp,
            pair_offset,
            num_pairs,
            object_index,
            morphism_index,
        };
        cat.check_identity_laws()?;
        if check_assoc {
            cat.check_associativity()?;
        }
        Ok(cat)
    }

    /// [`FinCat::assemble`] for internal constructions.
    pub(crate) fn construct<C>(sk: Skeleton, compose: C) -> Result<FinCat>
    where
        C: Fn(u32, u32) -> Result<u32>,
    {
        let check = sk.morphisms.len() <= CONSTRUCTION_CHECK_LIMIT;
        Self::assemble(sk, compose, check)
    }

    fn check_identity_laws(&self) -> Result<()> {
        for f in 0..self.morphisms.len() as u32 {
            let m = &self.morphisms[f as usize];
            let left = self.compose(self.identities[m.tgt as usize], f);
            let right = self.compose(f, self.identities[m.src as usize]);
            if left != f || right != f {
                return Err(Error::BadIdentity(format!("identity law fails for {}", m.name)));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        for h in 0..self.morphisms.len() as u32 {
            for &g in &self.incoming[self.src(h) as usize] {
                let hg = self.compose(h, g);
                for &f in &self.incoming[self.src(g) as usize] {
                    let left = self.compose(h, self.compose(g, f));
                    let right = self.compose(hg, f);
                    if left != right {
                        return Err(Error::BrokenAssociativity {
                            h: self.name(h).into(),
                            g: self.name(g).into(),
                            f: self.name(f).into(),
                            left: self.name(left).into(),
                            right: self.name(right).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, o: u32) -> &str {
        &self.objects[o as usize]
    }

    pub fn name(&self, f: u32) -> &str {
        &self.morphisms[f as usize].name
    }

    pub fn src(&self, f: u32) -> u32 {
        self.morphisms[f as usize].src
    }

    pub fn tgt(&self, f: u32) -> u32 {
        self.morphisms[f as usize].tgt
    }

    pub fn identity(&self, o: u32) -> u32 {
        self.identities[o as usize]
    }

    pub fn identities(&self) -> &[u32] {
        &self.identities
    }

    pub fn is_identity(&self, f: u32) -> bool {
        self.is_identity[f as usize]
    }

    /// Morphisms with target `o`, ascending.
    pub fn incoming(&self, o: u32) -> &[u32] {
        &self.incoming[o as usize]
    }

    /// Morphisms with source `o`, ascending.
    pub fn outgoing(&self, o: u32) -> &[u32] {
        &self.outgoing[o as usize]
    }

    /// `g∘f`. Panics unless `src g = tgt f`.
    pub fn compose(&self, g: u32, f: u32) -> u32 {
        debug_assert_eq!(self.src(g), self.tgt(f), "{} ∘ {} not composable", self.name(g), self.name(f));
        self.comp[g as usize][self.in_pos[f as usize] as usize]
    }

    pub fn try_compose(&self, g: u32, f: u32) -> Option<u32> {
        (self.src(g) == self.tgt(f)).then(|| self.compose(g, f))
    }

    /// Dense index of the composable pair `(g, f)`, in `0..num_pairs()`.
    pub fn pair_index(&self, g: u32, f: u32) -> usize {
        debug_assert_eq!(self.src(g), self.tgt(f));
        self.pair_offset[g as usize] + self.in_pos[f as usize] as usize
    }

    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    /// All composable pairs `(g, f)` in pair-index order.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.morphisms.len() as u32)
            .flat_map(move |g| self.incoming[self.src(g) as usize].iter().map(move |&f| (g, f)))
    }

    pub fn hom(&self, a: u32, b: u32) -> Vec<u32> {
        self.outgoing[a as usize].iter().copied().filter(|&f| self.tgt(f) == b).collect()
    }

    pub fn object_id(&self, name: &str) -> Result<u32> {
        self.object_index.get(name).copied().ok_or_else(|| Error::ObjectNotFound(name.into()))
    }

    pub fn morphism_id(&self, name: &str) -> Result<u32> {
        self.morphism_index.get(name).copied().ok_or_else(|| Error::MorphismNotFound(name.into()))
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: u32) -> Option<u32> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .into_iter()
            .find(|&g| self.compose(g, f) == self.identity(a) && self.compose(f, g) == self.identity(b))
    }

    pub fn is_iso(&self, f: u32) -> bool {
        self.inverse(f).is_some()
    }

    /// True when the non-identity morphisms form an acyclic relation on objects: no
    /// non-identity endomorphisms and no cycles, so nondegenerate chains are bounded.
    pub fn is_loop_free(&self) -> bool {
        self.longest_nondegenerate_chain().is_some()
    }

    /// Length of the longest chain of non-identity morphisms, `None` if unbounded.
    pub fn longest_nondegenerate_chain(&self) -> Option<usize> {
        let n = self.objects.len();
        let mut indeg = vec![0usize; n];
        let mut succ: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (f, m) in self.morphisms.iter().enumerate() {
            if !self.is_identity[f] {
                if m.src == m.tgt {
                    return None;
                }
                succ[m.src as usize].push(m.tgt);
                indeg[m.tgt as usize] += 1;
            }
        }
        let mut depth = vec![0usize; n];
        let mut stack: Vec<usize> = (0..n).filter(|&o| indeg[o] == 0).collect();
        let mut seen = 0;
        while let Some(o) = stack.pop() {
            seen += 1;
            for &t in &succ[o] {
                let t = t as usize;
                depth[t] = depth[t].max(depth[o] + 1);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
    }

    /// Loads a category from its raw description, enforcing the morphism-count guard.
    pub fn from_raw(raw: &json::RawCategory, size_guard: usize) -> Result<FinCat> {
        if raw.morphisms.len() > size_guard {
            return Err(Error::SizeGuard { what: "category".into(), size: raw.morphisms.len(), limit: size_guard });
        }
        let mut object_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if object_index.insert(o.as_str(), i as u32).is_some() {
                return Err(Error::MalformedCategory(format!("duplicate object {o}")));
            }
        }
        let obj = |name: &str| object_index.get(name).copied().ok_or_else(|| Error::ObjectNotFound(name.into()));
        let mut morphisms = Vec::with_capacity(raw.morphisms.len());
        let mut mor_index = HashMap::new();
        for (i, m) in raw.morphisms.iter().enumerate() {
            morphisms.push(Morphism { name: m.name.clone(), src: obj(&m.src)?, tgt: obj(&m.tgt)? });
            if mor_index.insert(m.name.as_str(), i as u32).is_some() {
                return Err(Error::MalformedCategory(format!("duplicate morphism {}", m.name)));
            }
        }
        let mor = |name: &str| mor_index.get(name).copied().ok_or_else(|| Error::MorphismNotFound(name.into()));
        for o in raw.identities.keys() {
            obj(o)?;
        }
        let identities = raw
            .objects
            .iter()
            .map(|o| {
                let id = raw.identities.get(o).ok_or_else(|| Error::BadIdentity(format!("object {o} has no identity")))?;
                mor(id)
            })
            .collect::<Result<Vec<u32>>>()?;
        let mut table: HashMap<(u32, u32), u32> = HashMap::new();
        for (g, f, h) in &raw.composition {
            let (g, f, h) = (mor(g)?, mor(f)?, mor(h)?);
            if morphisms[g as usize].src != morphisms[f as usize].tgt {
                return Err(Error::MalformedCategory(format!(
                    "composition entry for non-composable pair ({}, {})",
                    morphisms[g as usize].name, morphisms[f as usize].name
                )));
            }
            if let Some(prev) = table.insert((g, f), h) {
                if prev != h {
                    return Err(Error::MalformedCategory(format!(
                        "conflicting composites for ({}, {})",
                        morphisms[g as usize].name, morphisms[f as usize].name
                    )));
                }
            }
        }
        let is_id: Vec<bool> = {
            let mut v = vec![false; morphisms.len()];
            for &i in &identities {
                if let Some(x) = v.get_mut(i as usize) {
                    *x = true;
                }
            }
            v
        };
        let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
        let sk = Skeleton { objects: raw.objects.clone(), morphisms, identities };
        FinCat::assemble(
            sk,
            |g, f| match table.get(&(g, f)) {
                Some(&h) => Ok(h),
                None if is_id[g as usize] => Ok(f),
                None if is_id[f as usize] => Ok(g),
                None => Err(Error::MissingComposite { g: names[g as usize].clone(), f: names[f as usize].clone() }),
            },
            true,
        )
    }

    pub fn to_raw(&self) -> json::RawCategory {
        json::RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| json::RawMorphism {
                    name: m.name.clone(),
                    src: self.objects[m.src as usize].clone(),
                    tgt: self.objects[m.tgt as usize].clone(),
                })
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(o, &id)| (self.objects[o].clone(), self.name(id).to_string()))
                .collect(),
            composition: self
                .pairs()
                .map(|(g, f)| (self.name(g).into(), self.name(f).into(), self.name(self.compose(g, f)).into()))
                .collect(),
        }
    }
}
