use std::sync::Arc;

use super::FinCat;
use crate::error::{Error, Result};

/// A functor between finite categories, validated on construction.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<u32>,
    mor_map: Vec<u32>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && self.source == other.source
            && self.target == other.target
    }
}

impl FinFunctor {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<u32>, mor_map: Vec<u32>) -> Result<Self> {
        let f = FinFunctor { source, target, obj_map, mor_map };
        f.validate()?;
        Ok(f)
    }

    /// Skips validation; for constructions whose functoriality holds by definition.
    pub(crate) fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<u32>, mor_map: Vec<u32>) -> Self {
        let f = FinFunctor { source, target, obj_map, mor_map };
        debug_assert!(f.source.num_morphisms() > 2000 || f.validate().is_ok());
        f
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj_map.len() != s.num_objects() || self.mor_map.len() != s.num_morphisms() {
            return Err(Error::NotAFunctor("maps do not cover the source".into()));
        }
        if self.obj_map.iter().any(|&o| o as usize >= t.num_objects())
            || self.mor_map.iter().any(|&m| m as usize >= t.num_morphisms())
        {
            return Err(Error::NotAFunctor("image outside the target".into()));
        }
        for f in 0..s.num_morphisms() as u32 {
            let uf = self.morphism(f);
            if t.src(uf) != self.object(s.src(f)) || t.tgt(uf) != self.object(s.tgt(f)) {
                return Err(Error::NotAFunctor(format!("{} does not preserve source and target", s.name(f))));
            }
        }
        for o in 0..s.num_objects() as u32 {
            if self.morphism(s.identity(o)) != t.identity(self.object(o)) {
                return Err(Error::NotAFunctor(format!("identity of {} is not preserved", s.object_name(o))));
            }
        }
        for (g, f) in s.pairs() {
            if self.morphism(s.compose(g, f)) != t.compose(self.morphism(g), self.morphism(f)) {
                return Err(Error::NotAFunctor(format!(
                    "composite {}∘{} is not preserved",
                    s.name(g),
                    s.name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let obj_map = (0..cat.num_objects() as u32).collect();
        let mor_map = (0..cat.num_morphisms() as u32).collect();
        FinFunctor { source: cat.clone(), target: cat, obj_map, mor_map }
    }

    /// The unique functor to a one-object, one-morphism category.
    pub fn to_terminal(source: Arc<FinCat>, terminal: Arc<FinCat>) -> Result<Self> {
        if terminal.num_morphisms() != 1 {
            return Err(Error::NotAFunctor("target is not terminal".into()));
        }
        let (no, nm) = (source.num_objects(), source.num_morphisms());
        FinFunctor::new(source, terminal, vec![0; no], vec![0; nm])
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        if !Arc::ptr_eq(&self.target, &next.source) && *self.target != *next.source {
            return Err(Error::NotAFunctor("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            obj_map: self.obj_map.iter().map(|&o| next.object(o)).collect(),
            mor_map: self.mor_map.iter().map(|&m| next.morphism(m)).collect(),
        })
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn object(&self, o: u32) -> u32 {
        self.obj_map[o as usize]
    }

    pub fn morphism(&self, f: u32) -> u32 {
        self.mor_map[f as usize]
    }

    pub fn object_map(&self) -> &[u32] {
        &self.obj_map
    }

    pub fn morphism_map(&self) -> &[u32] {
        &self.mor_map
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target
            && self.obj_map.iter().enumerate().all(|(i, &o)| i as u32 == o)
            && self.mor_map.iter().enumerate().all(|(i, &m)| i as u32 == m)
    }
}
