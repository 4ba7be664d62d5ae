//! JSON file formats for categories and functors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{FinCat, FinFunctor};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    /// `[g, f, g∘f]` triples. Entries with an identity factor may be omitted.
    pub composition: Vec<(String, String, String)>,
}

/// A category given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatRef {
    Path(String),
    Inline(RawCategory),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub source: CatRef,
    pub target: CatRef,
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

pub fn parse_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn read_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Directory against which relative references inside `path` resolve.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn resolve_category(r: &CatRef, base: &Path, size_guard: usize) -> Result<FinCat> {
    match r {
        CatRef::Inline(raw) => FinCat::from_raw(raw, size_guard),
        CatRef::Path(p) => load_category(&base.join(p), size_guard),
    }
}

pub fn load_category(path: &Path, size_guard: usize) -> Result<FinCat> {
    FinCat::from_raw(&read_file::<RawCategory>(path)?, size_guard)
}

/// A functor given by its name maps alone, with source and target known from context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMapping {
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

impl FinFunctor {
    pub fn from_raw(raw: &RawFunctor, source: Arc<FinCat>, target: Arc<FinCat>) -> Result<FinFunctor> {
        Self::from_name_maps(&raw.object_map, &raw.morphism_map, source, target)
    }

    pub fn from_name_maps(
        object_map: &BTreeMap<String, String>,
        morphism_map: &BTreeMap<String, String>,
        source: Arc<FinCat>,
        target: Arc<FinCat>,
    ) -> Result<FinFunctor> {
        for k in object_map.keys() {
            source.object_id(k)?;
        }
        for k in morphism_map.keys() {
            source.morphism_id(k)?;
        }
        let obj_map = source
            .objects()
            .iter()
            .map(|o| {
                let v = object_map.get(o).ok_or_else(|| Error::NotAFunctor(format!("object {o} is not mapped")))?;
                target.object_id(v)
            })
            .collect::<Result<Vec<u32>>>()?;
        let mor_map = source
            .morphisms()
            .iter()
            .map(|m| {
                let v = morphism_map
                    .get(&m.name)
                    .ok_or_else(|| Error::NotAFunctor(format!("morphism {} is not mapped", m.name)))?;
                target.morphism_id(v)
            })
            .collect::<Result<Vec<u32>>>()?;
        FinFunctor::new(source, target, obj_map, mor_map)
    }

    pub fn to_mapping(&self) -> RawMapping {
        let raw = self.to_raw();
        RawMapping { object_map: raw.object_map, morphism_map: raw.morphism_map }
    }

    /// Serializes with both categories inline.
    pub fn to_raw(&self) -> RawFunctor {
        let (s, t) = (self.source(), self.target());
        RawFunctor {
            source: CatRef::Inline(s.to_raw()),
            target: CatRef::Inline(t.to_raw()),
            object_map: (0..s.num_objects() as u32)
                .map(|o| (s.object_name(o).to_string(), t.object_name(self.object(o)).to_string()))
                .collect(),
            morphism_map: (0..s.num_morphisms() as u32)
                .map(|f| (s.name(f).to_string(), t.name(self.morphism(f)).to_string()))
                .collect(),
        }
    }
}

pub fn resolve_functor(raw: &RawFunctor, base: &Path, size_guard: usize) -> Result<FinFunctor> {
    let source = Arc::new(resolve_category(&raw.source, base, size_guard)?);
    let target = Arc::new(resolve_category(&raw.target, base, size_guard)?);
    FinFunctor::from_raw(raw, source, target)
}

pub fn load_functor(path: &Path, size_guard: usize) -> Result<FinFunctor> {
    resolve_functor(&read_file::<RawFunctor>(path)?, &base_dir(path), size_guard)
}
