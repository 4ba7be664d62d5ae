//! JSON formats for natural systems, modules and bimodules.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Bimodule, Module, NaturalSystem};
use crate::error::{Error, Result};
use crate::exactalg::ring::{format_scalar, int, parse_scalar};
use crate::exactalg::{ExactMatrix, Ring};
use crate::fincat::json::{base_dir, read_file, resolve_category, CatRef};
use crate::fincat::FinCat;

/// A matrix entry: a decimal string (`"n"` or `"num/den"`) or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

pub type RawMatrix = Vec<Vec<RawScalar>>;

pub fn matrix_from_raw(ring: Ring, rows: usize, cols: usize, raw: &RawMatrix) -> Result<ExactMatrix> {
    let entries = raw
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| match x {
                    RawScalar::Int(n) => Ok(int(*n)),
                    RawScalar::Text(s) => parse_scalar(s),
                })
                .collect::<Result<Vec<BigRational>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    // A matrix with no rows carries no column count; accept [] for any 0×k shape.
    if rows == 0 && entries.is_empty() {
        return Ok(ExactMatrix::zeros(ring, 0, cols));
    }
    ExactMatrix::from_rows(ring, rows, cols, entries)
}

pub fn matrix_to_raw(m: &ExactMatrix) -> RawMatrix {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| RawScalar::Text(format_scalar(x))).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRight {
    pub f: String,
    pub alpha: String,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLeft {
    pub f: String,
    pub beta: String,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNaturalSystem {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CatRef>,
    pub ring: String,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub right: Vec<RawRight>,
    #[serde(default)]
    pub left: Vec<RawLeft>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModuleMatrix {
    pub morphism: String,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CatRef>,
    pub ring: String,
    pub values: BTreeMap<String, usize>,
    #[serde(default)]
    pub matrices: Vec<RawModuleMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBimoduleValue {
    pub src: String,
    pub tgt: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBimoduleMatrix {
    pub alpha: String,
    pub beta: String,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBimodule {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CatRef>,
    pub ring: String,
    pub values: Vec<RawBimoduleValue>,
    #[serde(default)]
    pub matrices: Vec<RawBimoduleMatrix>,
}

/// Resolves the category of a coefficient file: the file's own `category` if present,
/// otherwise `fallback`. When both are present they must agree.
pub fn coefficient_category(
    own: Option<&CatRef>,
    base: &Path,
    fallback: Option<Arc<FinCat>>,
    size_guard: usize,
) -> Result<Arc<FinCat>> {
    match (own, fallback) {
        (Some(r), fallback) => {
            let c = Arc::new(resolve_category(r, base, size_guard)?);
            if let Some(f) = fallback {
                if *f != *c {
                    return Err(Error::InvalidArgument("coefficient file names a different category".into()));
                }
                return Ok(f);
            }
            Ok(c)
        }
        (None, Some(f)) => Ok(f),
        (None, None) => Err(Error::InvalidArgument("no category given for the coefficients".into())),
    }
}

fn duplicate(what: &str) -> Error {
    Error::InvalidEntry(format!("duplicate entry for {what}"))
}

impl NaturalSystem {
    /// Structure maps at identities may be omitted and default to identity matrices.
    pub fn from_raw(raw: &RawNaturalSystem, cat: Arc<FinCat>) -> Result<NaturalSystem> {
        let ring: Ring = raw.ring.parse()?;
        let c = &*cat;
        for k in raw.dims.keys() {
            c.morphism_id(k)?;
        }
        let dims = c
            .morphisms()
            .iter()
            .map(|m| raw.dims.get(&m.name).copied().ok_or_else(|| Error::MissingStructureMap(format!("dimension of {}", m.name))))
            .collect::<Result<Vec<usize>>>()?;
        let mut right: HashMap<(u32, u32), &RawMatrix> = HashMap::new();
        for e in &raw.right {
            let (f, a) = (c.morphism_id(&e.f)?, c.morphism_id(&e.alpha)?);
            if c.src(f) != c.tgt(a) {
                return Err(Error::InvalidEntry(format!("{} and {} are not composable", e.f, e.alpha)));
            }
            if right.insert((f, a), &e.matrix).is_some() {
                return Err(duplicate(&format!("right map ({}, {})", e.f, e.alpha)));
            }
        }
        let mut left: HashMap<(u32, u32), &RawMatrix> = HashMap::new();
        for e in &raw.left {
            let (f, b) = (c.morphism_id(&e.f)?, c.morphism_id(&e.beta)?);
            if c.src(b) != c.tgt(f) {
                return Err(Error::InvalidEntry(format!("{} and {} are not composable", e.beta, e.f)));
            }
            if left.insert((b, f), &e.matrix).is_some() {
                return Err(duplicate(&format!("left map ({}, {})", e.beta, e.f)));
            }
        }
        let right_maps = c
            .pairs()
            .map(|(f, a)| {
                let (rows, cols) = (dims[c.compose(f, a) as usize], dims[f as usize]);
                match right.get(&(f, a)) {
                    Some(m) => matrix_from_raw(ring, rows, cols, m),
                    None if c.is_identity(a) => Ok(ExactMatrix::identity(ring, cols)),
                    None => Err(Error::MissingStructureMap(format!("right map ({}, {})", c.name(f), c.name(a)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let left_maps = c
            .pairs()
            .map(|(b, f)| {
                let (rows, cols) = (dims[c.compose(b, f) as usize], dims[f as usize]);
                match left.get(&(b, f)) {
                    Some(m) => matrix_from_raw(ring, rows, cols, m),
                    None if c.is_identity(b) => Ok(ExactMatrix::identity(ring, cols)),
                    None => Err(Error::MissingStructureMap(format!("left map ({}, {})", c.name(b), c.name(f)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        NaturalSystem::new(cat, ring, dims, right_maps, left_maps)
    }

    pub fn to_raw(&self, with_category: bool) -> RawNaturalSystem {
        let c = &**self.base();
        RawNaturalSystem {
            category: with_category.then(|| CatRef::Inline(c.to_raw())),
            ring: self.ring().to_string(),
            dims: (0..c.num_morphisms() as u32).map(|f| (c.name(f).to_string(), self.dim(f))).collect(),
            right: c
                .pairs()
                .map(|(f, a)| RawRight {
                    f: c.name(f).into(),
                    alpha: c.name(a).into(),
                    matrix: matrix_to_raw(self.right(f, a)),
                })
                .collect(),
            left: c
                .pairs()
                .map(|(b, f)| RawLeft {
                    f: c.name(f).into(),
                    beta: c.name(b).into(),
                    matrix: matrix_to_raw(self.left(b, f)),
                })
                .collect(),
        }
    }
}

impl Module {
    /// Matrices of identity morphisms may be omitted.
    pub fn from_raw(raw: &RawModule, cat: Arc<FinCat>) -> Result<Module> {
        let ring: Ring = raw.ring.parse()?;
        let c = &*cat;
        for k in raw.values.keys() {
            c.object_id(k)?;
        }
        let dims = c
            .objects()
            .iter()
            .map(|o| raw.values.get(o).copied().ok_or_else(|| Error::MissingStructureMap(format!("value at {o}"))))
            .collect::<Result<Vec<usize>>>()?;
        let mut given: HashMap<u32, &RawMatrix> = HashMap::new();
        for e in &raw.matrices {
            if given.insert(c.morphism_id(&e.morphism)?, &e.matrix).is_some() {
                return Err(duplicate(&e.morphism));
            }
        }
        let matrices = (0..c.num_morphisms() as u32)
            .map(|f| {
                let (rows, cols) = (dims[c.tgt(f) as usize], dims[c.src(f) as usize]);
                match given.get(&f) {
                    Some(m) => matrix_from_raw(ring, rows, cols, m),
                    None if c.is_identity(f) => Ok(ExactMatrix::identity(ring, cols)),
                    None => Err(Error::MissingStructureMap(format!("matrix of {}", c.name(f)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(cat, ring, dims, matrices)
    }

    pub fn to_raw(&self, with_category: bool) -> RawModule {
        let c = &**self.base();
        RawModule {
            category: with_category.then(|| CatRef::Inline(c.to_raw())),
            ring: self.ring().to_string(),
            values: (0..c.num_objects() as u32).map(|o| (c.object_name(o).to_string(), self.dim(o))).collect(),
            matrices: (0..c.num_morphisms() as u32)
                .map(|f| RawModuleMatrix { morphism: c.name(f).into(), matrix: matrix_to_raw(self.matrix(f)) })
                .collect(),
        }
    }
}

impl Bimodule {
    /// The matrix at (id, id) may be omitted.
    pub fn from_raw(raw: &RawBimodule, cat: Arc<FinCat>) -> Result<Bimodule> {
        let ring: Ring = raw.ring.parse()?;
        let c = &*cat;
        let (n, m) = (c.num_objects(), c.num_morphisms() as u32);
        let mut dims = vec![None; n * n];
        for v in &raw.values {
            let k = c.object_id(&v.src)? as usize * n + c.object_id(&v.tgt)? as usize;
            if dims[k].replace(v.dim).is_some() {
                return Err(duplicate(&format!("value ({}, {})", v.src, v.tgt)));
            }
        }
        let dims = dims
            .into_iter()
            .enumerate()
            .map(|(k, d)| {
                d.ok_or_else(|| {
                    Error::MissingStructureMap(format!("value at ({}, {})", c.object_name((k / n) as u32), c.object_name((k % n) as u32)))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        let mut given: HashMap<(u32, u32), &RawMatrix> = HashMap::new();
        for e in &raw.matrices {
            if given.insert((c.morphism_id(&e.alpha)?, c.morphism_id(&e.beta)?), &e.matrix).is_some() {
                return Err(duplicate(&format!("matrix ({}, {})", e.alpha, e.beta)));
            }
        }
        let matrices = (0..m * m)
            .map(|k| {
                let (a, b) = (k / m, k % m);
                let from = dims[c.tgt(a) as usize * n + c.src(b) as usize];
                let to = dims[c.src(a) as usize * n + c.tgt(b) as usize];
                match given.get(&(a, b)) {
                    Some(mat) => matrix_from_raw(ring, to, from, mat),
                    None if c.is_identity(a) && c.is_identity(b) => Ok(ExactMatrix::identity(ring, from)),
                    None => Err(Error::MissingStructureMap(format!("matrix ({}, {})", c.name(a), c.name(b)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Bimodule::new(cat, ring, dims, matrices)
    }

    pub fn to_raw(&self, with_category: bool) -> RawBimodule {
        let c = &**self.base();
        let (n, m) = (c.num_objects() as u32, c.num_morphisms() as u32);
        RawBimodule {
            category: with_category.then(|| CatRef::Inline(c.to_raw())),
            ring: self.ring().to_string(),
            values: (0..n * n)
                .map(|k| RawBimoduleValue {
                    src: c.object_name(k / n).into(),
                    tgt: c.object_name(k % n).into(),
                    dim: self.dim(k / n, k % n),
                })
                .collect(),
            matrices: (0..m * m)
                .map(|k| RawBimoduleMatrix {
                    alpha: c.name(k / m).into(),
                    beta: c.name(k % m).into(),
                    matrix: matrix_to_raw(self.matrix(k / m, k % m)),
                })
                .collect(),
        }
    }
}

pub fn load_natural_system(path: &Path, fallback: Option<Arc<FinCat>>, size_guard: usize) -> Result<NaturalSystem> {
    let raw: RawNaturalSystem = read_file(path)?;
    let cat = coefficient_category(raw.category.as_ref(), &base_dir(path), fallback, size_guard)?;
    NaturalSystem::from_raw(&raw, cat)
}

pub fn load_module(path: &Path, fallback: Option<Arc<FinCat>>, size_guard: usize) -> Result<Module> {
    let raw: RawModule = read_file(path)?;
    let cat = coefficient_category(raw.category.as_ref(), &base_dir(path), fallback, size_guard)?;
    Module::from_raw(&raw, cat)
}

pub fn load_bimodule(path: &Path, fallback: Option<Arc<FinCat>>, size_guard: usize) -> Result<Bimodule> {
    let raw: RawBimodule = read_file(path)?;
    let cat = coefficient_category(raw.category.as_ref(), &base_dir(path), fallback, size_guard)?;
    Bimodule::from_raw(&raw, cat)
}
