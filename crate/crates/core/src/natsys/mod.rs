//! Natural systems D: F(C) → modules, stored as finite data, plus the module and
//! bimodule coefficients that specialise them.

pub mod json;
mod module;

use std::sync::Arc;

pub use module::{zc_bimodule, Bimodule, Module};

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Ring};
use crate::fincat::{Factorization, FinCat, FinFunctor};
use crate::par;

/// A natural system on a finite category.
///
/// `right` holds α^*: D(f) → D(f∘α) at the pair index of (f, α); `left` holds
/// β_*: D(f) → D(β∘f) at the pair index of (β, f). Matrices act on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalSystem {
    base: Arc<FinCat>,
    ring: Ring,
    dims: Vec<usize>,
    right: Vec<ExactMatrix>,
    left: Vec<ExactMatrix>,
}

impl NaturalSystem {
    /// Validates shapes, rings, identities and functoriality exhaustively.
    pub fn new(
        base: Arc<FinCat>,
        ring: Ring,
        dims: Vec<usize>,
        right: Vec<ExactMatrix>,
        left: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let d = NaturalSystem { base, ring, dims, right, left };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let c = &*self.base;
        if self.dims.len() != c.num_morphisms() {
            return Err(Error::DimensionMismatch("one module per morphism is required".into()));
        }
        if self.right.len() != c.num_pairs() || self.left.len() != c.num_pairs() {
            return Err(Error::MissingStructureMap("structure maps do not cover every composable pair".into()));
        }
        for (g, f) in c.pairs() {
            let (r, l) = (self.right_at(g, f), self.left_at(g, f));
            let gf = c.compose(g, f);
            for (m, what, rows, cols) in
                [(r, "right", self.dims[gf as usize], self.dims[g as usize]), (l, "left", self.dims[gf as usize], self.dims[f as usize])]
            {
                self.ring.same(m.ring())?;
                if m.rows() != rows || m.cols() != cols {
                    return Err(Error::DimensionMismatch(format!(
                        "{what} map at ({}, {}) is {}x{}, expected {rows}x{cols}",
                        c.name(g),
                        c.name(f),
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        let violation = |a: u32, b: u32, detail: &str| Error::FunctorialityViolation {
            first: c.name(a).to_string(),
            second: c.name(b).to_string(),
            detail: detail.to_string(),
        };
        for f in 0..c.num_morphisms() as u32 {
            if !self.right(f, c.identity(c.src(f))).is_identity() {
                return Err(violation(f, c.identity(c.src(f)), "(id)^* is not the identity"));
            }
            if !self.left(c.identity(c.tgt(f)), f).is_identity() {
                return Err(violation(c.identity(c.tgt(f)), f, "(id)_* is not the identity"));
            }
        }
        // Each check is indexed by f and scans the α, α' (β, β') that compose with it.
        let errors = par::map_range(c.num_morphisms(), |f| -> Result<()> {
            let f = f as u32;
            for &a in c.incoming(c.src(f)) {
                let fa = c.compose(f, a);
                for &a2 in c.incoming(c.src(a)) {
                    let lhs = self.right(f, c.compose(a, a2));
                    let rhs = self.right(fa, a2).mul(self.right(f, a))?;
                    if *lhs != rhs {
                        return Err(violation(a, a2, "(α∘α')^* ≠ α'^*∘α^*"));
                    }
                }
                for &b in c.outgoing(c.tgt(f)) {
                    let lhs = self.right(c.compose(b, f), a).mul(self.left(b, f))?;
                    let rhs = self.left(b, fa).mul(self.right(f, a))?;
                    if lhs != rhs {
                        return Err(violation(b, a, "α^*∘β_* ≠ β_*∘α^*"));
                    }
                }
            }
            for &b in c.outgoing(c.tgt(f)) {
                let bf = c.compose(b, f);
                for &b2 in c.outgoing(c.tgt(b)) {
                    let lhs = self.left(c.compose(b2, b), f);
                    let rhs = self.left(b2, bf).mul(self.left(b, f))?;
                    if *lhs != rhs {
                        return Err(violation(b2, b, "(β'∘β)_* ≠ β'_*∘β_*"));
                    }
                }
            }
            Ok(())
        });
        errors.into_iter().collect()
    }

    fn right_at(&self, f: u32, alpha: u32) -> &ExactMatrix {
        &self.right[self.base.pair_index(f, alpha)]
    }

    fn left_at(&self, beta: u32, f: u32) -> &ExactMatrix {
        &self.left[self.base.pair_index(beta, f)]
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self, f: u32) -> usize {
        self.dims[f as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// α^*: D(f) → D(f∘α).
    pub fn right(&self, f: u32, alpha: u32) -> &ExactMatrix {
        self.right_at(f, alpha)
    }

    /// β_*: D(f) → D(β∘f).
    pub fn left(&self, beta: u32, f: u32) -> &ExactMatrix {
        self.left_at(beta, f)
    }

    /// D(α, β) = β_*∘α^*: D(f) → D(β∘f∘α).
    pub fn action(&self, f: u32, alpha: u32, beta: u32) -> Result<ExactMatrix> {
        let fa = self.base.compose(f, alpha);
        self.left(beta, fa).mul(self.right(f, alpha))
    }

    /// The constant system with value R^rank and identity structure maps.
    pub fn trivial(base: Arc<FinCat>, ring: Ring, rank: usize) -> Result<Self> {
        let id = ExactMatrix::identity(ring, rank);
        let n = base.num_pairs();
        let dims = vec![rank; base.num_morphisms()];
        NaturalSystem::new(base, ring, dims, vec![id.clone(); n], vec![id; n])
    }

    /// π^*p^*F: D(f) = F(tgt f), α^* = id, β_* = F(β).
    pub fn from_module(m: &Module) -> Result<Self> {
        let c = m.base().clone();
        let dims = (0..c.num_morphisms() as u32).map(|f| m.dim(c.tgt(f))).collect();
        let right = c.pairs().map(|(f, _)| ExactMatrix::identity(m.ring(), m.dim(c.tgt(f)))).collect();
        let left = c.pairs().map(|(b, _)| m.matrix(b).clone()).collect();
        NaturalSystem::new(c, m.ring(), dims, right, left)
    }

    /// π^*M: D(f: a → b) = M(a, b), α^* = M(α, id), β_* = M(id, β).
    pub fn from_bimodule(m: &Bimodule) -> Result<Self> {
        let c = m.base().clone();
        let dims = (0..c.num_morphisms() as u32).map(|f| m.dim(c.src(f), c.tgt(f))).collect();
        let right = c.pairs().map(|(f, a)| m.matrix(a, c.identity(c.tgt(f))).clone()).collect();
        let left = c.pairs().map(|(b, f)| m.matrix(c.identity(c.src(f)), b).clone()).collect();
        NaturalSystem::new(c, m.ring(), dims, right, left)
    }

    /// φ^*D = D∘Fφ for φ: C' → C.
    pub fn pullback(&self, phi: &FinFunctor) -> Result<Self> {
        if **phi.target() != *self.base {
            return Err(Error::NotAFunctor("functor target is not the base of the natural system".into()));
        }
        let c = phi.source().clone();
        let dims = (0..c.num_morphisms() as u32).map(|f| self.dim(phi.morphism(f))).collect();
        let right = c.pairs().map(|(f, a)| self.right(phi.morphism(f), phi.morphism(a)).clone()).collect();
        let left = c.pairs().map(|(b, f)| self.left(phi.morphism(b), phi.morphism(f)).clone()).collect();
        NaturalSystem::new(c, self.ring, dims, right, left)
    }

    /// D as a covariant module on F(C): (α, β) ↦ β_*∘α^*.
    pub fn to_fc_module(&self, fc: &Factorization) -> Result<Module> {
        if *fc.base != *self.base {
            return Err(Error::NotAFunctor("factorization category of a different base".into()));
        }
        let matrices = par::map_range(fc.cat.num_morphisms(), |m| {
            let (f, a, b) = fc.triple(m as u32);
            self.action(f, a, b)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        Module::new(fc.cat.clone(), self.ring, self.dims.clone(), matrices)
    }

    /// The natural system of a covariant module on F(C): α^* = F(α, id), β_* = F(id, β).
    pub fn from_fc_module(fc: &Factorization, m: &Module) -> Result<Self> {
        if *fc.cat != **m.base() {
            return Err(Error::NotAFunctor("module does not live on this factorization category".into()));
        }
        let c = fc.base.clone();
        let lookup = |f: u32, a: u32, b: u32| -> Result<ExactMatrix> {
            let mor = fc.morphism(f, a, b).ok_or_else(|| Error::MissingStructureMap(format!("({a}, {b}) at {f}")))?;
            Ok(m.matrix(mor).clone())
        };
        let right =
            c.pairs().map(|(f, a)| lookup(f, a, c.identity(c.tgt(f)))).collect::<Result<Vec<_>>>()?;
        let left =
            c.pairs().map(|(b, f)| lookup(f, c.identity(c.src(f)), b)).collect::<Result<Vec<_>>>()?;
        NaturalSystem::new(c, m.ring(), m.dims().to_vec(), right, left)
    }
}

#[cfg(test)]
mod tests;
