use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Ring};
use crate::fincat::{opposite, product, FinCat, FinFunctor};

/// A covariant functor C → modules: a value per object and a matrix per morphism.
#[derive(Clone, Debug, PartialEq)]
pub struct Module {
    base: Arc<FinCat>,
    ring: Ring,
    dims: Vec<usize>,
    matrices: Vec<ExactMatrix>,
    local: bool,
}

impl Module {
    pub fn new(base: Arc<FinCat>, ring: Ring, dims: Vec<usize>, matrices: Vec<ExactMatrix>) -> Result<Self> {
        let c = &*base;
        if dims.len() != c.num_objects() {
            return Err(Error::DimensionMismatch("one value per object is required".into()));
        }
        if matrices.len() != c.num_morphisms() {
            return Err(Error::MissingStructureMap("one matrix per morphism is required".into()));
        }
        for (f, m) in matrices.iter().enumerate() {
            ring.same(m.ring())?;
            let (r, k) = (dims[c.tgt(f as u32) as usize], dims[c.src(f as u32) as usize]);
            if m.rows() != r || m.cols() != k {
                return Err(Error::DimensionMismatch(format!(
                    "matrix of {} is {}x{}, expected {r}x{k}",
                    c.name(f as u32),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for o in 0..c.num_objects() as u32 {
            if !matrices[c.identity(o) as usize].is_identity() {
                let id = c.name(c.identity(o)).to_string();
                return Err(Error::FunctorialityViolation {
                    first: id.clone(),
                    second: id,
                    detail: "identity is not sent to the identity".into(),
                });
            }
        }
        for (g, f) in c.pairs() {
            let lhs = &matrices[c.compose(g, f) as usize];
            if *lhs != matrices[g as usize].mul(&matrices[f as usize])? {
                return Err(Error::FunctorialityViolation {
                    first: c.name(g).to_string(),
                    second: c.name(f).to_string(),
                    detail: "F(g∘f) ≠ F(g)∘F(f)".into(),
                });
            }
        }
        let local = matrices.iter().all(ExactMatrix::is_invertible);
        Ok(Module { base, ring, dims, matrices, local })
    }

    pub fn constant(base: Arc<FinCat>, ring: Ring, rank: usize) -> Result<Self> {
        let dims = vec![rank; base.num_objects()];
        let matrices = vec![ExactMatrix::identity(ring, rank); base.num_morphisms()];
        Module::new(base, ring, dims, matrices)
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self, o: u32) -> usize {
        self.dims[o as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self, f: u32) -> &ExactMatrix {
        &self.matrices[f as usize]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    /// Every structure matrix is invertible over the ring (a local system).
    pub fn is_local(&self) -> bool {
        self.local
    }

    /// F∘φ for φ: C' → C.
    pub fn pullback(&self, phi: &FinFunctor) -> Result<Module> {
        if **phi.target() != *self.base {
            return Err(Error::NotAFunctor("functor target is not the base of the module".into()));
        }
        let c = phi.source().clone();
        let dims = phi.object_map().iter().map(|&o| self.dim(o)).collect();
        let matrices = phi.morphism_map().iter().map(|&f| self.matrix(f).clone()).collect();
        Module::new(c, self.ring, dims, matrices)
    }
}

/// A functor C^op × C → modules, stored as a module on the product category.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    base: Arc<FinCat>,
    inner: Module,
}

impl Bimodule {
    /// `dims[a·n + b] = M(a, b)`; `matrices[α·m + β] = M(α, β): M(a, b) → M(a', b')`
    /// for α: a' → a and β: b → b', where n, m count objects and morphisms of C.
    pub fn new(base: Arc<FinCat>, ring: Ring, dims: Vec<usize>, matrices: Vec<ExactMatrix>) -> Result<Self> {
        let envelope = Arc::new(product(&opposite(&base)?, &base)?);
        let inner = Module::new(envelope, ring, dims, matrices)?;
        Ok(Bimodule { base, inner })
    }

    pub fn constant(base: Arc<FinCat>, ring: Ring, rank: usize) -> Result<Self> {
        let (n, m) = (base.num_objects(), base.num_morphisms());
        Bimodule::new(base, ring, vec![rank; n * n], vec![ExactMatrix::identity(ring, rank); m * m])
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn ring(&self) -> Ring {
        self.inner.ring()
    }

    pub fn dim(&self, a: u32, b: u32) -> usize {
        self.inner.dim(a * self.base.num_objects() as u32 + b)
    }

    pub fn matrix(&self, alpha: u32, beta: u32) -> &ExactMatrix {
        self.inner.matrix(alpha * self.base.num_morphisms() as u32 + beta)
    }

    /// The underlying module on C^op × C.
    pub fn as_module(&self) -> &Module {
        &self.inner
    }

    /// M(φ-, φ-) for φ: C' → C.
    pub fn pullback(&self, phi: &FinFunctor) -> Result<Bimodule> {
        if **phi.target() != *self.base {
            return Err(Error::NotAFunctor("functor target is not the base of the bimodule".into()));
        }
        let c = phi.source().clone();
        let (n, m) = (c.num_objects() as u32, c.num_morphisms() as u32);
        let dims = (0..n * n).map(|k| self.dim(phi.object(k / n), phi.object(k % n))).collect();
        let matrices = (0..m * m).map(|k| self.matrix(phi.morphism(k / m), phi.morphism(k % m)).clone()).collect();
        Bimodule::new(c, self.ring(), dims, matrices)
    }
}

/// The bimodule R[Hom_C(a, b)] with M(α, β)h = β∘h∘α.
pub fn zc_bimodule(base: Arc<FinCat>, ring: Ring) -> Result<Bimodule> {
    let c = &*base;
    let (n, m) = (c.num_objects() as u32, c.num_morphisms() as u32);
    let homs: Vec<Vec<u32>> = (0..n * n).map(|k| c.hom(k / n, k % n)).collect();
    let dims = homs.iter().map(Vec::len).collect();
    let mut matrices = Vec::with_capacity((m * m) as usize);
    for alpha in 0..m {
        for beta in 0..m {
            let (a, a2) = (c.tgt(alpha), c.src(alpha));
            let (b, b2) = (c.src(beta), c.tgt(beta));
            let from = &homs[(a * n + b) as usize];
            let to = &homs[(a2 * n + b2) as usize];
            let mut mat = ExactMatrix::zeros(ring, to.len(), from.len());
            for (j, &h) in from.iter().enumerate() {
                let img = c.compose(beta, c.compose(h, alpha));
                let i = to.iter().position(|&x| x == img).expect("image lies in the hom-set");
                mat.set(i, j, num_rational::BigRational::one());
            }
            matrices.push(mat);
        }
    }
    Bimodule::new(base, ring, dims, matrices)
}
