use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Complex, ExactMatrix, Grading, Ring, SparseMatrix};
use crate::fincat::{FinCat, FinFunctor, Nerve};
use crate::natsys::{Module, NaturalSystem};
use crate::par;

/// A complex indexed by nerve chains: degree n is a sum of blocks, one per n-chain,
/// laid out in chain order.
#[derive(Clone, Debug)]
pub struct BuiltComplex {
    pub nerve: Nerve,
    /// `offsets[n][i]..offsets[n][i + 1]` are the coordinates of chain i in degree n.
    pub offsets: Vec<Vec<usize>>,
    pub complex: Complex,
}

impl BuiltComplex {
    pub fn block(&self, n: usize, chain: usize) -> std::ops::Range<usize> {
        self.offsets[n][chain]..self.offsets[n][chain + 1]
    }
}

/// Coefficient of one face inside a differential.
enum Coef<'a> {
    Id,
    Mat(&'a ExactMatrix),
}

fn offsets(nerve: &Nerve, block: &(dyn Fn(u32) -> usize + Sync)) -> Vec<Vec<usize>> {
    nerve
        .levels()
        .iter()
        .map(|l| {
            let mut v = Vec::with_capacity(l.len() + 1);
            let mut acc = 0;
            v.push(0);
            for i in 0..l.len() {
                acc += block(l.composite(i));
                v.push(acc);
            }
            v
        })
        .collect()
}

/// Assembles the differential between degrees `n` and `n + 1`.
///
/// Cochain orientation: rows index degree n+1, columns degree n, and the face block
/// maps the face's coefficient to the chain's. Chain orientation: the block maps the
/// chain's coefficient to the face's and the result is ∂: C_{n+1} → C_n.
fn differential<'a, C>(
    cat: &FinCat,
    ring: Ring,
    nerve: &Nerve,
    offs: &[Vec<usize>],
    n: usize,
    grading: Grading,
    coef: C,
) -> SparseMatrix
where
    C: Fn(&[u32], usize, u32) -> Coef<'a> + Sync,
{
    let upper = nerve.level(n + 1);
    let m = n + 1;
    let blocks: Vec<Vec<Vec<(u32, BigRational)>>> = par::map_range(upper.len(), |lam| {
        let chain = upper.chain(lam);
        let lam_range = offs[m][lam]..offs[m][lam + 1];
        let mut rows: Vec<Vec<(u32, BigRational)>> = vec![Vec::new(); lam_range.len()];
        let mut scratch = Vec::with_capacity(m);
        for i in 0..=m {
            let Some(mu) = nerve.face(cat, chain, i, &mut scratch) else { continue };
            let mu_start = offs[n][mu];
            let neg = i % 2 == 1;
            match coef(chain, i, nerve.level(n).composite(mu)) {
                Coef::Id => {
                    for (r, row) in rows.iter_mut().enumerate() {
                        let one = if neg { -BigRational::one() } else { BigRational::one() };
                        row.push(((mu_start + r) as u32, one));
                    }
                }
                Coef::Mat(b) => {
                    for (r, row) in rows.iter_mut().enumerate() {
                        // Cochain: entry (λ r, μ c) = b[r][c]. Chain: entry (λ r, μ c) = b[c][r].
                        let k = match grading {
                            Grading::Cochain => b.cols(),
                            Grading::Chain => b.rows(),
                        };
                        for c in 0..k {
                            let x = match grading {
                                Grading::Cochain => b.get(r, c),
                                Grading::Chain => b.get(c, r),
                            };
                            if !x.is_zero() {
                                row.push(((mu_start + c) as u32, if neg { -x.clone() } else { x.clone() }));
                            }
                        }
                    }
                }
            }
        }
        rows
    });
    let rows: Vec<Vec<(u32, BigRational)>> = blocks.into_iter().flatten().collect();
    let upper_dim = *offs[m].last().unwrap();
    let lower_dim = *offs[n].last().unwrap();
    let mat = SparseMatrix::from_row_entries(ring, upper_dim, lower_dim, rows);
    match grading {
        Grading::Cochain => mat,
        Grading::Chain => mat.transpose(),
    }
}

fn build<'a, C>(
    cat: &FinCat,
    ring: Ring,
    nerve: Nerve,
    grading: Grading,
    block: &(dyn Fn(u32) -> usize + Sync),
    coef: C,
) -> Result<BuiltComplex>
where
    C: Fn(&[u32], usize, u32, usize) -> Coef<'a> + Sync,
{
    let offs = offsets(&nerve, block);
    let diffs = (0..nerve.max_degree())
        .map(|n| differential(cat, ring, &nerve, &offs, n, grading, |ch, i, fc| coef(ch, i, fc, n)))
        .collect();
    let dims = offs.iter().map(|o| *o.last().unwrap()).collect();
    let complex = Complex::new(ring, grading, dims, diffs)?;
    Ok(BuiltComplex { nerve, offsets: offs, complex })
}

pub(super) fn bw(d: &NaturalSystem, nerve: Nerve) -> Result<BuiltComplex> {
    let cat = &**d.base();
    build(cat, d.ring(), nerve, Grading::Cochain, &|f| d.dim(f), |chain, i, face_comp, n| {
        let m = n + 1;
        if i == 0 {
            Coef::Mat(d.left(chain[0], face_comp))
        } else if i == m {
            Coef::Mat(d.right(face_comp, chain[m - 1]))
        } else {
            Coef::Id
        }
    })
}

pub(super) fn bar_cochain(module: &Module, nerve: Nerve) -> Result<BuiltComplex> {
    let cat = &**module.base();
    build(cat, module.ring(), nerve, Grading::Cochain, &|f| module.dim(cat.tgt(f)), |chain, i, _, _| {
        if i == 0 {
            Coef::Mat(module.matrix(chain[0]))
        } else {
            Coef::Id
        }
    })
}

pub(super) fn bar_chain(module: &Module, nerve: Nerve) -> Result<BuiltComplex> {
    let cat = &**module.base();
    build(cat, module.ring(), nerve, Grading::Chain, &|f| module.dim(cat.src(f)), |chain, i, _, n| {
        if i == n + 1 {
            Coef::Mat(module.matrix(chain[n]))
        } else {
            Coef::Id
        }
    })
}

/// Cochain restriction σ ↦ σ∘φ from a complex on X to one on X', for φ: X' → X, in
/// every degree both complexes have. Each chain λ' receives the block of φλ' (an
/// identity, since the coefficients agree), or zero when φλ' is absent from a
/// normalized nerve. For chain complexes the transpose is the pushforward.
pub fn restriction_maps(source: &BuiltComplex, target: &BuiltComplex, phi: &FinFunctor) -> Result<Vec<SparseMatrix>> {
    let (xs, xt) = (&**phi.target(), &**phi.source());
    let ring = source.complex.ring();
    let top = source.nerve.max_degree().min(target.nerve.max_degree());
    (0..=top)
        .map(|n| {
            let lt = target.nerve.level(n);
            let ls = source.nerve.level(n);
            let rows = par::map_range(lt.len(), |i| -> Result<Vec<Vec<(u32, BigRational)>>> {
                let range = target.block(n, i);
                let image: Vec<u32> = if n == 0 {
                    vec![phi.object(lt.chain(i)[0])]
                } else {
                    lt.chain(i).iter().map(|&f| phi.morphism(f)).collect()
                };
                let absent = n > 0 && source.nerve.is_normalized() && image.iter().any(|&f| xs.is_identity(f));
                if absent {
                    return Ok(vec![Vec::new(); range.len()]);
                }
                let j = ls.index_of(&image).ok_or_else(|| {
                    Error::NotAFunctor(format!("image of a chain of {} objects is not a chain", xt.num_objects()))
                })?;
                let src_range = source.block(n, j);
                if src_range.len() != range.len() {
                    return Err(Error::DimensionMismatch("coefficients differ along the functor".into()));
                }
                Ok(src_range.map(|c| vec![(c as u32, BigRational::one())]).collect())
            });
            let rows: Vec<Vec<(u32, BigRational)>> =
                rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            Ok(SparseMatrix::from_row_entries(
                ring,
                target.complex.dims()[n],
                source.complex.dims()[n],
                rows,
            ))
        })
        .collect()
}
