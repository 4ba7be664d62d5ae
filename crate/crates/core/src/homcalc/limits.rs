//! Limits and colimits of modules computed directly as an equalizer kernel and a
//! coequalizer cokernel, independently of the bar complexes.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exactalg::{smith_normal_form, ExactMatrix, GroupPresentation, Ring};
use crate::natsys::Module;

fn object_offsets(m: &Module) -> Vec<usize> {
    let mut v = vec![0];
    for o in 0..m.base().num_objects() as u32 {
        v.push(v.last().unwrap() + m.dim(o));
    }
    v
}

/// lim F = ker(∏_a F(a) → ∏_{f: a→b} F(b)), σ ↦ (F(f)σ_a − σ_b)_f.
pub fn limit(m: &Module) -> Result<GroupPresentation> {
    let c = &**m.base();
    let offs = object_offsets(m);
    let cols = *offs.last().unwrap();
    let arrows: Vec<u32> = (0..c.num_morphisms() as u32).filter(|&f| !c.is_identity(f)).collect();
    let rows: usize = arrows.iter().map(|&f| m.dim(c.tgt(f))).sum();
    let mut a = ExactMatrix::zeros(m.ring(), rows, cols);
    let mut r0 = 0;
    for &f in &arrows {
        let (s, t) = (c.src(f) as usize, c.tgt(f) as usize);
        let mf = m.matrix(f);
        for i in 0..mf.rows() {
            for j in 0..mf.cols() {
                a.set(r0 + i, offs[s] + j, mf.get(i, j).clone());
            }
            let cur = a.get(r0 + i, offs[t] + i).clone();
            a.set(r0 + i, offs[t] + i, cur - BigRational::one());
        }
        r0 += mf.rows();
    }
    Ok(GroupPresentation::free(m.ring(), cols - a.rank()))
}

/// colim F = coker(⊕_{f: a→b} F(a) → ⊕_b F(b)), x ↦ F(f)x − x.
pub fn colimit(m: &Module) -> Result<GroupPresentation> {
    let c = &**m.base();
    let offs = object_offsets(m);
    let rows = *offs.last().unwrap();
    let arrows: Vec<u32> = (0..c.num_morphisms() as u32).filter(|&f| !c.is_identity(f)).collect();
    let cols: usize = arrows.iter().map(|&f| m.dim(c.src(f))).sum();
    let mut b = ExactMatrix::zeros(m.ring(), rows, cols);
    let mut c0 = 0;
    for &f in &arrows {
        let (s, t) = (c.src(f) as usize, c.tgt(f) as usize);
        let mf = m.matrix(f);
        for j in 0..mf.cols() {
            for i in 0..mf.rows() {
                b.set(offs[t] + i, c0 + j, mf.get(i, j).clone());
            }
            let cur = b.get(offs[s] + j, c0 + j).clone();
            b.set(offs[s] + j, c0 + j, cur - BigRational::one());
        }
        c0 += mf.cols();
    }
    match m.ring() {
        Ring::Int => {
            let diag = smith_normal_form(&b)?.diagonal();
            let nonzero: Vec<_> = diag.into_iter().filter(|d| !d.is_zero()).collect();
            let torsion = nonzero.iter().filter(|d| !d.abs().is_one()).cloned().collect();
            GroupPresentation::new(Ring::Int, rows - nonzero.len(), torsion)
        }
        ring => Ok(GroupPresentation::free(ring, rows - b.rank())),
    }
}
