//! Explicit (co)homology bases over a field and matrices of induced maps.

use num_rational::BigRational;

use super::complex::{Complex, Grading};
use super::field::{axpy, with_field, Field, SparseVec};
use super::matrix::ExactMatrix;
use super::reduce::reduce_columns;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Chosen representatives for H_n (or H^n) and a solver returning the class of any cycle.
///
/// Representatives are the first kernel vectors (kernel basis in column order) that are
/// independent modulo boundaries, so the choice is deterministic.
pub struct HomologyBasis<F: Field> {
    field: F,
    space_dim: usize,
    pub reps: Vec<SparseVec<F::Elem>>,
    /// Indexed by lowest nonzero coordinate: (vector, its class as a combination of reps).
    table: Vec<Option<(SparseVec<F::Elem>, SparseVec<F::Elem>)>>,
}

impl<F: Field> HomologyBasis<F> {
    pub fn new(field: F, complex: &Complex, n: usize) -> Result<Self> {
        let space_dim = *complex
            .dims()
            .get(n)
            .ok_or_else(|| Error::GradingMismatch(format!("degree {n} beyond top degree {}", complex.top())))?;
        let kernel: Vec<SparseVec<F::Elem>> = match complex.outgoing(n) {
            Some(d) => reduce_columns(&field, d.field_columns(&field), d.nrows(), true).kernel(),
            None => (0..space_dim).map(|i| vec![(i as u32, field.one())]).collect(),
        };
        let boundaries: Vec<SparseVec<F::Elem>> = match complex.incoming(n) {
            Some(d) => reduce_columns(&field, d.field_columns(&field), space_dim, false).image(),
            None => Vec::new(),
        };
        Ok(Self::from_parts(field, space_dim, kernel, boundaries))
    }

    /// `boundaries` must already be in echelon form (distinct lowest indices).
    pub fn from_parts(
        field: F,
        space_dim: usize,
        cycles: Vec<SparseVec<F::Elem>>,
        boundaries: Vec<SparseVec<F::Elem>>,
    ) -> Self {
        let mut table: Vec<Option<(SparseVec<F::Elem>, SparseVec<F::Elem>)>> = vec![None; space_dim];
        for b in boundaries {
            let low = b.last().expect("nonzero boundary").0 as usize;
            debug_assert!(table[low].is_none());
            table[low] = Some((b, Vec::new()));
        }
        let mut basis = HomologyBasis { field, space_dim, reps: Vec::new(), table };
        for z in cycles {
            let (rest, acc) = basis.reduce(&z);
            if let Some(low) = rest.last().map(|e| e.0 as usize) {
                let k = basis.reps.len() as u32;
                let expr = axpy(&basis.field, &vec![(k, basis.field.one())], &basis.field.one(), &acc);
                basis.table[low] = Some((rest, expr));
                basis.reps.push(z);
            }
        }
        basis
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    /// Returns (remainder, Σ c_i·expr_i) where remainder = z + Σ c_i·t_i.
    fn reduce(&self, z: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut v = z.clone();
        let mut acc: SparseVec<F::Elem> = Vec::new();
        while let Some((low, x)) = v.last().cloned() {
            let Some((t, expr)) = &self.table[low as usize] else { break };
            let c = f.neg(&f.mul(&x, &f.inv(&t.last().unwrap().1)));
            v = axpy(f, &v, &c, t);
            acc = axpy(f, &acc, &c, expr);
        }
        (v, acc)
    }

    /// Coordinates of the class of cycle `z` in the chosen basis.
    pub fn coordinates(&self, z: &SparseVec<F::Elem>) -> Result<Vec<F::Elem>> {
        let (rest, acc) = self.reduce(z);
        if !rest.is_empty() {
            return Err(Error::InvalidArgument("vector is not a cycle of this complex".into()));
        }
        let mut out = vec![self.field.zero(); self.reps.len()];
        for (k, x) in acc {
            out[k as usize] = self.field.neg(&x);
        }
        Ok(out)
    }
}

/// `m · v` for a sparse matrix given by its columns.
pub fn apply_columns<F: Field>(field: &F, columns: &[SparseVec<F::Elem>], v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out: SparseVec<F::Elem> = Vec::new();
    for (j, x) in v {
        out = axpy(field, &out, x, &columns[*j as usize]);
    }
    out
}

/// Matrix (target reps × source reps) of the map induced by `map_columns` between two bases.
pub fn induced_matrix<F: Field>(
    field: &F,
    source: &HomologyBasis<F>,
    target: &HomologyBasis<F>,
    map_columns: &[SparseVec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    let cols = source
        .reps
        .iter()
        .map(|z| target.coordinates(&apply_columns(field, map_columns, z)))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..target.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
}

/// Checks that `chain_map[k]` commutes with the differentials wherever both sides exist.
pub fn check_chain_map(source: &Complex, target: &Complex, chain_map: &[SparseMatrix]) -> Result<()> {
    source.ring().same(target.ring())?;
    if source.grading() != target.grading() {
        return Err(Error::GradingMismatch("chain map between complexes of different grading".into()));
    }
    for (k, f) in chain_map.iter().enumerate() {
        if f.ncols() != source.dims().get(k).copied().unwrap_or(usize::MAX)
            || f.nrows() != target.dims().get(k).copied().unwrap_or(usize::MAX)
        {
            return Err(Error::DimensionMismatch(format!("chain map in degree {k} has the wrong shape")));
        }
    }
    for (k, f) in chain_map.iter().enumerate() {
        let Some(g) = chain_map.get(k + 1) else { break };
        let (lhs, rhs, degree) = match source.grading() {
            // f_{k+1} d_k = d_k f_k
            Grading::Cochain => match (source.diffs().get(k), target.diffs().get(k)) {
                (Some(ds), Some(dt)) => (g.mul(ds)?, dt.mul(f)?, k),
                _ => continue,
            },
            // f_k ∂_{k+1} = ∂_{k+1} f_{k+1}
            Grading::Chain => match (source.diffs().get(k), target.diffs().get(k)) {
                (Some(ds), Some(dt)) => (f.mul(ds)?, dt.mul(g)?, k + 1),
                _ => continue,
            },
        };
        let diff = lhs.sub(&rhs)?;
        if let Some((row, r)) = diff.rows().iter().enumerate().find(|(_, r)| !r.is_empty()) {
            return Err(Error::NotChainMap { degree, row, col: r[0].0 as usize });
        }
    }
    Ok(())
}

/// Matrix of H^n(source) → H^n(target) (H_n for chain complexes) with respect to the
/// deterministic representative bases. The ring must be a field.
pub fn induced_map(source: &Complex, target: &Complex, chain_map: &[SparseMatrix], n: usize) -> Result<ExactMatrix> {
    check_chain_map(source, target, chain_map)?;
    let f_n = chain_map
        .get(n)
        .ok_or_else(|| Error::GradingMismatch(format!("chain map has no component in degree {n}")))?;
    let ring = source.ring();
    fn run<F: Field>(field: F, source: &Complex, target: &Complex, f_n: &SparseMatrix, n: usize) -> Result<ExactMatrix> {
        let sb = HomologyBasis::new(field.clone(), source, n)?;
        let tb = HomologyBasis::new(field.clone(), target, n)?;
        let cols = f_n.field_columns(&field);
        let m = induced_matrix(&field, &sb, &tb, &cols)?;
        let rows: Vec<Vec<BigRational>> =
            m.iter().map(|r| r.iter().map(|x| field.to_rational(x)).collect()).collect();
        ExactMatrix::from_rows(field.ring(), tb.dim(), sb.dim(), rows)
    }
    with_field(ring, |fp| run(fp, source, target, f_n, n), |q| run(q, source, target, f_n, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{int, Ring};

    fn zero_map(ring: Ring, r: usize, c: usize) -> SparseMatrix {
        SparseMatrix::zeros(ring, r, c)
    }

    fn ident(ring: Ring, n: usize) -> SparseMatrix {
        SparseMatrix::from_dense(&ExactMatrix::identity(ring, n))
    }

    #[test]
    fn identity_chain_map_gives_identity() {
        let r = Ring::ModP(2);
        let c = Complex::new(r, Grading::Cochain, vec![2, 1], vec![zero_map(r, 1, 2)]).unwrap();
        let m = induced_map(&c, &c, &[ident(r, 2), ident(r, 1)], 0).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn map_to_zero_complex() {
        let r = Ring::Rat;
        let c = Complex::new(r, Grading::Cochain, vec![1], vec![]).unwrap();
        let z = Complex::new(r, Grading::Cochain, vec![0], vec![]).unwrap();
        let m = induced_map(&c, &z, &[zero_map(r, 0, 1)], 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    #[test]
    fn swap_of_two_cocycles_is_a_permutation() {
        let r = Ring::ModP(3);
        // C^0 = F^2 with zero differential into C^1 = F^1: kernel is all of C^0.
        let c = Complex::new(r, Grading::Cochain, vec![2, 1], vec![zero_map(r, 1, 2)]).unwrap();
        let swap = SparseMatrix::from_row_entries(r, 2, 2, vec![vec![(1, int(1))], vec![(0, int(1))]]);
        let m = induced_map(&c, &c, &[swap, ident(r, 1)], 0).unwrap();
        assert_eq!(m, ExactMatrix::from_i64(r, 2, 2, &[0, 1, 1, 0]).unwrap());
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let r = Ring::ModP(2);
        let c = Complex::new(r, Grading::Cochain, vec![1, 1], vec![ident(r, 1)]).unwrap();
        let err = induced_map(&c, &c, &[ident(r, 1), zero_map(r, 1, 1)], 0).unwrap_err();
        assert_eq!(err.kind(), "NotChainMap");
    }
}
