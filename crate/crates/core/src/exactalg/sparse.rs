use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, SparseVec};
use super::matrix::ExactMatrix;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Row-major sparse matrix with exact entries in canonical ring form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    ring: Ring,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<BigRational>>,
}

impl SparseMatrix {
    pub fn zeros(ring: Ring, nrows: usize, ncols: usize) -> Self {
        SparseMatrix { ring, nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Builds from per-row triplet lists `(col, value)`; duplicates are summed in the ring.
    pub fn from_row_entries(ring: Ring, nrows: usize, ncols: usize, rows: Vec<Vec<(u32, BigRational)>>) -> Self {
        assert_eq!(rows.len(), nrows);
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: SparseVec<BigRational> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    debug_assert!((c as usize) < ncols);
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 = &last.1 + v,
                        _ => out.push((c, v)),
                    }
                }
                out.into_iter()
                    .filter_map(|(c, v)| {
                        let v = ring.reduce(v);
                        (!v.is_zero()).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { ring, nrows, ncols, rows }
    }

    pub fn from_dense(m: &ExactMatrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j as u32, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { ring: m.ring(), nrows: m.rows(), ncols: m.cols(), rows }
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.ring, self.nrows, self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j as usize, x.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<BigRational>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        match self.rows[i].binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec<BigRational>> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                cols[*j as usize].push((i as u32, x.clone()));
            }
        }
        SparseMatrix { ring: self.ring, nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    /// Columns as sparse vectors (the rows of the transpose).
    pub fn columns(&self) -> Vec<SparseVec<BigRational>> {
        self.transpose().rows
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.ring.same(rhs.ring)?;
        if self.ncols != rhs.nrows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let rows = crate::par::map(&self.rows, |row| {
            let mut acc: Vec<(u32, BigRational)> = Vec::new();
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k as usize] {
                    acc.push((*j, a * b));
                }
            }
            acc
        });
        Ok(SparseMatrix::from_row_entries(self.ring, self.nrows, rhs.ncols, rows))
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.ring.same(rhs.ring)?;
        if self.nrows != rhs.nrows || self.ncols != rhs.ncols {
            return Err(Error::DimensionMismatch("shape mismatch in subtraction".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(j, x)| (*j, -x))).collect())
            .collect();
        Ok(SparseMatrix::from_row_entries(self.ring, self.nrows, self.ncols, rows))
    }

    /// Converts rows into sparse vectors over a concrete field.
    pub fn field_rows<F: Field>(&self, field: &F) -> Vec<SparseVec<F::Elem>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, field.from_rational(x))).collect())
            .collect()
    }

    pub fn field_columns<F: Field>(&self, field: &F) -> Vec<SparseVec<F::Elem>> {
        self.transpose().field_rows(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::int;

    #[test]
    fn duplicates_are_summed_and_reduced() {
        let m = SparseMatrix::from_row_entries(
            Ring::ModP(2),
            1,
            2,
            vec![vec![(1, int(1)), (0, int(1)), (1, int(1))]],
        );
        assert_eq!(m.rows()[0], vec![(0, int(1))]);
    }

    #[test]
    fn product_matches_dense() {
        let a = ExactMatrix::from_i64(Ring::Int, 2, 3, &[1, 0, 2, 0, -1, 3]).unwrap();
        let b = ExactMatrix::from_i64(Ring::Int, 3, 2, &[1, 1, 0, 2, 4, 0]).unwrap();
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert_eq!(sa.mul(&sb).unwrap().to_dense(), a.mul(&b).unwrap());
        assert_eq!(sa.transpose().transpose(), sa);
    }
}
