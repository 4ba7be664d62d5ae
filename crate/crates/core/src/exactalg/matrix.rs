use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{format_scalar, Ring};
use crate::error::{Error, Result};

/// Dense matrix with exact entries, tagged with its ring. Entries are kept in the
/// ring's canonical form (see [`Ring::normalize`]). Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: usize, cols: usize, entries: Vec<Vec<BigRational>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {rows}x{cols} matrix, got {} rows",
                entries.len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            for x in row {
                data.push(ring.normalize(&x)?);
            }
        }
        Ok(ExactMatrix { ring, rows, cols, data })
    }

    pub fn from_i64(ring: Ring, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        assert_eq!(entries.len(), rows * cols);
        let data = entries
            .iter()
            .map(|&x| ring.normalize(&super::ring::int(x)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { ring, rows, cols, data })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = self.ring.reduce(x);
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.ring.same(rhs.ring)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        for x in out.data.iter_mut() {
            *x = self.ring.reduce(std::mem::take(x));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Rank over the ring's fraction field (over F_p for `ModP`).
    pub fn rank(&self) -> usize {
        let (rank, _) = self.eliminate();
        rank
    }

    /// Determinant of a square matrix, computed in the fraction field.
    pub fn det(&self) -> Option<BigRational> {
        if self.rows != self.cols {
            return None;
        }
        let (_, det) = self.eliminate();
        Some(det)
    }

    /// Invertible over the ring itself: |det| = 1 over ℤ, det ≠ 0 over a field.
    pub fn is_invertible(&self) -> bool {
        match self.det() {
            Some(d) => match self.ring {
                Ring::Int => d.abs().is_one(),
                _ => !d.is_zero(),
            },
            None => false,
        }
    }

    /// Inverse over the ring itself, `None` when the matrix is not invertible there.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_invertible() {
            return None;
        }
        let n = self.rows;
        let field = match self.ring {
            Ring::Int => Ring::Rat,
            r => r,
        };
        let mut a = self.to_rows();
        let mut inv = ExactMatrix::identity(self.ring, n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(p, col);
            inv.swap(p, col);
            let s = invert(field, &a[col][col]);
            for j in 0..n {
                a[col][j] = field.mul(&a[col][j], &s);
                inv[col][j] = field.mul(&inv[col][j], &s);
            }
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let factor = a[i][col].clone();
                    for j in 0..n {
                        let t = field.mul(&factor, &a[col][j]);
                        a[i][j] = field.add(&a[i][j], &field.neg(&t));
                        let t = field.mul(&factor, &inv[col][j]);
                        inv[i][j] = field.add(&inv[i][j], &field.neg(&t));
                    }
                }
            }
        }
        ExactMatrix::from_rows(self.ring, n, n, inv).ok()
    }

    /// Gaussian elimination in the fraction field; returns (rank, determinant-or-zero).
    fn eliminate(&self) -> (usize, BigRational) {
        let ring = match self.ring {
            Ring::Int => Ring::Rat,
            r => r,
        };
        let mut a: Vec<Vec<BigRational>> = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
                det = BigRational::zero();
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                det = -det;
            }
            let piv = a[rank][col].clone();
            det = ring.mul(&det, &piv);
            let inv = invert(ring, &piv);
            for i in 0..m {
                if i != rank && !a[i][col].is_zero() {
                    let factor = ring.mul(&a[i][col], &inv);
                    for j in col..n {
                        let t = ring.mul(&factor, &a[rank][j]);
                        a[i][j] = ring.add(&a[i][j], &ring.neg(&t));
                    }
                }
            }
            rank += 1;
            if rank == m {
                break;
            }
        }
        if rank < n.max(m) {
            det = BigRational::zero();
        }
        (rank, det)
    }
}

pub(crate) fn invert(ring: Ring, x: &BigRational) -> BigRational {
    match ring {
        Ring::ModP(p) => {
            let v: u64 = num_traits::ToPrimitive::to_u64(x.numer()).unwrap();
            BigRational::from_integer(super::ring::inv_mod(v, p).into())
        }
        _ => x.recip(),
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{} over {}]", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, " [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
