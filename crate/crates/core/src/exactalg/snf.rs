//! Smith normal form over ℤ.
//!
//! [`smith_normal_form`] is the dense reference with unimodular transforms.
//! [`invariant_factors`] is what the homology engines call: a sparse elimination on
//! ±1 pivots (each removes one unit invariant factor) followed by dense SNF of the
//! residual block.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::ExactMatrix;
use super::ring::Ring;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Result of [`smith_normal_form`]: `u · m · v = s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: ExactMatrix,
    pub s: ExactMatrix,
    pub v: ExactMatrix,
}

impl Smith {
    /// Nonzero diagonal entries of `s`, in order (a divisibility chain).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).numer().clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Dense {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x += q * y;
            }
        }
        if let Some(u) = &mut self.u {
            let src = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] += t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    /// Smallest nonzero |entry| in the block `[t.., t..]`, ties broken by (row, col).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows().min(self.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // Bring the smallest remainder in row/column t to the pivot.
                    let mut best = (t, t);
                    for i in t + 1..self.rows() {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols() {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Divisibility: fold an offending row into row t and repeat.
                let piv = self.a[t][t].clone();
                let offending = (t + 1..self.rows())
                    .find(|&i| (t + 1..self.cols()).any(|j| !self.a[i][j].is_multiple_of(&piv)));
                match offending {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_exact(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> ExactMatrix {
    let entries = rows
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    ExactMatrix::from_rows(Ring::Int, r, c, entries).expect("integer matrix")
}

fn integer_rows(m: &ExactMatrix) -> Result<Vec<Vec<BigInt>>> {
    if m.ring() != Ring::Int {
        return Err(Error::RingMismatch(format!("Smith normal form needs Z, got {}", m.ring())));
    }
    Ok((0..m.rows()).map(|i| m.row(i).iter().map(|x| x.numer().clone()).collect()).collect())
}

/// Dense Smith normal form with unimodular `u`, `v` such that `u·m·v = s`.
///
/// Pivot: smallest nonzero absolute value, ties by (row, col) order.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<Smith> {
    let a = integer_rows(m)?;
    let (r, c) = (m.rows(), m.cols());
    let mut d = Dense { a, u: Some(identity(r)), v: Some(identity(c)) };
    if r > 0 && c > 0 {
        d.run();
    }
    Ok(Smith {
        u: to_exact(d.u.unwrap(), r, r),
        s: to_exact(d.a, r, c),
        v: to_exact(d.v.unwrap(), c, c),
    })
}

fn dense_factors(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    if a.is_empty() || a[0].is_empty() {
        return Vec::new();
    }
    let mut d = Dense { a, u: None, v: None };
    d.run();
    let n = d.rows().min(d.cols());
    (0..n).map(|i| d.a[i][i].clone()).take_while(|x| !x.is_zero()).collect()
}

/// Nonzero invariant factors (including units) of an integer sparse matrix, ascending.
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<BigInt>> {
    if m.ring() != Ring::Int {
        return Err(Error::RingMismatch(format!("invariant factors need Z, got {}", m.ring())));
    }
    let small: Option<Vec<Vec<(u32, i64)>>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|(j, x)| x.numer().to_i64().map(|v| (*j, v))).collect())
        .collect();
    let out = match small.map(|rows| unit_eliminate(rows, m.ncols())) {
        Some(Ok((units, residual))) => {
            let mut f = vec![BigInt::one(); units];
            f.extend(dense_factors(residual));
            f
        }
        // Entries or intermediate values left the i64 range: fall back to the exact dense route.
        _ => dense_factors(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m.get(i, j).numer().clone()).collect())
                .collect(),
        ),
    };
    let mut out = out;
    out.sort();
    Ok(out)
}

struct Overflow;

/// Eliminates ±1 pivots (fewest-entries row first, sparsest column within it).
/// Returns the number of unit pivots and the dense residual block.
fn unit_eliminate(mut rows: Vec<Vec<(u32, i64)>>, ncols: usize) -> Result<(usize, Vec<Vec<BigInt>>), Overflow> {
    let n = rows.len();
    let mut active = vec![true; n];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j as usize].push(i as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i as u32))).collect();
    let mut units = 0usize;
    let mut dead_col = vec![false; ncols];
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !active[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let pivot = rows[r]
            .iter()
            .filter(|(_, v)| v.abs() == 1)
            .min_by_key(|(j, _)| (col_rows[*j as usize].len(), *j))
            .copied();
        let Some((c, p)) = pivot else { continue };
        let prow = std::mem::take(&mut rows[r]);
        active[r] = false;
        units += 1;
        let touched = std::mem::take(&mut col_rows[c as usize]);
        dead_col[c as usize] = true;
        for r2 in touched {
            let r2 = r2 as usize;
            if !active[r2] {
                continue;
            }
            let Ok(k) = rows[r2].binary_search_by_key(&c, |e| e.0) else { continue };
            let factor = rows[r2][k].1.checked_mul(p).ok_or(Overflow)?;
            let old = std::mem::take(&mut rows[r2]);
            let mut new = Vec::with_capacity(old.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < prow.len() {
                if j == prow.len() || (i < old.len() && old[i].0 < prow[j].0) {
                    new.push(old[i]);
                    i += 1;
                } else if i == old.len() || prow[j].0 < old[i].0 {
                    let v = factor.checked_mul(prow[j].1).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?;
                    new.push((prow[j].0, v));
                    col_rows[prow[j].0 as usize].push(r2 as u32);
                    j += 1;
                } else {
                    let t = factor.checked_mul(prow[j].1).ok_or(Overflow)?;
                    let v = old[i].1.checked_sub(t).ok_or(Overflow)?;
                    if v != 0 {
                        new.push((old[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            heap.push(Reverse((new.len(), r2 as u32)));
            rows[r2] = new;
        }
        col_rows[c as usize].clear();
    }
    // Residual: active rows restricted to the columns they still touch.
    let live_rows: Vec<usize> = (0..n).filter(|&i| active[i] && !rows[i].is_empty()).collect();
    let mut live_cols: Vec<u32> = live_rows.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    debug_assert!(live_cols.iter().all(|&c| !dead_col[c as usize]));
    let residual = live_rows
        .iter()
        .map(|&i| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in &rows[i] {
                let k = live_cols.binary_search(j).unwrap();
                dense[k] = BigInt::from(*v);
            }
            dense
        })
        .collect();
    Ok((units, residual))
}
