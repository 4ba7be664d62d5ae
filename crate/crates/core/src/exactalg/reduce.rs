//! Column reduction over a field (the R = D·V scheme with "lowest nonzero" pivots).

use super::field::{axpy, Field, SparseVec};

pub struct ColumnReduction<F: Field> {
    /// Reduced columns; pairwise distinct lowest indices among the nonzero ones.
    pub reduced: Vec<SparseVec<F::Elem>>,
    /// `pivot_of_low[r] = Some(j)` when reduced column `j` has its lowest entry in row `r`.
    pub pivot_of_low: Vec<Option<u32>>,
    /// Column operations: reduced[j] = D · v[j]. Only kept when requested.
    pub v: Option<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> ColumnReduction<F> {
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// Kernel basis: one vector per column that reduced to zero, in column order.
    pub fn kernel(&self) -> Vec<SparseVec<F::Elem>> {
        let v = self.v.as_ref().expect("kernel needs tracked column operations");
        self.reduced
            .iter()
            .zip(v)
            .filter(|(r, _)| r.is_empty())
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Image basis in echelon form (distinct lows).
    pub fn image(&self) -> Vec<SparseVec<F::Elem>> {
        self.reduced.iter().filter(|c| !c.is_empty()).cloned().collect()
    }
}

pub fn reduce_columns<F: Field>(
    field: &F,
    columns: Vec<SparseVec<F::Elem>>,
    nrows: usize,
    track: bool,
) -> ColumnReduction<F> {
    let mut pivot_of_low: Vec<Option<u32>> = vec![None; nrows];
    let mut reduced: Vec<SparseVec<F::Elem>> = Vec::with_capacity(columns.len());
    let mut vs: Vec<SparseVec<F::Elem>> = Vec::new();
    for (j, mut col) in columns.into_iter().enumerate() {
        let mut v: SparseVec<F::Elem> = if track { vec![(j as u32, field.one())] } else { Vec::new() };
        while let Some((low, x)) = col.last().cloned() {
            let Some(k) = pivot_of_low[low as usize] else { break };
            let k = k as usize;
            let pivot = &reduced[k];
            let c = field.neg(&field.mul(&x, &field.inv(&pivot.last().unwrap().1)));
            col = axpy(field, &col, &c, pivot);
            if track {
                v = axpy(field, &v, &c, &vs[k]);
            }
        }
        if let Some((low, _)) = col.last() {
            pivot_of_low[*low as usize] = Some(j as u32);
        }
        reduced.push(col);
        if track {
            vs.push(v);
        }
    }
    ColumnReduction { reduced, pivot_of_low, v: track.then_some(vs) }
}

pub fn rank<F: Field>(field: &F, columns: Vec<SparseVec<F::Elem>>, nrows: usize) -> usize {
    reduce_columns(field, columns, nrows, false).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::PrimeField;

    #[test]
    fn kernel_of_rank_one_matrix() {
        let f = PrimeField { p: 3 };
        // columns (1,1), (2,2), (0,1)
        let cols = vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 1)]];
        let red = reduce_columns(&f, cols, 2, true);
        assert_eq!(red.rank(), 2);
        let ker = red.kernel();
        assert_eq!(ker, vec![vec![(0, 1), (1, 1)]]);
    }
}
