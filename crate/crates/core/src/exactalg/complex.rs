use num_bigint::BigInt;
use num_traits::One;

use super::field::with_field;
use super::presentation::GroupPresentation;
use super::reduce;
use super::ring::Ring;
use super::snf::invariant_factors;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `diffs[k]: C^k → C^{k+1}`.
    Cochain,
    /// `diffs[k]: C_{k+1} → C_k`.
    Chain,
}

/// A bounded complex of free modules `C_0, …, C_N` with its differentials.
///
/// Degrees beyond `N` are absent; the corresponding maps are treated as zero and the
/// top degree's (co)homology is flagged as an upper bound.
#[derive(Clone, Debug)]
pub struct Complex {
    ring: Ring,
    grading: Grading,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

/// (Co)homology in one degree together with its truncation flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub n: usize,
    pub group: GroupPresentation,
    pub upper_bound_only: bool,
}

/// Rank and nonunit invariant factors of one differential.
#[derive(Clone, Debug)]
struct DiffData {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl Complex {
    pub fn new(ring: Ring, grading: Grading, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::GradingMismatch(format!(
                "{} terms need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            ring.same(d.ring())?;
            let (from, to) = match grading {
                Grading::Cochain => (k, k + 1),
                Grading::Chain => (k + 1, k),
            };
            if d.ncols() != dims[from] || d.nrows() != dims[to] {
                return Err(Error::GradingMismatch(format!(
                    "differential {k} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    dims[to],
                    dims[from]
                )));
            }
        }
        Ok(Complex { ring, grading, dims, diffs })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn diffs(&self) -> &[SparseMatrix] {
        &self.diffs
    }

    /// The differential leaving degree `n`, if present.
    pub fn outgoing(&self, n: usize) -> Option<&SparseMatrix> {
        match self.grading {
            Grading::Cochain => self.diffs.get(n),
            Grading::Chain => n.checked_sub(1).and_then(|k| self.diffs.get(k)),
        }
    }

    /// The differential arriving in degree `n`, if present.
    pub fn incoming(&self, n: usize) -> Option<&SparseMatrix> {
        match self.grading {
            Grading::Cochain => n.checked_sub(1).and_then(|k| self.diffs.get(k)),
            Grading::Chain => self.diffs.get(n),
        }
    }

    /// Verifies d∘d = 0 everywhere; returns the first failing degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let (first, second) = match self.grading {
                Grading::Cochain => (&self.diffs[k], &self.diffs[k + 1]),
                Grading::Chain => (&self.diffs[k + 1], &self.diffs[k]),
            };
            if !second.mul(first)?.is_zero() {
                return Err(Error::GradingMismatch(format!("d∘d ≠ 0 at differential {k}")));
            }
        }
        Ok(())
    }

    fn diff_data(&self, d: &SparseMatrix) -> Result<DiffData> {
        match self.ring {
            Ring::Int => {
                let f = invariant_factors(d)?;
                Ok(DiffData { rank: f.len(), torsion: f.into_iter().filter(|x| !x.is_one()).collect() })
            }
            ring => with_field(
                ring,
                |fp| Ok(DiffData { rank: reduce::rank(&fp, d.field_rows(&fp), d.ncols()), torsion: Vec::new() }),
                |q| Ok(DiffData { rank: reduce::rank(&q, d.field_rows(&q), d.ncols()), torsion: Vec::new() }),
            ),
        }
    }

    /// (Co)homology in degree `n` (`ker(outgoing) / im(incoming)`).
    pub fn homology_at(&self, n: usize) -> Result<DegreeResult> {
        if n > self.top() {
            return Err(Error::GradingMismatch(format!("degree {n} beyond top degree {}", self.top())));
        }
        let out = self.outgoing(n).map(|d| self.diff_data(d)).transpose()?;
        let inc = self.incoming(n).map(|d| self.diff_data(d)).transpose()?;
        Ok(self.assemble(n, out.as_ref(), inc.as_ref()))
    }

    /// (Co)homology in every degree `0..=top`, differentials processed in parallel.
    pub fn all_homology(&self) -> Result<Vec<DegreeResult>> {
        let data = crate::par::try_map_range(self.diffs.len(), |k| self.diff_data(&self.diffs[k]))?;
        Ok((0..=self.top())
            .map(|n| {
                let (out, inc) = match self.grading {
                    Grading::Cochain => (data.get(n), n.checked_sub(1).and_then(|k| data.get(k))),
                    Grading::Chain => (n.checked_sub(1).and_then(|k| data.get(k)), data.get(n)),
                };
                self.assemble(n, out, inc)
            })
            .collect())
    }

    fn assemble(&self, n: usize, out: Option<&DiffData>, inc: Option<&DiffData>) -> DegreeResult {
        let out_rank = out.map_or(0, |d| d.rank);
        let inc_rank = inc.map_or(0, |d| d.rank);
        let rank = self.dims[n] - out_rank - inc_rank;
        let torsion = inc.map(|d| d.torsion.clone()).unwrap_or_default();
        let group = GroupPresentation::new(self.ring, rank, torsion).expect("invariant factors are a chain");
        let upper_bound_only = n == self.top() && self.missing_beyond_top(n);
        DegreeResult { n, group, upper_bound_only }
    }

    /// The top degree misses the map that would cut it down: d_N for cochains,
    /// ∂_{N+1} for chains.
    fn missing_beyond_top(&self, n: usize) -> bool {
        match self.grading {
            Grading::Cochain => self.outgoing(n).is_none(),
            Grading::Chain => self.incoming(n).is_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::int;

    fn times(ring: Ring, k: i64) -> SparseMatrix {
        SparseMatrix::from_row_entries(ring, 1, 1, vec![vec![(0, int(k))]])
    }

    #[test]
    fn zero_complex() {
        let c = Complex::new(Ring::Int, Grading::Cochain, vec![0, 0], vec![SparseMatrix::zeros(Ring::Int, 0, 0)]).unwrap();
        for r in c.all_homology().unwrap() {
            assert!(r.group.is_zero());
        }
    }

    #[test]
    fn multiplication_by_two() {
        let c = Complex::new(Ring::Int, Grading::Cochain, vec![1, 1], vec![times(Ring::Int, 2)]).unwrap();
        let h1 = c.homology_at(1).unwrap();
        assert_eq!(h1.group.rank, 0);
        assert_eq!(h1.group.torsion, vec![BigInt::from(2)]);
        assert!(h1.upper_bound_only);
        assert!(c.homology_at(0).unwrap().group.is_zero());
        // mod 2 the map vanishes: dims 1 and 1.
        let c2 = Complex::new(Ring::ModP(2), Grading::Cochain, vec![1, 1], vec![times(Ring::ModP(2), 2)]).unwrap();
        let dims: Vec<usize> = c2.all_homology().unwrap().iter().map(|r| r.group.rank).collect();
        assert_eq!(dims, vec![1, 1]);
    }

    #[test]
    fn rational_zero_differential() {
        let c = Complex::new(Ring::Rat, Grading::Cochain, vec![1, 1], vec![times(Ring::Rat, 0)]).unwrap();
        assert_eq!(c.homology_at(0).unwrap().group.rank, 1);
    }

    #[test]
    fn grading_mismatch_is_reported() {
        let err = Complex::new(Ring::Int, Grading::Cochain, vec![2, 1], vec![times(Ring::Int, 1)]).unwrap_err();
        assert_eq!(err.kind(), "GradingMismatch");
    }
}
