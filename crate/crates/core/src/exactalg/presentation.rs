use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ring::Ring;
use crate::error::{Error, Result};

/// A finitely generated module: ℤ^rank ⊕ ⊕ ℤ/d_i over ℤ (d_1 | d_2 | …, all d_i ≥ 2),
/// or a vector space of dimension `rank` over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    pub ring: Ring,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupPresentation {
    pub fn free(ring: Ring, rank: usize) -> Self {
        GroupPresentation { ring, rank, torsion: Vec::new() }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::free(ring, 0)
    }

    /// Builds a presentation from raw cyclic orders; units are dropped and the rest is
    /// normalised to a divisibility chain.
    pub fn new(ring: Ring, rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if ring.is_field() {
            if !torsion.iter().all(|d| d.abs().is_one()) {
                return Err(Error::InvalidArgument("torsion over a field".into()));
            }
            return Ok(Self::free(ring, rank));
        }
        let torsion = divisibility_chain(torsion.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect())?;
        Ok(GroupPresentation { ring, rank, torsion })
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Dimension over the field; over ℤ this is the free rank.
    pub fn dim(&self) -> usize {
        self.rank
    }

    /// Dimension after tensoring with F_p (universal-coefficient bookkeeping for one degree).
    pub fn dim_mod(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        self.rank + self.torsion.iter().filter(|d| d.is_multiple_of(&pb)).count()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

/// Rewrites a list of cyclic orders (all ≥ 2, or 0 for ℤ) into invariant-factor form.
fn divisibility_chain(mut ds: Vec<BigInt>) -> Result<Vec<BigInt>> {
    if ds.iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument("zero torsion coefficient".into()));
    }
    // Repeatedly replace (a, b) by (gcd, lcm) until the list is a chain.
    ds.sort();
    let n = ds.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = ds[i].gcd(&ds[j]);
            let l = ds[i].lcm(&ds[j]);
            ds[i] = g;
            ds[j] = l;
        }
    }
    Ok(ds.into_iter().filter(|d| !d.is_one()).collect())
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let base = match self.ring {
            Ring::Int => "Z".to_string(),
            Ring::Rat => "Q".to_string(),
            Ring::ModP(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push(base.clone());
        } else if self.rank > 1 {
            parts.push(format!("{base}^{}", self.rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `{"rank": r, "torsion": [d1, …]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub rank: usize,
    pub torsion: Vec<serde_json::Value>,
}

impl From<&GroupPresentation> for PresentationJson {
    fn from(g: &GroupPresentation) -> Self {
        PresentationJson {
            rank: g.rank,
            torsion: g
                .torsion
                .iter()
                .map(|d| match d.to_u64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(d.to_string()),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_to_divisibility_chain() {
        let g = GroupPresentation::new(Ring::Int, 1, vec![2.into(), 3.into(), 1.into()]).unwrap();
        assert_eq!(g.torsion, vec![BigInt::from(6)]);
        let h = GroupPresentation::new(Ring::Int, 0, vec![4.into(), 2.into()]).unwrap();
        assert_eq!(h.torsion, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(h.to_string(), "Z/2 + Z/4");
    }
}
