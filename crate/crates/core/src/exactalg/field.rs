//! Field arithmetic used by the elimination kernels, and sparse vectors over it.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ring::{inv_mod, Ring};
use crate::error::Result;

pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `a` must already be canonical for the field's ring.
    fn from_rational(&self, a: &BigRational) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
    fn ring(&self) -> Ring;
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
    fn from_rational(&self, a: &BigRational) -> u64 {
        let r = Ring::ModP(self.p).normalize(a).expect("canonical residue");
        r.numer().to_u64().unwrap()
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn ring(&self) -> Ring {
        Ring::ModP(self.p)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        num_traits::One::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn ring(&self) -> Ring {
        Ring::Rat
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// Returns `a + c·b`.
pub fn axpy<F: Field>(field: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Runs `f` with the concrete field for `ring`.
pub fn with_field<R>(
    ring: Ring,
    fp: impl FnOnce(PrimeField) -> Result<R>,
    q: impl FnOnce(Rationals) -> Result<R>,
) -> Result<R> {
    match ring {
        Ring::ModP(p) => fp(PrimeField { p }),
        Ring::Rat => q(Rationals),
        Ring::Int => Err(crate::error::Error::RingNotField(ring.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels_to_zero() {
        let f = PrimeField { p: 2 };
        let a = vec![(0, 1), (3, 1)];
        let b = vec![(3, 1), (5, 1)];
        assert_eq!(axpy(&f, &a, &1, &b), vec![(0, 1), (5, 1)]);
    }
}
