use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of a module, matrix or complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Int,
    Rat,
    /// Prime field F_p. Primes are kept below 2^31 so products of residues fit in a `u64`.
    ModP(u64),
}

pub const MAX_PRIME: u64 = 1 << 31;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn mod_p(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidRing(format!("prime {p} exceeds 2^31")));
        }
        Ok(Ring::ModP(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Int)
    }

    pub fn require_field(self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::RingNotField(self.to_string()))
        }
    }

    pub fn same(self, other: Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self} vs {other}")))
        }
    }

    /// Brings a rational into canonical form for this ring: integers for `Int`,
    /// residues in `0..p` for `ModP`. Rationals with a denominator are accepted
    /// over F_p when the denominator is invertible.
    pub fn normalize(self, x: &BigRational) -> Result<BigRational> {
        match self {
            Ring::Rat => Ok(x.clone()),
            Ring::Int => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::InvalidEntry(format!("{x} is not an integer")))
                }
            }
            Ring::ModP(p) => {
                let pb = BigInt::from(p);
                let num = x.numer().mod_floor(&pb);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::InvalidEntry(format!("denominator of {x} vanishes mod {p}")));
                }
                let num = num.to_u64().unwrap();
                let den = den.to_u64().unwrap();
                let v = (num * inv_mod(den, p)) % p;
                Ok(BigRational::from_integer(BigInt::from(v)))
            }
        }
    }

    pub fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &BigRational) -> BigRational {
        self.reduce(-a)
    }

    /// `normalize` for values already known to be integral (ModP) or exact.
    pub fn reduce(self, x: BigRational) -> BigRational {
        match self {
            Ring::ModP(p) if x.is_integer() => {
                BigRational::from_integer(x.numer().mod_floor(&BigInt::from(p)))
            }
            Ring::ModP(_) => self.normalize(&x).expect("non-invertible denominator"),
            _ => x,
        }
    }

    pub fn is_unit(self, x: &BigRational) -> bool {
        match self {
            Ring::Int => x.abs().is_one(),
            _ => !x.is_zero(),
        }
    }
}

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Int => write!(f, "Z"),
            Ring::Rat => write!(f, "Q"),
            Ring::ModP(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp:<p>` and the shorthand `F<p>` (e.g. `F2`).
    fn from_str(s: &str) -> Result<Ring> {
        let t = s.trim();
        match t {
            "Z" => return Ok(Ring::Int),
            "Q" => return Ok(Ring::Rat),
            _ => {}
        }
        let digits = t.strip_prefix("Fp:").or_else(|| t.strip_prefix('F'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => Ring::mod_p(p),
            None => Err(Error::InvalidRing(format!("unrecognised ring {s:?}"))),
        }
    }
}

/// Parses `"n"` or `"num/den"`.
pub fn parse_scalar(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidEntry(format!("cannot parse {s:?} as an exact number"));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

pub fn format_scalar(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rings() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Int);
        assert_eq!("Fp:3".parse::<Ring>().unwrap(), Ring::ModP(3));
        assert_eq!("F2".parse::<Ring>().unwrap(), Ring::ModP(2));
        assert!("Fp:4".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn normalizes_mod_p() {
        let r = Ring::ModP(5);
        assert_eq!(r.normalize(&int(-1)).unwrap(), int(4));
        assert_eq!(r.normalize(&parse_scalar("1/2").unwrap()).unwrap(), int(3));
        assert!(Ring::Int.normalize(&parse_scalar("1/2").unwrap()).is_err());
    }
}
