//! Exact rational scalars and vectors.
//!
//! Every rational in machine-readable output is a decimal-free string: `"p"`
//! for integers, `"p/q"` otherwise.

use std::fmt;
use std::ops::{Add, Index, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` (optional sign, no decimals).
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter for a single rational as a `"p/q"` string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_qvec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A fixed-length vector of exact rationals (points of the weight space R^{r+1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(#[serde(with = "serde_qvec")] pub Vec<Q>);

impl RationalVector {
    pub fn new(v: Vec<Q>) -> Self {
        Self(v)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![Q::zero(); n])
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self(it.into_iter().map(q_int).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Q> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Self) -> Q {
        dot(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> Q {
        self.dot(self)
    }

    pub fn sum(&self) -> Q {
        self.0.iter().fold(Q::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn dist_sq(&self, other: &Self) -> Q {
        (self - other).norm_sq()
    }

    /// Comma-separated rationals, e.g. `1,0,-2/3`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        s.split(',').map(parse_q).collect::<Result<Vec<_>>>().map(Self)
    }

    /// Smallest positive `c` with `c * self` integral and primitive, together
    /// with that integer vector. `None` for the zero vector.
    pub fn primitive_direction(&self) -> Option<(Vec<BigInt>, Q)> {
        if self.0.iter().all(Zero::is_zero) {
            return None;
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let prim: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
        Some((prim, Q::new(lcm, g.abs())))
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

impl Index<usize> for RationalVector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromIterator<Q> for RationalVector {
    fn from_iter<I: IntoIterator<Item = Q>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_q("3").unwrap(), q_int(3));
        assert_eq!(parse_q("-2/3").unwrap(), q_frac(-2, 3));
        assert_eq!(parse_q("4/6").unwrap(), q_frac(2, 3));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "1.5", "1/0", "a", "1/-2", "1//2"] {
            assert!(parse_q(s).is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v = RationalVector::new(vec![q_frac(-1, 2), q_int(1), q_frac(-1, 2)]);
        let (p, c) = v.primitive_direction().unwrap();
        assert_eq!(p, vec![BigInt::from(-1), BigInt::from(2), BigInt::from(-1)]);
        assert_eq!(c, q_int(2));
        let v = RationalVector::from_ints([-2, 4, -2]);
        let (p, c) = v.primitive_direction().unwrap();
        assert_eq!(p, vec![BigInt::from(-1), BigInt::from(2), BigInt::from(-1)]);
        assert_eq!(c, q_frac(1, 2));
        assert!(RationalVector::zeros(3).primitive_direction().is_none());
    }
}
