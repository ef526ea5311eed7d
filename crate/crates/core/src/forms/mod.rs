//! Sparse homogeneous forms over Q, the linear substitution action,
//! multiplicities at points, and the destabilization map
//! `f ↦ f · (x_1 ⋯ x_r)^N`.

mod frame;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

pub use frame::{act, frame_moving_to_origin, point_image, Frame, ProjPoint};
pub use parse::parse_form;

/// Exponents `(e_0, …, e_r)` of a monomial `x_0^{e_0} ⋯ x_r^{e_r}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn new(e: Vec<u32>) -> Self {
        Self(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_rational(&self) -> crate::rational::RationalVector {
        self.0.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

pub(crate) type Poly = BTreeMap<ExponentVector, Q>;

pub(crate) fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea.add(eb)).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A nonzero homogeneous form of degree `d` in `x_0, …, x_r`, i.e. a point of
/// the Hilbert scheme of degree-`d` hypersurfaces in `P^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousForm {
    r: usize,
    d: u32,
    #[serde(with = "term_list")]
    terms: BTreeMap<ExponentVector, Q>,
}

impl HomogeneousForm {
    /// Builds a form, summing duplicate monomials and dropping cancelled ones.
    pub fn new<I>(r: usize, d: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Q)>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            check_exponent(r, d, &e)?;
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c: &mut Q| !c.is_zero());
        if map.is_empty() {
            return Err(Error::EmptyForm);
        }
        Ok(Self { r, d, terms: map })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(r: usize, d: u32, terms: &[(i64, &[u32])]) -> Result<Self> {
        Self::new(
            r,
            d,
            terms
                .iter()
                .map(|(c, e)| (ExponentVector(e.to_vec()), Q::from_integer(BigInt::from(*c)))),
        )
    }

    /// `x_i^d`.
    pub fn power_of_variable(r: usize, d: u32, i: usize) -> Self {
        let mut e = vec![0; r + 1];
        e[i] = d;
        Self::new(r, d, [(ExponentVector(e), Q::one())]).expect("valid monomial")
    }

    pub(crate) fn from_poly(r: usize, d: u32, terms: Poly) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyForm);
        }
        Ok(Self { r, d, terms })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn nvars(&self) -> usize {
        self.r + 1
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, Q> {
        &self.terms
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&Q> {
        self.terms.get(e)
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates the form at a rational point.
    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(&e.0) {
                t *= num_traits::pow(xi.clone(), k as usize);
            }
            acc + t
        })
    }
}

fn check_exponent(r: usize, d: u32, e: &ExponentVector) -> Result<()> {
    if e.len() != r + 1 {
        return Err(Error::Dimension { expected: r + 1, got: e.len() });
    }
    if e.degree() != u64::from(d) {
        return Err(Error::DegreeMismatch { expected: d, got: e.degree() });
    }
    Ok(())
}

mod term_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Term {
        #[serde(with = "crate::rational::serde_q")]
        coeff: Q,
        exponents: ExponentVector,
    }

    pub fn serialize<S: Serializer>(
        t: &BTreeMap<ExponentVector, Q>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(t.iter().map(|(e, c)| Term { coeff: c.clone(), exponents: e.clone() }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<ExponentVector, Q>, D::Error> {
        let v = Vec::<Term>::deserialize(d)?;
        Ok(v.into_iter().map(|t| (t.exponents, t.coeff)).collect())
    }
}

/// Multiplicity of the hypersurface at `[1:0:…:0]`: `d − max e_0` over the support.
pub fn multiplicity_at_origin(f: &HomogeneousForm) -> u32 {
    let top = f.support().map(|e| e[0]).max().unwrap_or(0);
    f.degree() - top
}

/// Multiplicity of `V(f)` at `p` (0 when `f(p) ≠ 0`).
pub fn multiplicity_at(f: &HomogeneousForm, p: &ProjPoint) -> Result<u32> {
    if p.len() != f.nvars() {
        return Err(Error::Dimension { expected: f.nvars(), got: p.len() });
    }
    if p.is_origin() {
        return Ok(multiplicity_at_origin(f));
    }
    let g = frame_moving_to_origin(p);
    Ok(multiplicity_at_origin(&act(&g, f)?))
}

/// `f · (x_1 ⋯ x_r)^N`, a form of degree `d + rN`.
pub fn destabilize(f: &HomogeneousForm, n: u32) -> Result<HomogeneousForm> {
    let r = f.r();
    let rn = u32::try_from(r)
        .ok()
        .and_then(|r| r.checked_mul(n))
        .and_then(|x| x.checked_add(f.degree()))
        .ok_or(Error::Overflow("raising the degree"))?;
    let terms = f
        .terms()
        .iter()
        .map(|(e, c)| {
            let mut shifted = e.0.clone();
            for x in &mut shifted[1..] {
                *x += n;
            }
            (ExponentVector(shifted), c.clone())
        })
        .collect();
    HomogeneousForm::from_poly(r, rn, terms)
}

/// Binomial coefficient with `C(n, k) = 0` whenever `n < k`, including `n < 0`.
fn binom(n: i64, k: u32) -> BigInt {
    if n < i64::from(k) {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `P_{r,d}(t) = C(r+t, r) − C(r+t−d, r)`, the Hilbert polynomial of a
/// degree-`d` hypersurface in `P^r`.
pub fn hilbert_poly_value(r: u32, d: u32, t: i64) -> BigInt {
    let r_i = i64::from(r);
    binom(r_i + t, r) - binom(r_i + t - i64::from(d), r)
}

impl fmt::Display for HomogeneousForm {
    /// Writes the form in the form-file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r={} d={}", self.r, self.d)?;
        // Highest monomial first (lex with x_0 > x_1 > …).
        for (e, c) in self.terms.iter().rev() {
            write!(f, "{c}")?;
            for k in &e.0 {
                write!(f, " {k}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
