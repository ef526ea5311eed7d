use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{poly_mul, ExponentVector, HomogeneousForm, Poly};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{serde_qvec, Q};

/// An invertible `(r+1) × (r+1)` rational matrix acting on forms by
/// `x_i ↦ Σ_j g[j][i] x_j`.
///
/// Frames live in GL rather than SL; rescaling does not move a projective
/// point, and every quantity computed from a frame is scale-insensitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame(QMatrix);

impl Frame {
    pub fn new(m: QMatrix) -> Result<Self> {
        if m.determinant().is_zero() {
            return Err(Error::SingularFrame);
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        let m = QMatrix::from_rows(rows).ok_or(Error::Dimension { expected: n, got: 0 })?;
        Self::new(m)
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self(QMatrix::identity(n))
    }

    /// Permutation frame sending `x_i ↦ x_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = QMatrix::zeros(n);
        for (i, &j) in perm.iter().enumerate() {
            if j >= n {
                return Err(Error::Dimension { expected: n, got: j + 1 });
            }
            m[(j, i)] = Q::one();
        }
        Self::new(m)
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.0[(i, j)]
    }

    /// Matrix product `self · other`. With the substitution convention,
    /// `act(g, act(h, f)) == act(g.compose(h), f)`.
    pub fn compose(&self, other: &Frame) -> Frame {
        Frame(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Frame {
        Frame(self.0.inverse().expect("frames are invertible"))
    }

    pub fn determinant(&self) -> Q {
        self.0.determinant()
    }

    pub fn is_unimodular_integral(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.0[(i, j)].is_integer()))
            && self.determinant().abs().is_one()
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.0.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A point of `P^r` in homogeneous rational coordinates. Equality is up to
/// a nonzero scalar.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint(#[serde(with = "serde_qvec")] Vec<Q>);

impl ProjPoint {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(Self(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
    }

    /// `[1:0:…:0]` in `P^r`.
    pub fn origin(r: usize) -> Self {
        let mut c = vec![Q::zero(); r + 1];
        c[0] = Q::one();
        Self(c)
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        !self.0[0].is_zero() && self.0[1..].iter().all(Zero::is_zero)
    }

    /// Coprime integer representative whose first nonzero entry is positive.
    pub fn primitive_integer_coords(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> =
            self.0.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|x| x / &g).collect()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        let n = self.0.len();
        if n != other.0.len() {
            return false;
        }
        (0..n).all(|i| (i + 1..n).all(|j| &self.0[i] * &other.0[j] == &self.0[j] * &other.0[i]))
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", c.join(":"))
    }
}

/// Substitutes `x_i ↦ Σ_j g[j][i] x_j` into `f`, i.e. `(g.f)(x) = f(gᵀx)`.
pub fn act(g: &Frame, f: &HomogeneousForm) -> Result<HomogeneousForm> {
    let n = f.nvars();
    if g.size() != n {
        return Err(Error::Dimension { expected: n, got: g.size() });
    }
    // powers[i][k] = (image of x_i)^k
    let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for i in 0..n {
        let max_k = f.support().map(|e| e[i]).max().unwrap_or(0) as usize;
        let mut lin = Poly::new();
        for j in 0..n {
            let c = g.entry(j, i);
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[j] = 1;
                lin.insert(ExponentVector(e), c.clone());
            }
        }
        let mut pw = Vec::with_capacity(max_k + 1);
        pw.push(Poly::from([(ExponentVector(vec![0; n]), Q::one())]));
        for k in 1..=max_k {
            let next = poly_mul(&pw[k - 1], &lin);
            pw.push(next);
        }
        powers.push(pw);
    }

    let mut out = Poly::new();
    for (e, c) in f.terms() {
        let mut prod = Poly::from([(ExponentVector(vec![0; n]), c.clone())]);
        for (i, &k) in e.0.iter().enumerate() {
            if k > 0 {
                prod = poly_mul(&prod, &powers[i][k as usize]);
            }
        }
        for (m, v) in prod {
            *out.entry(m).or_insert_with(Q::zero) += v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    HomogeneousForm::from_poly(f.r(), f.degree(), out)
}

/// `(gᵀ)⁻¹ p`: the dual action under which `V(g.f) = point_image(g, V(f))`.
pub fn point_image(g: &Frame, p: &ProjPoint) -> Result<ProjPoint> {
    if g.size() != p.len() {
        return Err(Error::Dimension { expected: g.size(), got: p.len() });
    }
    let y = crate::linalg::solve(g.matrix().transpose().rows(), p.coords().to_vec())
        .ok_or(Error::SingularFrame)?;
    ProjPoint::new(y)
}

/// A unimodular integer frame `g` with `point_image(g, p) = [1:0:…:0]`.
///
/// Row 0 of `g` is the primitive integer representative of `p`; the other
/// rows complete it to a `Z`-basis via Euclid on the coordinates.
pub fn frame_moving_to_origin(p: &ProjPoint) -> Frame {
    let n = p.len();
    let orig = p.primitive_integer_coords();
    let mut v = orig.clone();
    // Row operations U on v are mirrored as column operations on w = U⁻¹;
    // at the end U·orig = e_0, so column 0 of w equals orig.
    let mut w: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let j = *nonzero.iter().min_by_key(|&&i| v[i].abs()).unwrap();
        for &i in &nonzero {
            if i == j {
                continue;
            }
            // v_i -= q v_j  ⇒  column j of w += q · column i
            let q = v[i].div_floor(&v[j]);
            let t = &q * &v[j];
            v[i] -= t;
            for row in w.iter_mut() {
                let t = &q * &row[i];
                row[j] += t;
            }
        }
    }
    let lead = (0..n).find(|&i| !v[i].is_zero()).expect("nonzero point");
    if lead != 0 {
        v.swap(0, lead);
        for row in w.iter_mut() {
            row.swap(0, lead);
        }
    }
    if v[0].is_negative() {
        for row in w.iter_mut() {
            row[0] = -row[0].clone();
        }
    }
    debug_assert!((0..n).all(|i| w[i][0] == orig[i]));

    // g = wᵀ
    let rows = (0..n).map(|i| (0..n).map(|j| Q::from_integer(w[j][i].clone())).collect()).collect();
    Frame::from_rows(rows).expect("unimodular completion")
}
