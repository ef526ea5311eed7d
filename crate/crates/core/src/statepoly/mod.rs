//! State polytopes, the barycenter `ξ_{r,d} = d/(r+1) · 1`, exact distance
//! from `ξ` to the Newton polytope, and the associated primitive
//! one-parameter subgroup of the diagonal torus.
//!
//! Distances are carried as squares (`delta_sq`) so nothing irrational is
//! ever formed.

mod projection;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{ExponentVector, HomogeneousForm};
use crate::rational::{serde_q, RationalVector, Q};

/// Support of a form, viewed as the vertex set of its Newton polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePolytope {
    points: Vec<ExponentVector>,
}

impl StatePolytope {
    pub fn new(points: Vec<ExponentVector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyForm)?;
        let (n, d) = (first.len(), first.degree());
        for p in &points {
            if p.len() != n {
                return Err(Error::Dimension { expected: n, got: p.len() });
            }
            if p.degree() != d {
                return Err(Error::InvalidParams("support points have different degrees".into()));
            }
        }
        Ok(Self { points })
    }

    pub fn of_form(f: &HomogeneousForm) -> Self {
        Self { points: f.support().cloned().collect() }
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }
}

/// `(d/(r+1), …, d/(r+1))`.
pub fn barycenter(r: usize, d: u32) -> RationalVector {
    let v = Q::new(BigInt::from(d), BigInt::from(r + 1));
    RationalVector::new(vec![v; r + 1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullWeight {
    pub point: ExponentVector,
    #[serde(with = "serde_q")]
    pub weight: Q,
}

/// Nearest point of a hull to a target, with a convex-combination witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub q: RationalVector,
    pub dist_sq: Q,
    pub hull_weights: Vec<HullWeight>,
}

/// Exact Euclidean projection of `t` onto the convex hull of `poly`.
pub fn nearest_point(poly: &StatePolytope, t: &RationalVector) -> Result<Projection> {
    if t.len() != poly.dim() {
        return Err(Error::Dimension { expected: poly.dim(), got: t.len() });
    }
    let shifted: Vec<Vec<Q>> = poly
        .points
        .iter()
        .map(|e| (&e.to_rational() - t).0)
        .collect();
    let mn = projection::min_norm_point(&shifted);
    let x = RationalVector::new(mn.point);
    let mut hull_weights: Vec<HullWeight> = mn
        .weights
        .into_iter()
        .map(|(i, w)| HullWeight { point: poly.points[i].clone(), weight: w })
        .collect();
    hull_weights.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(Projection { q: t + &x, dist_sq: x.norm_sq(), hull_weights })
}

/// A diagonal one-parameter subgroup `t ↦ diag(t^{a_0}, …, t^{a_r})` of
/// `SL_{r+1}`: integer weights summing to zero, primitive, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct OneParamSubgroup(Vec<i64>);

impl OneParamSubgroup {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.iter().all(|&x| x == 0) {
            return Err(Error::InvalidSubgroup("zero weight vector".into()));
        }
        if a.iter().map(|&x| i128::from(x)).sum::<i128>() != 0 {
            return Err(Error::InvalidSubgroup("weights do not sum to zero".into()));
        }
        let g = a.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        if g != 1 {
            return Err(Error::InvalidSubgroup(format!("weights divisible by {g}")));
        }
        Ok(Self(a))
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `‖λ‖² = Σ a_i²`.
    pub fn norm_sq(&self) -> i128 {
        self.0.iter().map(|&x| i128::from(x) * i128::from(x)).sum()
    }

    pub fn min_weight(&self) -> i64 {
        *self.0.iter().min().unwrap()
    }

    pub fn max_weight(&self) -> i64 {
        *self.0.iter().max().unwrap()
    }

    /// Representative of the conjugacy class: weights in non-increasing order.
    pub fn class_rep(&self) -> Self {
        let mut a = self.0.clone();
        a.sort_unstable_by(|x, y| y.cmp(x));
        Self(a)
    }
}

impl TryFrom<Vec<i64>> for OneParamSubgroup {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<OneParamSubgroup> for Vec<i64> {
    fn from(l: OneParamSubgroup) -> Self {
        l.0
    }
}

impl fmt::Display for OneParamSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Validates `a` and returns its descending-sorted class representative.
pub fn class_rep(a: &[i64]) -> Result<OneParamSubgroup> {
    Ok(OneParamSubgroup::new(a.to_vec())?.class_rep())
}

/// Torus-level instability data of a form: nearest point `q` of `Δ_f` to
/// `ξ`, `w = q − ξ`, `δ² = |w|²`, and `λ = scale · w` primitive integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstabilityCertificate {
    pub q: RationalVector,
    pub w: RationalVector,
    #[serde(with = "serde_q")]
    pub delta_sq: Q,
    pub lambda: Option<OneParamSubgroup>,
    #[serde(with = "opt_q", default)]
    pub scale: Option<Q>,
    pub hull_weights: Vec<HullWeight>,
}

mod opt_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(q) => s.collect_str(q),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::rational::parse_q(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl InstabilityCertificate {
    pub fn is_semistable(&self) -> bool {
        self.delta_sq.is_zero()
    }

    /// Checks every invariant exactly against the support and barycenter:
    /// reconstruction of `q`, weights on the simplex, `Σ w = 0`, the
    /// optimality inequalities `⟨w, e − q⟩ ≥ 0`, and `λ ∥ w`.
    pub fn verify(&self, support: &StatePolytope, xi: &RationalVector) -> bool {
        let n = xi.len();
        if self.q.len() != n || self.w.len() != n {
            return false;
        }
        if &(&self.q - xi) != &self.w || self.w.norm_sq() != self.delta_sq {
            return false;
        }
        if !self.w.sum().is_zero() {
            return false;
        }
        let total: Q = self.hull_weights.iter().map(|h| h.weight.clone()).sum();
        if total != Q::from_integer(1.into()) || self.hull_weights.iter().any(|h| h.weight.is_negative()) {
            return false;
        }
        if self.hull_weights.iter().any(|h| !support.points().contains(&h.point)) {
            return false;
        }
        let mut recon = RationalVector::zeros(n);
        for h in &self.hull_weights {
            recon = &recon + &h.point.to_rational().scale(&h.weight);
        }
        if recon != self.q {
            return false;
        }
        let wq = self.w.dot(&self.q);
        if support.points().iter().any(|e| self.w.dot(&e.to_rational()) < wq) {
            return false;
        }
        match (&self.lambda, &self.scale) {
            (None, None) => self.delta_sq.is_zero(),
            (Some(l), Some(c)) => {
                c.is_positive()
                    && l.weights()
                        .iter()
                        .zip(self.w.iter())
                        .all(|(&a, wi)| Q::from_integer(a.into()) == wi * c)
            }
            _ => false,
        }
    }
}

/// Projects `ξ_{r,d}` onto the Newton polytope of `f`.
pub fn torus_index(f: &HomogeneousForm) -> InstabilityCertificate {
    let xi = barycenter(f.r(), f.degree());
    let proj = nearest_point(&StatePolytope::of_form(f), &xi).expect("support matches r");
    let w = &proj.q - &xi;
    let (lambda, scale) = match w.primitive_direction() {
        None => (None, None),
        Some((ints, c)) => {
            let a: Vec<i64> = ints
                .iter()
                .map(|x| x.to_i64().expect("weights fit in i64 at these sizes"))
                .collect();
            (Some(OneParamSubgroup::new(a).expect("w has zero sum")), Some(c))
        }
    };
    InstabilityCertificate { q: proj.q, w, delta_sq: proj.dist_sq, lambda, scale, hull_weights: proj.hull_weights }
}

/// Hilbert–Mumford weight for a diagonal subgroup with weights `a`:
/// `min ⟨a, e⟩` over the support.
pub fn mu_weight(f: &HomogeneousForm, a: &[i64]) -> Result<i64> {
    if a.len() != f.nvars() {
        return Err(Error::Dimension { expected: f.nvars(), got: a.len() });
    }
    if a.iter().all(|&x| x == 0) {
        return Err(Error::InvalidSubgroup("zero weight vector".into()));
    }
    if a.iter().map(|&x| i128::from(x)).sum::<i128>() != 0 {
        return Err(Error::InvalidSubgroup("weights do not sum to zero".into()));
    }
    let m = f
        .support()
        .map(|e| e.0.iter().zip(a).map(|(&k, &ai)| i128::from(k) * i128::from(ai)).sum::<i128>())
        .min()
        .expect("nonempty support");
    i64::try_from(m).map_err(|_| Error::Overflow("computing a weight"))
}
