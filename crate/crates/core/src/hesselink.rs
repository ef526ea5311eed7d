//! Band geometry for the destabilized Hilbert scheme of degree `d + rN`.
//!
//! * `Q^r_{d,N}`: the polytope `{Σy = d+rN, y_0 ≥ 0, y_i ≥ N (i ≥ 1)}` that
//!   contains every destabilized support.
//! * `l^r_{d,N,m}`: distance from `ξ_{r,d+rN}` to `(d−m, m+N, N, …, N)`.
//! * `B^r_{d,N,m}`: points of the weight plane with `y ≥ 0`, `y_0 ≤ d − m`
//!   and `|ξ − y| ≤ l`.
//!
//! Membership is tested on the nearest point `ξ + w` of the worst state
//! polytope, which lies on the plane `Σy = d+rN`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{act, frame_moving_to_origin, Frame, HomogeneousForm, ProjPoint};
use crate::linalg::QMatrix;
use crate::rational::{q_int, serde_q, RationalVector, Q};
use crate::statepoly::{barycenter, torus_index, InstabilityCertificate, OneParamSubgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandParams {
    pub r: usize,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub m: u32,
}

impl BandParams {
    pub fn new(r: usize, d: u32, n: u32, m: u32) -> Result<Self> {
        if r < 1 || d < 1 {
            return Err(Error::InvalidParams("r and d must be at least 1".into()));
        }
        if m > d {
            return Err(Error::InvalidParams(format!("m = {m} exceeds d = {d}")));
        }
        Ok(Self { r, d, n, m })
    }

    /// Degree `d + rN` of the destabilized forms.
    pub fn big_degree(&self) -> u32 {
        self.d + self.r as u32 * self.n
    }

    fn xi(&self) -> RationalVector {
        barycenter(self.r, self.big_degree())
    }
}

fn check_len(y: &RationalVector, r: usize) -> Result<()> {
    if y.len() != r + 1 {
        return Err(Error::Dimension { expected: r + 1, got: y.len() });
    }
    Ok(())
}

/// Membership in `Q^r_{d,N}`.
pub fn q_contains(y: &RationalVector, r: usize, d: u32, n: u32) -> Result<bool> {
    check_len(y, r)?;
    let total = q_int(i64::from(d) + r as i64 * i64::from(n));
    let floor = q_int(i64::from(n));
    Ok(y.sum() == total && !y[0].is_negative() && y.iter().skip(1).all(|yi| *yi >= floor))
}

/// `(d−m, m+N, N, …, N)`, the slice vertex realizing `l^r_{d,N,m}`.
fn extreme_point(p: &BandParams) -> RationalVector {
    let mut y = vec![q_int(i64::from(p.n)); p.r + 1];
    y[0] = q_int(i64::from(p.d - p.m));
    y[1] = q_int(i64::from(p.m + p.n));
    RationalVector::new(y)
}

/// `(l^r_{d,N,m})²`.
pub fn l_squared(r: usize, d: u32, n: u32, m: u32) -> Result<Q> {
    let p = BandParams::new(r, d, n, m)?;
    Ok(p.xi().dist_sq(&extreme_point(&p)))
}

/// Exact membership in `B^r_{d,N,m}`.
pub fn band_contains(y: &RationalVector, r: usize, d: u32, n: u32, m: u32) -> Result<bool> {
    check_len(y, r)?;
    let p = BandParams::new(r, d, n, m)?;
    let total = q_int(i64::from(p.big_degree()));
    if y.sum() != total || y.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    if y[0] > q_int(i64::from(d - m)) {
        return Ok(false);
    }
    Ok(p.xi().dist_sq(y) <= l_squared(r, d, n, m)?)
}

/// `|z_N − ξ|² − l²_m`, where `z_N = (d−m', N+m'/r, …, N+m'/r)` is the
/// closest point to `ξ` on the slice `y_0 = d − m'`. Bands `m` and `m'`
/// are disjoint once this is positive (and `N > d`).
pub fn separation_gap(r: usize, d: u32, n: u32, m: u32, m_prime: u32) -> Result<Q> {
    let p = BandParams::new(r, d, n, m)?;
    BandParams::new(r, d, n, m_prime)?;
    let mut z = vec![q_int(i64::from(n)) + Q::new(BigInt::from(m_prime), BigInt::from(r)); r + 1];
    z[0] = q_int(i64::from(d) - i64::from(m_prime));
    let z = RationalVector::new(z);
    Ok(p.xi().dist_sq(&z) - l_squared(r, d, n, m)?)
}

/// Least `N ≥ 1` with `separation_gap(r, d, N, m, m') > 0`.
///
/// The gap is affine in `N` with slope `2(m' − m)`, so the inequality is
/// solved in closed form from its value at `N = 0`.
pub fn pair_separation_min_n(r: usize, d: u32, m: u32, m_prime: u32) -> Result<u32> {
    if m >= m_prime {
        return Err(Error::InvalidParams(format!("need m < m', got m = {m}, m' = {m_prime}")));
    }
    let g0 = separation_gap(r, d, 0, m, m_prime)?;
    let slope = separation_gap(r, d, 1, m, m_prime)? - &g0;
    debug_assert_eq!(slope, q_int(2 * (i64::from(m_prime) - i64::from(m))));
    // smallest N ≥ 1 with g0 + slope·N > 0
    let n: BigInt = (-g0 / slope).floor().to_integer() + 1;
    let n = n.max(BigInt::from(1));
    n.to_u32().ok_or(Error::Overflow("solving the separation inequality"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMinimum {
    pub m: u32,
    pub m_prime: u32,
    pub min_n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub r: usize,
    pub d: u32,
    pub threshold: u32,
    pub pairs: Vec<PairMinimum>,
}

pub fn threshold_report(r: usize, d: u32) -> Result<ThresholdReport> {
    if r < 1 || d < 1 {
        return Err(Error::InvalidParams("r and d must be at least 1".into()));
    }
    let mut pairs = Vec::new();
    for m in 0..=d {
        for m_prime in m + 1..=d {
            pairs.push(PairMinimum { m, m_prime, min_n: pair_separation_min_n(r, d, m, m_prime)? });
        }
    }
    let threshold = pairs.iter().map(|p| p.min_n).fold(d + 1, u32::max);
    Ok(ThresholdReport { r, d, threshold, pairs })
}

/// `N_{r,d}`: least `N > d` at which every pair of bands is separated.
pub fn separation_threshold(r: usize, d: u32) -> Result<u32> {
    threshold_report(r, d).map(|t| t.threshold)
}

/// The pair `([λ], δ)` labelling a Hesselink stratum, with `scale = c`
/// where `λ = c·w`; hence `δ/‖λ‖ = 1/c` and `‖λ‖δ = c·δ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumLabel {
    pub lambda_rep: OneParamSubgroup,
    #[serde(with = "serde_q")]
    pub delta_sq: Q,
    #[serde(with = "serde_q")]
    pub scale: Q,
}

impl StratumLabel {
    /// `None` for torus-semistable certificates.
    pub fn from_certificate(cert: &InstabilityCertificate) -> Option<Self> {
        match (&cert.lambda, &cert.scale) {
            (Some(l), Some(c)) if cert.delta_sq.is_positive() => Some(Self {
                lambda_rep: l.class_rep(),
                delta_sq: cert.delta_sq.clone(),
                scale: c.clone(),
            }),
            _ => None,
        }
    }

    /// Values of `m` for which some member of the class satisfies
    /// `ξ + (δ/‖λ‖)·λ ∈ B^r_{d,N,m}`. The band is symmetric in coordinates
    /// `1..r` only, so each distinct weight is tried in coordinate 0.
    pub fn band_matches(&self, r: usize, d: u32, n: u32) -> Result<Vec<u32>> {
        let a = self.lambda_rep.weights();
        if a.len() != r + 1 {
            return Err(Error::Dimension { expected: r + 1, got: a.len() });
        }
        let xi = barycenter(r, d + r as u32 * n);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for k in 0..a.len() {
            if !seen.insert(a[k]) {
                continue;
            }
            let mut perm: Vec<i64> = vec![a[k]];
            perm.extend(a.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x));
            let w: RationalVector = perm.iter().map(|&x| q_int(x) / &self.scale).collect();
            let y = &xi + &w;
            for m in 0..=d {
                if band_contains(&y, r, d, n, m)? && !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Best torus certificate of `g.f` over a finite family of frames: a
/// certified lower bound for the Kempf index of `f`. Ties go to the
/// earliest frame.
pub fn worst_frame_search(
    f: &HomogeneousForm,
    frames: &[Frame],
) -> Result<(Frame, InstabilityCertificate)> {
    if frames.is_empty() {
        return Err(Error::EmptyFrames);
    }
    let certs: Vec<InstabilityCertificate> = frames
        .par_iter()
        .map(|g| act(g, f).map(|gf| torus_index(&gf)))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, c) in certs.iter().enumerate().skip(1) {
        if c.delta_sq > certs[best].delta_sq {
            best = i;
        }
    }
    let cert = certs.into_iter().nth(best).unwrap();
    Ok((frames[best].clone(), cert))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Lower-triangular unipotent frames with strictly-lower entries in
/// `-budget..=budget`.
fn unipotents(n: usize, budget: i64) -> Vec<Frame> {
    let slots: Vec<(usize, usize)> = (1..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let width = (2 * budget + 1) as usize;
    let total = width.pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut m = QMatrix::identity(n);
            for &(i, j) in &slots {
                // digit 0 ↦ entry 0, so the identity comes first
                let digit = (code % width) as i64;
                code /= width;
                let v = if digit <= budget { digit } else { budget - digit };
                m[(i, j)] = q_int(v);
            }
            Frame::new(m).expect("unipotent")
        })
        .collect()
}

/// Frames `perm · u · mover` where `mover` sends `p` to `[1:0:…:0]`, `perm`
/// permutes `x_1..x_r`, and `u` is lower unipotent, so the mover acts first.
/// Every member sends `p` to `[1:0:…:0]`; the bare mover comes first.
pub fn default_frames(r: usize, p: &ProjPoint, budget: u32) -> Result<Vec<Frame>> {
    let n = r + 1;
    if p.len() != n {
        return Err(Error::Dimension { expected: n, got: p.len() });
    }
    let mover = frame_moving_to_origin(p);
    let units = unipotents(n, i64::from(budget));
    let tail: Vec<usize> = (1..n).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for perm in permutations(&tail) {
        let mut full = vec![0];
        full.extend(perm);
        let pf = Frame::permutation(&full)?;
        for u in &units {
            let g = pf.compose(u).compose(&mover);
            if seen.insert(g.clone()) {
                out.push(g);
            }
        }
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::point_image;
    use crate::rational::q_frac;

    #[test]
    fn q_contains_examples() {
        assert!(q_contains(&RationalVector::from_ints([2, 3]), 1, 2, 3).unwrap());
        assert!(!q_contains(&RationalVector::from_ints([3, 2]), 1, 2, 3).unwrap());
        assert!(!q_contains(&RationalVector::from_ints([2, 4]), 1, 2, 3).unwrap());
        assert!(q_contains(&RationalVector::from_ints([2, 3, 3]), 1, 2, 3).is_err());
    }

    #[test]
    fn l_squared_examples() {
        assert_eq!(l_squared(1, 2, 3, 1).unwrap(), q_frac(9, 2));
        assert_eq!(l_squared(1, 2, 3, 2).unwrap(), q_frac(25, 2));
        assert_eq!(l_squared(1, 2, 3, 0).unwrap(), q_frac(1, 2));
        assert!(l_squared(1, 2, 3, 3).is_err());
    }

    #[test]
    fn band_contains_examples() {
        assert!(band_contains(&RationalVector::from_ints([0, 5]), 1, 2, 3, 2).unwrap());
        let xi = RationalVector::new(vec![q_frac(5, 2); 2]);
        assert!(!band_contains(&xi, 1, 2, 3, 0).unwrap());
        assert!(!band_contains(&RationalVector::from_ints([-1, 6]), 1, 2, 3, 2).unwrap());
    }

    #[test]
    fn pair_minima_examples() {
        assert_eq!(pair_separation_min_n(1, 2, 0, 1).unwrap(), 2);
        assert_eq!(pair_separation_min_n(1, 2, 0, 2).unwrap(), 1);
        assert_eq!(pair_separation_min_n(1, 2, 1, 2).unwrap(), 1);
        assert!(pair_separation_min_n(1, 2, 1, 1).is_err());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(separation_threshold(1, 2).unwrap(), 3);
        assert_eq!(separation_threshold(1, 1).unwrap(), 2);
        let t = threshold_report(1, 2).unwrap();
        assert_eq!(t.pairs.len(), 3);
    }

    #[test]
    fn gap_slope_is_twice_the_multiplicity_difference() {
        for r in 1..4 {
            for d in 1..6u32 {
                for m in 0..=d {
                    for mp in m + 1..=d {
                        for n in 0..8 {
                            let step = separation_gap(r, d, n + 1, m, mp).unwrap()
                                - separation_gap(r, d, n, m, mp).unwrap();
                            assert_eq!(step, q_int(2 * i64::from(mp - m)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frame_search_examples() {
        let f = HomogeneousForm::power_of_variable(1, 2, 0);
        let (_, c) = worst_frame_search(&f, &[Frame::identity(2)]).unwrap();
        assert_eq!(c, torus_index(&f));
        let swap = Frame::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let (_, c) = worst_frame_search(&f, &[Frame::identity(2), swap]).unwrap();
        assert_eq!(c.delta_sq, q_int(2));

        // (x_0 + x_1)^2
        let f = HomogeneousForm::from_int_terms(1, 2, &[(1, &[2, 0]), (2, &[1, 1]), (1, &[0, 2])])
            .unwrap();
        let mover = frame_moving_to_origin(&ProjPoint::from_ints(&[1, -1]).unwrap());
        assert_eq!(torus_index(&f).delta_sq, q_int(0));
        let (best, c) = worst_frame_search(&f, &[Frame::identity(2), mover.clone()]).unwrap();
        assert_eq!(c.delta_sq, q_int(2));
        assert_eq!(best, mover);
        assert_eq!(worst_frame_search(&f, &[]).unwrap_err(), Error::EmptyFrames);
    }

    #[test]
    fn default_frame_counts() {
        let p = ProjPoint::from_ints(&[1, 2]).unwrap();
        assert_eq!(default_frames(1, &p, 0).unwrap().len(), 1);
        let p = ProjPoint::from_ints(&[0, 1, 1]).unwrap();
        assert_eq!(default_frames(2, &p, 0).unwrap().len(), 2);
        let fam = default_frames(2, &p, 1).unwrap();
        assert_eq!(fam.len(), 2 * 27);
        assert_eq!(fam[0], frame_moving_to_origin(&p));
        for g in &fam {
            assert!(point_image(g, &p).unwrap().is_origin());
        }
        assert!(default_frames(2, &p, 2).unwrap().len() > fam.len());
    }

    #[test]
    fn stratum_label_band_matches() {
        // x_1^2 destabilized with N = 3 lies in band m = 2 only
        let f = crate::forms::destabilize(&HomogeneousForm::power_of_variable(1, 2, 1), 3).unwrap();
        let label = StratumLabel::from_certificate(&torus_index(&f)).unwrap();
        assert_eq!(label.lambda_rep.weights(), &[1, -1]);
        assert_eq!(label.band_matches(1, 2, 3).unwrap(), vec![2]);
    }
}
