//! Multiplicity classification through band membership of the destabilized
//! form, plus the two-sided multiplicity bound from a stratum label.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{
    act, destabilize, frame_moving_to_origin, multiplicity_at, multiplicity_at_origin,
    ExponentVector, HomogeneousForm, ProjPoint,
};
use crate::hesselink::{band_contains, l_squared, separation_threshold, BandParams, StratumLabel};
use crate::rational::{serde_q, Q};
use crate::statepoly::{torus_index, InstabilityCertificate};

/// Choice of the destabilization exponent `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NChoice {
    /// The separation threshold `N_{r,d}`.
    Auto,
    Fixed(u32),
}

impl NChoice {
    pub fn resolve(self, r: usize, d: u32) -> Result<(u32, u32)> {
        let threshold = separation_threshold(r, d)?;
        match self {
            NChoice::Auto => Ok((threshold, threshold)),
            NChoice::Fixed(n) if n < threshold => Err(Error::BelowThreshold { n, threshold, r, d }),
            NChoice::Fixed(n) => Ok((n, threshold)),
        }
    }
}

impl FromStr for NChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(NChoice::Auto);
        }
        s.parse::<u32>()
            .map(NChoice::Fixed)
            .map_err(|_| Error::InvalidParams(format!("N must be `auto` or a nonnegative integer, got `{s}`")))
    }
}

impl fmt::Display for NChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NChoice::Auto => write!(f, "auto"),
            NChoice::Fixed(n) => write!(f, "{n}"),
        }
    }
}

/// Per-band detail, attached only when the nearest point matched no band.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCheck {
    pub m: u32,
    #[serde(with = "serde_q")]
    pub l_sq: Q,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub r: usize,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub m_band: Option<u32>,
    pub m_direct: u32,
    pub cert: InstabilityCertificate,
    pub band_params: BandParams,
    pub agreed: bool,
    pub threshold_used: u32,
    /// Every `m` whose band contains the nearest point.
    pub matches: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Vec<BandCheck>>,
}

/// Reads off the multiplicity of `V(f)` at `[1:0:…:0]` from the band that
/// contains the torus nearest point of `f · (x_1⋯x_r)^N`.
pub fn classify_at_origin(f: &HomogeneousForm, n: NChoice) -> Result<ClassificationReport> {
    let (r, d) = (f.r(), f.degree());
    let (n, threshold) = n.resolve(r, d)?;
    let big = destabilize(f, n)?;
    let cert = torus_index(&big);
    let mut matches = Vec::new();
    for m in 0..=d {
        if band_contains(&cert.q, r, d, n, m)? {
            matches.push(m);
        }
    }
    let m_direct = multiplicity_at_origin(f);
    let m_band = match matches.as_slice() {
        [m] => Some(*m),
        _ => None,
    };
    let diagnostics = if m_band.is_none() {
        Some(
            (0..=d)
                .map(|m| {
                    Ok(BandCheck {
                        m,
                        l_sq: l_squared(r, d, n, m)?,
                        contained: matches.contains(&m),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    Ok(ClassificationReport {
        r,
        d,
        n,
        m_band,
        m_direct,
        band_params: BandParams::new(r, d, n, m_band.unwrap_or(m_direct))?,
        agreed: m_band == Some(m_direct),
        threshold_used: threshold,
        cert,
        matches,
        diagnostics,
    })
}

/// Classification at an arbitrary point: move `p` to `[1:0:…:0]` first.
pub fn classify_at(f: &HomogeneousForm, p: &ProjPoint, n: NChoice) -> Result<ClassificationReport> {
    if p.len() != f.nvars() {
        return Err(Error::Dimension { expected: f.nvars(), got: p.len() });
    }
    let g = frame_moving_to_origin(p);
    classify_at_origin(&act(&g, f)?, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheckResult {
    #[serde(with = "serde_q")]
    pub lower: Q,
    #[serde(with = "serde_q")]
    pub upper: Q,
    pub max_mult: u32,
    pub within: bool,
}

/// Evaluates
/// `(‖λ‖δ − a·d)/(b − a) ≤ max mult ≤ r·d/(r+1) − δ·a/‖λ‖`
/// with `a = min λ_i`, `b = max λ_i`, taking the maximum multiplicity over
/// `candidate_points`.
pub fn bound_check(
    f: &HomogeneousForm,
    label: &StratumLabel,
    candidate_points: &[ProjPoint],
) -> Result<BoundCheckResult> {
    if candidate_points.is_empty() {
        return Err(Error::InvalidParams("no candidate points".into()));
    }
    if label.delta_sq.is_zero() {
        return Err(Error::InvalidParams("stratum label has δ = 0".into()));
    }
    let lam = &label.lambda_rep;
    if lam.weights().len() != f.nvars() {
        return Err(Error::Dimension { expected: f.nvars(), got: lam.weights().len() });
    }
    let (a, b) = (lam.min_weight(), lam.max_weight());
    if a == b {
        return Err(Error::InvalidSubgroup("min and max weights coincide".into()));
    }
    let qa = Q::from_integer(BigInt::from(a));
    let qb = Q::from_integer(BigInt::from(b));
    let r = Q::from_integer(BigInt::from(f.r()));
    let d = Q::from_integer(BigInt::from(f.degree()));

    let norm_times_delta = &label.scale * &label.delta_sq;
    let lower = (norm_times_delta - &qa * &d) / (&qb - &qa);
    let upper = &r * &d / (&r + Q::from_integer(1.into())) - &qa / &label.scale;

    let mut max_mult = 0;
    for p in candidate_points {
        max_mult = max_mult.max(multiplicity_at(f, p)?);
    }
    let mm = Q::from_integer(BigInt::from(max_mult));
    let within = lower <= mm && mm <= upper;
    Ok(BoundCheckResult { lower, upper, max_mult, within })
}

fn mix_seed(seed: u64, r: usize, d: u32, m: u32) -> u64 {
    seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ u64::from(d).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
        ^ u64::from(m).wrapping_mul(0x1656_67B1_9E37_79F9)
}

/// Spreads `total` units over `slots` coordinates at random.
fn random_composition(rng: &mut ChaCha8Rng, total: u32, slots: usize) -> Vec<u32> {
    let mut v = vec![0; slots];
    for _ in 0..total {
        v[rng.random_range(0..slots)] += 1;
    }
    v
}

fn random_coeff(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.random_range(1..=5);
    if rng.random_bool(0.5) {
        -c
    } else {
        c
    }
}

/// Deterministic pseudo-random forms with `multiplicity_at_origin = m`:
/// every term has `e_0 ≤ d − m` and an anchor term attains it.
pub fn gen_corpus(r: usize, d: u32, m: u32, count: usize, seed: u64) -> Result<Vec<HomogeneousForm>> {
    if r < 1 || d < 1 {
        return Err(Error::InvalidParams("r and d must be at least 1".into()));
    }
    if m > d {
        return Err(Error::InvalidParams(format!("m = {m} exceeds d = {d}")));
    }
    if count == 0 {
        return Err(Error::InvalidParams("count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, r, d, m));
    let top = d - m;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut anchor = vec![top];
        anchor.extend(random_composition(&mut rng, m, r));
        let anchor = ExponentVector::new(anchor);
        let mut terms = vec![(anchor.clone(), Q::from_integer(random_coeff(&mut rng).into()))];
        let extra = rng.random_range(0..=4);
        for _ in 0..extra {
            let e0 = rng.random_range(0..=top);
            let mut e = vec![e0];
            e.extend(random_composition(&mut rng, d - e0, r));
            let e = ExponentVector::new(e);
            if e != anchor {
                terms.push((e, Q::from_integer(random_coeff(&mut rng).into())));
            }
        }
        out.push(HomogeneousForm::new(r, d, terms)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub m: u32,
    pub index: usize,
    pub form: String,
    pub report: ClassificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub r: usize,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub threshold: u32,
    pub count: usize,
    pub seed: u64,
    pub total: usize,
    pub agreed: usize,
    pub failed: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.agreed == self.total
    }
}

/// Runs `classify_at_origin` on `count` corpus forms for each `m ∈ 0..=d`.
pub fn verify_theorem_main(
    r: usize,
    d: u32,
    n: NChoice,
    count: usize,
    seed: u64,
) -> Result<VerifySummary> {
    let (n_val, threshold) = n.resolve(r, d)?;
    let mut cases = Vec::new();
    for m in 0..=d {
        for (i, f) in gen_corpus(r, d, m, count, seed)?.into_iter().enumerate() {
            cases.push((m, i, f));
        }
    }
    let reports: Vec<(u32, usize, HomogeneousForm, ClassificationReport)> = cases
        .into_par_iter()
        .map(|(m, i, f)| classify_at_origin(&f, NChoice::Fixed(n_val)).map(|rep| (m, i, f, rep)))
        .collect::<Result<_>>()?;
    let total = reports.len();
    let mut failures: Vec<VerifyFailure> = reports
        .into_iter()
        .filter(|(m, _, _, rep)| !(rep.agreed && rep.m_direct == *m))
        .map(|(m, index, f, report)| VerifyFailure { m, index, form: f.to_string(), report })
        .collect();
    failures.sort_by_key(|f| (f.m, f.index));
    Ok(VerifySummary {
        r,
        d,
        n: n_val,
        threshold,
        count,
        seed,
        total,
        agreed: total - failures.len(),
        failed: failures.len(),
        failures,
    })
}
