//! Test-only oracles and random generators. Nothing here calls the
//! projection or multiplicity code it is used to check.
#![allow(dead_code)]

use multstrata::{ExponentVector, Frame, HomogeneousForm, ProjPoint, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Plain Gauss–Jordan; `None` when singular.
fn gauss(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        b.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        b[c] /= &piv;
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[c];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Squared distance from `t` to conv(points) by enumerating every subset of
/// at most `dim + 1` points, taking affine minimizers that land inside
/// their simplex. Exponential; keep `points.len()` small.
pub fn brute_force_dist_sq(points: &[Vec<Q>], t: &[Q]) -> Q {
    let shifted: Vec<Vec<Q>> =
        points.iter().map(|p| p.iter().zip(t).map(|(a, b)| a - b).collect()).collect();
    let dim = t.len();
    let mut best: Option<Q> = None;
    for k in 1..=points.len().min(dim + 1) {
        for s in subsets(points.len(), k) {
            let mut a = vec![vec![Q::zero(); k + 1]; k + 1];
            for i in 0..k {
                for j in 0..k {
                    a[i][j] = dot(&shifted[s[i]], &shifted[s[j]]);
                }
                a[i][k] = Q::one();
                a[k][i] = Q::one();
            }
            let mut b = vec![Q::zero(); k + 1];
            b[k] = Q::one();
            let Some(sol) = gauss(a, b) else { continue };
            if sol[..k].iter().any(Signed::is_negative) {
                continue;
            }
            let mut x = vec![Q::zero(); dim];
            for i in 0..k {
                for c in 0..dim {
                    x[c] += &sol[i] * &shifted[s[i]][c];
                }
            }
            let v = dot(&x, &x);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.expect("singletons always qualify")
}

fn falling(e: u32, a: u32) -> BigInt {
    (0..a).fold(BigInt::one(), |acc, i| acc * BigInt::from(e - i))
}

fn multi_indices(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in multi_indices(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Multiplicity at `p` as the least order of a partial derivative not
/// vanishing at `p`.
pub fn derivative_multiplicity(f: &HomogeneousForm, p: &[Q]) -> u32 {
    let n = f.nvars();
    for k in 0..=f.degree() {
        for alpha in multi_indices(n, k) {
            let mut val = Q::zero();
            for (e, c) in f.terms() {
                if e.0.iter().zip(&alpha).any(|(a, b)| a < b) {
                    continue;
                }
                let mut t = c.clone();
                for i in 0..n {
                    t *= Q::from_integer(falling(e.0[i], alpha[i]));
                    t *= num_traits::pow(p[i].clone(), (e.0[i] - alpha[i]) as usize);
                }
                val += t;
            }
            if !val.is_zero() {
                return k;
            }
        }
    }
    unreachable!("a nonzero form has a nonvanishing d-th derivative")
}

pub fn random_exponent(rng: &mut ChaCha8Rng, r: usize, d: u32) -> ExponentVector {
    let mut e = vec![0u32; r + 1];
    for _ in 0..d {
        e[rng.random_range(0..=r)] += 1;
    }
    ExponentVector::new(e)
}

pub fn random_form(rng: &mut ChaCha8Rng, r: usize, d: u32, max_terms: usize) -> HomogeneousForm {
    loop {
        let k = rng.random_range(1..=max_terms);
        let terms: Vec<_> = (0..k)
            .map(|_| {
                let c = rng.random_range(-4i64..=4);
                (random_exponent(rng, r, d), qi(if c == 0 { 1 } else { c }))
            })
            .collect();
        if let Ok(f) = HomogeneousForm::new(r, d, terms) {
            return f;
        }
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, r: usize) -> ProjPoint {
    loop {
        let c: Vec<i64> = (0..=r).map(|_| [-2, -1, 0, 0, 1, 1, 2, 3][rng.random_range(0..8)]).collect();
        if let Ok(p) = ProjPoint::from_ints(&c) {
            return p;
        }
    }
}

/// Product of random elementary integer operations and a permutation.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Frame {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.random_range(1..=4) {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.random_range(-2i64..=2);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let m: Vec<Vec<i64>> = perm.iter().map(|&i| m[i].clone()).collect();
    Frame::from_int_rows(&m).expect("unimodular")
}
