//! Exact minimum-norm point of a convex hull (Wolfe's active-set method).
//!
//! Every step runs in exact rational arithmetic, so the affine independence
//! of the active set and the termination test are decided without
//! tolerances.

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::rational::{dot, Q};

/// Weights of the active points (indices into the input) and the
/// minimum-norm point itself.
pub(crate) struct MinNorm {
    pub point: Vec<Q>,
    pub weights: Vec<(usize, Q)>,
}

/// Affine minimizer of `|Σ α_i p_i|²` subject to `Σ α_i = 1`.
fn affine_minimizer(points: &[Vec<Q>], active: &[usize]) -> Vec<Q> {
    let k = active.len();
    let mut a = vec![vec![Q::zero(); k + 1]; k + 1];
    for (i, &pi) in active.iter().enumerate() {
        for (j, &pj) in active.iter().enumerate().skip(i) {
            let g = dot(&points[pi], &points[pj]);
            a[i][j] = g.clone();
            a[j][i] = g;
        }
        a[i][k] = Q::one();
        a[k][i] = Q::one();
    }
    let mut b = vec![Q::zero(); k + 1];
    b[k] = Q::one();
    let mut sol = linalg::solve(a, b).expect("active set stays affinely independent");
    sol.truncate(k);
    sol
}

fn combine(points: &[Vec<Q>], active: &[usize], weights: &[Q]) -> Vec<Q> {
    let dim = points[0].len();
    let mut x = vec![Q::zero(); dim];
    for (&i, w) in active.iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        for (xc, pc) in x.iter_mut().zip(&points[i]) {
            *xc += w * pc;
        }
    }
    x
}

pub(crate) fn min_norm_point(points: &[Vec<Q>]) -> MinNorm {
    assert!(!points.is_empty());
    let norms: Vec<Q> = points.iter().map(|p| dot(p, p)).collect();
    let start = (0..points.len()).min_by(|&a, &b| norms[a].cmp(&norms[b])).unwrap();
    let mut active = vec![start];
    let mut lambda = vec![Q::one()];
    let mut x = points[start].clone();

    loop {
        let xx = dot(&x, &x);
        let (j, xpj) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, dot(&x, p)))
            .min_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        if xpj >= xx || active.contains(&j) {
            break;
        }
        active.push(j);
        lambda.push(Q::zero());

        loop {
            let alpha = affine_minimizer(points, &active);
            if alpha.iter().all(Signed::is_positive) {
                x = combine(points, &active, &alpha);
                lambda = alpha;
                break;
            }
            // Step from lambda toward alpha until a weight hits zero.
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| !a.is_positive())
                .filter(|(l, a)| *l != *a)
                .map(|(l, a)| l / (l - a))
                .min()
                .expect("some weight leaves the simplex");
            let one_minus = Q::one() - &theta;
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = &theta * a + &one_minus * &*l;
            }
            let mut keep = Vec::with_capacity(active.len());
            let mut kept_lambda = Vec::with_capacity(active.len());
            for (&i, l) in active.iter().zip(&lambda) {
                if l.is_positive() {
                    keep.push(i);
                    kept_lambda.push(l.clone());
                }
            }
            debug_assert!(keep.len() < active.len());
            active = keep;
            lambda = kept_lambda;
        }
    }

    MinNorm { point: x, weights: active.into_iter().zip(lambda).collect() }
}
