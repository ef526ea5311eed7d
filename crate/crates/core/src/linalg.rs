//! Dense exact linear algebra over the rationals (Gaussian elimination).

use num_traits::{One, Zero};

use crate::rational::Q;

/// Square rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    n: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Q::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        (0..self.n).map(|i| crate::rational::dot(self.row(i), v)).collect()
    }

    pub fn determinant(&self) -> Q {
        let n = self.n;
        let mut a = self.rows();
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut cols: Vec<Vec<Q>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            cols.push(e);
        }
        let sol = solve_multi(self.rows(), cols)?;
        let mut inv = Self::zeros(n);
        for (j, col) in sol.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                inv[(i, j)] = x;
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.n + j]
    }
}

/// Solves `a x = b` for a square system; `None` if singular.
pub fn solve(a: Vec<Vec<Q>>, b: Vec<Q>) -> Option<Vec<Q>> {
    solve_multi(a, vec![b]).map(|mut v| v.pop().unwrap())
}

fn solve_multi(mut a: Vec<Vec<Q>>, mut rhs: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        for b in rhs.iter_mut() {
            b.swap(piv, col);
        }
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
            for b in rhs.iter_mut() {
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    for b in rhs.iter_mut() {
        for (i, x) in b.iter_mut().enumerate() {
            *x /= &a[i][i];
        }
    }
    Some(rhs)
}
