//! Dense Gaussian elimination over an exact field.

use crate::poly::{Rat, RatFunc};
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn inv(&self) -> Self {
        RatFunc::inv(self)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn zeros<F: Field>(r: usize, c: usize) -> Matrix<F> {
    vec![vec![F::zero(); c]; r]
}

pub fn matmul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (r, k) = (a.len(), b.len());
    let c = if k == 0 { 0 } else { b[0].len() };
    let mut out: Matrix<F> = zeros(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][t].mul(&b[t][j]));
                }
            }
        }
    }
    out
}

pub fn matadd<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.add(q)).collect()).collect()
}

pub fn matsub<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.sub(q)).collect()).collect()
}

pub fn matscale<F: Field>(a: &Matrix<F>, s: &F) -> Matrix<F> {
    a.iter().map(|row| row.iter().map(|x| x.mul(s)).collect()).collect()
}

pub fn is_zero_matrix<F: Field>(a: &Matrix<F>) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = m[r][j].mul(&inv);
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of {v : m v = 0}.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

/// One solution of m v = b, if any.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Matrix<F> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut v = vec![F::zero(); cols];
    for (r, &p) in piv.iter().enumerate() {
        v[p] = aug[r][cols].clone();
    }
    Some(v)
}

/// Row space basis (rref rows) of the given vectors.
pub fn row_basis<F: Field>(vecs: &[Vec<F>]) -> Matrix<F> {
    let mut a = vecs.to_vec();
    let piv = rref(&mut a);
    a.truncate(piv.len());
    a
}


/// Determinant by elimination.
pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = a[c][c].inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let v = a[i][j].sub(&f.mul(&a[c][j]));
                a[i][j] = v;
            }
        }
    }
    d
}
