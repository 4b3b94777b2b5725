//! Indecomposable modules with x, ∂̄ mostly acting by zero.

use super::field::{Alg, Quad};
use super::matrix::MatrixRep;
use crate::linalg::Field;
use crate::poly::{chi, complete, ratio, MPoly, Rat, RatFunc};
use crate::ring::{Ring, RingCtx, SigmaInput};

pub const FIXTURES: [&str; 3] = ["nondiag", "diag-omega", "odimp"];

fn ring(n: usize, sigma: RatFunc) -> Ring {
    RingCtx::new(n, 1, SigmaInput::Potential(sigma)).expect("fixture ring")
}

fn diag(vals: &[Alg]) -> Vec<Vec<Alg>> {
    let d = vals.len();
    (0..d).map(|i| (0..d).map(|j| if i == j { vals[i].clone() } else { Alg::zero() }).collect()).collect()
}

/// Diff_{H_4}(2): x = ∂̄ = 0, h̃_1 and h̃_2 a single Jordan block each over Q(i).
pub fn nondiag() -> (Ring, MatrixRep) {
    let q = Quad::gaussian();
    let half = ratio(1, 2);
    let ev = |s: i64| Alg::new(half.clone(), Rat::from_integer(s.into()) * &half, &q);
    let jordan = |a: Alg| vec![vec![a.clone(), Alg::rat(half.clone())], vec![Alg::zero(), a]];
    let mut rep = MatrixRep::zero(2, 2);
    rep.h[0] = jordan(ev(-1));
    rep.h[1] = jordan(ev(1));
    (ring(2, RatFunc::from_poly(complete(4, 2))), rep)
}

/// Diff_{H_6}(2): x^1 a lowering nilpotent, h̃_1 = diag(0, 1), h̃_2 = ω with ω² − ω + 1 = 0.
pub fn diag_omega() -> (Ring, MatrixRep) {
    let w = Quad::sixth_root();
    let mut rep = MatrixRep::zero(2, 2);
    rep.x[0][1][0] = Alg::one();
    rep.h[0] = diag(&[Alg::int(0), Alg::int(1)]);
    rep.h[1] = diag(&[Alg::gen(&w), Alg::gen(&w)]);
    (ring(2, RatFunc::from_poly(complete(6, 2))), rep)
}

/// σ = Σ_l A_l(h̃_l)/χ_l with A_1 vanishing on λ_1, …, λ_1 − p and A_j on λ_j, λ_j − 1.
pub fn odimp_sigma(lambda: &[Rat], p: usize) -> RatFunc {
    let n = lambda.len();
    let mut sigma = RatFunc::zero();
    for l in 1..=n {
        let roots: Vec<i64> = if l == 1 { (0..=p as i64).collect() } else { vec![0, 1] };
        let mut a = MPoly::one();
        for s in roots {
            a = a.mul(&MPoly::h(l).sub(&MPoly::constant(lambda[l - 1].clone())).add(&MPoly::int(s)));
        }
        sigma = sigma.add(&RatFunc::frac(a, chi(l, n)));
    }
    sigma
}

/// p-dimensional: h̃_1 = diag(λ_1, λ_1 − 1, …), x^1 the shift, everything else scalar or zero.
pub fn odimp(lambda: &[Rat], p: usize) -> (Ring, MatrixRep) {
    let n = lambda.len();
    let mut rep = MatrixRep::zero(p, n);
    let l1: Vec<Alg> = (0..p).map(|k| Alg::rat(&lambda[0] - Rat::from_integer((k as i64).into()))).collect();
    rep.h[0] = diag(&l1);
    for k in 0..p.saturating_sub(1) {
        rep.x[0][k][k + 1] = Alg::one();
    }
    for j in 1..n {
        rep.h[j] = diag(&vec![Alg::rat(lambda[j].clone()); p]);
    }
    (ring(n, odimp_sigma(lambda, p)), rep)
}

pub fn fixture(name: &str) -> Option<(Ring, MatrixRep)> {
    match name {
        "nondiag" => Some(nondiag()),
        "diag-omega" => Some(diag_omega()),
        "odimp" => Some(odimp(&[ratio(1, 3), ratio(1, 2)], 3)),
        _ => None,
    }
}
