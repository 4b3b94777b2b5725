//! τ_N(L^j_i) = Σ_α x^{jα} ∂̄_{iα}, the reflection equation, and S_n on the L.

use super::{apply_raw, SymmetryKind, Tag};
use crate::poly::RatFunc;
use crate::report::{Check, Report};
use crate::ring::{Element, Gen, Order, Ring};
use crate::rmatrix::rhat_entry;

/// τ_N(L^j_i): upper index on x, lower on ∂̄.
pub fn l_element(ring: &Ring, order: Order, j: usize, i: usize) -> Element {
    let mut out = Element::zero(ring, order);
    for a in 1..=ring.copies {
        let t = Element::gen(ring, order, Gen::x(j, a)).mul(&Element::gen(ring, order, Gen::d(i, a)));
        out = out.add(&t);
    }
    out
}

/// Right-hand side of the S_n action on L^j_k, written through τ_N.
/// s_i(L^j_{i+1}) is h_{i,i+1} L^j_i (the index placement that makes it a τ_N identity).
pub fn l_image_formula(ring: &Ring, order: Order, i: usize, j: usize, k: usize) -> Element {
    let h = RatFunc::hd(i, i + 1);
    let one = RatFunc::one();
    let l = |a, b| l_element(ring, order, a, b);
    let moved = |a: usize| a == i || a == i + 1;
    match (moved(j), moved(k)) {
        (false, false) => l(j, k),
        (true, false) if j == i => l(i + 1, k).scale_right(&h).neg(),
        (true, false) => l(i, k).scale_right(&h.inv()),
        (false, true) if k == i => l(j, i + 1).scale_left(&h.inv()).neg(),
        (false, true) => l(j, i).scale_left(&h),
        (true, true) => match (j == i, k == i) {
            (true, true) => l(i + 1, i + 1),
            (false, false) => l(i, i),
            (true, false) => l(i + 1, i).scale_right(&h.sub(&one).pow(2)).neg(),
            (false, true) => l(i, i + 1).scale_right(&h.add(&one).pow(2).inv()).neg(),
        },
    }
}

/// s_i(τ_N(L^j_k)) against the closed formulas, every i, j, k.
pub fn check_l_action(ring: &Ring) -> Check {
    let o = Order::DerFirst;
    let n = ring.n;
    let mut w = None;
    for i in 1..n {
        for j in 1..=n {
            for k in 1..=n {
                let img = apply_raw(SymmetryKind { tag: Tag::S, index: i }, &l_element(ring, o, j, k));
                if img != l_image_formula(ring, o, i, j, k) {
                    w.get_or_insert(format!("s_{i}(L^{j}_{k}) = {img}"));
                }
            }
        }
    }
    Check::from_witness("l_action", w)
}

type Mat = Vec<Vec<Element>>;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect()
}

fn mat_mul(a: &Mat, b: &Mat, zero: &Element) -> Mat {
    let d = a.len();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let mut s = zero.clone();
                    for k in 0..d {
                        if !a[r][k].is_zero() && !b[k][c].is_zero() {
                            s = s.add(&a[r][k].mul(&b[k][c]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect()).collect()
}

/// Row (i, j) column (k, l) of R̂_12 is R̂^{ij}_{kl}; row (a, b) column (c, d) of L_1 is L^a_c δ^b_d.
fn operands(ring: &Ring, order: Order) -> (Mat, Mat) {
    let n = ring.n;
    let idx = pairs(n);
    let zero = Element::zero(ring, order);
    let r: Mat = idx
        .iter()
        .map(|&(i, j)| idx.iter().map(|&(k, l)| Element::scalar(ring, order, rhat_entry(i, j, k, l))).collect())
        .collect();
    let l: Mat = idx
        .iter()
        .map(|&(a, b)| idx.iter().map(|&(c, d)| if b == d { l_element(ring, order, a, c) } else { zero.clone() }).collect())
        .collect();
    (r, l)
}

/// R̂ L_1 R̂ L_1 − L_1 R̂ L_1 R̂ − (R̂ L_1 − L_1 R̂), every component; None when all vanish.
pub fn reflection_equation(ring: &Ring) -> Option<String> {
    let o = Order::DerFirst;
    let zero = Element::zero(ring, o);
    let (r, l) = operands(ring, o);
    let rl = mat_mul(&r, &l, &zero);
    let lr = mat_mul(&l, &r, &zero);
    let lhs = mat_sub(&mat_mul(&rl, &rl, &zero), &mat_mul(&lr, &lr, &zero));
    let diff = mat_sub(&lhs, &mat_sub(&rl, &lr));
    let idx = pairs(ring.n);
    for (p, row) in diff.iter().enumerate() {
        for (q, e) in row.iter().enumerate() {
            if !e.is_zero() {
                let (a, b) = idx[p];
                let (c, d) = idx[q];
                return Some(format!("component ({a}{b},{c}{d}): {e}"));
            }
        }
    }
    None
}

/// Reflection equation and the S_n action on the L^j_i inside Diff_h(n, N).
pub fn tau_and_reflection_check(ring: &Ring) -> Report {
    let mut rep = Report::new(format!("symmetry --n {} --N {} --reflection", ring.n, ring.copies));
    rep.push(Check::from_witness("reflection_equation", reflection_equation(ring)));
    if ring.n >= 2 {
        rep.push(check_l_action(ring));
    }
    rep
}
