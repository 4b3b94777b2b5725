use super::{Element, Order, Ring};
use crate::poly::{psi, psi_prime, RatFunc};
use crate::report::{Check, Report};

/// Γ-calculus and the commuting twisted families, checked inside the engine.
pub fn self_test_relations(ring: &Ring) -> Report {
    let n = ring.n;
    let o = Order::DerFirst;
    let mut rep = Report::new(format!("ring --n {n} --self-test"));
    let gamma: Vec<Element> = (1..=n).map(|i| Element::d(ring, o, i).mul(&Element::x(ring, o, i))).collect();
    let x = |i| Element::x(ring, o, i);
    let d = |i| Element::d(ring, o, i);
    let mut gx = None;
    let mut gd = None;
    let mut gg = None;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let h = RatFunc::hd(i, j);
            let cx = h.add(&RatFunc::one()).div(&h);
            let cd = h.sub(&RatFunc::one()).div(&h);
            let g = &gamma[i - 1];
            if gx.is_none() && !g.mul(&x(j)).sub(&x(j).mul(g).scale_left(&cx)).is_zero() {
                gx = Some(format!("Gamma_{i} x^{j}"));
            }
            if gd.is_none() && !g.mul(&d(j)).sub(&d(j).mul(g).scale_left(&cd)).is_zero() {
                gd = Some(format!("Gamma_{i} d_{j}"));
            }
            if gg.is_none() && !g.commutator(&gamma[j - 1]).is_zero() {
                gg = Some(format!("[Gamma_{i}, Gamma_{j}]"));
            }
        }
    }
    rep.push(Check::from_witness("gamma_x", gx));
    rep.push(Check::from_witness("gamma_d", gd));
    rep.push(Check::from_witness("gamma_commute", gg));

    let psi_r: Vec<RatFunc> = (1..=n).map(|i| RatFunc::from_poly(psi(i, n))).collect();
    let psip_r: Vec<RatFunc> = (1..=n).map(|i| RatFunc::from_poly(psi_prime(i, n))).collect();
    let families: [(&str, Vec<Element>); 4] = [
        ("psi_x", (1..=n).map(|i| x(i).scale_left(&psi_r[i - 1])).collect()),
        ("x_psip", (1..=n).map(|i| x(i).scale_right(&psip_r[i - 1])).collect()),
        ("psi_d", (1..=n).map(|i| d(i).scale_left(&psi_r[i - 1])).collect()),
        ("d_psip", (1..=n).map(|i| d(i).scale_right(&psip_r[i - 1])).collect()),
    ];
    for (name, fam) in families.iter() {
        let mut w = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                let c = fam[i].commutator(&fam[j]);
                if !c.is_zero() {
                    w = Some(format!("[{name}_{}, {name}_{}] = {c}", i + 1, j + 1));
                    break 'outer;
                }
            }
        }
        rep.push(Check::from_witness(format!("commuting_family_{name}"), w));
    }
    rep
}
