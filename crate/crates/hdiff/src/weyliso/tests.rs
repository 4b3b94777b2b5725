use super::*;
use crate::expr::parse_ratfunc;
use crate::ring::parse_element;

fn rf(s: &str, n: usize) -> RatFunc {
    parse_ratfunc(s, n).unwrap()
}

fn iso(n: usize, s: &str) -> WeylIso {
    WeylIso::new(n, SigmaInput::Potential(rf(s, n))).unwrap()
}

#[test]
fn weyl_products() {
    let n = 1;
    let g = |x| WeylElement::gen(n, x);
    assert_eq!(g(WeylGen::D(1)).commutator(&g(WeylGen::X(1))), WeylElement::one(1));
    assert_eq!(g(WeylGen::H(1)).mul(&g(WeylGen::X(1))), g(WeylGen::X(1)).scale_right(&rf("h1+1", 1)));
    assert_eq!(g(WeylGen::X(1)).mul(&g(WeylGen::XInv(1))), WeylElement::one(1));
    // H_1 = D_1 X^1
    assert_eq!(g(WeylGen::D(1)).mul(&g(WeylGen::X(1))), g(WeylGen::H(1)));
    let n = 2;
    let g = |x| WeylElement::gen(n, x);
    assert!(g(WeylGen::D(1)).commutator(&g(WeylGen::X(2))).is_zero());
    assert!(g(WeylGen::D(1)).commutator(&g(WeylGen::D(2))).is_zero());
}

#[test]
fn generator_images() {
    let m = iso(2, "H(1)");
    let r = &m.ring;
    let o = Order::DerFirst;
    assert_eq!(m.mu_gen(WeylGen::X(1)), Element::x(r, o, 1));
    assert_eq!(m.mu_gen(WeylGen::X(2)), parse_element("x[2]*(h2-h1)", r, o).unwrap());
    assert_eq!(m.mu_gen(WeylGen::A(1)), m.center.c[0]);
    assert_eq!(m.mu_inv(&Element::h(r, o, 1)), WeylElement::scalar(2, RatFunc::h(1)));
    let x2 = WeylElement::gen(2, WeylGen::X(2)).scale_right(&rf("1/(h2-h1)", 2));
    assert_eq!(m.mu_inv(&Element::x(r, o, 2)), x2);
    assert_eq!(m.mu_inv(&Element::x(r, o, 1)), WeylElement::gen(2, WeylGen::X(1)));
    let m1 = iso(1, "H(1)");
    assert_eq!(m1.upsilon[0], parse_ratfunc("h1 + a1", 1).unwrap());
}

#[test]
fn iso_checks() {
    for (n, s) in [(1, "H(1)"), (2, "H(1)"), (2, "-H(2)"), (3, "H(1)"), (2, "h1^3/(h1-h2) + h2/(h2-h1)")] {
        let rep = check_iso(n, SigmaInput::Potential(rf(s, n))).unwrap();
        assert!(rep.all_pass(), "n={n} σ={s}\n{}", rep.to_text());
    }
}

#[test]
fn weyl_commutator_of_images() {
    let m = iso(1, "H(1)");
    let r = &m.ring;
    let o = Order::DerFirst;
    let c = Element::d(r, o, 1).commutator(&Element::x(r, o, 1));
    assert_eq!(m.mu_inv(&c), WeylElement::one(1));
}
