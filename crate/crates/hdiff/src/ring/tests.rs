use super::*;
use crate::expr::parse_ratfunc;

fn diff(n: usize) -> Ring {
    RingCtx::new(n, 1, SigmaInput::Sites(vec![RatFunc::one(); n])).unwrap()
}

fn rf(s: &str, n: usize) -> RatFunc {
    parse_ratfunc(s, n).unwrap()
}

#[test]
fn make_ring_sigmas() {
    let r = RingCtx::new(2, 1, SigmaInput::Potential(rf("H(1)", 2))).unwrap();
    assert!(r.sigma_site(1).is_one() && r.sigma_site(2).is_one());
    let r = RingCtx::new(2, 1, SigmaInput::Potential(rf("-H(2)", 2))).unwrap();
    assert_eq!(r.sigma_site(1), rf("-h1 - (h1 + h2) + 1", 2));
    assert_eq!(r.sigma_site(2), rf("-h2 - (h1 + h2) + 1", 2));
    let r = RingCtx::new(1, 1, SigmaInput::Potential(rf("H(2)", 1))).unwrap();
    assert_eq!(r.sigma_site(1), rf("2*h1 - 1", 1));
}

#[test]
fn x_x_reorder() {
    let r = diff(2);
    let o = Order::DerFirst;
    let p = Element::x(&r, o, 2).mul(&Element::x(&r, o, 1));
    let expect = Element::x(&r, o, 1).mul(&Element::x(&r, o, 2)).scale_left(&rf("(h1-h2)/(h1-h2+1)", 2));
    assert_eq!(p, expect);
}

#[test]
fn x_d_diagonal() {
    let r = diff(1);
    let o = Order::DerFirst;
    let p = Element::x(&r, o, 1).mul(&Element::d(&r, o, 1));
    assert_eq!(p.to_string(), "d[1]*x[1] - 1");
    let r = diff(2);
    let p = Element::x(&r, o, 1).mul(&Element::d(&r, o, 1));
    let g = |i| Element::d(&r, o, i).mul(&Element::x(&r, o, i));
    let expect = g(1).add(&g(2).scale_left(&rf("1/(1-(h1-h2))", 2))).sub(&Element::one(&r, o));
    assert_eq!(p, expect);
}

#[test]
fn weyl_relation_rank_one() {
    let r = diff(1);
    let o = Order::DerFirst;
    let (x, d) = (Element::x(&r, o, 1), Element::d(&r, o, 1));
    assert_eq!(d.commutator(&x), Element::one(&r, o));
}

#[test]
fn coefficients_pass_with_weight_shift() {
    let r = diff(1);
    let o = Order::DerFirst;
    let e = Element::h(&r, o, 1).mul(&Element::x(&r, o, 1));
    assert_eq!(e, Element::x(&r, o, 1).scale_right(&rf("h1 + 1", 1)));
}

#[test]
fn weights() {
    let r = diff(2);
    let o = Order::DerFirst;
    let e = Element::x(&r, o, 1).mul(&Element::d(&r, o, 2));
    assert_eq!(e.weight(), Weight::Of(vec![1, -1]));
    assert_eq!(Element::d(&r, o, 1).mul(&Element::x(&r, o, 1)).weight(), Weight::Of(vec![0, 0]));
    assert_eq!(Element::x(&r, o, 1).add(&Element::d(&r, o, 1)).weight(), Weight::Mixed);
}

#[test]
fn eps_examples() {
    let r = diff(2);
    let o = Order::DerFirst;
    assert_eq!(Element::d(&r, o, 2).eps(), Element::x(&r, o, 2));
    assert_eq!(Element::d(&r, o, 1).eps(), Element::x(&r, o, 1).scale_left(&rf("(h1-h2)/(h1-h2-1)", 2)));
    let x1 = Element::x(&r, o, 1);
    assert_eq!(x1.eps().eps(), x1);
}

#[test]
fn eps_is_anti_multiplicative_on_generators() {
    for n in 1..=3 {
        let r = diff(n);
        let o = Order::DerFirst;
        let mut gens = Vec::new();
        for i in 1..=n {
            gens.push(Element::x(&r, o, i));
            gens.push(Element::d(&r, o, i));
        }
        for a in &gens {
            for b in &gens {
                assert_eq!(a.mul(b).eps(), b.eps().mul(&a.eps()), "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn basis_exchange_round_trip() {
    let r = diff(2);
    let o = Order::DerFirst;
    let e = Element::x(&r, o, 2)
        .mul(&Element::d(&r, o, 1))
        .mul(&Element::x(&r, o, 1))
        .add(&Element::d(&r, o, 2).mul(&Element::x(&r, o, 2)));
    let f = e.to_order(Order::XFirst);
    assert_eq!(f.order, Order::XFirst);
    let back = f.to_order(Order::DerFirst);
    assert_eq!(back, e);
    let x1d1 = Element::x(&r, Order::XFirst, 1).mul(&Element::d(&r, Order::XFirst, 1));
    assert_eq!(x1d1.terms.len(), 1);
}

#[test]
fn associativity_two_copies() {
    let r = RingCtx::new(2, 2, SigmaInput::Sites(vec![RatFunc::one(); 2])).unwrap();
    let o = Order::DerFirst;
    let mut gens = Vec::new();
    for i in 1..=2 {
        for a in 1..=2 {
            gens.push(Element::gen(&r, o, Gen::x(i, a)));
            gens.push(Element::gen(&r, o, Gen::d(i, a)));
        }
    }
    for a in &gens {
        for b in &gens {
            for c in &gens {
                assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)), "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn localized_inverse() {
    let r = RingCtx::localized(2, SigmaInput::Sites(vec![RatFunc::one(); 2])).unwrap();
    let o = Order::DerFirst;
    for i in 1..=2 {
        let x = Element::x(&r, o, i);
        let y = Element::y(&r, o, i);
        assert_eq!(x.mul(&y), Element::one(&r, o));
        assert_eq!(y.mul(&x), Element::one(&r, o));
    }
    let mut gens = Vec::new();
    for i in 1..=2 {
        gens.push(Element::x(&r, o, i));
        gens.push(Element::y(&r, o, i));
        gens.push(Element::d(&r, o, i));
    }
    for a in &gens {
        for b in &gens {
            for c in &gens {
                assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)), "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn text_round_trip() {
    let r = diff(2);
    let o = Order::DerFirst;
    let e = Element::x(&r, o, 1)
        .mul(&Element::d(&r, o, 1))
        .add(&Element::x(&r, o, 2).mul(&Element::x(&r, o, 1)).pow(2));
    let s = e.to_string();
    let back = parse_element(&s, &r, o).unwrap();
    assert_eq!(back, e);
    assert_eq!(back.to_string(), s);
}

#[test]
fn self_test_passes() {
    for n in 1..=3 {
        let rep = self_test_relations(&diff(n));
        assert!(rep.all_pass(), "{}", rep.to_text());
    }
}

#[test]
fn normal_form_of_words() {
    let r = diff(1);
    let w = [Letter::S(RatFunc::h(1)), Letter::G(Gen::x(1, 1), 1)];
    let e = normal_form(&r, Order::DerFirst, &w);
    assert_eq!(e, Element::x(&r, Order::DerFirst, 1).scale_right(&rf("h1+1", 1)));
    let e = normal_form(&r, Order::XFirst, &[Letter::G(Gen::x(1, 1), 1), Letter::G(Gen::d(1, 1), 1)]);
    assert_eq!(e.terms.len(), 1);
}
