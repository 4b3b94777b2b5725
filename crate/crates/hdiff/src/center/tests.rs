use super::*;
use crate::consistency::SigmaSpec;
use crate::expr::parse_ratfunc;
use crate::poly::rat;
use crate::ring::{parse_element, RingCtx, SigmaInput};

fn rf(s: &str, n: usize) -> RatFunc {
    parse_ratfunc(s, n).unwrap()
}

fn ring(n: usize, s: &str) -> Ring {
    RingCtx::new(n, 1, SigmaInput::Potential(rf(s, n))).unwrap()
}

fn el(r: &Ring, s: &str) -> Element {
    parse_element(s, r, Order::DerFirst).unwrap()
}

#[test]
fn rho_examples() {
    let h1 = SigmaSpec::complete(1, 1, rat(1));
    assert_eq!(rho_poly(&h1), RhoPoly(vec![rf("h1", 1)]));
    assert_eq!(rho_poly(&SigmaSpec::zero(2)), RhoPoly(vec![RatFunc::zero(); 2]));
    let h1 = SigmaSpec::complete(2, 1, rat(1));
    assert_eq!(rho_poly(&h1), RhoPoly(vec![rf("h1+h2", 2), rf("h1*h2", 2)]));
    // pure site part π_1 = t^3 for n = 2
    let s = SigmaSpec { n: 2, pi: vec![crate::expr::parse_poly_in_t("t^3 + 1/(t+2)").unwrap(), RatFunc::zero()], h: vec![] };
    let rho = rho_poly(&s);
    let a = rf("(h1^3 + 1/(h1+2))/(h1-h2)", 2);
    assert_eq!(rho.coeff(0), a);
    assert_eq!(rho.coeff(1), a.mul(&RatFunc::h(2)));
    assert_eq!(rho_residual(&rho, &s.realize(), 2), None);
}

#[test]
fn rho_solves_difference_system() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        for _ in 0..4 {
            let s = SigmaSpec::random(n, &mut rng);
            let rho = rho_poly(&s);
            assert_eq!(rho_residual(&rho, &s.realize(), n), None, "{s}");
            assert!(rho.sub(&rho_poly_raw(&s)).is_in_kt());
        }
    }
}

#[test]
fn central_element_examples() {
    let r = ring(1, "H(1)");
    let c = central_elements(&r).unwrap();
    assert_eq!(c.c[0], el(&r, "d[1]*x[1] - h1"));
    let r = ring(2, "H(1)");
    let c = central_elements(&r).unwrap();
    assert_eq!(c.c[0], el(&r, "d[1]*x[1] + d[2]*x[2] - h1 - h2"));
    assert_eq!(c.c[1], el(&r, "h2*d[1]*x[1] + h1*d[2]*x[2] - h1*h2"));
    let r = ring(1, "0");
    assert_eq!(central_elements(&r).unwrap().c[0], el(&r, "d[1]*x[1]"));
}

#[test]
fn centrality() {
    for n in 1..=3 {
        for s in ["H(1)", "-H(2)", "h1^3/((h1-h2)*(h1-h3))"] {
            let s = match n {
                1 if s.contains("h2") => "h1^3",
                2 if s.contains("h3") => "h1^3/(h1-h2)",
                _ => s,
            };
            let r = ring(n, s);
            let cp = central_elements(&r).unwrap();
            for (k, c) in cp.c.iter().enumerate() {
                let rep = verify_centrality(&r, c);
                assert!(rep.all_pass(), "n={n} σ={s} k={}\n{}", k + 1, rep.to_text());
                assert!(is_central(&r, &c.eps()), "eps image n={n} σ={s}");
            }
        }
    }
}

#[test]
fn non_central() {
    let r = ring(2, "H(1)");
    let rep = verify_centrality(&r, &gamma(&r, 1));
    assert!(!rep.get("[e,x[1]]").unwrap().pass);
    assert!(rep.get("[e,h1]").unwrap().pass);
}

#[test]
fn gamma_recovery_examples() {
    assert_eq!(v_inverse(1)[0][0], RatFunc::one());
    assert_eq!(v_matrix(2), vec![vec![rf("1", 2), rf("h2", 2)], vec![rf("1", 2), rf("h1", 2)]]);
    for n in 1..=3 {
        for s in ["H(1)", "-H(2)", "H(0) + H(2)"] {
            let r = ring(n, s);
            for j in 1..=n {
                let rep = gamma_recovery(&r, j).unwrap();
                assert!(rep.all_pass(), "n={n} σ={s} j={j}\n{}", rep.to_text());
            }
        }
    }
    let r = ring(2, "h1^2/(h1-h2) + 3/((h2+1)*(h2-h1))");
    assert!(gamma_recovery(&r, 1).unwrap().all_pass());
    assert!(gamma_recovery(&r, 2).unwrap().all_pass());
}

fn two_copies() -> Ring {
    RingCtx::new(2, 2, SigmaInput::Potential(rf("H(1)", 2))).unwrap()
}

#[test]
fn gl_n_relations() {
    let r = two_copies();
    let rep = glN_check(&r);
    assert!(rep.all_pass(), "{}", rep.to_text());
    assert!(is_central(&r, &casimir_quadratic(&r)));
    let a12 = gl_a(&r, 1, 2);
    let x11 = el(&r, "x[1,1]");
    assert_eq!(a12.commutator(&x11), Element::zero(&r, Order::DerFirst));
    assert_eq!(a12.commutator(&el(&r, "x[1,2]")), x11);
}

#[test]
fn scan_two_copies() {
    let r = two_copies();
    let s = quadratic_center_scan(&r, 3);
    assert_eq!(s.dim_mod_constants, 1);
    assert!(!s.bound_limited);
    let cas = casimir_quadratic(&r);
    assert!(s.contains(&cas));
    assert!(s.contains(&Element::one(&r, Order::DerFirst)));
}

#[test]
fn scan_single_copy() {
    let r = ring(2, "H(1)");
    let s = quadratic_center_scan(&r, 3);
    assert_eq!(s.dim_mod_constants, 2);
    for c in central_elements(&r).unwrap().c {
        assert!(s.contains(&c));
    }
    let r1 = ring(1, "H(1)");
    let s1 = quadratic_center_scan(&r1, 3);
    assert_eq!(s1.dim_mod_constants, 1);
    let c = el(&r1, "d[1]*x[1] - h1");
    assert!(s1.contains(&c));
    let s0 = quadratic_center_scan(&two_copies(), 0);
    assert!(s0.bound_limited);
}
