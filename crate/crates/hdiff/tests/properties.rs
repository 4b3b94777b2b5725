use hdiff::consistency::{delta_witness, sigmas_of, SigmaSpec};
use hdiff::expr::parse_ratfunc;
use hdiff::poly::RatFunc;
use hdiff::ring::{Element, Gen, Order, Ring, RingCtx, SigmaInput};
use hdiff::symmetry::permute;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: usize = 3;

// small rational functions in h1..h3 built from a random expression tree
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    let leaf = prop_oneof![(-4i64..=4).prop_map(RatFunc::int), (1..=N).prop_map(RatFunc::h)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            (inner.clone(), inner).prop_map(|(a, b)| if b.is_zero() { a } else { a.div(&b) }),
        ]
    })
}

fn ring(copies: usize) -> Ring {
    RingCtx::new(N, copies, SigmaInput::Potential(parse_ratfunc("H(1)", N).unwrap())).unwrap()
}

fn unit(i: usize, s: i64) -> Vec<i64> {
    (1..=N).map(|j| if j == i { s } else { 0 }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(f in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&f.to_string(), N).unwrap(), f);
    }

    #[test]
    fn field_laws(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b), a);
        }
    }

    #[test]
    fn shift_is_an_automorphism(a in ratfunc(), b in ratfunc(), v in prop::collection::vec(-3i64..=3, N)) {
        let back: Vec<i64> = v.iter().map(|s| -s).collect();
        prop_assert_eq!(a.shift(&v).shift(&back), a.clone());
        prop_assert_eq!(a.mul(&b).shift(&v), a.shift(&v).mul(&b.shift(&v)));
    }

    #[test]
    fn permute_is_an_involutive_automorphism(a in ratfunc(), b in ratfunc(), i in 1..N) {
        prop_assert_eq!(permute(&permute(&a, i), i), a.clone());
        prop_assert_eq!(permute(&a.mul(&b), i), permute(&a, i).mul(&permute(&b, i)));
    }

    #[test]
    fn coefficients_move_through_generators(f in ratfunc(), i in 1..=N, a in 1..=2usize, x in any::<bool>()) {
        // f(h) m = m f(h + weight(m))
        let r = ring(a);
        let o = Order::DerFirst;
        let g = if x { Gen::x(i, a) } else { Gen::d(i, a) };
        let m = Element::gen(&r, o, g);
        let lhs = Element::scalar(&r, o, f.clone()).mul(&m);
        let rhs = m.mul(&Element::scalar(&r, o, f.shift(&unit(i, if x { 1 } else { -1 }))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eps_reverses_words(seq in prop::collection::vec((1..=N, 1..=2usize, any::<bool>()), 1..4), f in ratfunc()) {
        let r = ring(2);
        let o = Order::DerFirst;
        let mut e = Element::scalar(&r, o, if f.is_zero() { RatFunc::one() } else { f });
        for &(i, a, x) in &seq {
            e = e.mul_gen(if x { Gen::x(i, a) } else { Gen::d(i, a) }, 1);
        }
        prop_assert_eq!(e.eps().eps(), e.clone());
        prop_assert_eq!(e.to_order(Order::XFirst).to_order(o), e);
    }

    #[test]
    fn realized_specs_solve_the_delta_system(seed in any::<u64>(), n in 1..=3usize) {
        let s = SigmaSpec::random(n, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(delta_witness(&sigmas_of(&s.realize(), n)).is_none());
    }
}
