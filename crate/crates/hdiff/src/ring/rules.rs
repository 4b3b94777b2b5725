//! Reordering rules for a single misordered adjacent pair.

use super::{Gen, Kind, Order, RingCtx};
use crate::poly::RatFunc;

pub(super) type Word = Vec<(Gen, i32)>;

impl RingCtx {
    /// c_ij with x^i ∂̄_j = c_ij ∂̄_j x^i (i ≠ j).
    pub fn c_offdiag(&self, i: usize, j: usize) -> RatFunc {
        if i < j {
            RatFunc::one()
        } else {
            let h = RatFunc::hd(i, j);
            let hm1 = h.sub(&RatFunc::one());
            h.mul(&h.sub(&RatFunc::int(2))).div(&hm1.mul(&hm1))
        }
    }

    /// a^{ea} b^{eb} rewritten as Σ (left coefficient) · word, with key(a) > key(b).
    pub(super) fn pair_rule(&self, order: Order, a: Gen, ea: i32, b: Gen, eb: i32) -> Vec<(RatFunc, Word)> {
        let swap = |c: RatFunc| vec![(c, vec![(b, eb), (a, ea)])];
        match (a.kind, b.kind) {
            (Kind::X, Kind::X) => {
                if a.site == b.site {
                    return swap(RatFunc::one());
                }
                let (j, i) = (a.site(), b.site());
                debug_assert!(j > i);
                let h = RatFunc::hd(i, j);
                let q = h.div(&h.add(&RatFunc::one()));
                let ei = unit(self.n, i);
                let ej = unit(self.n, j);
                match (ea, eb) {
                    (1, 1) => {
                        let h2m1 = h.mul(&h).sub(&RatFunc::one());
                        if a.copy == b.copy {
                            return swap(q);
                        }
                        vec![
                            (h.mul(&h).div(&h2m1), vec![(b, 1), (a, 1)]),
                            (
                                h.div(&h2m1).neg(),
                                vec![(Gen::x(i, a.copy()), 1), (Gen::x(j, b.copy()), 1)],
                            ),
                        ]
                    }
                    (-1, 1) => swap(q.shift(&ej).inv()),
                    (1, -1) => swap(q.shift(&ei).inv()),
                    _ => {
                        let both: Vec<i64> = ei.iter().zip(&ej).map(|(x, y)| x + y).collect();
                        swap(q.shift(&both))
                    }
                }
            }
            (Kind::D, Kind::D) => {
                if a.site == b.site {
                    return swap(RatFunc::one());
                }
                let (i, j) = (a.site(), b.site());
                debug_assert!(i < j);
                let h = RatFunc::hd(i, j);
                if a.copy == b.copy {
                    return swap(h.sub(&RatFunc::one()).div(&h));
                }
                vec![
                    (RatFunc::one(), vec![(b, 1), (a, 1)]),
                    (h.inv().neg(), vec![(Gen::d(j, a.copy()), 1), (Gen::d(i, b.copy()), 1)]),
                ]
            }
            (Kind::X, Kind::D) => {
                debug_assert_eq!(order, Order::DerFirst);
                let (i, j) = (a.site(), b.site());
                if ea == 1 {
                    if i != j {
                        return swap(self.c_offdiag(i, j));
                    }
                    let mut out = Vec::new();
                    for k in 1..=self.n {
                        out.push((
                            self.a_entry(i, k).clone(),
                            vec![(Gen::d(k, b.copy()), 1), (Gen::x(k, a.copy()), 1)],
                        ));
                    }
                    let s = self.sigma(i, a.copy(), b.copy());
                    if !s.is_zero() {
                        out.push((s.neg(), vec![]));
                    }
                    out
                } else {
                    let ei = unit(self.n, i);
                    if i != j {
                        return swap(self.c_offdiag(i, j).shift(&ei).inv());
                    }
                    let y = (Gen::x(i, 1), -1);
                    let mut out = vec![(RatFunc::one(), vec![(b, 1), y])];
                    for k in (1..=self.n).filter(|&k| k != i) {
                        out.push((
                            self.a_entry(i, k).shift(&ei).neg(),
                            vec![y, (Gen::d(k, 1), 1), (Gen::x(k, 1), 1), y],
                        ));
                    }
                    let s = self.sigma_site(i).shift(&ei);
                    if !s.is_zero() {
                        out.push((s, vec![y, y]));
                    }
                    out
                }
            }
            (Kind::D, Kind::X) => {
                debug_assert_eq!(order, Order::XFirst);
                assert!(eb == 1, "x-first order is not available in the localized ring");
                let (j, i) = (a.site(), b.site());
                if i != j {
                    return swap(self.c_offdiag(i, j).inv());
                }
                // ∂̄_{kβ}x^{kα} = Σ_m (A⁻¹)_{km} (x^{mα}∂̄_{mβ} + σ_{mαβ})
                let (alpha, beta) = (b.copy(), a.copy());
                let mut out = Vec::new();
                let mut zero_order = RatFunc::zero();
                for m in 1..=self.n {
                    let c = self.ainv_entry(i, m);
                    if c.is_zero() {
                        continue;
                    }
                    out.push((c.clone(), vec![(Gen::x(m, alpha), 1), (Gen::d(m, beta), 1)]));
                    zero_order = zero_order.add(&c.mul(&self.sigma(m, alpha, beta)));
                }
                if !zero_order.is_zero() {
                    out.push((zero_order, vec![]));
                }
                out
            }
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    RingCtx::unit(n, i, 1)
}
