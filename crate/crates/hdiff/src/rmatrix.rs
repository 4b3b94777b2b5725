//! The standard dynamical R-matrix of type A and its skew inverse.

use crate::poly::{chi, RatFunc};
use crate::report::{Check, Report};
use std::collections::BTreeMap;

pub type Idx4 = (usize, usize, usize, usize);

/// Sparse operator; key (i, j, k, l) is the component with upper (i, j) and lower (k, l).
#[derive(Clone, Debug)]
pub struct ROperator {
    pub n: usize,
    pub entries: BTreeMap<Idx4, RatFunc>,
}

impl ROperator {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
        self.entries.get(&(i, j, k, l)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn set(&mut self, key: Idx4, v: RatFunc) {
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    /// Nonzero entries with upper indices (i, j).
    pub fn row(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize, &RatFunc)> {
        self.entries.range((i, j, 0, 0)..=(i, j, usize::MAX, usize::MAX)).map(|(k, v)| (k.2, k.3, v))
    }
}

fn shift_vec(n: usize, plus: &[usize], minus: &[usize]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &a in plus {
        v[a - 1] += 1;
    }
    for &a in minus {
        v[a - 1] -= 1;
    }
    v
}

/// R̂ entry formulas; the argument h stands for h_i - h_j.
pub fn rhat_entry(i: usize, j: usize, k: usize, l: usize) -> RatFunc {
    let h = RatFunc::hd(i, j);
    if (k, l) == (i, j) && i != j {
        h.inv()
    } else if (k, l) == (j, i) {
        if i < j {
            let h2 = h.mul(&h);
            h2.sub(&RatFunc::one()).div(&h2)
        } else {
            RatFunc::one()
        }
    } else {
        RatFunc::zero()
    }
}

pub fn rhat(n: usize) -> ROperator {
    let mut r = ROperator { n, entries: BTreeMap::new() };
    for i in 1..=n {
        for j in 1..=n {
            for (k, l) in [(i, j), (j, i)] {
                r.set((i, j, k, l), rhat_entry(i, j, k, l));
            }
        }
    }
    r
}

/// Q^±_i = χ_i[±ε_i]/χ_i.
pub fn q_pm(i: usize, n: usize, plus: bool) -> RatFunc {
    let c = RatFunc::from_poly(chi(i, n));
    let v = if plus { shift_vec(n, &[i], &[]) } else { shift_vec(n, &[], &[i]) };
    c.shift(&v).div(&c)
}

pub fn psi_skew(n: usize) -> ROperator {
    let mut r = ROperator { n, entries: BTreeMap::new() };
    for i in 1..=n {
        for j in 1..=n {
            let h = RatFunc::hd(i, j);
            let diag = q_pm(i, n, true).mul(&q_pm(j, n, false)).div(&h.add(&RatFunc::one()));
            r.set((i, j, i, j), diag);
            if i != j {
                let off = if i < j {
                    RatFunc::one()
                } else {
                    let hm1 = h.sub(&RatFunc::one());
                    hm1.mul(&hm1).div(&h.mul(&h.sub(&RatFunc::int(2))))
                };
                r.set((i, j, j, i), off);
            }
        }
    }
    r
}

fn tuple(t: &[usize]) -> String {
    format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn check_involutive(r: &ROperator) -> Option<String> {
    let n = r.n;
    for i in 1..=n {
        for j in 1..=n {
            let mut acc: BTreeMap<(usize, usize), RatFunc> = BTreeMap::new();
            for (a, b, f) in r.row(i, j) {
                for (k, l, g) in r.row(a, b) {
                    let e = acc.entry((k, l)).or_default();
                    *e = e.add(&f.mul(g));
                }
            }
            for k in 1..=n {
                for l in 1..=n {
                    let v = acc.remove(&(k, l)).unwrap_or_default();
                    let expect = if (k, l) == (i, j) { RatFunc::one() } else { RatFunc::zero() };
                    if v != expect {
                        return Some(tuple(&[i, j, k, l]));
                    }
                }
            }
        }
    }
    None
}

pub fn check_shift_invariance(r: &ROperator) -> Option<String> {
    for (&(i, j, k, l), v) in &r.entries {
        if v.shift(&shift_vec(r.n, &[i, j], &[])) != *v {
            return Some(tuple(&[i, j, k, l]));
        }
    }
    None
}

pub fn check_ice(r: &ROperator) -> Option<String> {
    for (&(i, j, k, l), v) in &r.entries {
        if !v.is_zero() && (k, l) != (i, j) && (k, l) != (j, i) {
            return Some(tuple(&[i, j, k, l]));
        }
    }
    None
}

/// Σ_{k,l} Ψ^{ik}_{jl} R̂^{ml}_{nk}[ε_m] = δ^i_n δ^m_j.
pub fn check_skew_inverse(r: &ROperator, psi: &ROperator) -> Option<String> {
    let n = r.n;
    for i in 1..=n {
        for j in 1..=n {
            for m in 1..=n {
                for nn in 1..=n {
                    let mut acc = RatFunc::zero();
                    for k in 1..=n {
                        for l in 1..=n {
                            let p = psi.get(i, k, j, l);
                            if p.is_zero() {
                                continue;
                            }
                            let q = r.get(m, l, nn, k);
                            if q.is_zero() {
                                continue;
                            }
                            acc = acc.add(&p.mul(&q.shift(&shift_vec(n, &[m], &[]))));
                        }
                    }
                    let expect = if i == nn && m == j { RatFunc::one() } else { RatFunc::zero() };
                    if acc != expect {
                        return Some(tuple(&[i, j, m, nn]));
                    }
                }
            }
        }
    }
    None
}

/// Σ R^{ij}_{ab} R^{bk}_{ur}[-ε_a] R^{au}_{mn} = Σ R^{jk}_{ab}[-ε_i] R^{ia}_{mu} R^{ub}_{nr}[-ε_m].
pub fn check_dybe(r: &ROperator) -> Option<String> {
    let n = r.n;
    let mut shifted: BTreeMap<(Idx4, usize), RatFunc> = BTreeMap::new();
    let mut sh = |key: Idx4, v: &RatFunc, a: usize| -> RatFunc {
        shifted.entry((key, a)).or_insert_with(|| v.shift(&shift_vec(n, &[], &[a]))).clone()
    };
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                type Acc = BTreeMap<(usize, usize, usize), RatFunc>;
                let mut lhs: Acc = BTreeMap::new();
                for (a, b, f1) in r.row(i, j) {
                    for (u, rr, f2) in r.row(b, k) {
                        let f2s = sh((b, k, u, rr), f2, a);
                        for (m, nn, f3) in r.row(a, u) {
                            let e = lhs.entry((m, nn, rr)).or_default();
                            *e = e.add(&f1.mul(&f2s).mul(f3));
                        }
                    }
                }
                let mut rhs: Acc = BTreeMap::new();
                for (a, b, f1) in r.row(j, k) {
                    let f1s = sh((j, k, a, b), f1, i);
                    for (m, u, f2) in r.row(i, a) {
                        for (nn, rr, f3) in r.row(u, b) {
                            let f3s = sh((u, b, nn, rr), f3, m);
                            let e = rhs.entry((m, nn, rr)).or_default();
                            *e = e.add(&f1s.mul(f2).mul(&f3s));
                        }
                    }
                }
                let keys: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).copied().collect();
                for key in keys {
                    let a = lhs.get(&key).cloned().unwrap_or_default();
                    let b = rhs.get(&key).cloned().unwrap_or_default();
                    if a != b {
                        return Some(tuple(&[i, j, k, key.0, key.1, key.2]));
                    }
                }
            }
        }
    }
    None
}

pub fn check_operator(r: &ROperator, psi: &ROperator) -> Report {
    let mut rep = Report::new(format!("rmatrix --n {} --check", r.n));
    rep.push(Check::from_witness("rhat_squared_identity", check_involutive(r)));
    rep.push(Check::from_witness("shift_invariance", check_shift_invariance(r)));
    rep.push(Check::from_witness("ice_condition", check_ice(r)));
    rep.push(Check::from_witness("skew_inverse", check_skew_inverse(r, psi)));
    rep.push(Check::from_witness("dynamical_yang_baxter", check_dybe(r)));
    rep
}

pub fn check_r_properties(n: usize) -> Report {
    check_operator(&rhat(n), &psi_skew(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_for_two_sites() {
        let r = rhat(2);
        assert_eq!(r.get(1, 2, 1, 2), RatFunc::hd(1, 2).inv());
        assert!(r.get(2, 1, 1, 2).is_one());
        let h = RatFunc::hd(1, 2);
        assert_eq!(r.get(1, 2, 2, 1), h.mul(&h).sub(&RatFunc::one()).div(&h.mul(&h)));
    }

    #[test]
    fn q_minus_for_two_sites() {
        let h = RatFunc::hd(1, 2);
        assert_eq!(q_pm(1, 2, false), h.sub(&RatFunc::one()).div(&h));
    }

    #[test]
    fn all_properties_hold_for_small_n() {
        for n in 1..=3 {
            let rep = check_r_properties(n);
            assert!(rep.all_pass(), "{}", rep.to_text());
        }
    }

    #[test]
    fn mutated_entry_breaks_involutivity() {
        let mut r = rhat(2);
        r.set((1, 2, 1, 2), RatFunc::int(2).div(&RatFunc::hd(1, 2)));
        assert_eq!(check_involutive(&r), Some("(1,2,1,2)".into()));
    }
}
