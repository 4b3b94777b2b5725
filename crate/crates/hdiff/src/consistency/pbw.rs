//! Degree-3 ambiguities of the ordering relations, resolved two ways.

use crate::poly::RatFunc;
use crate::report::{Check, Report};
use crate::ring::{gen_name, key, Element, Gen, Kind, Order, Ring};
use crate::rmatrix::{rhat, ROperator};
use std::collections::BTreeMap;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PbwMode {
    Analytic,
    Bruteforce,
}

/// An overlap word a·b·c where both a·b and b·c are reducible.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// x^{iα} ∂̄_{jβ} ∂̄_{kγ}
    Xdd(Gen, Gen, Gen),
    /// x^{jα} x^{kβ} ∂̄_{iγ}
    Xxd(Gen, Gen, Gen),
}

impl Overlap {
    pub fn letters(&self) -> [Gen; 3] {
        match *self {
            Overlap::Xdd(a, b, c) | Overlap::Xxd(a, b, c) => [a, b, c],
        }
    }

    pub fn word(&self, copies: usize) -> String {
        self.letters().iter().map(|&g| gen_name(g, 1, copies)).collect::<Vec<_>>().join("*")
    }
}

fn gens(ring: &Ring, kind: Kind) -> Vec<Gen> {
    let mut v = Vec::new();
    for i in 1..=ring.n {
        for a in 1..=ring.copies {
            v.push(match kind {
                Kind::X => Gen::x(i, a),
                Kind::D => Gen::d(i, a),
            });
        }
    }
    v
}

fn misordered(a: Gen, b: Gen) -> bool {
    key(Order::DerFirst, a) > key(Order::DerFirst, b)
}

/// All ambiguities involving the zero-order term, in a fixed order.
pub fn overlap_words(ring: &Ring) -> Vec<Overlap> {
    let xs = gens(ring, Kind::X);
    let ds = gens(ring, Kind::D);
    let mut out = Vec::new();
    for &x in &xs {
        for &d1 in &ds {
            for &d2 in &ds {
                if misordered(d1, d2) {
                    out.push(Overlap::Xdd(x, d1, d2));
                }
            }
        }
    }
    for &x1 in &xs {
        for &x2 in &xs {
            if misordered(x1, x2) {
                for &d in &ds {
                    out.push(Overlap::Xxd(x1, x2, d));
                }
            }
        }
    }
    out
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] = s;
    v
}

type Ldt = BTreeMap<(usize, usize), RatFunc>;

fn acc(m: &mut Ldt, key: (usize, usize), v: RatFunc) {
    if v.is_zero() {
        return;
    }
    let e = m.entry(key).or_default();
    *e = e.add(&v);
    if e.is_zero() {
        m.remove(&key);
    }
}

struct Analytic<'a> {
    ring: &'a Ring,
    r: ROperator,
}

impl Analytic<'_> {
    fn rr(&self, p: usize, q: usize, s: usize, t: usize) -> RatFunc {
        self.r.get(p, q, s, t)
    }

    fn sig(&self, i: usize, a: usize, b: usize) -> RatFunc {
        self.ring.sigma(i, a, b)
    }

    /// Difference of the lower-degree terms of the two reductions; keys are (site, copy)
    /// of the surviving degree-one generator.
    fn residual(&self, o: &Overlap) -> Ldt {
        let n = self.ring.n;
        let mut diff = Ldt::new();
        match *o {
            Overlap::Xdd(x, d1, d2) => {
                let (i, al) = (x.site(), x.copy());
                let (j, be) = (d1.site(), d1.copy());
                let (k, ga) = (d2.site(), d2.copy());
                // (x ∂̄) ∂̄
                for u in 1..=n {
                    let eu = unit(n, u, 1);
                    let c = self.rr(u, i, k, j).shift(&eu).mul(&self.sig(k, al, ga).shift(&eu));
                    acc(&mut diff, (u, be), c.neg());
                }
                if i == j {
                    acc(&mut diff, (k, ga), self.sig(i, al, be).neg());
                }
                // x (∂̄ ∂̄)
                let mi = unit(n, i, -1);
                for c in 1..=n {
                    let ec = unit(n, c, 1);
                    let mut s = RatFunc::zero();
                    for a in 1..=n {
                        for b in 1..=n {
                            let r1 = self.rr(a, b, k, j);
                            if r1.is_zero() {
                                continue;
                            }
                            let r2 = self.rr(c, i, a, b);
                            if r2.is_zero() {
                                continue;
                            }
                            s = s.add(&r1.shift(&mi).mul(&r2.shift(&ec)).mul(&self.sig(a, al, be).shift(&ec)));
                        }
                    }
                    acc(&mut diff, (c, ga), s);
                }
                for a in 1..=n {
                    acc(&mut diff, (a, be), self.rr(a, i, k, j).shift(&mi).mul(&self.sig(i, al, ga)));
                }
            }
            Overlap::Xxd(x1, x2, d) => {
                let (j, al) = (x1.site(), x1.copy());
                let (k, be) = (x2.site(), x2.copy());
                let (i, ga) = (d.site(), d.copy());
                // x (x ∂̄)
                for v in 1..=n {
                    acc(&mut diff, (v, be), self.rr(j, k, v, i).mul(&self.sig(j, al, ga)).neg());
                }
                if k == i {
                    acc(&mut diff, (j, al), self.sig(k, be, ga).shift(&unit(n, j, -1)).neg());
                }
                // (x x) ∂̄
                for dd in 1..=n {
                    let mut s = RatFunc::zero();
                    for a in 1..=n {
                        for b in 1..=n {
                            let r1 = self.rr(j, k, a, b);
                            if r1.is_zero() {
                                continue;
                            }
                            s = s.add(&r1.mul(&self.rr(a, b, dd, i)).mul(&self.sig(a, be, ga)));
                        }
                    }
                    acc(&mut diff, (dd, al), s);
                }
                for a in 1..=n {
                    acc(&mut diff, (a, be), self.rr(j, k, a, i).mul(&self.sig(i, al, ga).shift(&unit(n, a, -1))));
                }
            }
        }
        diff
    }
}

/// Reduce the first pair first, versus the second pair first.
fn bruteforce_residual(ring: &Ring, o: &Overlap) -> Element {
    let [a, b, c] = o.letters();
    let e = |g: Gen| Element::gen(ring, Order::DerFirst, g);
    let left = e(a).mul_gen(b, 1).mul_gen(c, 1);
    let right = e(a).mul(&e(b).mul_gen(c, 1));
    left.sub(&right)
}

/// Witness word of the first unresolvable ambiguity, if any.
pub fn first_failure(ring: &Ring, mode: PbwMode) -> Option<String> {
    let words = overlap_words(ring);
    match mode {
        PbwMode::Analytic => {
            let an = Analytic { ring, r: rhat(ring.n) };
            words.iter().find(|o| !an.residual(o).is_empty()).map(|o| o.word(ring.copies))
        }
        PbwMode::Bruteforce => {
            words.iter().find(|o| !bruteforce_residual(ring, o).is_zero()).map(|o| o.word(ring.copies))
        }
    }
}

/// For several copies the zero-order terms must be constants independent of the site.
pub fn copy_rigidity(ring: &Ring) -> Option<String> {
    for a in 1..=ring.copies {
        for b in 1..=ring.copies {
            let base = ring.sigma(1, a, b);
            for i in 1..=ring.n {
                let s = ring.sigma(i, a, b);
                if s.constant_value().is_none() || s != base {
                    return Some(format!("({i},{a},{b})"));
                }
            }
        }
    }
    None
}

/// Residuals h_ij Δ_j σ_i − (σ_i − σ_j).
pub fn delta_system_residual(sigmas: &[RatFunc]) -> Vec<Vec<RatFunc>> {
    let n = sigmas.len();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    RatFunc::hd(i, j)
                        .mul(&sigmas[i - 1].delta(j))
                        .sub(&sigmas[i - 1].sub(&sigmas[j - 1]))
                })
                .collect()
        })
        .collect()
}

pub fn delta_witness(sigmas: &[RatFunc]) -> Option<String> {
    let r = delta_system_residual(sigmas);
    for (i, row) in r.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                return Some(format!("({},{})", i + 1, j + 1));
            }
        }
    }
    None
}

pub fn pbw_overlap_check(ring: &Ring, modes: &[PbwMode]) -> Report {
    let mut rep = Report::new(format!("pbw --n {} --N {}", ring.n, ring.copies));
    if ring.copies == 1 {
        let s: Vec<RatFunc> = (1..=ring.n).map(|i| ring.sigma_site(i)).collect();
        rep.push(Check::from_witness("delta_system", delta_witness(&s)));
    } else {
        rep.push(Check::from_witness("copy_rigidity", copy_rigidity(ring)));
    }
    let mut results = Vec::new();
    for &m in modes {
        let w = first_failure(ring, m);
        let id = match m {
            PbwMode::Analytic => "pbw_analytic",
            PbwMode::Bruteforce => "pbw_bruteforce",
        };
        rep.push(Check::from_witness(id, w.clone()));
        results.push(w);
    }
    if results.len() == 2 {
        let agree = results[0] == results[1];
        let mut c = Check::new("modes_agree", agree);
        if !agree {
            c = c.witness(format!("analytic {:?} vs bruteforce {:?}", results[0], results[1]));
        }
        rep.push(c);
    }
    rep
}
