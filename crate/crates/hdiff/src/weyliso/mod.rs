//! The localized Weyl algebra with central a_k, and the isomorphism μ onto the localized ring.
//!
//! H_i = D_i X^i is stored as the variable h_i inside coefficients; a_k as Var::a(k).

use crate::center::{central_elements, gamma_site_term, CenterError, CentralPoly};
use crate::poly::{chi, psi, psi_prime, MPoly, Mono, Rat, RatFunc, Var};
use crate::report::{Check, Report};
use crate::ring::{Element, Gen, Kind, Order, Ring, RingCtx, SigmaInput};
use std::collections::BTreeMap;
use std::fmt;

/// Σ X^a f_a(H, a_k), X powers on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub n: usize,
    pub terms: BTreeMap<Vec<i64>, RatFunc>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WeylGen {
    X(usize),
    XInv(usize),
    D(usize),
    H(usize),
    A(usize),
}

impl WeylGen {
    pub fn name(self) -> String {
        match self {
            WeylGen::X(i) => format!("X{i}"),
            WeylGen::XInv(i) => format!("X{i}^-1"),
            WeylGen::D(i) => format!("D{i}"),
            WeylGen::H(i) => format!("H{i}"),
            WeylGen::A(k) => format!("a{k}"),
        }
    }

    pub fn all(n: usize) -> Vec<WeylGen> {
        let mut v = Vec::new();
        for i in 1..=n {
            v.extend([WeylGen::X(i), WeylGen::XInv(i), WeylGen::D(i), WeylGen::H(i), WeylGen::A(i)]);
        }
        v
    }
}

impl WeylElement {
    pub fn zero(n: usize) -> WeylElement {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, f: RatFunc) -> WeylElement {
        WeylElement::monomial(n, vec![0; n], f)
    }

    pub fn one(n: usize) -> WeylElement {
        WeylElement::scalar(n, RatFunc::one())
    }

    pub fn monomial(n: usize, a: Vec<i64>, f: RatFunc) -> WeylElement {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(a, f);
        }
        WeylElement { n, terms }
    }

    fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
        let mut v = vec![0; n];
        v[i - 1] = s;
        v
    }

    pub fn gen(n: usize, g: WeylGen) -> WeylElement {
        match g {
            WeylGen::X(i) => WeylElement::monomial(n, Self::unit(n, i, 1), RatFunc::one()),
            WeylGen::XInv(i) => WeylElement::monomial(n, Self::unit(n, i, -1), RatFunc::one()),
            // D_i = H_i (X^i)^{-1} = (X^i)^{-1} (H_i - 1)
            WeylGen::D(i) => WeylElement::monomial(n, Self::unit(n, i, -1), RatFunc::h(i).sub(&RatFunc::one())),
            WeylGen::H(i) => WeylElement::scalar(n, RatFunc::h(i)),
            WeylGen::A(k) => WeylElement::scalar(n, RatFunc::var(Var::a(k))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &WeylElement) -> WeylElement {
        let mut terms = self.terms.clone();
        for (a, f) in &o.terms {
            let e = terms.entry(a.clone()).or_default();
            *e = e.add(f);
            if e.is_zero() {
                terms.remove(a);
            }
        }
        WeylElement { n: self.n, terms }
    }

    pub fn neg(&self) -> WeylElement {
        WeylElement { n: self.n, terms: self.terms.iter().map(|(a, f)| (a.clone(), f.neg())).collect() }
    }

    pub fn sub(&self, o: &WeylElement) -> WeylElement {
        self.add(&o.neg())
    }

    /// f(H) X^b = X^b f(H + b).
    pub fn mul(&self, o: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out = out.add(&WeylElement::monomial(self.n, ab, f.shift(b).mul(g)));
            }
        }
        out
    }

    /// Multiply by a coefficient on the right.
    pub fn scale_right(&self, f: &RatFunc) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (a, g) in &self.terms {
            out = out.add(&WeylElement::monomial(self.n, a.clone(), g.mul(f)));
        }
        out
    }

    /// Multiply by a coefficient on the left.
    pub fn scale_left(&self, f: &RatFunc) -> WeylElement {
        WeylElement::scalar(self.n, f.clone()).mul(self)
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        let mut out = WeylElement::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn commutator(&self, o: &WeylElement) -> WeylElement {
        self.mul(o).sub(&o.mul(self))
    }
}

fn weyl_var_name(v: Var) -> String {
    match (v.site(), v.a_index()) {
        (Some(i), _) => format!("H{i}"),
        (_, Some(k)) => format!("a{k}"),
        _ => v.name(),
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xs: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { format!("X{}", i + 1) } else { format!("X{}^({e})", i + 1) })
                .collect();
            let coef = format!("({})", c.display_with(&weyl_var_name));
            if xs.is_empty() {
                write!(f, "{coef}")?;
            } else {
                write!(f, "{}*{coef}", xs.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Data of μ for a given zero-order term.
pub struct WeylIso {
    pub ring: Ring,
    pub center: CentralPoly,
    /// Υ_i with μ^{-1}(χ_i Γ_i) = Υ_i.
    pub upsilon: Vec<RatFunc>,
}

impl WeylIso {
    pub fn new(n: usize, sigma: SigmaInput) -> Result<WeylIso, CenterError> {
        let ring = RingCtx::localized(n, sigma)?;
        let center = central_elements(&ring)?;
        let upsilon = (1..=n)
            .map(|i| {
                let hi = RatFunc::h(i);
                let mut u = RatFunc::from_poly(chi(i, n)).mul(&gamma_site_term(&center.sigma, i));
                for k in 1..=n {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    let term = hi.pow((n - k) as i64).mul(&RatFunc::var(Var::a(k))).scale(&crate::poly::rat(sign));
                    u = u.add(&term);
                }
                u
            })
            .collect();
        Ok(WeylIso { ring, center, upsilon })
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    /// μ on Weyl generators.
    pub fn mu_gen(&self, g: WeylGen) -> Element {
        let r = &self.ring;
        let o = Order::DerFirst;
        match g {
            WeylGen::X(i) => Element::x(r, o, i).scale_right(&RatFunc::from_poly(psi_prime(i, r.n))),
            WeylGen::XInv(i) => Element::y(r, o, i).scale_left(&RatFunc::from_poly(psi_prime(i, r.n)).inv()),
            WeylGen::D(i) => {
                let c = RatFunc::h(i).div(&RatFunc::from_poly(psi_prime(i, r.n)));
                Element::y(r, o, i).scale_left(&c)
            }
            WeylGen::H(i) => Element::h(r, o, i),
            WeylGen::A(k) => self.center.c[k - 1].clone(),
        }
    }

    /// μ^{-1} on the generators of the localized ring; `e = -1` gives the inverse of x^i.
    pub fn mu_inv_letter(&self, g: Gen, e: i32) -> WeylElement {
        let n = self.n();
        let one = WeylElement::gen;
        let base = match (g.kind, e.signum()) {
            (Kind::X, 1) => one(n, WeylGen::X(g.site())).scale_right(&RatFunc::from_poly(psi_prime(g.site(), n)).inv()),
            (Kind::X, -1) => one(n, WeylGen::XInv(g.site())).scale_left(&RatFunc::from_poly(psi_prime(g.site(), n))),
            (Kind::D, 1) => {
                let f = self.upsilon[g.site() - 1].div(&RatFunc::from_poly(psi(g.site(), n)));
                one(n, WeylGen::XInv(g.site())).scale_left(&f)
            }
            _ => return WeylElement::one(n),
        };
        base.pow(e.unsigned_abs())
    }

    pub fn mu_inv(&self, e: &Element) -> WeylElement {
        let n = self.n();
        let e = e.to_order(Order::DerFirst);
        let mut out = WeylElement::zero(n);
        for (m, c) in &e.terms {
            let mut t = WeylElement::scalar(n, c.clone());
            for &(g, p) in &m.0 {
                t = t.mul(&self.mu_inv_letter(g, p));
            }
            out = out.add(&t);
        }
        out
    }

    /// μ of a coefficient rational in H and polynomial in the a_k.
    fn mu_coeff(&self, f: &RatFunc) -> Element {
        let r = &self.ring;
        let o = Order::DerFirst;
        let den = RatFunc::frac(MPoly::one(), f.den());
        let mut out = Element::zero(r, o);
        for (m, c) in f.num().terms() {
            let mut hpart = Mono::one();
            let mut central = Element::one(r, o);
            for &(v, e) in &m.0 {
                match v.a_index() {
                    Some(k) => central = central.mul(&self.center.c[k - 1].pow(e)),
                    None => hpart = hpart.mul(&Mono::var(v, e)),
                }
            }
            let coeff = RatFunc::from_poly(MPoly::term(hpart, c.clone())).mul(&den);
            out = out.add(&central.scale_left(&coeff));
        }
        out
    }

    pub fn mu(&self, w: &WeylElement) -> Element {
        let r = &self.ring;
        let o = Order::DerFirst;
        let mut out = Element::zero(r, o);
        for (a, f) in &w.terms {
            let mut t = Element::one(r, o);
            for (i, &e) in a.iter().enumerate() {
                let g = if e >= 0 { WeylGen::X(i + 1) } else { WeylGen::XInv(i + 1) };
                t = t.mul(&self.mu_gen(g).pow(e.unsigned_abs() as u32));
            }
            out = out.add(&t.mul(&self.mu_coeff(f)));
        }
        out
    }
}

fn ring_gens(ring: &Ring) -> Vec<(String, Element)> {
    let o = Order::DerFirst;
    let mut v = Vec::new();
    for i in 1..=ring.n {
        v.push((format!("x[{i}]"), Element::x(ring, o, i)));
        v.push((format!("d[{i}]"), Element::d(ring, o, i)));
        v.push((format!("h{i}"), Element::h(ring, o, i)));
    }
    v
}

pub fn check_iso(n: usize, sigma: SigmaInput) -> Result<Report, CenterError> {
    let iso = WeylIso::new(n, sigma)?;
    let ring = &iso.ring;
    let mut rep = Report::new(format!("iso --n {n}"));

    // (a) defining relations, as products against their normal forms
    let gens = ring_gens(ring);
    let mut w = None;
    'a: for (na, a) in &gens {
        for (nb, b) in &gens {
            let nf = a.mul(b);
            let lhs = iso.mu_inv(a).mul(&iso.mu_inv(b));
            if lhs != iso.mu_inv(&nf) {
                w = Some(format!("{na}*{nb}"));
                break 'a;
            }
        }
    }
    rep.push(Check::from_witness("relations_to_weyl", w));

    // (b) relations of the Weyl side in the localized ring
    let o = Order::DerFirst;
    let mut w = None;
    for i in 1..=n {
        for j in 1..=n {
            let (hi, xj) = (iso.mu_gen(WeylGen::H(i)), iso.mu_gen(WeylGen::X(j)));
            let shifted = if i == j { hi.add(&Element::one(ring, o)) } else { hi.clone() };
            if hi.mul(&xj) != xj.mul(&shifted) {
                w.get_or_insert(format!("H{i}*X{j}"));
            }
            if !iso.mu_gen(WeylGen::X(i)).commutator(&xj).is_zero() {
                w.get_or_insert(format!("[X{i},X{j}]"));
            }
            let dx = iso.mu_gen(WeylGen::D(i)).commutator(&xj);
            let expect = if i == j { Element::one(ring, o) } else { Element::zero(ring, o) };
            if dx != expect {
                w.get_or_insert(format!("[D{i},X{j}]"));
            }
            if !iso.mu_gen(WeylGen::D(i)).commutator(&iso.mu_gen(WeylGen::D(j))).is_zero() {
                w.get_or_insert(format!("[D{i},D{j}]"));
            }
        }
    }
    rep.push(Check::from_witness("weyl_relations_in_diff", w));
    let mut w = None;
    for k in 1..=n {
        let a = iso.mu_gen(WeylGen::A(k));
        for g in WeylGen::all(n) {
            if !a.commutator(&iso.mu_gen(g)).is_zero() {
                w.get_or_insert(format!("[a{k},{}]", g.name()));
            }
        }
    }
    rep.push(Check::from_witness("a_central", w));

    // (c) round trips
    let mut w = None;
    for (name, g) in &gens {
        if &iso.mu(&iso.mu_inv(g)) != g {
            w.get_or_insert(format!("mu(mu^-1({name}))"));
        }
    }
    rep.push(Check::from_witness("roundtrip_diff", w));
    let mut w = None;
    for g in WeylGen::all(n) {
        let wg = WeylElement::gen(n, g);
        if iso.mu_inv(&iso.mu_gen(g)) != wg {
            w.get_or_insert(format!("mu^-1(mu({}))", g.name()));
        }
    }
    rep.push(Check::from_witness("roundtrip_weyl", w));

    // (d) images of the central elements
    let mut w = None;
    let mut consts = Vec::new();
    for k in 1..=n {
        let d = iso.mu_inv(&iso.center.c[k - 1]).sub(&WeylElement::gen(n, WeylGen::A(k)));
        let c = match d.terms.len() {
            0 => Some(Rat::default()),
            1 => d.terms.get(&vec![0; n]).and_then(|f| f.constant_value()),
            _ => None,
        };
        match c {
            Some(c) => consts.push(serde_json::Value::String(c.to_string())),
            None => {
                w.get_or_insert(format!("mu^-1(c_{k}) - a_{k} = {d}"));
            }
        }
    }
    rep.push(Check::from_witness("center_images", w).value(serde_json::Value::Array(consts)));

    let mut w = None;
    for i in 1..=n {
        for j in 1..=n {
            if !iso.mu_gen(WeylGen::X(i)).commutator(&iso.mu_gen(WeylGen::X(j))).is_zero() {
                w.get_or_insert(format!("[x'{i}, x'{j}]"));
            }
        }
    }
    rep.push(Check::from_witness("twisted_x_commute", w));
    Ok(rep)
}

/// Images of the generators in both directions, for display.
pub fn image_table(iso: &WeylIso) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let n = iso.n();
    for g in WeylGen::all(n) {
        out.push((format!("mu({})", g.name()), iso.mu_gen(g).to_string()));
    }
    for (name, g) in ring_gens(&iso.ring) {
        out.push((format!("mu^-1({name})"), iso.mu_inv(&g).to_string()));
    }
    out
}

#[cfg(test)]
mod tests;
