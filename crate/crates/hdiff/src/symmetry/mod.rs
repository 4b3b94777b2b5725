//! S_n and Zhelobenko (braid) actions on the rings, their Weyl-side counterpart,
//! and the diagonal reduction algebra generators L^j_i.

mod reflection;

pub use reflection::{check_l_action, l_element, l_image_formula, reflection_equation, tau_and_reflection_check};

use crate::consistency::{w_decompose, zhelobenko_admissible};
use crate::poly::{RatFunc, Var};
use crate::report::{Check, Report};
use crate::ring::{Element, Gen, Kind, Order, Ring};
use crate::weyliso::{WeylElement, WeylGen};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    S,
    SPrime,
    QCheck,
    QCheckWeyl,
}

impl Tag {
    pub fn parse(s: &str) -> Option<Tag> {
        match s {
            "s" => Some(Tag::S),
            "s_prime" | "sprime" | "s'" => Some(Tag::SPrime),
            "q" | "qcheck" => Some(Tag::QCheck),
            "qw" | "qcheck_weyl" => Some(Tag::QCheckWeyl),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tag::S => "s",
            Tag::SPrime => "s_prime",
            Tag::QCheck => "qcheck",
            Tag::QCheckWeyl => "qcheck_weyl",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryKind {
    pub tag: Tag,
    pub index: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("index {index} out of range 1..{n}")]
    Index { index: usize, n: usize },
    #[error("Zhelobenko automorphisms require a polynomial sigma (symmetric polynomial potential); got {0}")]
    NotPolynomial(String),
    #[error("{0} does not act on this carrier")]
    Carrier(&'static str),
}

impl SymmetryKind {
    pub fn new(tag: Tag, index: usize, n: usize) -> Result<SymmetryKind, SymmetryError> {
        if index == 0 || index >= n {
            return Err(SymmetryError::Index { index, n });
        }
        Ok(SymmetryKind { tag, index })
    }

    fn label(self) -> String {
        format!("{}_{}", self.tag.name(), self.index)
    }
}

/// h_i ↔ h_{i+1} inside a coefficient.
pub fn permute(f: &RatFunc, i: usize) -> RatFunc {
    f.subst(&|v: Var| match v.site() {
        Some(j) if j == i => Some(RatFunc::h(i + 1)),
        Some(j) if j == i + 1 => Some(RatFunc::h(i)),
        _ => None,
    })
    .expect("a permutation of variables never hits a pole")
}

fn swap_site(j: usize, i: usize) -> usize {
    if j == i {
        i + 1
    } else if j == i + 1 {
        i
    } else {
        j
    }
}

/// Refuse q̌ unless σ is a symmetric polynomial.
pub fn check_admissible(ring: &Ring) -> Result<(), SymmetryError> {
    let pot = crate::center::ring_potential(ring).map_err(|e| SymmetryError::NotPolynomial(format!("sigma ({e})")))?;
    let ok = w_decompose(&pot, ring.n).map(|s| zhelobenko_admissible(&s)).unwrap_or(false);
    if ok {
        Ok(())
    } else {
        Err(SymmetryError::NotPolynomial(format!("sigma = {pot}")))
    }
}

/// Images of single generators; the ring itself is not validated.
fn gen_image(ring: &Ring, order: Order, k: SymmetryKind, g: Gen, e: i32) -> Element {
    let i = k.index;
    let h = RatFunc::hd(i, i + 1);
    let one = RatFunc::one();
    let (s, a) = (g.site(), g.copy());
    let gen = |site: usize, kind: Kind| {
        let g2 = Gen { kind, site: site as u8, copy: a as u8 };
        Element::gen_pow(ring, order, g2, e)
    };
    if s != i && s != i + 1 {
        return Element::gen_pow(ring, order, g, e);
    }
    let t = swap_site(s, i);
    let first = s == i;
    // (left coefficient, right coefficient)
    let (l, r): (RatFunc, RatFunc) = match (k.tag, g.kind, first) {
        (Tag::S, Kind::X, true) => (one.clone(), h.neg()),
        (Tag::S, Kind::X, false) => (one.clone(), h.inv()),
        (Tag::S, Kind::D, true) => (h.inv().neg(), one.clone()),
        (Tag::S, Kind::D, false) => (h.clone(), one.clone()),
        (Tag::SPrime, Kind::X, true) => (h.inv().neg(), one.clone()),
        (Tag::SPrime, Kind::X, false) => (h.clone(), one.clone()),
        (Tag::SPrime, Kind::D, true) => (one.clone(), h.neg()),
        (Tag::SPrime, Kind::D, false) => (one.clone(), h.inv()),
        (Tag::QCheck, Kind::X, true) => (one.clone(), h.div(&h.sub(&one)).neg()),
        (Tag::QCheck, Kind::X, false) => (one.clone(), one.clone()),
        // ∂̄ images forced by q̌_i(Γ_j) = Γ_{s_i(j)}; they agree with the Weyl-side q̌ under μ
        (Tag::QCheck, Kind::D, true) => (h.sub(&one).div(&h).neg(), one.clone()),
        (Tag::QCheck, Kind::D, false) => (one.clone(), one.clone()),
        (Tag::QCheckWeyl, ..) => unreachable!(),
    };
    if e == 1 {
        return gen(t, g.kind).scale_left(&l).scale_right(&r);
    }
    // (l y r)^{-1} = r^{-1} y^{-1} l^{-1}
    gen(t, g.kind).scale_left(&r.inv()).scale_right(&l.inv())
}

fn apply_raw(k: SymmetryKind, e: &Element) -> Element {
    let ring = &e.ring;
    let mut out = Element::zero(ring, e.order);
    for (m, c) in &e.terms {
        let mut t = Element::scalar(ring, e.order, permute(c, k.index));
        for (g, ex) in m.letters() {
            t = t.mul(&gen_image(ring, e.order, k, g, ex));
        }
        out = out.add(&t);
    }
    out
}

/// The automorphism extended multiplicatively from generator images, h_j ↦ h_{s_i(j)}.
pub fn apply_symmetry(k: SymmetryKind, e: &Element) -> Result<Element, SymmetryError> {
    let n = e.ring.n;
    if k.index == 0 || k.index >= n {
        return Err(SymmetryError::Index { index: k.index, n });
    }
    match k.tag {
        Tag::QCheckWeyl => return Err(SymmetryError::Carrier("qcheck_weyl")),
        Tag::QCheck => check_admissible(&e.ring)?,
        Tag::SPrime if e.ring.localized => return Err(SymmetryError::Carrier("s_prime (localized ring)")),
        _ => {}
    }
    Ok(apply_raw(k, e))
}

/// Same images without the polynomiality guard; used to exhibit failures.
pub fn apply_unchecked(k: SymmetryKind, e: &Element) -> Element {
    apply_raw(k, e)
}

fn weyl_gen_image(n: usize, i: usize, g: WeylGen) -> WeylElement {
    let hh = RatFunc::hd(i, i + 1);
    let w = |g| WeylElement::gen(n, g);
    match g {
        WeylGen::X(j) if j == i => w(WeylGen::X(i + 1)).scale_left(&hh.inv()),
        WeylGen::X(j) if j == i + 1 => w(WeylGen::X(i)).scale_right(&hh),
        WeylGen::XInv(j) if j == i => w(WeylGen::XInv(i + 1)).scale_right(&hh),
        WeylGen::XInv(j) if j == i + 1 => w(WeylGen::XInv(i)).scale_left(&hh.inv()),
        WeylGen::D(j) if j == i => w(WeylGen::D(i + 1)).scale_right(&hh),
        WeylGen::D(j) if j == i + 1 => w(WeylGen::D(i)).scale_left(&hh.inv()),
        WeylGen::H(j) => w(WeylGen::H(swap_site(j, i))),
        other => w(other),
    }
}

/// q̌_i on the localized Weyl algebra: X powers mapped, then the coefficient permuted.
pub fn apply_weyl(k: SymmetryKind, e: &WeylElement) -> Result<WeylElement, SymmetryError> {
    let n = e.n;
    if k.index == 0 || k.index >= n {
        return Err(SymmetryError::Index { index: k.index, n });
    }
    if k.tag != Tag::QCheckWeyl {
        return Err(SymmetryError::Carrier("Weyl algebra"));
    }
    let mut out = WeylElement::zero(n);
    for (a, f) in &e.terms {
        let mut t = WeylElement::one(n);
        for (idx, &p) in a.iter().enumerate() {
            let g = if p > 0 { WeylGen::X(idx + 1) } else { WeylGen::XInv(idx + 1) };
            let img = weyl_gen_image(n, k.index, g);
            for _ in 0..p.unsigned_abs() {
                t = t.mul(&img);
            }
        }
        out = out.add(&t.scale_right(&permute(f, k.index)));
    }
    Ok(out)
}

/// D_i written through the X^{±1} and H: D_i = X_i^{-1} H_i.
pub fn weyl_d_formula(n: usize, i: usize, j: usize) -> WeylElement {
    let hh = RatFunc::hd(i, i + 1);
    let w = |g| WeylElement::gen(n, g);
    if j == i {
        w(WeylGen::D(i + 1)).scale_right(&hh)
    } else if j == i + 1 {
        w(WeylGen::D(i)).scale_left(&hh.inv())
    } else {
        w(WeylGen::D(j))
    }
}

/// Generators x^{iα}, ∂̄_{iα} (and y^i when localized) and h_i with display names.
pub fn ring_generators(ring: &Ring, order: Order) -> Vec<(String, Element)> {
    let mut v = Vec::new();
    for i in 1..=ring.n {
        for a in 1..=ring.copies {
            for (g, e) in [(Gen::x(i, a), 1), (Gen::d(i, a), 1)] {
                v.push((crate::ring::gen_name(g, e, ring.copies), Element::gen_pow(ring, order, g, e)));
            }
            if ring.localized {
                v.push((crate::ring::gen_name(Gen::x(i, a), -1, 1), Element::gen_pow(ring, order, Gen::x(i, a), -1)));
            }
        }
        v.push((format!("h{i}"), Element::h(ring, order, i)));
    }
    v
}

fn weyl_generators(n: usize) -> Vec<(String, WeylElement)> {
    let mut v: Vec<(String, WeylElement)> = Vec::new();
    for g in WeylGen::all(n) {
        v.push((g.name(), WeylElement::gen(n, g)));
    }
    v
}

/// Operator on whichever carrier a check runs over.
trait Carrier: Clone + PartialEq + std::fmt::Display {
    fn apply(&self, k: SymmetryKind) -> Self;
    fn prod(&self, o: &Self) -> Self;
}

impl Carrier for Element {
    fn apply(&self, k: SymmetryKind) -> Element {
        apply_raw(k, self)
    }
    fn prod(&self, o: &Element) -> Element {
        self.mul(o)
    }
}

impl Carrier for WeylElement {
    fn apply(&self, k: SymmetryKind) -> WeylElement {
        apply_weyl(k, self).expect("validated kind")
    }
    fn prod(&self, o: &WeylElement) -> WeylElement {
        self.mul(o)
    }
}

fn apply_word<C: Carrier>(word: &[SymmetryKind], e: &C) -> C {
    // rightmost letter acts first
    word.iter().rev().fold(e.clone(), |acc, &k| acc.apply(k))
}

fn word_name(word: &[SymmetryKind]) -> String {
    word.iter().map(|k| k.label()).collect::<Vec<_>>().join("*")
}

/// Products of up to `depth` generators, for testing relations beyond the generators.
fn test_elements<C: Carrier>(gens: &[(String, C)], depth: usize) -> Vec<(String, C)> {
    let mut all = gens.to_vec();
    let mut layer = gens.to_vec();
    for _ in 1..depth {
        let mut next = Vec::new();
        for (na, a) in &layer {
            for (nb, b) in gens {
                next.push((format!("{na}*{nb}"), a.prod(b)));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn relation_check<C: Carrier>(id: String, lhs: &[SymmetryKind], rhs: &[SymmetryKind], elems: &[(String, C)]) -> Check {
    let w = elems.iter().find_map(|(name, e)| {
        (apply_word(lhs, e) != apply_word(rhs, e)).then(|| format!("{} != {} on {name}", word_name(lhs), word_name(rhs)))
    });
    Check::from_witness(id, w)
}

fn homomorphism_check<C: Carrier>(k: SymmetryKind, gens: &[(String, C)]) -> Check {
    let mut w = None;
    'outer: for (na, a) in gens {
        for (nb, b) in gens {
            let lhs = a.apply(k).prod(&b.apply(k));
            if lhs != a.prod(b).apply(k) {
                w = Some(format!("{}: {na}*{nb}", k.label()));
                break 'outer;
            }
        }
    }
    Check::from_witness(format!("homomorphism_{}", k.label()), w)
}

fn relations_report<C: Carrier>(rep: &mut Report, tag: Tag, n: usize, gens: &[(String, C)], depth: usize) {
    let elems = test_elements(gens, depth.max(1));
    let k = |i| SymmetryKind { tag, index: i };
    for i in 1..n {
        rep.push(homomorphism_check(k(i), gens));
    }
    let involutive = matches!(tag, Tag::S | Tag::SPrime);
    for i in 1..n {
        if involutive {
            rep.push(relation_check(format!("involution_{}", k(i).label()), &[k(i), k(i)], &[], &elems));
        }
        for j in i + 1..n {
            let (id, l, r) = if j == i + 1 {
                (format!("braid_{}_{}", i, j), vec![k(i), k(j), k(i)], vec![k(j), k(i), k(j)])
            } else {
                (format!("commute_{}_{}", i, j), vec![k(i), k(j)], vec![k(j), k(i)])
            };
            rep.push(relation_check(id, &l, &r, &elems));
        }
    }
}

/// Artin relations (s, s′), braid relations (q̌), and the homomorphism property, on all generators.
pub fn group_relations_check(ring: &Ring, tag: Tag, depth: usize) -> Result<Report, SymmetryError> {
    let n = ring.n;
    let mut rep = Report::new(format!("symmetry --n {n} --N {} --kind {} --depth {depth}", ring.copies, tag.name()));
    if n < 2 {
        return Err(SymmetryError::Index { index: 1, n });
    }
    match tag {
        Tag::QCheckWeyl => {
            relations_report(&mut rep, tag, n, &weyl_generators(n), depth);
            let mut w = None;
            for i in 1..n {
                for j in 1..=n {
                    let k = SymmetryKind { tag, index: i };
                    if apply_weyl(k, &WeylElement::gen(n, WeylGen::D(j)))? != weyl_d_formula(n, i, j) {
                        w.get_or_insert(format!("qcheck_weyl_{i}(D{j})"));
                    }
                }
            }
            rep.push(Check::from_witness("weyl_d_images", w));
            return Ok(rep);
        }
        Tag::QCheck => check_admissible(ring)?,
        Tag::SPrime if ring.localized => return Err(SymmetryError::Carrier("s_prime (localized ring)")),
        _ => {}
    }
    let o = Order::DerFirst;
    let gens = ring_generators(ring, o);
    relations_report(&mut rep, tag, n, &gens, depth);
    if tag == Tag::SPrime {
        rep.push(s_prime_conjugation(ring));
    }
    if tag == Tag::QCheck && ring.copies == 1 && !ring.localized {
        rep.push(gamma_permutation(ring));
    }
    Ok(rep)
}

/// s′_i = ε s_i ε on generators.
pub fn s_prime_conjugation(ring: &Ring) -> Check {
    let o = Order::DerFirst;
    let mut w = None;
    for i in 1..ring.n {
        let (s, sp) = (SymmetryKind { tag: Tag::S, index: i }, SymmetryKind { tag: Tag::SPrime, index: i });
        for (name, g) in ring_generators(ring, o) {
            if apply_raw(s, &g.eps()).eps() != apply_raw(sp, &g) {
                w.get_or_insert(format!("eps*s_{i}*eps({name})"));
            }
        }
    }
    Check::from_witness("s_prime_is_eps_s_eps", w)
}

/// q̌_i(Γ_j) = Γ_{s_i(j)} with Γ_j = ∂̄_j x^j.
pub fn gamma_permutation(ring: &Ring) -> Check {
    let o = Order::DerFirst;
    let gamma = |j| Element::d(ring, o, j).mul(&Element::x(ring, o, j));
    let mut w = None;
    for i in 1..ring.n {
        for j in 1..=ring.n {
            let img = apply_raw(SymmetryKind { tag: Tag::QCheck, index: i }, &gamma(j));
            if img != gamma(swap_site(j, i)) {
                w.get_or_insert(format!("qcheck_{i}(Gamma_{j}) = {img}"));
            }
        }
    }
    Check::from_witness("qcheck_gamma", w)
}

#[cfg(test)]
mod tests;
