//! Sparse multivariate polynomials over Q, rational functions with a factored
//! denominator, and the finite-difference calculus on the Cartan variables.

mod family;
mod ratfunc;
mod roots;

pub use family::*;
pub use ratfunc::*;
pub use roots::{int_roots, int_roots_certified, rat_roots};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A variable of the registry. The numeric id fixes its place in the
/// monomial order: Cartan variables first, then t, λ, γ, a.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u16);

const T_ID: u16 = 1000;
const LAMBDA_BASE: u16 = 2000;
const GAMMA_BASE: u16 = 3000;
const A_BASE: u16 = 4000;
/// Scratch variable used internally by the factor search; never escapes.
pub(crate) const SCRATCH: Var = Var(60000);

impl Var {
    pub fn h(i: usize) -> Var {
        assert!(i >= 1 && i < T_ID as usize);
        Var(i as u16)
    }
    pub fn t() -> Var {
        Var(T_ID)
    }
    pub fn lambda(i: usize) -> Var {
        Var(LAMBDA_BASE + i as u16)
    }
    pub fn gamma(i: usize) -> Var {
        Var(GAMMA_BASE + i as u16)
    }
    pub fn a(k: usize) -> Var {
        Var(A_BASE + k as u16)
    }

    /// Site index if this is a Cartan variable h_i.
    pub fn site(self) -> Option<usize> {
        if self.0 >= 1 && self.0 < T_ID {
            Some(self.0 as usize)
        } else {
            None
        }
    }

    pub fn lambda_index(self) -> Option<usize> {
        (self.0 > LAMBDA_BASE && self.0 < GAMMA_BASE).then(|| (self.0 - LAMBDA_BASE) as usize)
    }

    pub fn gamma_index(self) -> Option<usize> {
        (self.0 > GAMMA_BASE && self.0 < A_BASE).then(|| (self.0 - GAMMA_BASE) as usize)
    }

    pub fn a_index(self) -> Option<usize> {
        (self.0 > A_BASE && self.0 < SCRATCH.0).then(|| (self.0 - A_BASE) as usize)
    }

    pub fn name(self) -> String {
        if let Some(i) = self.site() {
            format!("h{i}")
        } else if self.0 == T_ID {
            "t".into()
        } else if let Some(i) = self.lambda_index() {
            format!("lambda{i}")
        } else if let Some(i) = self.gamma_index() {
            format!("gamma{i}")
        } else if let Some(i) = self.a_index() {
            format!("a{i}")
        } else {
            format!("_s{}", self.0)
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        let num = |p: &str| -> Option<usize> {
            let rest = s.strip_prefix(p)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let v: usize = rest.parse().ok()?;
            (v >= 1 && v < 900).then_some(v)
        };
        if s == "t" {
            return Some(Var::t());
        }
        if let Some(i) = num("lambda") {
            return Some(Var::lambda(i));
        }
        if let Some(i) = num("gamma") {
            return Some(Var::gamma(i));
        }
        if let Some(i) = num("h") {
            return Some(Var::h(i));
        }
        if let Some(i) = num("a") {
            return Some(Var::a(i));
        }
        None
    }
}

/// Sparse monomial: (variable, exponent) pairs sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub SmallVec<[(Var, u32); 4]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Mono {
        let mut m = Mono::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// self / other if other divides self.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut f = 0;
            if j < other.0.len() {
                if other.0[j].0 < v {
                    return None;
                }
                if other.0[j].0 == v {
                    f = other.0[j].1;
                    j += 1;
                }
            }
            if f > e {
                return None;
            }
            if e > f {
                out.push((v, e - f));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Drop variable v, returning its exponent.
    pub fn without(&self, v: Var) -> (Mono, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|p| {
                if p.0 == v {
                    e = p.1;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Mono(rest), e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (x, y) in self.0.iter().zip(other.0.iter()) {
            if x.0 != y.0 {
                // the monomial carrying the earlier variable is larger
                return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
            }
            match x.1.cmp(&y.1) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms stored in strictly decreasing grlex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Mono, Rat)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn int(c: i64) -> MPoly {
        MPoly::constant(rat(c))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly { terms: vec![(Mono::var(v, 1), Rat::one())] }
    }

    pub fn h(i: usize) -> MPoly {
        MPoly::var(Var::h(i))
    }

    pub fn term(m: Mono, c: Rat) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(it: I) -> MPoly {
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        MPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rat {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rat::zero(),
        }
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        match self.terms.binary_search_by(|(k, _)| m.cmp(k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|t| t.0 .0.iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    fn merge(&self, other: &MPoly, sign: bool) -> MPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if sign { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly { terms: out }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        MPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient self / d, or None if d does not divide self.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(dm)?, c / dc));
            }
            return Some(MPoly { terms: out });
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        for v in d.vars() {
            if self.degree_in(v) < d.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = d.terms[0].clone();
        let mut r = self.clone();
        let mut q: Vec<(Mono, Rat)> = Vec::new();
        while let Some((rm, rc)) = r.terms.first().cloned() {
            let m = rm.div(&dm)?;
            let c = &rc / &dc;
            r = r.sub(&d.mul_term(&m, &c));
            q.push((m, c));
        }
        // quotient terms are produced in decreasing order
        Some(MPoly { terms: q })
    }

    /// Substitute variables; `f` returns the image of a variable or None to keep it.
    pub fn compose(&self, f: &dyn Fn(Var) -> Option<MPoly>) -> MPoly {
        let mut images: BTreeMap<Var, Option<Vec<MPoly>>> = BTreeMap::new();
        let mut acc = MPoly::zero();
        let mut pieces: Vec<MPoly> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut kept = Mono::one();
            let mut p = MPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                let slot = images.entry(v).or_insert_with(|| f(v).map(|img| vec![MPoly::one(), img]));
                match slot {
                    None => kept = kept.mul(&Mono::var(v, e)),
                    Some(pows) => {
                        while pows.len() <= e as usize {
                            let next = pows.last().unwrap().mul(&pows[1]);
                            pows.push(next);
                        }
                        p = p.mul(&pows[e as usize]);
                    }
                }
            }
            pieces.push(p.mul_term(&kept, &Rat::one()));
        }
        // balanced summation keeps merges short
        while pieces.len() > 1 {
            let mut next = Vec::with_capacity(pieces.len() / 2 + 1);
            let mut it = pieces.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            pieces = next;
        }
        if let Some(p) = pieces.pop() {
            acc = p;
        }
        acc
    }

    /// h_i -> h_i + v[i-1].
    pub fn shift(&self, v: &[i64]) -> MPoly {
        if v.iter().all(|&s| s == 0) || self.is_constant() {
            return self.clone();
        }
        self.compose(&|x: Var| {
            let i = x.site()?;
            let s = *v.get(i - 1)?;
            (s != 0).then(|| MPoly::var(x).add(&MPoly::int(s)))
        })
    }

    pub fn substitute(&self, v: Var, img: &MPoly) -> MPoly {
        self.compose(&|x| (x == v).then(|| img.clone()))
    }

    pub fn eval_partial(&self, vals: &BTreeMap<Var, Rat>) -> MPoly {
        self.compose(&|x| vals.get(&x).map(|c| MPoly::constant(c.clone())))
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (rest, e) = m.without(v);
            (e > 0).then(|| (rest.mul(&Mono::var(v, e - 1)), c * rat(e as i64)))
        }))
    }

    /// View as a univariate polynomial in v: coefficient list indexed by power.
    pub fn univariate(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Mono, Rat)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            parts[e as usize].push((rest, c.clone()));
        }
        parts.into_iter().map(MPoly::from_terms).collect()
    }

    /// Rational coefficients, if the polynomial only involves v.
    pub fn as_univariate_rat(&self, v: Var) -> Option<Vec<Rat>> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Rat::zero(); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            if !rest.is_one() {
                return None;
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(coeffs: &[Rat], v: Var) -> MPoly {
        MPoly::from_terms(coeffs.iter().enumerate().map(|(e, c)| (Mono::var(v, e as u32), c.clone())))
    }

    /// Returns (c, p) with self = c*p, p integral with coprime coefficients
    /// and positive leading coefficient.
    pub fn primitive(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), MPoly::zero());
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = Rat::new(g, l);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn eval(&self, vals: &dyn Fn(Var) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                t *= num_traits::pow(vals(v), e as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(Var) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            for (k, &(v, e)) in m.0.iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| v.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(i: usize) -> MPoly {
        MPoly::h(i)
    }

    #[test]
    fn grlex_order_prefers_degree_then_earlier_variable() {
        let a = Mono::var(Var::h(1), 1);
        let b = Mono::var(Var::h(2), 1);
        assert!(a > b);
        let c = Mono::var(Var::h(2), 2);
        assert!(c > a);
        let d = Mono::var(Var::h(1), 1).mul(&Mono::var(Var::h(2), 1));
        assert!(Mono::var(Var::h(1), 2) > d);
        assert!(d > c);
    }

    #[test]
    fn exact_division_roundtrip() {
        let p = h(1).sub(&h(2)).add(&MPoly::int(3));
        let q = h(1).mul(&h(1)).add(&h(2)).sub(&MPoly::int(7));
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert_eq!(prod.div_exact(&q), Some(p));
        assert_eq!(q.div_exact(&h(1)), None);
    }

    #[test]
    fn display_is_sorted() {
        let p = h(2).add(&h(1).mul(&h(1)).scale(&ratio(3, 2))).sub(&MPoly::int(1));
        assert_eq!(p.to_string(), "3/2*h1^2 + h2 - 1");
    }

    #[test]
    fn shift_substitutes_cartan_only() {
        let p = h(1).mul(&h(2)).add(&MPoly::var(Var::t()));
        let s = p.shift(&[1, 0]);
        assert_eq!(s, h(1).add(&MPoly::int(1)).mul(&h(2)).add(&MPoly::var(Var::t())));
    }

    #[test]
    fn primitive_part_has_positive_leading_coefficient() {
        let p = h(1).scale(&ratio(-2, 3)).add(&MPoly::constant(ratio(4, 9)));
        let (c, q) = p.primitive();
        assert_eq!(q.to_string(), "3*h1 - 2");
        assert_eq!(q.scale(&c), p);
    }
}
