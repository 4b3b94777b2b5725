//! Q and its quadratic extensions Q(ω), ω² = c1·ω + c0, in coordinates a + bω.

use crate::linalg;
use crate::poly::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub c1: Rat,
    pub c0: Rat,
    pub name: String,
}

fn is_square(q: &Rat) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(q.numer()) && sq(q.denom())
}

impl Quad {
    /// None when x² − c1·x − c0 splits over Q.
    pub fn new(c1: Rat, c0: Rat, name: &str) -> Option<Arc<Quad>> {
        let disc = &c1 * &c1 + Rat::from_integer(4.into()) * &c0;
        (!is_square(&disc)).then(|| Arc::new(Quad { c1, c0, name: name.to_string() }))
    }

    /// i with i² = −1.
    pub fn gaussian() -> Arc<Quad> {
        Quad::new(Rat::zero(), -Rat::one(), "i").unwrap()
    }

    /// ω = e^{iπ/3}, a root of ω² − ω + 1.
    pub fn sixth_root() -> Arc<Quad> {
        Quad::new(Rat::one(), -Rat::one(), "w").unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct Alg {
    pub a: Rat,
    pub b: Rat,
    pub ext: Option<Arc<Quad>>,
}

impl PartialEq for Alg {
    fn eq(&self, o: &Alg) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl Alg {
    pub fn rat(a: Rat) -> Alg {
        Alg { a, b: Rat::zero(), ext: None }
    }

    pub fn int(a: i64) -> Alg {
        Alg::rat(Rat::from_integer(a.into()))
    }

    pub fn new(a: Rat, b: Rat, ext: &Arc<Quad>) -> Alg {
        Alg { a, b, ext: Some(ext.clone()) }
    }

    /// The generator ω itself.
    pub fn gen(ext: &Arc<Quad>) -> Alg {
        Alg::new(Rat::zero(), Rat::one(), ext)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.b.is_zero().then_some(&self.a)
    }

    fn join(&self, o: &Alg) -> Option<Arc<Quad>> {
        match (&self.ext, &o.ext) {
            (Some(p), Some(q)) => {
                assert!(p == q || self.b.is_zero() || o.b.is_zero(), "mixing distinct quadratic extensions");
                Some(if self.b.is_zero() { q.clone() } else { p.clone() })
            }
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (None, None) => None,
        }
    }

    fn norm(&self) -> Rat {
        match &self.ext {
            None => self.a.clone(),
            Some(q) => &self.a * &self.a + &self.a * &self.b * &q.c1 - &self.b * &self.b * &q.c0,
        }
    }
}

impl linalg::Field for Alg {
    fn zero() -> Self {
        Alg::int(0)
    }
    fn one() -> Self {
        Alg::int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        Alg { a: &self.a + &o.a, b: &self.b + &o.b, ext: self.join(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        Alg { a: &self.a - &o.a, b: &self.b - &o.b, ext: self.join(o) }
    }
    fn mul(&self, o: &Self) -> Self {
        let ext = self.join(o);
        let bb = &self.b * &o.b;
        let (c1, c0) = match &ext {
            Some(q) => (q.c1.clone(), q.c0.clone()),
            None => (<Rat as Zero>::zero(), <Rat as Zero>::zero()),
        };
        Alg { a: &self.a * &o.a + &bb * &c0, b: &self.a * &o.b + &self.b * &o.a + &bb * &c1, ext }
    }
    fn inv(&self) -> Self {
        if Zero::is_zero(&self.b) {
            return Alg { a: self.a.recip(), b: <Rat as Zero>::zero(), ext: self.ext.clone() };
        }
        let q = self.ext.as_ref().expect("irrational element without extension");
        let n = self.norm();
        // conjugate of ω is c1 − ω
        Alg { a: (&self.a + &self.b * &q.c1) / &n, b: -&self.b / &n, ext: self.ext.clone() }
    }
    fn neg(&self) -> Self {
        Alg { a: -self.a.clone(), b: -self.b.clone(), ext: self.ext.clone() }
    }
}

impl fmt::Display for Alg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let name = self.ext.as_ref().map(|q| q.name.as_str()).unwrap_or("w");
        let b = if self.b.is_one() { String::new() } else { format!("{}*", self.b) };
        if self.a.is_zero() {
            write!(f, "{b}{name}")
        } else {
            write!(f, "{} + {b}{name}", self.a)
        }
    }
}
