//! Unreduced words in generators and scalars, reduced on demand.

use super::{Element, Gen, Order, Ring};
use crate::poly::RatFunc;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Letter {
    /// A generator power, exponent ±1 (−1 only in the localized ring).
    G(Gen, i32),
    S(RatFunc),
}

/// Σ coefficient · word, kept as written.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Formal {
    pub terms: Vec<(RatFunc, Vec<Letter>)>,
}

impl Formal {
    pub fn word(letters: Vec<Letter>) -> Formal {
        Formal { terms: vec![(RatFunc::one(), letters)] }
    }

    pub fn scalar(c: RatFunc) -> Formal {
        Formal { terms: vec![(c, vec![])] }
    }

    pub fn gen(g: Gen) -> Formal {
        Formal::word(vec![Letter::G(g, 1)])
    }

    pub fn add(&self, o: &Formal) -> Formal {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Formal { terms: t }
    }

    pub fn neg(&self) -> Formal {
        Formal { terms: self.terms.iter().map(|(c, w)| (c.neg(), w.clone())).collect() }
    }

    pub fn sub(&self, o: &Formal) -> Formal {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &RatFunc) -> Formal {
        Formal { terms: self.terms.iter().map(|(c, w)| (f.mul(c), w.clone())).collect() }
    }

    /// Concatenation of words.
    pub fn mul(&self, o: &Formal) -> Formal {
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &o.terms {
                let mut w = w1.clone();
                w.push(Letter::S(c2.clone()));
                w.extend(w2.iter().cloned());
                terms.push((c1.clone(), w));
            }
        }
        Formal { terms }
    }

    /// Reverse each word and map letters; used for anti-homomorphisms.
    pub fn reversed_map(&self, f: &dyn Fn(&Letter) -> Formal) -> Formal {
        let mut out = Formal::default();
        for (c, w) in &self.terms {
            let mut t = Formal::scalar(RatFunc::one());
            for l in w.iter().rev() {
                t = t.mul(&f(l));
            }
            out = out.add(&t.mul(&Formal::scalar(c.clone())));
        }
        out
    }

    pub fn map(&self, f: &dyn Fn(&Letter) -> Formal) -> Formal {
        let mut out = Formal::default();
        for (c, w) in &self.terms {
            let mut t = Formal::scalar(c.clone());
            for l in w {
                t = t.mul(&f(l));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, ring: &Ring, order: Order) -> Element {
        let mut out = Element::zero(ring, order);
        for (c, w) in &self.terms {
            out = out.add(&normal_form(ring, order, w).scale_left(c));
        }
        out
    }
}

/// Reduce a word of generators and scalars to the chosen PBW basis.
pub fn normal_form(ring: &Ring, order: Order, word: &[Letter]) -> Element {
    let mut out = Element::one(ring, order);
    for l in word {
        out = match l {
            Letter::G(g, e) => out.mul_gen(*g, *e),
            Letter::S(f) => out.scale_right(f),
        };
    }
    out
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::G(g, e) => write!(f, "{}", super::gen_name(*g, *e, 2)),
            Letter::S(c) => write!(f, "({c})"),
        }
    }
}
