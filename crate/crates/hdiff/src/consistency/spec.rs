//! Potentials presented as Σ π_k(h_k)/χ_k + Σ c_j H_j.

use crate::expr::{self, ParseError};
use crate::poly::{chi, complete, rat, MPoly, Rat, RatFunc, Var};
use num_traits::{One, Zero};
use rand::Rng;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug)]
pub struct SigmaSpec {
    pub n: usize,
    /// Site parts, rational functions of t only.
    pub pi: Vec<RatFunc>,
    /// Coefficient of H_j at index j.
    pub h: Vec<Rat>,
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Quotient and remainder of univariate polynomials over Q (coefficient vectors, low first).
pub(crate) fn divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let den = trim(den.to_vec());
    let mut r = trim(num.to_vec());
    let dl = den.len();
    assert!(dl > 0, "division by zero polynomial");
    if r.len() < dl {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - dl + 1];
    let lead = den[dl - 1].clone();
    while r.len() >= dl {
        let shift = r.len() - dl;
        let c = &r[r.len() - 1] / &lead;
        for (k, d) in den.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &c * d;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (q, r)
}

/// Split a rational function of t into polynomial and proper parts.
pub(crate) fn poly_part(f: &RatFunc) -> Option<(Vec<Rat>, RatFunc)> {
    let t = Var::t();
    let num = f.num().as_univariate_rat(t)?;
    let den = f.den().as_univariate_rat(t)?;
    let (q, r) = divmod(&num, &den);
    let proper = RatFunc::frac(MPoly::from_univariate(&r, t), f.den());
    Some((q, proper))
}

fn at_site(f: &RatFunc, k: usize) -> RatFunc {
    f.subst(&|v| (v == Var::t()).then(|| RatFunc::h(k))).expect("substituting a variable cannot fail")
}

/// Coefficients c_j with p = Σ c_j H_j, if p lies in that span.
pub fn h_coordinates(p: &RatFunc, n: usize) -> Option<Vec<Rat>> {
    let mut rest = p.as_poly()?.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let d = rest.total_degree();
        let mono = crate::poly::Mono::var(Var::h(1), d);
        let c = rest.coeff(&if d == 0 { crate::poly::Mono::one() } else { mono });
        if c.is_zero() {
            return None;
        }
        if out.len() <= d as usize {
            out.resize(d as usize + 1, Rat::zero());
        }
        out[d as usize] = c.clone();
        rest = rest.sub(&complete(d as usize, n).scale(&c));
    }
    Some(out)
}

impl SigmaSpec {
    pub fn zero(n: usize) -> SigmaSpec {
        SigmaSpec { n, pi: vec![RatFunc::zero(); n], h: vec![] }
    }

    /// σ = c·H_j.
    pub fn complete(n: usize, j: usize, c: Rat) -> SigmaSpec {
        let mut h = vec![Rat::zero(); j + 1];
        h[j] = c;
        SigmaSpec { n, pi: vec![RatFunc::zero(); n], h }
    }

    pub fn realize(&self) -> RatFunc {
        let mut out = RatFunc::zero();
        for (k, p) in self.pi.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let c = RatFunc::from_poly(chi(k + 1, self.n));
            out = out.add(&at_site(p, k + 1).div(&c));
        }
        for (j, c) in self.h.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&RatFunc::from_poly(complete(j, self.n).scale(c)));
            }
        }
        out
    }

    /// Move the mean polynomial part of the π_k into H (terms of degree ≤ n−2 vanish).
    pub fn canonical(&self) -> SigmaSpec {
        let n = self.n;
        let parts: Vec<(Vec<Rat>, RatFunc)> =
            self.pi.iter().map(|p| poly_part(p).expect("site parts are functions of t")).collect();
        let len = parts.iter().map(|p| p.0.len()).max().unwrap_or(0);
        let mut mean = vec![Rat::zero(); len];
        for (q, _) in &parts {
            for (d, c) in q.iter().enumerate() {
                mean[d] = &mean[d] + c;
            }
        }
        let nn = rat(n as i64);
        for c in mean.iter_mut() {
            *c = &*c / &nn;
        }
        let t = Var::t();
        let pi = parts
            .iter()
            .map(|(q, proper)| {
                let mut d: Vec<Rat> = (0..len).map(|i| q.get(i).cloned().unwrap_or_default() - &mean[i]).collect();
                d = trim(d);
                proper.add(&RatFunc::from_poly(MPoly::from_univariate(&d, t)))
            })
            .collect();
        let mut h = self.h.clone();
        for (d, c) in mean.iter().enumerate() {
            if d + 1 >= n && !c.is_zero() {
                let j = d + 1 - n;
                if h.len() <= j {
                    h.resize(j + 1, Rat::zero());
                }
                h[j] = &h[j] + c;
            }
        }
        SigmaSpec { n, pi, h: trim(h) }
    }

    /// All site parts vanish after canonicalization: σ ∈ H.
    pub fn is_symmetric_polynomial(&self) -> bool {
        self.canonical().pi.iter().all(|p| p.is_zero())
    }

    /// Every site part is a polynomial: σ ∈ W rather than W̄.
    pub fn in_w(&self) -> bool {
        self.pi.iter().all(|p| p.is_polynomial())
    }

    /// Same canonical data.
    pub fn equivalent(&self, other: &SigmaSpec) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.n == b.n && a.h == b.h && a.pi.iter().zip(&b.pi).all(|(x, y)| x == y)
    }

    /// Small random integer site parts, occasionally with a simple pole.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> SigmaSpec {
        let t = RatFunc::var(Var::t());
        let mut pi = Vec::new();
        for _ in 0..n {
            let deg = rng.gen_range(0..=3);
            let mut p = RatFunc::zero();
            for d in 0..=deg {
                let c = rng.gen_range(-3i64..=3);
                p = p.add(&t.pow(d).mul(&RatFunc::int(c)));
            }
            if rng.gen_bool(0.25) {
                let a = rng.gen_range(-4i64..=4);
                let c = rng.gen_range(1i64..=3);
                p = p.add(&RatFunc::int(c).div(&t.add(&RatFunc::int(a))));
            }
            pi.push(p);
        }
        let h = (0..rng.gen_range(0..=2)).map(|_| rat(rng.gen_range(-2i64..=2))).collect();
        SigmaSpec { n, pi, h: trim(h) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut pi = serde_json::Map::new();
        for (k, p) in self.pi.iter().enumerate() {
            if !p.is_zero() {
                pi.insert((k + 1).to_string(), serde_json::Value::String(p.to_string()));
            }
        }
        let hs: Vec<String> = self
            .h
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| if c.is_one() { format!("H({j})") } else { format!("({c})*H({j})") })
            .collect();
        let h = if hs.is_empty() { "0".to_string() } else { hs.join(" + ") };
        serde_json::json!({ "pi": pi, "H": h })
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[derive(Debug, Deserialize)]
struct SpecJson {
    pi: Option<BTreeMap<String, String>>,
    #[serde(rename = "H")]
    h: Option<String>,
    raw: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("bad sigma file: {0}")]
    Json(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("sigma file must contain exactly one of `raw` or `pi`/`H`")]
    Shape,
    #[error("site index {0} out of range")]
    Site(String),
    #[error("H part is not a combination of complete symmetric polynomials")]
    NotInH,
}

/// A σ given either structurally or as a raw expression.
#[derive(Clone, Debug)]
pub enum SigmaSource {
    Spec(SigmaSpec),
    Raw(RatFunc),
}

impl SigmaSource {
    pub fn realize(&self) -> RatFunc {
        match self {
            SigmaSource::Spec(s) => s.realize(),
            SigmaSource::Raw(f) => f.clone(),
        }
    }
}

pub fn parse_sigma_json(text: &str, n: usize) -> Result<SigmaSource, SpecError> {
    let j: SpecJson = serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))?;
    match (j.raw, j.pi.is_some() || j.h.is_some()) {
        (Some(raw), false) => Ok(SigmaSource::Raw(expr::parse_ratfunc(&raw, n)?)),
        (None, true) => {
            let mut pi = vec![RatFunc::zero(); n];
            for (k, v) in j.pi.unwrap_or_default() {
                let idx: usize = k.parse().map_err(|_| SpecError::Site(k.clone()))?;
                if idx == 0 || idx > n {
                    return Err(SpecError::Site(k));
                }
                pi[idx - 1] = expr::parse_poly_in_t(&v)?;
            }
            let h = match j.h {
                Some(s) => h_coordinates(&expr::parse_ratfunc(&s, n)?, n).ok_or(SpecError::NotInH)?,
                None => vec![],
            };
            Ok(SigmaSource::Spec(SigmaSpec { n, pi, h: trim(h) }))
        }
        _ => Err(SpecError::Shape),
    }
}
