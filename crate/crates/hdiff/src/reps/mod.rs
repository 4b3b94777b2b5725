//! Induced modules, the Laurent family and finite-dimensional quotients.

mod field;
mod finite;
mod fixtures;
mod matrix;
pub use field::*;
pub use finite::*;
pub use fixtures::*;
pub use matrix::*;

use crate::center::{central_elements, CentralPoly};
use crate::poly::{Rat, RatFunc, Var};
use crate::ring::{Element, Gen, Kind, Order, RMono, Ring, SigmaInput};
use crate::weyliso::WeylIso;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("weight condition violated: {0}")]
    Weight(String),
    #[error("generator {0} does not act in this mode")]
    Mode(String),
    #[error("coefficient undefined on {0}")]
    Undefined(String),
    #[error("modules are implemented for N = 1")]
    Copies,
    #[error("truncation inconsistent: {0}")]
    Truncation(String),
    #[error("cannot evaluate sigma of matrices: {0}")]
    MatrixEval(String),
    #[error("{0}")]
    Ring(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// ∂̄ kills v, x-monomials span.
    Lowest,
    /// x kills v, ∂̄-monomials span.
    Highest,
    /// v_j = X^{j+γ}, acted on through μ^{-1}.
    Laurent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RepGen {
    X(usize),
    D(usize),
    H(usize),
    A(usize),
}

impl RepGen {
    pub fn parse(s: &str) -> Option<RepGen> {
        let (head, idx) = s.split_at(1);
        let i: usize = idx.parse().ok().filter(|&i| i > 0)?;
        Some(match head {
            "x" => RepGen::X(i),
            "d" => RepGen::D(i),
            "h" => RepGen::H(i),
            "a" => RepGen::A(i),
            _ => return None,
        })
    }
}

/// Finitely supported exponent vector -> coefficient.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ModuleVec(pub BTreeMap<Vec<i64>, RatFunc>);

impl ModuleVec {
    pub fn basis(k: Vec<i64>) -> ModuleVec {
        ModuleVec([(k, RatFunc::one())].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, k: Vec<i64>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k.clone()).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, o: &ModuleVec) -> ModuleVec {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ModuleVec) -> ModuleVec {
        self.add(&o.scale(&RatFunc::int(-1)))
    }

    pub fn scale(&self, f: &RatFunc) -> ModuleVec {
        let mut out = ModuleVec::default();
        for (k, c) in &self.0 {
            out.add_term(k.clone(), c.mul(f));
        }
        out
    }

    /// Some(c) when the vector is c times the basis vector k.
    pub fn multiple_of(&self, k: &[i64]) -> Option<RatFunc> {
        match self.0.len() {
            0 => Some(RatFunc::zero()),
            1 => self.0.get(k).cloned(),
            _ => None,
        }
    }
}

/// Symbolic weight λ_i (or γ_i, A_k) as a rational function in the parameter variables.
pub fn symbolic(n: usize, var: fn(usize) -> Var) -> Vec<RatFunc> {
    (1..=n).map(|i| RatFunc::var(var(i))).collect()
}

pub fn numeric(vals: &[Rat]) -> Vec<RatFunc> {
    vals.iter().map(|v| RatFunc::constant(v.clone())).collect()
}

fn check_generic(w: &[RatFunc], what: &str) -> Result<(), RepError> {
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if let Some(c) = w[i].sub(&w[j]).constant_value() {
                if c.is_integer() {
                    return Err(RepError::Weight(format!("{what}_{} - {what}_{} = {c} is an integer", i + 1, j + 1)));
                }
            }
        }
    }
    Ok(())
}

pub struct Module {
    pub mode: Mode,
    pub ring: Ring,
    /// λ for the induced modes, γ for the Laurent mode.
    pub weight: Vec<RatFunc>,
    /// A_k, Laurent mode only.
    pub amp: Vec<RatFunc>,
    pub iso: Option<WeylIso>,
}

impl Module {
    fn induced(ring: &Ring, mode: Mode, lambda: Vec<RatFunc>) -> Result<Module, RepError> {
        if ring.copies != 1 {
            return Err(RepError::Copies);
        }
        if lambda.len() != ring.n {
            return Err(RepError::Weight(format!("expected {} weights, got {}", ring.n, lambda.len())));
        }
        check_generic(&lambda, "lambda")?;
        Ok(Module { mode, ring: ring.clone(), weight: lambda, amp: vec![], iso: None })
    }

    pub fn lowest(ring: &Ring, lambda: Vec<RatFunc>) -> Result<Module, RepError> {
        Module::induced(ring, Mode::Lowest, lambda)
    }

    pub fn highest(ring: &Ring, lambda: Vec<RatFunc>) -> Result<Module, RepError> {
        Module::induced(ring, Mode::Highest, lambda)
    }

    pub fn laurent(n: usize, sigma: SigmaInput, gamma: Vec<RatFunc>, amp: Vec<RatFunc>) -> Result<Module, RepError> {
        if gamma.len() != n || amp.len() != n {
            return Err(RepError::Weight(format!("expected {n} values of gamma and A")));
        }
        check_generic(&gamma, "gamma")?;
        let iso = WeylIso::new(n, sigma).map_err(|e| RepError::Ring(e.to_string()))?;
        Ok(Module { mode: Mode::Laurent, ring: iso.ring.clone(), weight: gamma, amp, iso: Some(iso) })
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    /// The generating vector v (or v_0).
    pub fn vacuum(&self) -> ModuleVec {
        ModuleVec::basis(vec![0; self.n()])
    }

    fn order(&self) -> Order {
        match self.mode {
            Mode::Lowest => Order::XFirst,
            _ => Order::DerFirst,
        }
    }

    fn spanning_kind(&self) -> Kind {
        match self.mode {
            Mode::Lowest => Kind::X,
            _ => Kind::D,
        }
    }

    pub fn gen_element(&self, g: RepGen) -> Result<Element, RepError> {
        let r = &self.ring;
        let o = self.order();
        let n = r.n;
        let site = |i: usize| if (1..=n).contains(&i) { Ok(i) } else { Err(RepError::Mode(format!("{g:?}"))) };
        Ok(match g {
            RepGen::X(i) => Element::x(r, o, site(i)?),
            RepGen::D(i) => Element::d(r, o, site(i)?),
            RepGen::H(i) => Element::h(r, o, site(i)?),
            RepGen::A(k) => {
                site(k)?;
                match &self.iso {
                    Some(iso) => iso.center.c[k - 1].clone(),
                    None => return Err(RepError::Mode(format!("a{k}"))),
                }
            }
        })
    }

    pub fn act_gen(&self, g: RepGen, v: &ModuleVec) -> Result<ModuleVec, RepError> {
        if let (RepGen::A(k), Mode::Laurent) = (g, self.mode) {
            if !(1..=self.n()).contains(&k) {
                return Err(RepError::Mode(format!("a{k}")));
            }
            return Ok(v.scale(&self.amp[k - 1]));
        }
        self.act(&self.gen_element(g)?, v)
    }

    fn basis_element(&self, k: &[i64]) -> Element {
        let kind = self.spanning_kind();
        let mut sites: Vec<usize> = (1..=self.n()).filter(|&i| k[i - 1] != 0).collect();
        if kind == Kind::D {
            sites.reverse();
        }
        let letters = sites
            .into_iter()
            .map(|i| (Gen { kind, site: i as u8, copy: 1 }, k[i - 1] as i32))
            .collect();
        Element { ring: self.ring.clone(), order: self.order(), terms: [(RMono(letters), RatFunc::one())].into_iter().collect() }
    }

    /// Coefficient f(h) evaluated on a vector of weight λ + w.
    fn eval_at(&self, f: &RatFunc, w: &[i64], what: &RMono) -> Result<RatFunc, RepError> {
        let pt: Vec<RatFunc> = self.weight.iter().zip(w).map(|(l, s)| l.add(&RatFunc::int(*s))).collect();
        f.subst(&|v| v.site().map(|i| pt[i - 1].clone())).ok_or_else(|| RepError::Undefined(format!("{what:?}")))
    }

    pub fn act(&self, e: &Element, v: &ModuleVec) -> Result<ModuleVec, RepError> {
        if !std::sync::Arc::ptr_eq(&e.ring, &self.ring) {
            return Err(RepError::Ring("element from another ring".into()));
        }
        if self.mode == Mode::Laurent {
            return self.act_laurent(e, v);
        }
        let n = self.n();
        let e = e.to_order(self.order());
        let kind = self.spanning_kind();
        let mut out = ModuleVec::default();
        for (k, c) in &v.0 {
            let p = e.mul(&self.basis_element(k));
            'terms: for (m, f) in &p.terms {
                let mut exps = vec![0i64; n];
                for &(g, p) in &m.0 {
                    if g.kind != kind {
                        continue 'terms;
                    }
                    exps[g.site() - 1] = p as i64;
                }
                let val = self.eval_at(f, &m.weight(n), m)?;
                out.add_term(exps, val.mul(c));
            }
        }
        Ok(out)
    }

    /// Σ X^b f_b(H, a) v_j = Σ f_b(j + γ + 1, A) v_{j+b}.
    fn act_laurent(&self, e: &Element, v: &ModuleVec) -> Result<ModuleVec, RepError> {
        let iso = self.iso.as_ref().expect("Laurent mode carries the isomorphism");
        let w = iso.mu_inv(e);
        let mut out = ModuleVec::default();
        for (j, c) in &v.0 {
            let hval: Vec<RatFunc> =
                self.weight.iter().zip(j).map(|(g, ji)| g.add(&RatFunc::int(ji + 1))).collect();
            for (b, f) in &w.terms {
                let val = f
                    .subst(&|var| match (var.site(), var.a_index()) {
                        (Some(i), _) => Some(hval[i - 1].clone()),
                        (_, Some(k)) => Some(self.amp[k - 1].clone()),
                        _ => None,
                    })
                    .ok_or_else(|| RepError::Undefined(format!("v_{j:?}")))?;
                let jb: Vec<i64> = j.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(jb, val.mul(c));
            }
        }
        Ok(out)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SignMatch {
    Plus,
    Minus,
    Both,
    Neither,
}

#[derive(Clone, Debug)]
pub struct CentralCharacter {
    /// Scalar by which c_k acts on v, computed from the action.
    pub computed: Vec<RatFunc>,
    /// ρ_k evaluated at λ − (1, …, 1).
    pub rho_shifted: Vec<RatFunc>,
    pub sign: SignMatch,
}

/// c_k·v on the lowest weight module, compared against ±ρ_k(λ − 1).
pub fn central_character_lowest(ring: &Ring, lambda: Vec<RatFunc>) -> Result<CentralCharacter, RepError> {
    let m = Module::lowest(ring, lambda)?;
    let cp: CentralPoly = central_elements(ring).map_err(|e| RepError::Ring(e.to_string()))?;
    let v = m.vacuum();
    let zero = vec![0; ring.n];
    let mut computed = Vec::new();
    for c in &cp.c {
        let w = m.act(c, &v)?;
        let s = w.multiple_of(&zero).ok_or_else(|| RepError::Ring("c_k v is not a multiple of v".into()))?;
        computed.push(s);
    }
    let shifted: Vec<RatFunc> = m.weight.iter().map(|l| l.sub(&RatFunc::one())).collect();
    let rho_shifted = (0..ring.n)
        .map(|k| {
            cp.rho
                .coeff(k)
                .subst(&|v| v.site().map(|i| shifted[i - 1].clone()))
                .ok_or_else(|| RepError::Undefined("rho at lambda - 1".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let plus = computed.iter().zip(&rho_shifted).all(|(c, r)| c == r);
    let minus = computed.iter().zip(&rho_shifted).all(|(c, r)| *c == r.neg());
    let sign = match (plus, minus) {
        (true, true) => SignMatch::Both,
        (true, false) => SignMatch::Plus,
        (false, true) => SignMatch::Minus,
        _ => SignMatch::Neither,
    };
    Ok(CentralCharacter { computed, rho_shifted, sign })
}

#[cfg(test)]
mod tests;
