//! Normal-form engine for Diff_{h,σ}(n, N) and its localization at the x^i (N = 1).

mod formal;
mod rules;
mod selftest;
mod text;

pub use formal::{normal_form, Formal, Letter};
pub use selftest::self_test_relations;
pub use text::{parse_element, ElementParseError};

use crate::linalg;
use crate::poly::{phi, RatFunc};
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    D,
    X,
}

/// ∂̄_{site,copy} or x^{site,copy}; inverse powers of x live in negative exponents.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub kind: Kind,
    pub site: u8,
    pub copy: u8,
}

impl Gen {
    pub fn x(i: usize, a: usize) -> Gen {
        Gen { kind: Kind::X, site: i as u8, copy: a as u8 }
    }
    pub fn d(i: usize, a: usize) -> Gen {
        Gen { kind: Kind::D, site: i as u8, copy: a as u8 }
    }
    pub fn site(self) -> usize {
        self.site as usize
    }
    pub fn copy(self) -> usize {
        self.copy as usize
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    /// ∂̄ block (site descending) then x block (site ascending).
    DerFirst,
    /// x block (site ascending) then ∂̄ block (site descending).
    XFirst,
}

impl Order {
    pub fn other(self) -> Order {
        match self {
            Order::DerFirst => Order::XFirst,
            Order::XFirst => Order::DerFirst,
        }
    }
}

/// Position of a generator in the chosen PBW order.
pub fn key(order: Order, g: Gen) -> (u8, i16, u8) {
    let block = match (order, g.kind) {
        (Order::DerFirst, Kind::D) | (Order::XFirst, Kind::X) => 0,
        _ => 1,
    };
    let s = match g.kind {
        Kind::D => -(g.site as i16),
        Kind::X => g.site as i16,
    };
    (block, s, g.copy)
}

/// Ordered product of generator powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RMono(pub SmallVec<[(Gen, i32); 4]>);

impl RMono {
    pub fn one() -> RMono {
        RMono(SmallVec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        for &(g, e) in &self.0 {
            let s = g.site() - 1;
            match g.kind {
                Kind::X => w[s] += e as i64,
                Kind::D => w[s] -= e as i64,
            }
        }
        w
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1.unsigned_abs() as i64).sum()
    }

    /// Flattened generator sequence with exponents ±1.
    pub fn letters(&self) -> Vec<(Gen, i32)> {
        let mut v = Vec::new();
        for &(g, e) in &self.0 {
            for _ in 0..e.unsigned_abs() {
                v.push((g, e.signum()));
            }
        }
        v
    }
}

/// Zero-order data of the oscillator relations, σ_{iαβ}.
#[derive(Clone, Debug)]
pub enum SigmaInput {
    /// A potential σ with σ_i = Δ_i σ; copies get δ_{αβ} σ_i.
    Potential(RatFunc),
    /// σ_i given directly; copies get δ_{αβ} σ_i.
    Sites(Vec<RatFunc>),
    /// Full matrix, keyed by (i, α, β); missing entries are zero.
    Matrix(BTreeMap<(usize, usize, usize), RatFunc>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid ring parameters: {0}")]
    Params(String),
    #[error("elements belong to different rings or orders")]
    Mismatch,
}

/// Immutable ring description plus a lock-protected product memo.
pub struct RingCtx {
    pub n: usize,
    pub copies: usize,
    pub localized: bool,
    pub potential: Option<RatFunc>,
    sigma: BTreeMap<(usize, usize, usize), RatFunc>,
    /// A_ik = 1/(1 - h_ik), A_ii = 1.
    a: Vec<Vec<RatFunc>>,
    ainv: Vec<Vec<RatFunc>>,
    memo: Mutex<HashMap<(RMono, Gen, i32, Order), Arc<Vec<(RMono, RatFunc)>>>>,
    pub warnings: Vec<String>,
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingCtx(n={}, N={}, localized={})", self.n, self.copies, self.localized)
    }
}

pub type Ring = Arc<RingCtx>;

impl RingCtx {
    pub fn new(n: usize, copies: usize, sigma: SigmaInput) -> Result<Ring, RingError> {
        RingCtx::build(n, copies, sigma, false)
    }

    /// Ring with the x^i inverted (N = 1 only).
    pub fn localized(n: usize, sigma: SigmaInput) -> Result<Ring, RingError> {
        RingCtx::build(n, 1, sigma, true)
    }

    fn build(n: usize, copies: usize, sigma: SigmaInput, localized: bool) -> Result<Ring, RingError> {
        if n == 0 || copies == 0 || n > 60 || copies > 60 {
            return Err(RingError::Params(format!("n = {n}, N = {copies}")));
        }
        if localized && copies != 1 {
            return Err(RingError::Params("localization is implemented for N = 1".into()));
        }
        let mut potential = None;
        let mut table = BTreeMap::new();
        let diag = |table: &mut BTreeMap<_, _>, s: &[RatFunc]| {
            for i in 1..=n {
                for a in 1..=copies {
                    if !s[i - 1].is_zero() {
                        table.insert((i, a, a), s[i - 1].clone());
                    }
                }
            }
        };
        match sigma {
            SigmaInput::Potential(p) => {
                let s: Vec<RatFunc> = (1..=n).map(|i| p.delta(i)).collect();
                diag(&mut table, &s);
                potential = Some(p);
            }
            SigmaInput::Sites(s) => {
                if s.len() != n {
                    return Err(RingError::Params(format!("expected {n} site values, got {}", s.len())));
                }
                diag(&mut table, &s);
            }
            SigmaInput::Matrix(m) => {
                for ((i, a, b), v) in m {
                    if i == 0 || i > n || a == 0 || a > copies || b == 0 || b > copies {
                        return Err(RingError::Params(format!("σ index ({i},{a},{b}) out of range")));
                    }
                    if !v.is_zero() {
                        table.insert((i, a, b), v);
                    }
                }
            }
        }
        let mut warnings = Vec::new();
        for ((i, a, b), v) in &table {
            if v.ubar_membership().inside() != Some(true) && !v.is_polynomial() {
                warnings.push(format!("sigma_({i},{a},{b}) = {v} is not certified in the localized Cartan ring"));
            }
        }
        let a: Vec<Vec<RatFunc>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|k| if i == k { RatFunc::one() } else { RatFunc::one().sub(&RatFunc::hd(i, k)).inv() })
                    .collect()
            })
            .collect();
        let ainv = linalg::inverse(&a).ok_or_else(|| RingError::Params("singular A matrix".into()))?;
        Ok(Arc::new(RingCtx {
            n,
            copies,
            localized,
            potential,
            sigma: table,
            a,
            ainv,
            memo: Mutex::new(HashMap::new()),
            warnings,
        }))
    }

    pub fn sigma(&self, i: usize, a: usize, b: usize) -> RatFunc {
        self.sigma.get(&(i, a, b)).cloned().unwrap_or_default()
    }

    /// σ_i for the first copy.
    pub fn sigma_site(&self, i: usize) -> RatFunc {
        self.sigma(i, 1, 1)
    }

    pub fn sigma_table(&self) -> &BTreeMap<(usize, usize, usize), RatFunc> {
        &self.sigma
    }

    pub fn a_entry(&self, i: usize, k: usize) -> &RatFunc {
        &self.a[i - 1][k - 1]
    }

    pub fn ainv_entry(&self, i: usize, k: usize) -> &RatFunc {
        &self.ainv[i - 1][k - 1]
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    fn unit(n: usize, j: usize, s: i64) -> Vec<i64> {
        let mut v = vec![0; n];
        v[j - 1] = s;
        v
    }

    /// Product of a normal monomial by one generator power (±1), as normal-form terms.
    fn mono_gen(&self, m: &RMono, g: Gen, e: i32, order: Order) -> Arc<Vec<(RMono, RatFunc)>> {
        let memo_key = (m.clone(), g, e, order);
        if let Some(v) = self.memo.lock().unwrap().get(&memo_key) {
            return v.clone();
        }
        let out = Arc::new(self.mono_gen_uncached(m, g, e, order));
        self.memo.lock().unwrap().insert(memo_key, out.clone());
        out
    }

    fn mono_gen_uncached(&self, m: &RMono, g: Gen, e: i32, order: Order) -> Vec<(RMono, RatFunc)> {
        let Some(&(last, le)) = m.0.last() else {
            return vec![(RMono([(g, e)].into_iter().collect()), RatFunc::one())];
        };
        let kl = key(order, last);
        let kg = key(order, g);
        if kl == kg {
            let mut out = m.clone();
            let ne = le + e;
            if ne == 0 {
                out.0.pop();
            } else {
                out.0.last_mut().unwrap().1 = ne;
            }
            return vec![(out, RatFunc::one())];
        }
        if kl < kg {
            let mut out = m.clone();
            out.0.push((g, e));
            return vec![(out, RatFunc::one())];
        }
        // split off one factor of the last generator and reorder the pair
        let s = le.signum();
        let mut prefix = m.clone();
        if le == s {
            prefix.0.pop();
        } else {
            prefix.0.last_mut().unwrap().1 = le - s;
        }
        let w = prefix.weight(self.n);
        let neg_w: Vec<i64> = w.iter().map(|x| -x).collect();
        let mut acc: BTreeMap<RMono, RatFunc> = BTreeMap::new();
        for (coef, word) in self.pair_rule(order, last, s, g, e) {
            let c = coef.shift(&neg_w);
            let mut terms: Vec<(RMono, RatFunc)> = vec![(prefix.clone(), c)];
            for &(wg, we) in &word {
                let mut next: BTreeMap<RMono, RatFunc> = BTreeMap::new();
                for (tm, tc) in &terms {
                    for (rm, rc) in self.mono_gen(tm, wg, we, order).iter() {
                        let v = tc.mul(rc);
                        add_into(&mut next, rm.clone(), v);
                    }
                }
                terms = next.into_iter().collect();
            }
            for (tm, tc) in terms {
                add_into(&mut acc, tm, tc);
            }
        }
        acc.into_iter().collect()
    }
}

fn add_into(map: &mut BTreeMap<RMono, RatFunc>, m: RMono, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// Element of the ring: left coefficients on normal monomials.
#[derive(Clone)]
pub struct Element {
    pub ring: Ring,
    pub order: Order,
    pub terms: BTreeMap<RMono, RatFunc>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Zero,
    Of(Vec<i64>),
    Mixed,
}

impl Element {
    pub fn zero(ring: &Ring, order: Order) -> Element {
        Element { ring: ring.clone(), order, terms: BTreeMap::new() }
    }

    pub fn scalar(ring: &Ring, order: Order, c: RatFunc) -> Element {
        let mut e = Element::zero(ring, order);
        add_into(&mut e.terms, RMono::one(), c);
        e
    }

    pub fn one(ring: &Ring, order: Order) -> Element {
        Element::scalar(ring, order, RatFunc::one())
    }

    pub fn gen(ring: &Ring, order: Order, g: Gen) -> Element {
        Element::gen_pow(ring, order, g, 1)
    }

    pub fn gen_pow(ring: &Ring, order: Order, g: Gen, e: i32) -> Element {
        let mut out = Element::one(ring, order);
        for _ in 0..e.unsigned_abs() {
            out = out.mul_gen(g, e.signum());
        }
        out
    }

    pub fn x(ring: &Ring, order: Order, i: usize) -> Element {
        Element::gen(ring, order, Gen::x(i, 1))
    }

    pub fn d(ring: &Ring, order: Order, i: usize) -> Element {
        Element::gen(ring, order, Gen::d(i, 1))
    }

    /// (x^i)^{-1} in the localized ring.
    pub fn y(ring: &Ring, order: Order, i: usize) -> Element {
        assert!(ring.localized, "inverse generators need a localized ring");
        Element::gen_pow(ring, order, Gen::x(i, 1), -1)
    }

    pub fn h(ring: &Ring, order: Order, i: usize) -> Element {
        Element::scalar(ring, order, RatFunc::h(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same(&self, o: &Element) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) && self.order == o.order
    }

    fn check(&self, o: &Element) {
        assert!(self.same(o), "{}", RingError::Mismatch);
    }

    pub fn add(&self, o: &Element) -> Element {
        self.check(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    /// f · self.
    pub fn scale_left(&self, f: &RatFunc) -> Element {
        let mut out = Element::zero(&self.ring, self.order);
        for (m, c) in &self.terms {
            add_into(&mut out.terms, m.clone(), f.mul(c));
        }
        out
    }

    /// self · f.
    pub fn scale_right(&self, f: &RatFunc) -> Element {
        let mut out = Element::zero(&self.ring, self.order);
        for (m, c) in &self.terms {
            let w: Vec<i64> = m.weight(self.ring.n).iter().map(|x| -x).collect();
            add_into(&mut out.terms, m.clone(), c.mul(&f.shift(&w)));
        }
        out
    }

    pub fn mul_gen(&self, g: Gen, e: i32) -> Element {
        let mut out = Element::zero(&self.ring, self.order);
        for (m, c) in &self.terms {
            for (rm, rc) in self.ring.mono_gen(m, g, e, self.order).iter() {
                add_into(&mut out.terms, rm.clone(), c.mul(rc));
            }
        }
        out
    }

    pub fn mul(&self, o: &Element) -> Element {
        self.check(o);
        let mut out = Element::zero(&self.ring, self.order);
        for (ma, ca) in &self.terms {
            let w: Vec<i64> = ma.weight(self.ring.n).iter().map(|x| -x).collect();
            for (mb, cb) in &o.terms {
                let coef = ca.mul(&cb.shift(&w));
                let mut partial: Vec<(RMono, RatFunc)> = vec![(ma.clone(), coef)];
                for (g, e) in mb.letters() {
                    let mut next: BTreeMap<RMono, RatFunc> = BTreeMap::new();
                    for (tm, tc) in &partial {
                        for (rm, rc) in self.ring.mono_gen(tm, g, e, self.order).iter() {
                            add_into(&mut next, rm.clone(), tc.mul(rc));
                        }
                    }
                    partial = next.into_iter().collect();
                }
                for (tm, tc) in partial {
                    add_into(&mut out.terms, tm, tc);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one(&self.ring, self.order);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// self·o − o·self.
    pub fn commutator(&self, o: &Element) -> Element {
        self.mul(o).sub(&o.mul(self))
    }

    /// Re-expand in the other PBW basis.
    pub fn to_order(&self, order: Order) -> Element {
        if order == self.order {
            return self.clone();
        }
        let mut out = Element::zero(&self.ring, order);
        for (m, c) in &self.terms {
            let mut t = Element::scalar(&self.ring, order, c.clone());
            for (g, e) in m.letters() {
                t = t.mul_gen(g, e);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn weight(&self) -> Weight {
        let mut w: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let mw = m.weight(self.ring.n);
            match &w {
                None => w = Some(mw),
                Some(v) if *v != mw => return Weight::Mixed,
                _ => {}
            }
        }
        match w {
            None => Weight::Zero,
            Some(v) => Weight::Of(v),
        }
    }

    /// Filtration degree (x, ∂̄ and x^{-1} all count 1).
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(-1)
    }

    pub fn coeff(&self, m: &RMono) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms of exactly the given filtration degree.
    pub fn homogeneous_part(&self, d: i64) -> Element {
        let mut out = Element::zero(&self.ring, self.order);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The anti-automorphism ε: ∂̄_{iα} ↦ φ_i x^{iα}, x^{iα} ↦ ∂̄_{iα} φ_i^{-1}, h ↦ h.
    pub fn eps(&self) -> Element {
        assert!(!self.ring.localized, "ε is defined on the unlocalized ring");
        let ring = &self.ring;
        let n = ring.n;
        let mut out = Element::zero(ring, self.order);
        for (m, c) in &self.terms {
            let mut t = Element::one(ring, self.order);
            for (g, _) in m.letters().into_iter().rev() {
                let img = eps_gen(ring, self.order, g, n);
                t = t.mul(&img);
            }
            out = out.add(&t.scale_right(c));
        }
        out
    }
}

fn eps_gen(ring: &Ring, order: Order, g: Gen, n: usize) -> Element {
    let p = phi(g.site(), n);
    match g.kind {
        Kind::D => Element::gen(ring, order, Gen::x(g.site(), g.copy())).scale_left(&p),
        Kind::X => Element::gen(ring, order, Gen::d(g.site(), g.copy())).scale_right(&p.inv()),
    }
}

impl PartialEq for Element {
    fn eq(&self, o: &Element) -> bool {
        if !self.same(o) {
            if !Arc::ptr_eq(&self.ring, &o.ring) {
                return false;
            }
            return self.to_order(o.order) == *o;
        }
        self.terms.len() == o.terms.len() && self.terms.iter().all(|(m, c)| o.terms.get(m).is_some_and(|d| d == c))
    }
}

pub fn gen_name(g: Gen, e: i32, copies: usize) -> String {
    let base = if copies > 1 {
        format!("{}[{},{}]", if g.kind == Kind::D { 'd' } else { 'x' }, g.site, g.copy)
    } else {
        format!("{}[{}]", if g.kind == Kind::D { 'd' } else { 'x' }, g.site)
    };
    if e < 0 {
        let y = if copies > 1 { format!("y[{},{}]", g.site, g.copy) } else { format!("y[{}]", g.site) };
        if e == -1 {
            y
        } else {
            format!("{y}^{}", -e)
        }
    } else if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::fmt_element(self, f)
    }
}

#[cfg(test)]
mod tests;
