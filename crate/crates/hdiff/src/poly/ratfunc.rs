use super::roots::{int_roots_certified, rat_roots};
use super::{rat, MPoly, Mono, Rat, Var, SCRATCH};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational function num / ∏ f^m. Denominator factors are integral,
/// primitive, with positive leading coefficient, sorted and distinct; every
/// scalar lives in the numerator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: Vec<(MPoly, u32)>,
}

/// Factored view of a denominator: pair factors (h_i - h_j + k), i < j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ledger {
    pub pairs: Vec<(usize, usize, i64, u32)>,
    pub residual: MPoly,
}

impl Ledger {
    pub fn product(&self) -> MPoly {
        let mut p = self.residual.clone();
        for &(i, j, k, m) in &self.pairs {
            p = p.mul(&pair_factor(i, j, k).pow(m));
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside(Ledger),
    /// A denominator factor that is provably not a product of pair factors.
    Outside { ledger: Ledger, witness: MPoly },
    Indeterminate { ledger: Ledger },
}

impl Membership {
    pub fn inside(&self) -> Option<bool> {
        match self {
            Membership::Inside(_) => Some(true),
            Membership::Outside { .. } => Some(false),
            Membership::Indeterminate { .. } => None,
        }
    }
}

pub fn pair_factor(i: usize, j: usize, k: i64) -> MPoly {
    MPoly::h(i).sub(&MPoly::h(j)).add(&MPoly::int(k))
}

/// Recognise h_i - h_j + k with i < j.
pub fn pair_form(f: &MPoly) -> Option<(usize, usize, i64)> {
    let t = f.terms();
    if t.len() < 2 || t.len() > 3 || f.total_degree() != 1 {
        return None;
    }
    let (m0, c0) = &t[0];
    let (m1, c1) = &t[1];
    if m0.0.len() != 1 || m1.0.len() != 1 || !c0.is_one() || *c1 != -Rat::one() {
        return None;
    }
    let i = m0.0[0].0.site()?;
    let j = m1.0[0].0.site()?;
    let k = if t.len() == 3 {
        let c = &t[2].1;
        if !c.is_integer() {
            return None;
        }
        c.to_integer().to_i64()?
    } else {
        0
    };
    Some((i, j, k))
}

fn probe_value(v: Var) -> Rat {
    let x = (v.0 as u64).wrapping_mul(2654435761) % 9973;
    rat(x as i64 + 17)
}

/// Cheap necessary test for f | p when f is linear: p vanishes on a point of f = 0.
fn may_divide(p: &MPoly, f: &MPoly) -> bool {
    if f.total_degree() != 1 {
        return true;
    }
    let (lm, lc) = &f.terms()[0];
    let u = lm.0[0].0;
    // u = -(rest of f)/lc
    let rest = f.sub(&MPoly::term(lm.clone(), lc.clone()));
    let uval = -rest.eval(&probe_value) / lc;
    let val = p.eval(&|v| if v == u { uval.clone() } else { probe_value(v) });
    val.is_zero()
}

fn try_div(p: &MPoly, f: &MPoly) -> Option<MPoly> {
    if !may_divide(p, f) {
        return None;
    }
    p.div_exact(f)
}

/// Result of splitting a polynomial into denominator factors.
struct Split {
    scalar: Rat,
    factors: Vec<(MPoly, u32)>,
    exhaustive: bool,
}

fn grouped_by_other(p: &MPoly, s: Var) -> Vec<Vec<Rat>> {
    let mut groups: BTreeMap<Mono, BTreeMap<u32, Rat>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (rest, e) = m.without(s);
        groups.entry(rest).or_default().insert(e, c.clone());
    }
    groups
        .into_values()
        .map(|g| {
            let d = *g.keys().max().unwrap() as usize;
            let mut v = vec![Rat::zero(); d + 1];
            for (e, c) in g {
                v[e as usize] = c;
            }
            v
        })
        .collect()
}

fn eval_uni(c: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

fn common_roots(groups: &[Vec<Rat>], integer: bool) -> (Vec<Rat>, bool) {
    let Some(best) = groups.iter().min_by_key(|g| g.len()) else {
        return (Vec::new(), true);
    };
    if best.len() <= 1 {
        return (Vec::new(), true);
    }
    let (cands, exhaustive) = if integer {
        let (r, ex) = int_roots_certified(best);
        (r.into_iter().map(Rat::from_integer).collect::<Vec<_>>(), ex)
    } else {
        (rat_roots(best), true)
    };
    let roots = cands.into_iter().filter(|r| groups.iter().all(|g| eval_uni(g, r).is_zero())).collect();
    (roots, exhaustive)
}

fn push_factor(factors: &mut Vec<(MPoly, u32)>, f: MPoly, m: u32) {
    if let Some(slot) = factors.iter_mut().find(|(g, _)| *g == f) {
        slot.1 += m;
    } else {
        factors.push((f, m));
    }
}

fn strip(rest: &mut MPoly, f: &MPoly) -> u32 {
    let mut m = 0;
    while let Some(q) = rest.div_exact(f) {
        *rest = q;
        m += 1;
    }
    m
}

fn split_poly(q: &MPoly) -> Split {
    assert!(!q.is_zero(), "zero denominator");
    let mut factors = Vec::new();
    let mut exhaustive = true;
    let mut rest = q.clone();
    // monomial content
    for v in rest.vars() {
        let e = rest.terms().iter().map(|t| t.0.exp(v)).min().unwrap_or(0);
        if e > 0 {
            rest = rest.div_exact(&MPoly::term(Mono::var(v, e), Rat::one())).unwrap();
            push_factor(&mut factors, MPoly::var(v), e);
        }
    }
    if rest.total_degree() >= 2 {
        // single-variable linear factors v - r
        for v in rest.vars() {
            if rest.total_degree() < 2 {
                break;
            }
            let (roots, _) = common_roots(&grouped_by_other(&rest, v), false);
            for r in roots {
                let f = MPoly::var(v).sub(&MPoly::constant(r)).primitive().1;
                let m = strip(&mut rest, &f);
                if m > 0 {
                    push_factor(&mut factors, f, m);
                }
            }
        }
        // pair factors u - v + k
        let vars = rest.vars();
        'outer: for (a, &u) in vars.iter().enumerate() {
            for &v in &vars[a + 1..] {
                if rest.total_degree() < 2 {
                    break 'outer;
                }
                if !rest.contains_var(u) || !rest.contains_var(v) {
                    continue;
                }
                let img = MPoly::var(v).add(&MPoly::var(SCRATCH));
                let moved = rest.substitute(u, &img);
                let (roots, ex) = common_roots(&grouped_by_other(&moved, SCRATCH), true);
                exhaustive &= ex;
                for r in roots {
                    let k = -r.to_integer().to_i64().unwrap_or(0);
                    let f = MPoly::var(u).sub(&MPoly::var(v)).add(&MPoly::int(k));
                    let m = strip(&mut rest, &f);
                    if m > 0 {
                        push_factor(&mut factors, f, m);
                    }
                }
            }
        }
    }
    let mut scalar = Rat::one();
    if let Some(c) = rest.constant_value() {
        scalar = c;
    } else {
        let (c, p) = rest.primitive();
        scalar = scalar * c;
        push_factor(&mut factors, p, 1);
    }
    Split { scalar, factors, exhaustive }
}

fn sorted(mut v: Vec<(MPoly, u32)>) -> Vec<(MPoly, u32)> {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Insert a primitive factor, keeping factors pairwise non-dividing when a
/// nonlinear factor is involved.
fn insert(den: &mut Vec<(MPoly, u32)>, f: MPoly, m: u32) {
    if m == 0 {
        return;
    }
    if let Ok(i) = den.binary_search_by(|p| p.0.cmp(&f)) {
        den[i].1 += m;
        return;
    }
    if f.total_degree() > 1 || den.iter().any(|p| p.0.total_degree() > 1) {
        let mut rest = f.clone();
        let mut hits: Vec<(MPoly, u32)> = Vec::new();
        for (g, _) in den.iter() {
            if rest.total_degree() > g.total_degree() || (rest.total_degree() == g.total_degree() && rest != *g) {
                if let Some(q) = try_div(&rest, g) {
                    let mut cnt = 1;
                    rest = q;
                    while let Some(q2) = try_div(&rest, g) {
                        rest = q2;
                        cnt += 1;
                    }
                    hits.push((g.clone(), cnt * m));
                }
            }
        }
        if !hits.is_empty() {
            for (g, c) in hits {
                let i = den.binary_search_by(|p| p.0.cmp(&g)).unwrap();
                den[i].1 += c;
            }
            if !rest.is_constant() {
                let (_, p) = rest.primitive();
                insert(den, p, m);
            }
            return;
        }
        // an existing nonlinear factor divisible by f gets split
        for idx in 0..den.len() {
            if den[idx].0.total_degree() > f.total_degree() {
                if let Some(q) = try_div(&den[idx].0, &f) {
                    let (g, gm) = den.remove(idx);
                    let _ = g;
                    let (_, qp) = q.primitive();
                    insert(den, f.clone(), gm + m);
                    if !qp.is_constant() {
                        insert(den, qp, gm);
                    }
                    return;
                }
            }
        }
    }
    let pos = den.binary_search_by(|p| p.0.cmp(&f)).unwrap_err();
    den.insert(pos, (f, m));
}

fn den_product(den: &[(MPoly, u32)]) -> MPoly {
    let mut p = MPoly::one();
    for (f, m) in den {
        p = p.mul(&f.pow(*m));
    }
    p
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: MPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(MPoly::one())
    }

    pub fn int(c: i64) -> RatFunc {
        RatFunc::from_poly(MPoly::int(c))
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(MPoly::var(v))
    }

    pub fn h(i: usize) -> RatFunc {
        RatFunc::from_poly(MPoly::h(i))
    }

    /// h_i - h_j
    pub fn hd(i: usize, j: usize) -> RatFunc {
        RatFunc::from_poly(MPoly::h(i).sub(&MPoly::h(j)))
    }

    pub fn from_poly(p: MPoly) -> RatFunc {
        RatFunc { num: p, den: Vec::new() }
    }

    /// num/den; panics on a zero denominator.
    pub fn frac(num: MPoly, den: MPoly) -> RatFunc {
        RatFunc::checked_frac(num, den).expect("zero denominator")
    }

    pub fn checked_frac(num: MPoly, den: MPoly) -> Option<RatFunc> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        if let Some(c) = den.constant_value() {
            return Some(RatFunc::from_poly(num.scale(&c.recip())));
        }
        let s = split_poly(&den);
        let mut out = RatFunc { num: num.scale(&s.scalar.recip()), den: Vec::new() };
        for (f, m) in s.factors {
            insert(&mut out.den, f, m);
        }
        out.cancel();
        Some(out)
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(MPoly, u32)] {
        &self.den
    }

    pub fn den(&self) -> MPoly {
        den_product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        for (f, _) in &self.den {
            v.extend(f.vars());
        }
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(f, _)| f.contains_var(v))
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            while self.den[i].1 > 0 {
                match try_div(&self.num, &self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[i].1 == 0 {
                self.den.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let mut r = RatFunc { num: self.num.add(&other.num), den: self.den.clone() };
            r.cancel();
            return r;
        }
        let mut lcm = self.den.clone();
        for (f, m) in &other.den {
            match lcm.binary_search_by(|p| p.0.cmp(f)) {
                Ok(i) => lcm[i].1 = lcm[i].1.max(*m),
                Err(i) => lcm.insert(i, (f.clone(), *m)),
            }
        }
        let cof = |d: &[(MPoly, u32)]| -> MPoly {
            let mut p = MPoly::one();
            for (f, m) in &lcm {
                let have = d.iter().find(|x| x.0 == *f).map_or(0, |x| x.1);
                if *m > have {
                    p = p.mul(&f.pow(m - have));
                }
            }
            p
        };
        let num = self.num.mul(&cof(&self.den)).add(&other.num.mul(&cof(&other.den)));
        let mut r = RatFunc { num, den: lcm };
        r.cancel();
        r
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if other.den.is_empty() && self.den.is_empty() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel before multiplying
        let mut a = RatFunc { num: self.num.clone(), den: other.den.clone() };
        a.cancel();
        let mut b = RatFunc { num: other.num.clone(), den: self.den.clone() };
        b.cancel();
        let mut den = a.den;
        for (f, m) in b.den {
            insert(&mut den, f, m);
        }
        RatFunc { num: a.num.mul(&b.num), den }
    }

    pub fn inv(&self) -> RatFunc {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_inv(&self) -> Option<RatFunc> {
        if self.num.is_zero() {
            return None;
        }
        let top = den_product(&self.den);
        if let Some(c) = self.num.constant_value() {
            return Some(RatFunc::from_poly(top.scale(&c.recip())));
        }
        let s = split_poly(&self.num);
        let mut den = Vec::new();
        for (f, m) in s.factors {
            insert(&mut den, f, m);
        }
        Some(RatFunc { num: top.scale(&s.scalar.recip()), den })
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self.mul(&other.inv())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&other.checked_inv()?))
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let e = e as u32;
        if e == 0 {
            return RatFunc::one();
        }
        RatFunc { num: self.num.pow(e), den: self.den.iter().map(|(f, m)| (f.clone(), m * e)).collect() }
    }

    /// h_i -> h_i + v[i-1]; auxiliary variables are untouched.
    pub fn shift(&self, v: &[i64]) -> RatFunc {
        if v.iter().all(|&s| s == 0) {
            return self.clone();
        }
        let mut num = self.num.shift(v);
        let mut den: Vec<(MPoly, u32)> = Vec::with_capacity(self.den.len());
        for (f, m) in &self.den {
            let g = f.shift(v);
            let (c, p) = g.primitive();
            if !c.is_one() {
                num = num.scale(&num_traits::pow(c.recip(), *m as usize));
            }
            match den.iter_mut().find(|x| x.0 == p) {
                Some(x) => x.1 += m,
                None => den.push((p, *m)),
            }
        }
        RatFunc { num, den: sorted(den) }
    }

    /// Shift by a single site: h_j -> h_j + s.
    pub fn shift_site(&self, j: usize, s: i64, n: usize) -> RatFunc {
        let mut v = vec![0i64; n.max(j)];
        v[j - 1] = s;
        self.shift(&v)
    }

    /// Δ_j f = f - f[-ε_j].
    pub fn delta(&self, j: usize) -> RatFunc {
        let mut v = vec![0i64; j];
        v[j - 1] = -1;
        self.sub(&self.shift(&v))
    }

    /// Substitute variables by polynomials. None if a denominator vanishes.
    pub fn subst_poly(&self, f: &dyn Fn(Var) -> Option<MPoly>) -> Option<RatFunc> {
        let num = self.num.compose(f);
        if self.den.is_empty() {
            return Some(RatFunc::from_poly(num));
        }
        let mut d = RatFunc::one();
        for (g, m) in &self.den {
            let img = g.compose(f);
            if img.is_zero() {
                return None;
            }
            d = d.mul(&RatFunc::frac(MPoly::one(), img).pow(*m as i64));
        }
        Some(RatFunc::from_poly(num).mul(&d))
    }

    /// Substitute variables by rational functions. None if a denominator vanishes.
    pub fn subst(&self, f: &dyn Fn(Var) -> Option<RatFunc>) -> Option<RatFunc> {
        let eval = |p: &MPoly| -> RatFunc {
            let mut cache: BTreeMap<(Var, u32), RatFunc> = BTreeMap::new();
            let mut acc = RatFunc::zero();
            let mut poly_part: Vec<(Mono, Rat)> = Vec::new();
            for (m, c) in p.terms() {
                let mut kept = Mono::one();
                let mut t = RatFunc::constant(c.clone());
                for &(v, e) in &m.0 {
                    match f(v) {
                        None => kept = kept.mul(&Mono::var(v, e)),
                        Some(img) => {
                            let pw = cache.entry((v, e)).or_insert_with(|| img.pow(e as i64)).clone();
                            t = t.mul(&pw);
                        }
                    }
                }
                if let Some(c0) = t.constant_value() {
                    poly_part.push((kept, c0));
                } else {
                    acc = acc.add(&t.mul(&RatFunc::from_poly(MPoly::term(kept, Rat::one()))));
                }
            }
            acc.add(&RatFunc::from_poly(MPoly::from_terms(poly_part)))
        };
        let mut out = eval(&self.num);
        for (g, m) in &self.den {
            let img = eval(g);
            if img.is_zero() {
                return None;
            }
            out = out.mul(&img.pow(-(*m as i64)));
        }
        Some(out)
    }

    /// Evaluate at a point; None if the denominator vanishes there.
    pub fn eval(&self, vals: &dyn Fn(Var) -> Rat) -> Option<Rat> {
        let mut d = Rat::one();
        for (f, m) in &self.den {
            let x = f.eval(vals);
            if x.is_zero() {
                return None;
            }
            d *= num_traits::pow(x, *m as usize);
        }
        Some(self.num.eval(vals) / d)
    }

    pub fn ledger(&self) -> Ledger {
        let mut pairs = Vec::new();
        let mut residual = MPoly::one();
        for (f, m) in &self.den {
            match pair_form(f) {
                Some((i, j, k)) => pairs.push((i, j, k, *m)),
                None => residual = residual.mul(&f.pow(*m)),
            }
        }
        Ledger { pairs, residual }
    }

    pub fn ubar_membership(&self) -> Membership {
        let ledger = self.ledger();
        let mut indeterminate = false;
        for (f, _) in &self.den {
            if pair_form(f).is_some() {
                continue;
            }
            if f.total_degree() == 1 {
                return Membership::Outside { ledger, witness: f.clone() };
            }
            // a nonlinear factor survived an exhaustive pair search
            let s = split_poly(f);
            let has_pair = s.factors.iter().any(|(g, _)| pair_form(g).is_some());
            if has_pair || !s.exhaustive {
                indeterminate = true;
            } else {
                return Membership::Outside { ledger, witness: f.clone() };
            }
        }
        if indeterminate {
            Membership::Indeterminate { ledger }
        } else {
            Membership::Inside(ledger)
        }
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(Var) -> String) -> fmt::Result {
        if self.den.is_empty() {
            return self.num.fmt_with(f, name);
        }
        let simple = |p: &MPoly| p.nterms() == 1 && p.terms()[0].1.is_one() && p.terms()[0].0 .0.len() == 1;
        if self.num.nterms() == 1 && !self.num.terms()[0].1.is_negative() || self.num.is_constant() {
            self.num.fmt_with(f, name)?;
        } else {
            write!(f, "(")?;
            self.num.fmt_with(f, name)?;
            write!(f, ")")?;
        }
        write!(f, "/")?;
        let single = self.den.len() == 1 && self.den[0].1 == 1 && simple(&self.den[0].0);
        if !single {
            write!(f, "(")?;
        }
        for (k, (g, m)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            let paren = !simple(g) && (self.den.len() > 1 || *m > 1 || g.nterms() > 1);
            if paren {
                write!(f, "(")?;
            }
            g.fmt_with(f, name)?;
            if paren {
                write!(f, ")")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        if !single {
            write!(f, ")")?;
        }
        Ok(())
    }

    pub fn display_with<'a>(&'a self, name: &'a dyn Fn(Var) -> String) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RatFunc, &'a dyn Fn(Var) -> String);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        D(self, name)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        self.num.mul(&den_product(&other.den)) == other.num.mul(&den_product(&self.den))
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| v.name())
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> RatFunc {
        RatFunc::int(c)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> RatFunc {
        RatFunc::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                RatFunc::$m(self, o)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                RatFunc::$m(&self, &o)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                RatFunc::$m(&self, o)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                RatFunc::$m(self, &o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(i: usize) -> RatFunc {
        RatFunc::h(i)
    }

    #[test]
    fn pair_factors_are_split_out() {
        let den = pair_factor(1, 2, 0).mul(&pair_factor(1, 2, -2));
        let f = RatFunc::frac(MPoly::h(1).pow(2), den);
        let m = f.ubar_membership();
        match m {
            Membership::Inside(l) => {
                assert_eq!(l.pairs, vec![(1, 2, 0, 1), (1, 2, -2, 1)]);
                assert!(l.residual.is_one());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_non_pair_factor_is_outside() {
        let f = RatFunc::frac(MPoly::one(), MPoly::h(1).add(&MPoly::int(1)));
        assert_eq!(f.ubar_membership().inside(), Some(false));
    }

    #[test]
    fn cancellation_and_equality() {
        let a = (h(1) - h(2)).mul(&(h(1) + RatFunc::int(3)));
        let b = RatFunc::hd(1, 2);
        let q = a.div(&b);
        assert!(q.is_polynomial());
        assert_eq!(q, h(1) + RatFunc::int(3));
        let x = RatFunc::int(1).div(&RatFunc::hd(1, 2));
        let y = RatFunc::int(1).div(&RatFunc::hd(2, 1));
        assert_eq!(x.add(&y), RatFunc::zero());
    }

    #[test]
    fn shift_moves_pair_offsets() {
        let f = RatFunc::int(1).div(&RatFunc::hd(1, 2));
        let g = f.shift(&[1, 1]);
        assert_eq!(g, f);
        let s = f.shift(&[1, 0]);
        assert_eq!(s.ledger().pairs, vec![(1, 2, 1, 1)]);
    }

    #[test]
    fn canonical_display() {
        let f = RatFunc::frac(MPoly::h(1).pow(2), pair_factor(1, 2, 0).mul(&pair_factor(1, 2, -2)));
        assert_eq!(f.to_string(), "h1^2/((h1 - h2)*(h1 - h2 - 2))");
        let g = RatFunc::int(1).div(&h(1));
        assert_eq!(g.to_string(), "1/h1");
    }
}
