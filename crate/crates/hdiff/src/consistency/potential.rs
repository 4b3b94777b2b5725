//! Potentials of zero-order terms and the decomposition of solutions of the Δ-system.

use super::pbw::delta_witness;
use super::spec::{h_coordinates, SigmaSpec};
use crate::poly::{chi, complete, rat, MPoly, Rat, RatFunc, Var};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("Δ-system violated at {0}")]
    DeltaSystem(String),
    #[error("sigma_{site} is not in the image of Δ_{site}: {reason}")]
    NotInImage { site: usize, reason: String },
    #[error("not in W̄: Δ-system fails at {0}")]
    NotInW(String),
    #[error("no base point found where the potential is defined")]
    NoBasePoint,
}

fn origin_or_nearby(f: &RatFunc, n: usize) -> Option<Rat> {
    // Origin first, then small integer points in a fixed order.
    let pts: Vec<i64> = vec![0, 1, -1, 2, -2, 3, -3, 5, 7, 11];
    let mut idx = vec![0usize; n];
    loop {
        let p: Vec<Rat> = idx.iter().map(|&k| rat(pts[k])).collect();
        let val = f.eval(&|v| v.site().map(|i| p[i - 1].clone()).unwrap_or_default());
        if val.is_some() {
            return val;
        }
        let mut c = 0;
        loop {
            if c == n {
                return None;
            }
            idx[c] += 1;
            if idx[c] < pts.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// f - f(base point), the base point being the origin when f is defined there.
pub fn normalize_potential(f: &RatFunc, n: usize) -> Result<RatFunc, PotentialError> {
    let c = origin_or_nearby(f, n).ok_or(PotentialError::NoBasePoint)?;
    Ok(f.sub(&RatFunc::constant(c)))
}

/// Solve Δ_1 f = g for polynomial g in h_1; coefficients may involve other variables.
pub fn discrete_antiderivative(g: &RatFunc, site: usize) -> Result<RatFunc, PotentialError> {
    let v = Var::h(site);
    let not_image = |reason: &str| PotentialError::NotInImage { site, reason: reason.to_string() };
    let frees_site = g.den_factors().iter().all(|(f, _)| !f.contains_var(v));
    if !frees_site {
        return Err(not_image("denominator depends on the shifted variable"));
    }
    let den = RatFunc::frac(MPoly::one(), g.den());
    let coeffs = g.num().univariate(v);
    let d = coeffs.len();
    if d == 0 {
        return Ok(RatFunc::zero());
    }
    // Δ(h^m) = h^m - (h-1)^m; solve from the top degree down.
    let mut target: Vec<MPoly> = coeffs;
    let mut out = vec![MPoly::zero(); d + 1];
    for m in (1..=d).rev() {
        // leading coefficient of Δ(h^m) in degree m-1 is m
        let c = target[m - 1].scale(&(Rat::from_integer(1.into()) / rat(m as i64)));
        if c.is_zero() {
            continue;
        }
        out[m] = c.clone();
        for (k, b) in delta_power(m).into_iter().enumerate() {
            if k < target.len() {
                target[k] = target[k].sub(&c.scale(&b));
            }
        }
    }
    debug_assert!(target.iter().all(|t| t.is_zero()));
    let mut f = MPoly::zero();
    for (m, c) in out.iter().enumerate() {
        if !c.is_zero() {
            f = f.add(&c.mul(&MPoly::var(v).pow(m as u32)));
        }
    }
    Ok(RatFunc::from_poly(f).mul(&den))
}

/// Coefficients of h^m - (h-1)^m.
fn delta_power(m: usize) -> Vec<Rat> {
    let mut binom = vec![Rat::zero(); m + 1];
    let mut b = Rat::from_integer(1.into());
    for k in 0..=m {
        // (h-1)^m = Σ C(m,k) h^k (-1)^{m-k}
        let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
        binom[k] = -(b.clone() * rat(sign));
        b = b * rat((m - k) as i64) / rat(k as i64 + 1);
    }
    binom[m] = Rat::zero();
    binom.truncate(m);
    binom
}

/// Evaluate sites below `j` at generic integer points where f stays defined.
fn freeze_below(f: &RatFunc, j: usize) -> Option<RatFunc> {
    for attempt in 0..64i64 {
        let g = f.subst(&|v| match v.site() {
            Some(i) if i < j => Some(RatFunc::int(17 * i as i64 + 3 + 29 * attempt)),
            _ => None,
        });
        if g.is_some() {
            return g;
        }
    }
    None
}

/// σ with Δ_i σ = σ_i, glued site by site.
pub fn potential_from_sigmas(sigmas: &[RatFunc]) -> Result<RatFunc, PotentialError> {
    let n = sigmas.len();
    if let Some(w) = delta_witness(sigmas) {
        return Err(PotentialError::DeltaSystem(w));
    }
    if n == 1 {
        let f = discrete_antiderivative(&sigmas[0], 1)?;
        return normalize_potential(&f, 1);
    }
    let one = RatFunc::one();
    let mut f = RatFunc::hd(1, 2).add(&one).mul(&sigmas[1]);
    for j in 2..=n {
        let g = sigmas[j - 1].sub(&f.delta(j));
        if g.is_zero() {
            continue;
        }
        let k = RatFunc::hd(j, 1).add(&one).mul(&sigmas[0]).sub(&f);
        let k = freeze_below(&k, j).ok_or_else(|| PotentialError::NotInImage {
            site: j,
            reason: "no admissible base point".into(),
        })?;
        f = f.add(&k);
    }
    for (i, s) in sigmas.iter().enumerate() {
        debug_assert_eq!(&f.delta(i + 1), s);
    }
    normalize_potential(&f, n)
}

/// Δ_i of a potential for every site.
pub fn sigmas_of(f: &RatFunc, n: usize) -> Vec<RatFunc> {
    (1..=n).map(|i| f.delta(i)).collect()
}

/// First pair i<j with Δ_iΔ_j(h_ij σ) ≠ 0.
pub fn w_system_witness(sigma: &RatFunc, n: usize) -> Option<(usize, usize)> {
    for i in 1..=n {
        for j in i + 1..=n {
            if !RatFunc::hd(i, j).mul(sigma).delta(j).delta(i).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn only_t(f: &RatFunc) -> bool {
    f.vars().iter().all(|&v| v == Var::t())
}

/// Residue of σ along h_k = h_1, rescaled to π_k - π_1.
fn residue_difference(sigma: &RatFunc, k: usize, n: usize) -> Option<RatFunc> {
    let t = RatFunc::var(Var::t());
    let r = sigma.mul(&RatFunc::hd(k, 1)).subst(&|v| match v.site() {
        Some(i) if i == 1 || i == k => Some(t.clone()),
        _ => None,
    })?;
    let mut r = r;
    for s in 2..=n {
        if s != k {
            r = r.mul(&t.sub(&RatFunc::h(s)));
        }
    }
    only_t(&r).then_some(r)
}

pub fn w_decompose(sigma: &RatFunc, n: usize) -> Result<SigmaSpec, PotentialError> {
    let not_w = |w: String| PotentialError::NotInW(w);
    if let Some((i, j)) = w_system_witness(sigma, n) {
        return Err(not_w(format!("({i},{j})")));
    }
    let t = RatFunc::var(Var::t());
    if n == 1 {
        let p = sigma
            .subst(&|v| (v == Var::h(1)).then(|| t.clone()))
            .filter(only_t)
            .ok_or_else(|| not_w("(1)".into()))?;
        return Ok(SigmaSpec { n, pi: vec![p], h: vec![] }.canonical());
    }
    let mut diffs = vec![RatFunc::zero(); n];
    for k in 2..=n {
        diffs[k - 1] = residue_difference(sigma, k, n).ok_or_else(|| not_w(format!("(1,{k})")))?;
    }
    let partial = SigmaSpec { n, pi: diffs.clone(), h: vec![] };
    let rest = sigma.sub(&partial.realize());
    // rest = Σ_k π(h_k)/χ_k + p for a single π; read π off at h_1 = t, h_s = c_s.
    let mut common = None;
    for attempt in 0..64i64 {
        let cs: Vec<i64> = (0..=n).map(|s| 13 * s as i64 + 5 + 31 * attempt).collect();
        let restricted = rest.subst(&|v| match v.site() {
            Some(1) => Some(t.clone()),
            Some(s) => Some(RatFunc::int(cs[s])),
            None => None,
        });
        if let Some(mut r) = restricted {
            for s in 2..=n {
                r = r.mul(&t.sub(&RatFunc::int(cs[s])));
            }
            common = Some(r);
            break;
        }
    }
    let common = common.ok_or_else(|| not_w("(1,2)".into()))?;
    let pi: Vec<RatFunc> = diffs.iter().map(|d| d.add(&common)).collect();
    let spec = SigmaSpec { n, pi, h: vec![] };
    let poly = sigma.sub(&spec.realize());
    let h = h_coordinates(&poly, n).ok_or_else(|| not_w("(1,2)".into()))?;
    let spec = SigmaSpec { h, ..spec }.canonical();
    debug_assert_eq!(&spec.realize(), sigma);
    Ok(spec)
}

/// σ admits the Zhelobenko action exactly when it is a symmetric polynomial in H.
pub fn zhelobenko_admissible(sigma: &SigmaSpec) -> bool {
    sigma.is_symmetric_polynomial()
}

/// Σ_j h_j^k / χ_j equals 0 for k ≤ n-2 and H_{k-n+1} otherwise.
pub fn idesy0_check(n: usize, k: usize) -> bool {
    let mut s = RatFunc::zero();
    for j in 1..=n {
        s = s.add(&RatFunc::h(j).pow(k as i64).div(&RatFunc::from_poly(chi(j, n))));
    }
    let expect = if k + 2 <= n { RatFunc::zero() } else { RatFunc::from_poly(complete(k + 1 - n, n)) };
    s == expect
}
