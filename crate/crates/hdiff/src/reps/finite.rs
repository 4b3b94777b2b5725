//! Weights of finite-dimensional highest weight quotients.

use crate::consistency::divmod;
use crate::linalg;
use crate::poly::{complete, int_roots, MPoly, Rat, RatFunc, Var};
use num_traits::{ToPrimitive, Zero};

pub const DEFAULT_BOUND: usize = 64;

fn at(lambda: &[Rat], i: usize, m: i64) -> impl Fn(Var) -> Option<RatFunc> + '_ {
    move |v| {
        v.site().map(|j| {
            let c = RatFunc::constant(lambda[j - 1].clone());
            if j == i {
                c.sub(&RatFunc::int(m))
            } else {
                c
            }
        })
    }
}

/// (σ − σ[−mε_i]) at λ; None if either side is undefined.
pub fn sigma_drop(sigma: &RatFunc, lambda: &[Rat], i: usize, m: i64) -> Option<Rat> {
    let a = sigma.subst(&at(lambda, i, 0))?;
    let b = sigma.subst(&at(lambda, i, m))?;
    a.sub(&b).constant_value()
}

/// (σ − σ[−(d_i+1)ε_i])(λ) = 0 and (σ − σ[−kε_i])(λ) ≠ 0 for 1 ≤ k ≤ d_i, every i.
pub fn irreducibility_condition(sigma: &RatFunc, lambda: &[Rat], d: &[usize]) -> bool {
    d.iter().enumerate().all(|(idx, &di)| {
        let i = idx + 1;
        sigma_drop(sigma, lambda, i, di as i64 + 1).is_some_and(|v| v.is_zero())
            && (1..=di as i64).all(|k| sigma_drop(sigma, lambda, i, k).is_some_and(|v| !v.is_zero()))
    })
}

/// Least m ≥ 1 with (σ − σ[−mε_i])(λ) = 0.
fn least_vanishing(sigma: &RatFunc, lambda: &[Rat], i: usize, bound: usize) -> Option<i64> {
    let t = Var::t();
    let shifted = sigma.subst(&|v| {
        v.site().map(|j| {
            let c = RatFunc::constant(lambda[j - 1].clone());
            if j == i {
                c.sub(&RatFunc::var(t))
            } else {
                c
            }
        })
    })?;
    let base = sigma.subst(&at(lambda, i, 0))?;
    let g = base.sub(&shifted);
    if let Some(coeffs) = g.as_poly().and_then(|p| p.as_univariate_rat(t)) {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Some(1);
        }
        return int_roots(&coeffs).into_iter().filter_map(|r| r.to_i64()).filter(|&r| r >= 1).min();
    }
    (1..=bound as i64 + 1).find(|&m| sigma_drop(sigma, lambda, i, m).is_some_and(|v| v.is_zero()))
}

/// Candidate d with ∏(d_i + 1)-dimensional irreducible quotient, or None.
pub fn finite_module_dims(sigma: &RatFunc, lambda: &[Rat], bound: usize) -> Option<Vec<usize>> {
    (1..=lambda.len()).map(|i| least_vanishing(sigma, lambda, i, bound).map(|m| (m - 1) as usize)).collect()
}

/// Σ_{k<m} σ_i[−kε_i] = σ − σ[−mε_i], symbolically.
pub fn telescoping_identity(sigma: &RatFunc, i: usize, m: i64, n: usize) -> bool {
    let si = sigma.delta(i);
    let mut sum = RatFunc::zero();
    for k in 0..m {
        sum = sum.add(&si.shift_site(i, -k, n));
    }
    sum == sigma.sub(&sigma.shift_site(i, -m, n))
}

#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub m: usize,
    pub n: usize,
    pub found: bool,
    pub witness: String,
    /// found agrees with "finite-dimensional modules iff m > n".
    pub consistent: bool,
}

fn strip_integer_roots(mut p: Vec<Rat>) -> Vec<Rat> {
    loop {
        let rs = int_roots(&p);
        let Some(r) = rs.first() else { return p };
        let lin = vec![-Rat::from_integer(r.clone()), Rat::from_integer(1.into())];
        p = divmod(&p, &lin).0;
        if p.len() <= 1 {
            return p;
        }
    }
}

fn degree(p: &[Rat]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Res_v(f, g) via the Sylvester matrix over rational functions.
fn resultant(f: &MPoly, g: &MPoly, v: Var) -> RatFunc {
    let a: Vec<RatFunc> = f.univariate(v).into_iter().map(RatFunc::from_poly).collect();
    let b: Vec<RatFunc> = g.univariate(v).into_iter().map(RatFunc::from_poly).collect();
    let (p, q) = (a.len() - 1, b.len() - 1);
    let size = p + q;
    if size == 0 {
        return RatFunc::one();
    }
    let mut m = linalg::zeros::<RatFunc>(size, size);
    for r in 0..q {
        for (k, c) in a.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..p {
        for (k, c) in b.iter().rev().enumerate() {
            m[q + r][r + k] = c.clone();
        }
    }
    linalg::det(&m)
}

/// Does Diff_{H_m}(n) have a finite-dimensional irreducible highest weight quotient with d_i ≤ dmax?
/// Exact over C for n = 1; for n = 2 by eliminating λ_2 and asking for a non-integer root u = λ_1 − λ_2.
pub fn conjecture_probe(m: usize, n: usize, dmax: usize) -> ProbeRow {
    let sigma = RatFunc::from_poly(complete(m, n));
    let drop = |i: usize, k: i64| sigma.sub(&sigma.shift_site(i, -k, n));
    let t = Var::t();
    let mut found = None;
    if n == 1 {
        for k in 1..=dmax as i64 + 1 {
            let Some(c) = drop(1, k).as_poly().and_then(|p| p.as_univariate_rat(Var::h(1))) else { continue };
            if degree(&c) > 0 {
                found = Some(format!("d = {} solvable in lambda", k - 1));
                break;
            }
        }
    } else if n == 2 {
        'outer: for k1 in 1..=dmax as i64 + 1 {
            for k2 in 1..=dmax as i64 + 1 {
                let sub = |f: RatFunc| {
                    f.subst(&|v| match v.site() {
                        Some(1) => Some(RatFunc::h(2).add(&RatFunc::var(t))),
                        _ => None,
                    })
                    .and_then(|g| g.as_poly().cloned())
                    .expect("polynomial potential")
                };
                let (f1, f2) = (sub(drop(1, k1)), sub(drop(2, k2)));
                if f1.is_constant() || f2.is_constant() {
                    continue;
                }
                let r = resultant(&f1, &f2, Var::h(2));
                let Some(c) = r.as_poly().and_then(|p| p.as_univariate_rat(t)) else { continue };
                if c.iter().all(|x| x.is_zero()) {
                    found = Some(format!("d = ({}, {}): common component", k1 - 1, k2 - 1));
                    break 'outer;
                }
                let rest = strip_integer_roots(c);
                if degree(&rest) > 0 {
                    found = Some(format!("d = ({}, {}): lambda_1 - lambda_2 root of degree {} factor", k1 - 1, k2 - 1, degree(&rest)));
                    break 'outer;
                }
            }
        }
    }
    let ok = found.is_some();
    ProbeRow {
        m,
        n,
        found: ok,
        witness: found.unwrap_or_else(|| format!("no solution with d_i <= {dmax}")),
        consistent: ok == (m > n),
    }
}
