//! Quadratic central elements C = Σ_i M^i_i f_i + g over a bounded coefficient space.

use super::{all_gens, gl_m, is_central};
use crate::linalg;
use crate::poly::{chi, MPoly, Mono, Rat, RatFunc, Var};
use crate::ring::{Element, Order, Ring};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct CenterScan {
    /// Solution basis, constants included.
    pub basis: Vec<Element>,
    pub dim_mod_constants: usize,
    /// The degree bound may be cutting off solutions.
    pub bound_limited: bool,
    pub degree: usize,
}

fn monomials(n: usize, d: usize) -> Vec<Mono> {
    let mut out = vec![Mono::one()];
    let mut frontier = vec![Mono::one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 1..=n {
                let nm = m.mul(&Mono::var(Var::h(i), 1));
                if !next.contains(&nm) && !out.contains(&nm) {
                    next.push(nm);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// 1 and the χ_i, up to scalar multiples.
fn denominators(n: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::one()];
    for i in 1..=n {
        let c = RatFunc::from_poly(chi(i, n));
        if out.iter().all(|d| c.div(d).constant_value().is_none()) {
            out.push(c);
        }
    }
    out
}

fn ansatz(ring: &Ring, d: usize) -> Vec<Element> {
    let n = ring.n;
    let o = Order::DerFirst;
    let mut out = Vec::new();
    let coeffs: Vec<RatFunc> = denominators(n)
        .iter()
        .flat_map(|den| {
            monomials(n, d)
                .into_iter()
                .map(move |m| RatFunc::from_poly(MPoly::term(m, Rat::from_integer(1.into()))).div(den))
        })
        .collect();
    for i in 1..=n {
        let mi = gl_m(ring, i, i);
        for c in &coeffs {
            out.push(mi.scale_right(c));
        }
    }
    for c in &coeffs {
        out.push(Element::scalar(ring, o, c.clone()));
    }
    out
}

fn lcm_den(fs: &[&RatFunc]) -> RatFunc {
    let mut mult: BTreeMap<MPoly, u32> = BTreeMap::new();
    for f in fs {
        for (p, m) in f.den_factors() {
            let e = mult.entry(p.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
    }
    let mut out = MPoly::one();
    for (p, m) in mult {
        out = out.mul(&p.pow(m));
    }
    RatFunc::from_poly(out)
}

/// Linear relations among columns of key -> coefficient maps.
fn relations<K: Ord + Clone>(cols: &[BTreeMap<K, RatFunc>]) -> Vec<Vec<Rat>> {
    let u = cols.len();
    let mut table: BTreeMap<K, Vec<(usize, &RatFunc)>> = BTreeMap::new();
    for (b, col) in cols.iter().enumerate() {
        for (k, c) in col {
            table.entry(k.clone()).or_default().push((b, c));
        }
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for entries in table.values() {
        let l = lcm_den(&entries.iter().map(|(_, c)| *c).collect::<Vec<_>>());
        let mut by_mono: BTreeMap<Mono, Vec<Rat>> = BTreeMap::new();
        for (b, c) in entries {
            let p = c.mul(&l);
            let p = p.as_poly().expect("cleared denominators");
            for (m, v) in p.terms() {
                by_mono.entry(m.clone()).or_insert_with(|| vec![Rat::default(); u])[*b] += v;
            }
        }
        rows.extend(by_mono.into_values());
    }
    linalg::nullspace(&rows, u)
}

fn combine(ring: &Ring, basis: &[Element], v: &[Rat]) -> Element {
    let mut e = Element::zero(ring, Order::DerFirst);
    for (b, c) in v.iter().enumerate() {
        if *c != Rat::default() {
            e = e.add(&basis[b].scale_left(&RatFunc::constant(c.clone())));
        }
    }
    e
}

fn rational_degree(f: &RatFunc) -> i64 {
    f.num().total_degree() as i64 - f.den().total_degree() as i64
}

/// Solve for all C of the ansatz shape commuting with every generator.
pub fn quadratic_center_scan(ring: &Ring, degree: usize) -> CenterScan {
    let basis = ansatz(ring, degree);
    let gens = all_gens(ring);
    let trivial = relations(&basis.iter().map(|e| e.terms.clone()).collect::<Vec<_>>());
    let comm_cols: Vec<BTreeMap<(usize, crate::ring::RMono), RatFunc>> = basis
        .iter()
        .map(|e| {
            let mut col = BTreeMap::new();
            for (gi, (_, g)) in gens.iter().enumerate() {
                for (m, c) in e.commutator(g).terms {
                    col.insert((gi, m), c);
                }
            }
            col
        })
        .collect();
    let solutions = relations(&comm_cols);
    // keep solution vectors independent modulo the trivial relations
    let mut acc: Vec<Vec<Rat>> = trivial.clone();
    let mut rank = linalg::rank(&acc);
    let mut elems = Vec::new();
    for v in solutions {
        acc.push(v.clone());
        let r = linalg::rank(&acc);
        if r > rank {
            rank = r;
            let e = combine(ring, &basis, &v);
            debug_assert!(is_central(ring, &e));
            elems.push(e);
        } else {
            acc.pop();
        }
    }
    let dim = elems.len();
    let dim_mod_constants = dim.saturating_sub(1);
    let top = elems.iter().flat_map(|e| e.terms.values()).any(|c| rational_degree(c) >= degree as i64);
    CenterScan { basis: elems, dim_mod_constants, bound_limited: dim_mod_constants == 0 || top, degree }
}

impl CenterScan {
    /// e lies in the span of the solution basis.
    pub fn contains(&self, e: &Element) -> bool {
        let mut cols: Vec<_> = self.basis.iter().map(|b| b.terms.clone()).collect();
        cols.push(e.terms.clone());
        let last = cols.len() - 1;
        relations(&cols).iter().any(|v| v[last] != Rat::default())
    }
}
