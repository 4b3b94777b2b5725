//! Matrix representations: relation checking, truncated highest weight modules, structure tests.

use super::{field::Alg, irreducibility_condition, numeric, Module, ModuleVec, RepError, RepGen};
use crate::center::ring_potential;
use crate::linalg::{self, Field, Matrix};
use crate::poly::{MPoly, Rat, RatFunc};
use crate::report::{Check, Report};
use crate::ring::{Element, Gen, Kind, Order, Ring};
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

pub type AMatrix = Matrix<Alg>;

#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub dim: usize,
    pub x: Vec<AMatrix>,
    pub d: Vec<AMatrix>,
    pub h: Vec<AMatrix>,
}

fn mat_pow(m: &AMatrix, e: u32) -> AMatrix {
    let mut out = linalg::identity(m.len());
    for _ in 0..e {
        out = linalg::matmul(&out, m);
    }
    out
}

fn mat_text(m: &AMatrix) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn scalar_json(c: &Alg) -> Value {
    if c.b == Rat::default() {
        json!(c.a.to_string())
    } else {
        json!([c.a.to_string(), c.b.to_string()])
    }
}

impl MatrixRep {
    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn zero(dim: usize, n: usize) -> MatrixRep {
        let z = linalg::zeros::<Alg>(dim, dim);
        MatrixRep { dim, x: vec![z.clone(); n], d: vec![z.clone(); n], h: vec![z; n] }
    }

    /// Named generator matrices in a fixed order.
    pub fn generators(&self) -> Vec<(String, &AMatrix)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            out.push((format!("x{}", i + 1), &self.x[i]));
        }
        for i in 0..self.n() {
            out.push((format!("d{}", i + 1), &self.d[i]));
        }
        for i in 0..self.n() {
            out.push((format!("h{}", i + 1), &self.h[i]));
        }
        out
    }

    fn gen_matrix(&self, g: Gen) -> &AMatrix {
        match g.kind {
            Kind::X => &self.x[g.site() - 1],
            Kind::D => &self.d[g.site() - 1],
        }
    }

    /// Dense row-major JSON; entries of Q(ω) as [a, b] pairs.
    pub fn to_json(&self) -> Value {
        let m = |a: &AMatrix| Value::Array(a.iter().map(|r| Value::Array(r.iter().map(scalar_json).collect())).collect());
        let ext = self
            .generators()
            .iter()
            .flat_map(|(_, a)| a.iter().flatten())
            .find_map(|c| c.ext.clone().filter(|_| c.b != Rat::default()));
        let mut obj = serde_json::Map::new();
        obj.insert("dim".into(), json!(self.dim));
        if let Some(q) = ext {
            obj.insert("extension".into(), json!({"name": q.name, "c1": q.c1.to_string(), "c0": q.c0.to_string()}));
        }
        for (name, a) in self.generators() {
            obj.insert(name, m(a));
        }
        Value::Object(obj)
    }
}

/// p(H̃) for commuting h̃-matrices.
pub fn eval_poly(p: &MPoly, h: &[AMatrix]) -> Result<AMatrix, String> {
    let d = h.first().map(|m| m.len()).unwrap_or(0);
    let mut out = linalg::zeros::<Alg>(d, d);
    for (m, c) in p.terms() {
        let mut t = linalg::identity::<Alg>(d);
        for &(v, e) in &m.0 {
            let i = v.site().filter(|&i| i <= h.len()).ok_or_else(|| format!("variable {} is not a site", v.name()))?;
            t = linalg::matmul(&t, &mat_pow(&h[i - 1], e));
        }
        out = linalg::matadd(&out, &linalg::matscale(&t, &Alg::rat(c.clone())));
    }
    Ok(out)
}

/// f(H̃) = num(H̃) · den(H̃)^{-1}.
pub fn eval_coeff(f: &RatFunc, h: &[AMatrix]) -> Result<AMatrix, String> {
    let num = eval_poly(f.num(), h)?;
    let den = f.den();
    if den.is_one() {
        return Ok(num);
    }
    let dm = eval_poly(&den, h)?;
    let inv = linalg::inverse(&dm).ok_or_else(|| format!("denominator {den} is singular on the h-matrices"))?;
    Ok(linalg::matmul(&num, &inv))
}

pub fn eval_element(e: &Element, rep: &MatrixRep) -> Result<AMatrix, String> {
    let d = rep.dim;
    let mut out = linalg::zeros::<Alg>(d, d);
    for (m, f) in &e.terms {
        let mut t = eval_coeff(f, &rep.h)?;
        for &(g, p) in &m.0 {
            if p < 0 {
                return Err("inverse powers of x have no matrix".into());
            }
            t = linalg::matmul(&t, &mat_pow(rep.gen_matrix(g), p as u32));
        }
        out = linalg::matadd(&out, &t);
    }
    Ok(out)
}

fn ring_generators(ring: &Ring) -> Vec<(String, Element)> {
    let o = Order::DerFirst;
    let mut out = Vec::new();
    for i in 1..=ring.n {
        out.push((format!("x{i}"), Element::x(ring, o, i)));
    }
    for i in 1..=ring.n {
        out.push((format!("d{i}"), Element::d(ring, o, i)));
    }
    for i in 1..=ring.n {
        out.push((format!("h{i}"), Element::h(ring, o, i)));
    }
    out
}

/// Every defining relation as a matrix identity: M(a)M(b) = M(normal form of a·b).
pub fn verify_module(ring: &Ring, rep: &MatrixRep) -> Report {
    let mut rep_out = Report::new("rep verify");
    let n = ring.n;
    let shapes_ok = rep.n() == n
        && rep.x.len() == n
        && rep.d.len() == n
        && rep.generators().iter().all(|(_, m)| m.len() == rep.dim && m.iter().all(|r| r.len() == rep.dim));
    rep_out.push(Check::new("shape", shapes_ok));
    if !shapes_ok || ring.copies != 1 {
        return rep_out;
    }
    let mut commute = None;
    for i in 0..n {
        for j in i + 1..n {
            let c = linalg::matsub(&linalg::matmul(&rep.h[i], &rep.h[j]), &linalg::matmul(&rep.h[j], &rep.h[i]));
            if !linalg::is_zero_matrix(&c) && commute.is_none() {
                commute = Some(format!("[h{}, h{}] = {}", i + 1, j + 1, mat_text(&c)));
            }
        }
    }
    if let Some(w) = commute {
        rep_out.push(Check::new("sigma_eval", false).witness(format!("cannot evaluate sigma of matrices: {w}")));
        return rep_out;
    }
    let gens = ring_generators(ring);
    let mats = rep.generators();
    let mut eval_failure = None;
    let mut rel_checks = Vec::new();
    for (ia, (na, ea)) in gens.iter().enumerate() {
        for (ib, (nb, eb)) in gens.iter().enumerate() {
            if ia == ib {
                continue;
            }
            let lhs = linalg::matmul(mats[ia].1, mats[ib].1);
            match eval_element(&ea.mul(eb), rep) {
                Ok(rhs) => {
                    let res = linalg::matsub(&lhs, &rhs);
                    let mut c = Check::new(format!("{na}*{nb}"), linalg::is_zero_matrix(&res));
                    if !c.pass {
                        c = c.witness(format!("residual {}", mat_text(&res)));
                    }
                    rel_checks.push(c);
                }
                Err(w) => {
                    eval_failure.get_or_insert(format!("{na}*{nb}: {w}"));
                }
            }
        }
    }
    rep_out.push(Check::from_witness("sigma_eval", eval_failure.map(|w| format!("cannot evaluate sigma of matrices: {w}"))));
    for c in rel_checks {
        rep_out.push(c);
    }
    rep_out
}

fn box_basis(d: &[usize]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &di in d {
        out = out.into_iter().flat_map(|p: Vec<i64>| (0..=di as i64).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Quotient of the highest weight module spanned by ∂̄^k v, 0 ≤ k ≤ d.
pub fn build_matrix_module(ring: &Ring, lambda: &[Rat], d: &[usize]) -> Result<MatrixRep, RepError> {
    let n = ring.n;
    if d.len() != n {
        return Err(RepError::Weight(format!("expected {n} dimensions")));
    }
    let m = Module::highest(ring, numeric(lambda))?;
    let basis = box_basis(d);
    let dim = basis.len();
    let index = |k: &Vec<i64>| basis.iter().position(|b| b == k);
    let matrix = |g: RepGen| -> Result<AMatrix, RepError> {
        let mut a = linalg::zeros::<Alg>(dim, dim);
        for (col, k) in basis.iter().enumerate() {
            let img: ModuleVec = m.act_gen(g, &ModuleVec::basis(k.clone()))?;
            for (kk, c) in &img.0 {
                let Some(row) = index(kk) else { continue };
                let c = c.constant_value().ok_or_else(|| RepError::Undefined(format!("{g:?} on {k:?}")))?;
                a[row][col] = Alg::rat(c);
            }
        }
        Ok(a)
    };
    let mut rep = MatrixRep::zero(dim, n);
    for i in 1..=n {
        rep.x[i - 1] = matrix(RepGen::X(i))?;
        rep.d[i - 1] = matrix(RepGen::D(i))?;
        rep.h[i - 1] = matrix(RepGen::H(i))?;
    }
    let report = verify_module(ring, &rep);
    if let Some(f) = report.failures().first() {
        return Err(RepError::Truncation(format!("{} {}", f.id, f.witness.clone().unwrap_or_default())));
    }
    Ok(rep)
}

fn flatten(m: &AMatrix) -> Vec<Alg> {
    m.iter().flatten().cloned().collect()
}

fn unflatten(v: &[Alg], d: usize) -> AMatrix {
    v.chunks(d).map(|r| r.to_vec()).collect()
}

/// Basis of the (unital) algebra generated by the representation matrices.
pub fn algebra_basis(rep: &MatrixRep) -> Vec<AMatrix> {
    let d = rep.dim;
    let gens: Vec<&AMatrix> = rep.generators().into_iter().map(|(_, m)| m).collect();
    let mut basis: Vec<AMatrix> = vec![linalg::identity(d)];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &gens {
                let p = linalg::matmul(g, a);
                let mut rows: Vec<Vec<Alg>> = basis.iter().map(flatten).collect();
                let r0 = linalg::rank(&rows);
                rows.push(flatten(&p));
                if linalg::rank(&rows) > r0 {
                    basis.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    basis
}

fn span(vecs: &[Vec<Alg>]) -> Vec<Vec<Alg>> {
    linalg::row_basis(vecs)
}

fn apply(m: &AMatrix, v: &[Alg]) -> Vec<Alg> {
    m.iter().map(|r| r.iter().zip(v).fold(Alg::zero(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

fn transpose(m: &AMatrix) -> AMatrix {
    (0..m.len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// A proper nonzero subspace stable under every generator, if one is visible.
pub fn invariant_subspace(rep: &MatrixRep, alg: &[AMatrix]) -> Option<Vec<Vec<Alg>>> {
    let d = rep.dim;
    let unit = |k: usize| (0..d).map(|i| if i == k { Alg::one() } else { Alg::zero() }).collect::<Vec<_>>();
    let mut best: Option<Vec<Vec<Alg>>> = None;
    for k in 0..d {
        let s = span(&alg.iter().map(|a| apply(a, &unit(k))).collect::<Vec<_>>());
        if s.len() < d && best.as_ref().map_or(true, |b| s.len() < b.len()) {
            best = Some(s);
        }
    }
    if best.is_some() {
        return best;
    }
    // a submodule of the dual gives its annihilator
    let tr: Vec<AMatrix> = alg.iter().map(transpose).collect();
    for k in 0..d {
        let s = span(&tr.iter().map(|a| apply(a, &unit(k))).collect::<Vec<_>>());
        if s.len() < d {
            return Some(linalg::nullspace(&s, d));
        }
    }
    None
}

/// Basis of the commutant {T : T g = g T for every generator g}.
pub fn commutant(rep: &MatrixRep) -> Vec<AMatrix> {
    let d = rep.dim;
    let mut rows = Vec::new();
    for (_, g) in rep.generators() {
        for r in 0..d {
            for c in 0..d {
                // (T g − g T)_{rc} = Σ_k T_{rk} g_{kc} − g_{rk} T_{kc}
                let mut row = vec![Alg::zero(); d * d];
                for k in 0..d {
                    row[r * d + k] = row[r * d + k].add(&g[k][c]);
                    row[k * d + c] = row[k * d + c].sub(&g[r][k]);
                }
                rows.push(row);
            }
        }
    }
    linalg::nullspace(&rows, d * d).iter().map(|v| unflatten(v, d)).collect()
}

/// T − (tr T / d) is nilpotent.
fn single_eigenvalue(t: &AMatrix) -> bool {
    let d = t.len();
    let tr = (0..d).fold(Alg::zero(), |acc, i| acc.add(&t[i][i]));
    let mean = tr.mul(&Alg::int(d as i64).inv());
    let shifted = linalg::matsub(t, &linalg::matscale(&linalg::identity(d), &mean));
    linalg::is_zero_matrix(&mat_pow(&shifted, d as u32))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Irreducible,
    /// Reducible, no complement to the given invariant subspace.
    Indecomposable { invariant: Vec<Vec<Alg>> },
    Decomposable { invariant: Option<Vec<Vec<Alg>>> },
}

impl Structure {
    pub fn label(&self) -> &'static str {
        match self {
            Structure::Irreducible => "irreducible",
            Structure::Indecomposable { .. } => "reducible-indecomposable",
            Structure::Decomposable { .. } => "decomposable",
        }
    }
}

/// Irreducibility over the algebraic closure by the generated algebra filling End(V); indecomposability
/// by locality of the commutant, probed on random commutant elements.
pub fn classify(rep: &MatrixRep) -> Structure {
    let d = rep.dim;
    let alg = algebra_basis(rep);
    if alg.len() == d * d {
        return Structure::Irreducible;
    }
    let inv = invariant_subspace(rep, &alg);
    let comm = commutant(rep);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let local = (0..4).all(|_| {
        let mut t = linalg::zeros::<Alg>(d, d);
        for c in &comm {
            let r = Alg::int(rng.gen_range(-50..=50));
            t = linalg::matadd(&t, &linalg::matscale(c, &r));
        }
        single_eigenvalue(&t)
    });
    match (local, inv) {
        (true, Some(invariant)) => Structure::Indecomposable { invariant },
        (_, inv) => Structure::Decomposable { invariant: inv },
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibilityResult {
    pub analytic: bool,
    pub structure: Structure,
    pub agree: bool,
}

/// The criterion on λ and d against the structure of the actual matrices.
pub fn irreducibility_test(ring: &Ring, lambda: &[Rat], d: &[usize]) -> Result<IrreducibilityResult, RepError> {
    let rep = build_matrix_module(ring, lambda, d)?;
    let sigma = ring_potential(ring).map_err(|e| RepError::Ring(e.to_string()))?;
    let analytic = irreducibility_condition(&sigma, lambda, d);
    let structure = classify(&rep);
    let agree = analytic == (structure == Structure::Irreducible);
    Ok(IrreducibilityResult { analytic, structure, agree })
}
