use super::{MPoly, RatFunc, Var};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("shift vector has length {got}, expected {expected}")]
    ShiftLength { got: usize, expected: usize },
    #[error("index {index} out of range for {family} with n = {n}")]
    BadIndex { family: &'static str, index: usize, n: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Elementary,
    Complete,
    Chi,
    Psi,
    PsiPrime,
    Phi,
}

/// Integer translation vector acting on h_1..h_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVec(pub Vec<i64>);

impl ShiftVec {
    pub fn unit(j: usize, n: usize, s: i64) -> ShiftVec {
        let mut v = vec![0; n];
        v[j - 1] = s;
        ShiftVec(v)
    }
}

pub fn shift(f: &RatFunc, v: &ShiftVec, n: usize) -> Result<RatFunc, PolyError> {
    if v.0.len() != n {
        return Err(PolyError::ShiftLength { got: v.0.len(), expected: n });
    }
    Ok(f.shift(&v.0))
}

pub fn finite_difference(f: &RatFunc, j: usize, n: usize) -> Result<RatFunc, PolyError> {
    if j == 0 || j > n {
        return Err(PolyError::BadIndex { family: "delta", index: j, n });
    }
    Ok(f.delta(j))
}

/// Coefficient of t^k in ∏(1 + h_i t).
pub fn elementary(k: usize, n: usize) -> MPoly {
    let mut coeffs = vec![MPoly::one()];
    for i in 1..=n {
        let mut next = vec![MPoly::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d] = next[d].add(c);
            next[d + 1] = next[d + 1].add(&c.mul(&MPoly::h(i)));
        }
        coeffs = next;
    }
    coeffs.get(k).cloned().unwrap_or_else(MPoly::zero)
}

/// All products ∏_{i in S} h_i over subsets S of size k, restricted to the given sites.
pub fn elementary_in(k: usize, sites: &[usize]) -> MPoly {
    let mut coeffs = vec![MPoly::one()];
    for &i in sites {
        let mut next = vec![MPoly::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d] = next[d].add(c);
            next[d + 1] = next[d + 1].add(&c.mul(&MPoly::h(i)));
        }
        coeffs = next;
    }
    coeffs.get(k).cloned().unwrap_or_else(MPoly::zero)
}

/// Complete symmetric polynomial H_k(h_1..h_n).
pub fn complete(k: usize, n: usize) -> MPoly {
    // H_k(x_1..x_m) = H_k(x_1..x_{m-1}) + x_m H_{k-1}(x_1..x_m)
    let mut row = vec![MPoly::zero(); k + 1];
    row[0] = MPoly::one();
    for i in 1..=n {
        for d in 1..=k {
            let add = row[d - 1].mul(&MPoly::h(i));
            row[d] = row[d].add(&add);
        }
    }
    row[k].clone()
}

pub fn hd(i: usize, j: usize) -> MPoly {
    MPoly::h(i).sub(&MPoly::h(j))
}

pub fn chi(i: usize, n: usize) -> MPoly {
    let mut p = MPoly::one();
    for s in (1..=n).filter(|&s| s != i) {
        p = p.mul(&hd(i, s));
    }
    p
}

pub fn psi(i: usize, n: usize) -> MPoly {
    let mut p = MPoly::one();
    for k in i + 1..=n {
        p = p.mul(&hd(i, k));
    }
    p
}

pub fn psi_prime(i: usize, _n: usize) -> MPoly {
    let mut p = MPoly::one();
    for k in 1..i {
        p = p.mul(&hd(i, k));
    }
    p
}

/// φ_i = ψ_i / ψ_i[-ε_i].
pub fn phi(i: usize, n: usize) -> RatFunc {
    let p = psi(i, n);
    let mut v = vec![0; n];
    v[i - 1] = -1;
    RatFunc::frac(p.clone(), p.shift(&v))
}

pub fn named_family(kind: Family, index: usize, n: usize) -> Result<RatFunc, PolyError> {
    let site = |family| {
        if index == 0 || index > n {
            Err(PolyError::BadIndex { family, index, n })
        } else {
            Ok(())
        }
    };
    Ok(match kind {
        Family::Elementary => {
            if index > n {
                return Err(PolyError::BadIndex { family: "e", index, n });
            }
            elementary(index, n).into()
        }
        Family::Complete => complete(index, n).into(),
        Family::Chi => {
            site("chi")?;
            chi(index, n).into()
        }
        Family::Psi => {
            site("psi")?;
            psi(index, n).into()
        }
        Family::PsiPrime => {
            site("psip")?;
            psi_prime(index, n).into()
        }
        Family::Phi => {
            site("phi")?;
            phi(index, n)
        }
    })
}

/// ∂e_k/∂h_j.
pub fn de_dh(k: usize, j: usize, n: usize) -> MPoly {
    elementary(k, n).derivative(Var::h(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_is_psi_times_psi_prime() {
        for n in 1..=4 {
            for i in 1..=n {
                assert_eq!(chi(i, n), psi(i, n).mul(&psi_prime(i, n)));
            }
        }
    }

    #[test]
    fn complete_h2_two_sites() {
        let h1 = MPoly::h(1);
        let h2 = MPoly::h(2);
        let expect = h1.mul(&h1).add(&h1.mul(&h2)).add(&h2.mul(&h2));
        assert_eq!(complete(2, 2), expect);
    }

    #[test]
    fn phi_last_site_is_one() {
        assert!(phi(2, 2).is_one());
        assert!(named_family(Family::Chi, 3, 2).is_err());
    }
}
