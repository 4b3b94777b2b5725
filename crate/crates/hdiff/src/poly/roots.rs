use super::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Above this size the divisor enumeration gives way to a bounded scan.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
const SCAN_BOUND: i64 = 512;

fn integral(coeffs: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small.into_iter().map(BigInt::from).collect())
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Integer roots (without multiplicity) of a univariate polynomial given by
/// coefficients in increasing degree.
pub fn int_roots(coeffs: &[Rat]) -> Vec<BigInt> {
    int_roots_certified(coeffs).0
}

/// Integer roots plus whether the search was exhaustive (false when the
/// constant term was too large to enumerate its divisors).
pub fn int_roots_certified(coeffs: &[Rat]) -> (Vec<BigInt>, bool) {
    let p = trim(integral(coeffs));
    if p.len() <= 1 {
        return (Vec::new(), true);
    }
    let mut out = Vec::new();
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(BigInt::zero());
    }
    let q = &p[low..];
    if q.len() <= 1 {
        return (out, true);
    }
    let (cands, exhaustive): (Vec<BigInt>, bool) = match divisors(&q[0]) {
        Some(ds) => (ds.into_iter().flat_map(|d| [d.clone(), -d]).collect(), true),
        None => ((1..=SCAN_BOUND).flat_map(|d| [BigInt::from(d), BigInt::from(-d)]).collect(), false),
    };
    for c in cands {
        if eval_int(q, &c).is_zero() {
            out.push(c);
        }
    }
    out.sort();
    (out, exhaustive)
}

/// Rational roots (without multiplicity).
pub fn rat_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let p = trim(integral(coeffs));
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(Rat::zero());
    }
    let q = &p[low..];
    if q.len() <= 1 {
        return out;
    }
    let lead = q.last().unwrap();
    let (Some(num_c), Some(den_c)) = (divisors(&q[0]), divisors(lead)) else {
        for r in int_roots(coeffs) {
            if !r.is_zero() {
                out.push(Rat::from_integer(r));
            }
        }
        return out;
    };
    let qr: Vec<Rat> = q.iter().map(|c| Rat::from_integer(c.clone())).collect();
    for a in &num_c {
        for b in &den_c {
            if !a.gcd(b).is_one() {
                continue;
            }
            for s in [Rat::new(a.clone(), b.clone()), -Rat::new(a.clone(), b.clone())] {
                let mut acc = Rat::zero();
                for c in qr.iter().rev() {
                    acc = acc * &s + c;
                }
                if acc.is_zero() {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn integer_roots_of_cubic() {
        // (x-2)(x+3)x = x^3 + x^2 - 6x
        let c = [rat(0), rat(-6), rat(1), rat(1)];
        let r: Vec<i64> = int_roots(&c).iter().map(|b| b.to_i64().unwrap()).collect();
        assert_eq!(r, vec![-3, 0, 2]);
    }

    #[test]
    fn rational_roots() {
        // (2x-1)(x+1) = 2x^2 + x - 1
        let c = [rat(-1), rat(1), rat(2)];
        let r = rat_roots(&c);
        assert_eq!(r, vec![rat(-1), crate::poly::ratio(1, 2)]);
    }
}
