//! Element text format: `(coef)*d[i,a]^p*...*x[j,b]^q + ...`.

use super::{gen_name, Element, Gen, Order, Ring};
use crate::expr::{self, Expr, ParseError};
use crate::poly::RatFunc;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElementParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("generator index out of range at column {col}")]
    Index { col: usize },
    #[error("inverse generator at column {col} needs a localized ring")]
    NotLocalized { col: usize },
    #[error("division by a non-scalar at column {col}")]
    NonScalarDivisor { col: usize },
}

pub(super) fn fmt_element(e: &Element, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.terms.is_empty() {
        return write!(f, "0");
    }
    let copies = e.ring.copies;
    let mut terms: Vec<_> = e.terms.iter().collect();
    terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.to_string().starts_with('-');
        let c = if negative { c.neg() } else { c.clone() };
        out.push_str(match (k, negative) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        let mono: Vec<String> = m.0.iter().map(|&(g, p)| gen_name(g, p, copies)).collect();
        let mono = mono.join("*");
        if m.is_one() {
            out.push_str(&scalar_text(&c));
        } else if c.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", scalar_text(&c)));
        }
    }
    write!(f, "{out}")
}

fn scalar_text(c: &RatFunc) -> String {
    let s = c.to_string();
    let simple = s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^');
    if simple {
        s
    } else {
        format!("({s})")
    }
}

pub fn parse_element(text: &str, ring: &Ring, order: Order) -> Result<Element, ElementParseError> {
    let e = expr::parse(text)?;
    eval(&e, ring, order)
}

fn is_scalar(e: &Expr) -> bool {
    match e {
        Expr::Gen { .. } => false,
        Expr::Num(_) | Expr::Sym(..) | Expr::Call(..) => true,
        Expr::Neg(a) | Expr::Pow(a, _) => is_scalar(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => is_scalar(a) && is_scalar(b),
    }
}

fn eval(e: &Expr, ring: &Ring, order: Order) -> Result<Element, ElementParseError> {
    if is_scalar(e) {
        return Ok(Element::scalar(ring, order, expr::eval_ratfunc(e, ring.n)?));
    }
    Ok(match e {
        Expr::Gen { kind, site, copy, col } => {
            let col = *col;
            if *site == 0 || *site > ring.n || *copy == 0 || *copy > ring.copies {
                return Err(ElementParseError::Index { col });
            }
            match kind {
                'x' => Element::gen(ring, order, Gen::x(*site, *copy)),
                'd' => Element::gen(ring, order, Gen::d(*site, *copy)),
                _ => {
                    if !ring.localized {
                        return Err(ElementParseError::NotLocalized { col });
                    }
                    Element::gen_pow(ring, order, Gen::x(*site, *copy), -1)
                }
            }
        }
        Expr::Neg(a) => eval(a, ring, order)?.neg(),
        Expr::Add(a, b) => eval(a, ring, order)?.add(&eval(b, ring, order)?),
        Expr::Sub(a, b) => eval(a, ring, order)?.sub(&eval(b, ring, order)?),
        Expr::Mul(a, b) => eval(a, ring, order)?.mul(&eval(b, ring, order)?),
        Expr::Div(a, b, col) => {
            if !is_scalar(b) {
                return Err(ElementParseError::NonScalarDivisor { col: *col });
            }
            let d = expr::eval_ratfunc(b, ring.n)?;
            let inv = d.checked_inv().ok_or(ParseError::DivByZero { col: *col })?;
            eval(a, ring, order)?.scale_right(&inv)
        }
        Expr::Pow(a, k) => eval(a, ring, order)?.pow(*k),
        Expr::Num(_) | Expr::Sym(..) | Expr::Call(..) => unreachable!(),
    })
}
