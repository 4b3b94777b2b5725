//! Surface syntax for rational functions and ring elements.
//!
//! Precedence, tightest first: `^`, unary minus, `*` `/`, `+` `-`.
//! Ring generators are written `x[i,a]` and `d[i,a]` (copy index optional);
//! `y[i]` is the inverse of `x[i]` in the localized ring.

use crate::poly::{named_family, Family, MPoly, Rat, RatFunc, Var};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown symbol `{name}` at column {col}")]
    UnknownSymbol { col: usize, name: String },
    #[error("exponent at column {col} must be a nonnegative integer")]
    BadExponent { col: usize },
    #[error("division by zero at column {col}")]
    DivByZero { col: usize },
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Sym(String, usize),
    Gen { kind: char, site: usize, copy: usize, col: usize },
    Call(String, Vec<Expr>, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().unwrap()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[],".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError::Syntax { col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn prev_col(&self) -> usize {
        self.toks[self.pos - 1].1
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::Syntax { col: self.col(), msg: format!("expected `{c}`") })
        }
    }

    /// Missing operand after an operator is reported at the operator.
    fn operand_err(&self) -> ParseError {
        if self.pos >= self.toks.len() && self.pos > 0 {
            ParseError::Syntax { col: self.prev_col(), msg: "missing operand".into() }
        } else {
            ParseError::Syntax { col: self.col(), msg: "expected an operand".into() }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                let col = self.prev_col();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.to_u32().ok_or(ParseError::BadExponent { col })?,
                Some(Tok::Op('-')) => return Err(ParseError::BadExponent { col }),
                None => return Err(self.operand_err()),
                _ => return Err(ParseError::BadExponent { col }),
            };
            self.pos += 1;
            if self.peek() == Some(&Tok::Op('^')) {
                return Err(ParseError::Syntax { col: self.col(), msg: "chained `^`".into() });
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn index_list(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut v = Vec::new();
        loop {
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    v.push(n.to_usize().ok_or(ParseError::Syntax { col, msg: "index too large".into() })?);
                }
                _ => return Err(ParseError::Syntax { col, msg: "expected an index".into() }),
            }
            if !self.eat(',') {
                return Ok(v);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if (name == "x" || name == "d" || name == "y") && self.peek() == Some(&Tok::Op('[')) {
                    self.pos += 1;
                    let idx = self.index_list()?;
                    self.expect(']')?;
                    let (site, copy) = match idx.as_slice() {
                        [i] => (*i, 1),
                        [i, a] => (*i, *a),
                        _ => return Err(ParseError::Syntax { col, msg: "generator takes one or two indices".into() }),
                    };
                    return Ok(Expr::Gen { kind: name.chars().next().unwrap(), site, copy, col });
                }
                if self.eat('(') {
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                    return Ok(Expr::Call(name, args, col));
                }
                Ok(Expr::Sym(name, col))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.operand_err()),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax { col: 1, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::Syntax { col: p.col(), msg: "unexpected token".into() });
    }
    Ok(e)
}

fn int_arg(args: &[Expr], name: &str, col: usize) -> Result<usize, ParseError> {
    match args {
        [Expr::Num(k)] => k.to_usize().ok_or(ParseError::Syntax { col, msg: "index too large".into() }),
        _ => Err(ParseError::Syntax { col, msg: format!("{name}() takes one integer argument") }),
    }
}

/// Evaluate the builtin families and symbols; `n` bounds the Cartan variables.
pub fn eval_ratfunc(e: &Expr, n: usize) -> Result<RatFunc, ParseError> {
    Ok(match e {
        Expr::Num(k) => RatFunc::constant(Rat::from_integer(k.clone())),
        Expr::Sym(name, col) => {
            let Some(v) = Var::from_name(name) else {
                return Err(ParseError::UnknownSymbol { col: *col, name: name.clone() });
            };
            if v.site().is_some_and(|i| i > n) {
                return Err(ParseError::UnknownSymbol { col: *col, name: name.clone() });
            }
            RatFunc::var(v)
        }
        Expr::Gen { col, .. } => {
            return Err(ParseError::Syntax { col: *col, msg: "ring generator in a scalar expression".into() })
        }
        Expr::Call(name, args, col) => {
            let fam = match name.as_str() {
                "e" => Family::Elementary,
                "H" => Family::Complete,
                "chi" => Family::Chi,
                "psi" => Family::Psi,
                "psip" => Family::PsiPrime,
                "phi" => Family::Phi,
                _ => return Err(ParseError::UnknownSymbol { col: *col, name: name.clone() }),
            };
            let k = int_arg(args, name, *col)?;
            named_family(fam, k, n).map_err(|err| ParseError::Syntax { col: *col, msg: err.to_string() })?
        }
        Expr::Neg(a) => eval_ratfunc(a, n)?.neg(),
        Expr::Add(a, b) => eval_ratfunc(a, n)?.add(&eval_ratfunc(b, n)?),
        Expr::Sub(a, b) => eval_ratfunc(a, n)?.sub(&eval_ratfunc(b, n)?),
        Expr::Mul(a, b) => eval_ratfunc(a, n)?.mul(&eval_ratfunc(b, n)?),
        Expr::Div(a, b, col) => {
            let d = eval_ratfunc(b, n)?;
            eval_ratfunc(a, n)?.checked_div(&d).ok_or(ParseError::DivByZero { col: *col })?
        }
        Expr::Pow(a, k) => eval_ratfunc(a, n)?.pow(*k as i64),
    })
}

pub fn parse_ratfunc(text: &str, n: usize) -> Result<RatFunc, ParseError> {
    eval_ratfunc(&parse(text)?, n)
}

/// A polynomial in the single variable t (for site parts of a potential).
pub fn parse_poly_in_t(text: &str) -> Result<RatFunc, ParseError> {
    let f = parse_ratfunc(text, 0)?;
    if f.vars().iter().any(|&v| v != Var::t()) {
        return Err(ParseError::Other(format!("`{text}` must only involve t")));
    }
    Ok(f)
}

pub fn poly_to_ratfunc(p: MPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{complete, hd};

    #[test]
    fn builtins_expand() {
        assert_eq!(parse_ratfunc("H(2)", 2).unwrap(), RatFunc::from_poly(complete(2, 2)));
        let f = parse_ratfunc("(h1-h2+1)^2/chi(1)", 2).unwrap();
        let g = RatFunc::from_poly(hd(1, 2).add(&MPoly::int(1)).pow(2)).div(&RatFunc::hd(1, 2));
        assert_eq!(f, g);
    }

    #[test]
    fn missing_operand_points_at_operator() {
        assert_eq!(parse_ratfunc("h1/", 2), Err(ParseError::Syntax { col: 3, msg: "missing operand".into() }));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let f = parse_ratfunc("-h1^2", 1).unwrap();
        assert_eq!(f, RatFunc::h(1).pow(2).neg());
    }

    #[test]
    fn rejects_bad_exponents_and_symbols() {
        assert!(matches!(parse_ratfunc("h1^-1", 1), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_ratfunc("h3", 2), Err(ParseError::UnknownSymbol { .. })));
        assert!(matches!(parse_ratfunc("1/(h1-h1)", 1), Err(ParseError::DivByZero { col: 2 })));
    }
}
