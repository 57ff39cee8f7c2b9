//! Rational functions in one variable over GF(p^k), plus the input parser.
//!
//! A [`RatFun`] is kept normalized: numerator and denominator coprime, the
//! denominator monic and nonzero. The zero function is 0/1.
//!
//! The expression grammar accepts integers, the variable `x`, the canonical
//! multiplicative generator `g` of the coefficient field, the operators
//! `+ - * / ^` and parentheses. Integers reduce modulo p, and `g^k` names
//! extension-field elements. Parse errors carry the byte offset.

use crate::field::FieldCtx;
use crate::poly::Poly;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    pub num: Poly,
    pub den: Poly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("division by the zero polynomial at offset {offset}")]
    DivisionByZero { offset: usize },
}

impl RatFun {
    pub fn new(f: &FieldCtx, num: Poly, den: Poly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun { num: Poly::zero(), den: Poly::one() };
        }
        let g = num.gcd(f, &den);
        let (num, den) = if g.deg() > 0 {
            (num.divrem(f, &g).0, den.divrem(f, &g).0)
        } else {
            (num, den)
        };
        let lead_inv = f.inv(den.lead());
        RatFun {
            num: num.scale(f, lead_inv),
            den: den.scale(f, lead_inv),
        }
    }

    pub fn zero() -> RatFun {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFun {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: u64) -> RatFun {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn x() -> RatFun {
        RatFun { num: Poly::x(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.deg() <= 0 && self.den.deg() == 0
    }

    pub fn add(&self, f: &FieldCtx, other: &RatFun) -> RatFun {
        let num = self
            .num
            .mul(f, &other.den)
            .add(f, &other.num.mul(f, &self.den));
        RatFun::new(f, num, self.den.mul(f, &other.den))
    }

    pub fn sub(&self, f: &FieldCtx, other: &RatFun) -> RatFun {
        self.add(f, &other.neg(f))
    }

    pub fn neg(&self, f: &FieldCtx) -> RatFun {
        RatFun { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn mul(&self, f: &FieldCtx, other: &RatFun) -> RatFun {
        RatFun::new(f, self.num.mul(f, &other.num), self.den.mul(f, &other.den))
    }

    pub fn scale(&self, f: &FieldCtx, c: u64) -> RatFun {
        RatFun::new(f, self.num.scale(f, c), self.den.clone())
    }

    pub fn div(&self, f: &FieldCtx, other: &RatFun) -> RatFun {
        assert!(!other.is_zero(), "division by the zero function");
        RatFun::new(f, self.num.mul(f, &other.den), self.den.mul(f, &other.num))
    }

    pub fn inv(&self, f: &FieldCtx) -> RatFun {
        RatFun::one().div(f, self)
    }

    pub fn pow(&self, f: &FieldCtx, e: u64) -> RatFun {
        RatFun::new(f, self.num.pow(f, e), self.den.pow(f, e))
    }

    /// Order of vanishing at x = c (negative at poles).
    pub fn valuation_at(&self, f: &FieldCtx, c: u64) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        let (vn, _) = self.num.root_multiplicity(f, c);
        let (vd, _) = self.den.root_multiplicity(f, c);
        vn as i64 - vd as i64
    }

    /// Order of vanishing at infinity: deg den - deg num.
    pub fn valuation_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.deg() - self.num.deg()
    }

    pub fn eval(&self, f: &FieldCtx, c: u64) -> Option<u64> {
        let d = self.den.eval(f, c);
        if d == 0 {
            return None;
        }
        Some(f.div(self.num.eval(f, c), d))
    }

    /// Value at infinity (None for a pole there).
    pub fn eval_at_infinity(&self, f: &FieldCtx) -> Option<u64> {
        match self.valuation_at_infinity() {
            v if v > 0 => Some(0),
            0 => Some(f.div(self.num.lead(), self.den.lead())),
            _ => None,
        }
    }

    /// Substitution x -> a*x + b.
    pub fn compose_affine(&self, f: &FieldCtx, a: u64, b: u64) -> RatFun {
        RatFun::new(
            f,
            self.num.compose_affine(f, a, b),
            self.den.compose_affine(f, a, b),
        )
    }

    /// Finite poles with orders, ascending by location. None of the entries
    /// account for a possible pole at infinity.
    pub fn finite_poles(&self, f: &FieldCtx) -> Vec<(u64, usize)> {
        let mut out = Vec::new();
        for c in self.den.roots(f) {
            let (m, _) = self.den.root_multiplicity(f, c);
            out.push((c, m));
        }
        out
    }

    /// Pole order at infinity (0 when there is no pole).
    pub fn pole_order_at_infinity(&self) -> usize {
        (-self.valuation_at_infinity()).max(0) as usize
    }

    /// Whether the denominator splits into linear factors over the field.
    pub fn denominator_splits(&self, f: &FieldCtx) -> bool {
        let mut rest = self.den.clone();
        for c in self.den.roots(f) {
            let (_, q) = rest.root_multiplicity(f, c);
            rest = q;
        }
        rest.deg() == 0
    }
}

/// Classical Cartier coefficient extraction on polynomials: picks the
/// coefficients in degrees p-1 mod p and takes p-th roots,
/// sum a_m x^m -> sum over m = p-1 (mod p) of a_m^{1/p} x^{(m-p+1)/p}.
pub fn cartier_poly(f: &FieldCtx, w: &Poly) -> Poly {
    let p = f.prime() as usize;
    let mut out = Vec::new();
    let mut m = p - 1;
    while (m as i64) <= w.deg() {
        out.push(f.pth_root(w.coeff(m)));
        m += p;
    }
    Poly::from_coeffs(out)
}

/// Cartier operator on rational differentials of the line: the coefficient of
/// C(r dx) in dx. Uses r/d = r d^{p-1} / d^p and 1/p-linearity.
pub fn cartier_rational(f: &FieldCtx, r: &RatFun) -> RatFun {
    if r.is_zero() {
        return RatFun::zero();
    }
    let p = f.prime();
    let cleared = r.num.mul(f, &r.den.pow(f, p - 1));
    RatFun::new(f, cartier_poly(f, &cleared), r.den.clone())
}

struct Parser<'a> {
    f: &'a FieldCtx,
    bytes: &'a [u8],
    pos: usize,
}

/// Parses an arithmetic expression in x over the field.
pub fn parse_rational_function(f: &FieldCtx, text: &str) -> Result<RatFun, ParseError> {
    let mut p = Parser { f, bytes: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ParseError::Syntax {
            offset: p.pos,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(e)
}

/// Parses a field-element literal: an integer (reduced mod p) or g^k with g
/// the canonical generator.
pub fn parse_field_element(f: &FieldCtx, text: &str) -> Result<u64, ParseError> {
    let r = parse_rational_function(f, text)?;
    if !r.is_constant() {
        return Err(ParseError::Syntax {
            offset: 0,
            message: "expected a field element, found a function of x".into(),
        });
    }
    Ok(r.num.coeff(0))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.f, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.f, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.factor()?;
                    acc = acc.mul(self.f, &t);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let t = self.factor()?;
                    if t.is_zero() {
                        return Err(ParseError::DivisionByZero { offset: at });
                    }
                    acc = acc.div(self.f, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(inner.neg(self.f));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.integer()?;
            if e < 0 {
                return Err(ParseError::Syntax {
                    offset: at,
                    message: "exponent must be a nonnegative integer".into(),
                });
            }
            return Ok(base.pow(self.f, e as u64));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::Syntax {
                        offset: self.pos,
                        message: "expected ')'".into(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFun::x())
            }
            Some(b'g') => {
                self.pos += 1;
                Ok(RatFun::constant(self.f.generator()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFun::constant(self.f.from_int(n)))
            }
            _ => Err(ParseError::Syntax {
                offset: self.pos,
                message: "expected a number, x, g or '('".into(),
            }),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax {
                offset: start,
                message: "expected an integer".into(),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::Syntax {
                offset: start,
                message: "integer too large".into(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn parses_sum_of_simple_poles() {
        let f = f3();
        let r = parse_rational_function(&f, "1/x + 1/(x-1)").unwrap();
        // over GF(3): (2x - 1)/(x^2 - x) = (2x + 2)/(x^2 + 2x)
        assert_eq!(r.num, Poly::from_coeffs(vec![2, 2]));
        assert_eq!(r.den, Poly::from_coeffs(vec![0, 2, 1]).monic(&f));
        assert_eq!(r.den, Poly::from_coeffs(vec![0, 2, 1]));
    }

    #[test]
    fn parses_monomial() {
        let f = f3();
        let r = parse_rational_function(&f, "x^2").unwrap();
        assert_eq!(r.num, Poly::from_coeffs(vec![0, 0, 1]));
        assert_eq!(r.den, Poly::one());
    }

    #[test]
    fn reports_error_offset() {
        let f = f3();
        let e = parse_rational_function(&f, "1/(x-1").unwrap_err();
        assert_eq!(
            e,
            ParseError::Syntax { offset: 6, message: "expected ')'".into() }
        );
    }

    #[test]
    fn rejects_zero_denominator() {
        let f = f3();
        let e = parse_rational_function(&f, "1/(x-x)").unwrap_err();
        assert!(matches!(e, ParseError::DivisionByZero { .. }));
    }

    #[test]
    fn generator_literal() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let g = f9.generator();
        assert_eq!(parse_field_element(&f9, "g").unwrap(), g);
        assert_eq!(parse_field_element(&f9, "g^2").unwrap(), f9.mul(g, g));
        assert_eq!(parse_field_element(&f9, "2").unwrap(), 2);
    }

    #[test]
    fn valuations_and_poles() {
        let f = f3();
        let r = parse_rational_function(&f, "1/x + 1/(x-1)").unwrap();
        assert_eq!(r.valuation_at(&f, 0), -1);
        assert_eq!(r.valuation_at(&f, 1), -1);
        // f(2) = 1/2 + 1/1 = 0 over GF(3): a simple zero
        assert_eq!(r.valuation_at(&f, 2), 1);
        assert_eq!(r.valuation_at_infinity(), 1);
        assert_eq!(r.finite_poles(&f), vec![(0, 1), (1, 1)]);
        assert_eq!(r.pole_order_at_infinity(), 0);
        assert_eq!(r.eval_at_infinity(&f), Some(0));
    }

    #[test]
    fn cartier_on_rational_functions() {
        let f = f3();
        // C(dx) = 0
        assert!(cartier_rational(&f, &RatFun::one()).is_zero());
        // C(x^2 dx) = x^{0} * (1)^{1/3} dx: coefficient of x^2 is 1
        let r = parse_rational_function(&f, "x^2").unwrap();
        assert_eq!(cartier_rational(&f, &r), RatFun::one());
        // residue compatibility on a simple pole: C(a dx/(x-c)) = a^{1/3} dx/(x-c)
        let pole = parse_rational_function(&f, "2/(x-1)").unwrap();
        let c = cartier_rational(&f, &pole);
        let expected = parse_rational_function(&f, "2/(x-1)").unwrap();
        // 2^{1/3} = 2 in GF(3)
        assert_eq!(c, expected);
    }

    #[test]
    fn one_over_x_plus_one_over_x_minus_one_is_fixed_by_x_to_one_minus_x_up_to_sign() {
        let f = f3();
        let r = parse_rational_function(&f, "1/x + 1/(x-1)").unwrap();
        // substitute x -> 1 - x = 2x + 1 scaled: a = -1 = 2, b = 1
        let s = r.compose_affine(&f, 2, 1);
        assert_eq!(s, r.neg(&f));
    }
}
