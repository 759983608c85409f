//! Sparse Laurent polynomials in one variable with big-integer coefficients.
//!
//! The same type carries polynomials in `q` and in `t = q^-1`; the variable
//! is only a matter of rendering (see [`LaurentPoly::render`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// The variable itself raised to `exp`.
    pub fn var_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True when the only exponent present is 0 (or the polynomial is zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `var -> var^-1`; turns a polynomial in `t` into one in `q = t^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `var = x`; fails on negative exponents unless `x = ±1`.
    pub fn eval(&self, x: &BigInt) -> Result<BigInt> {
        let v = self.eval_rational(x)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Domain(format!("{self} is not integral at {x}")))
        }
    }

    pub fn eval_rational(&self, x: &BigInt) -> Result<BigRational> {
        if x.is_zero() && !self.is_polynomial() {
            return Err(Error::Domain(format!("{self} has a pole at 0")));
        }
        let mut acc = BigRational::zero();
        let xr = BigRational::from_integer(x.clone());
        for (&e, c) in &self.terms {
            let mag = e.unsigned_abs().to_u32().ok_or_else(|| {
                Error::Domain(format!("exponent {e} too large to evaluate"))
            })?;
            let p = num_traits::pow(xr.clone(), mag as usize);
            let p = if e < 0 { p.recip() } else { p };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor` in `Z[var, var^-1]`, or `None` when
    /// the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let dmin = divisor.min_exp()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nmin = self.min_exp().unwrap();
        // Normalize both sides to polynomials with nonzero constant term.
        let d: Vec<BigInt> = dense(divisor, dmin);
        let mut rem: Vec<BigInt> = dense(self, nmin);
        if rem.len() < d.len() {
            return None;
        }
        let lead = d.last().unwrap().clone();
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + d.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + nmin - dmin, c)),
        ))
    }

    /// Renders with the given variable name, highest exponent first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(var);
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// Parses the grammar produced by [`LaurentPoly::render`]; whitespace is
    /// insignificant.
    pub fn parse(s: &str, var: &str) -> Result<Self> {
        let mut p = Parser {
            src: s,
            pos: 0,
            var,
        };
        let poly = p.sum()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at {} in {s:?}",
                p.pos
            )));
        }
        Ok(poly)
    }
}

fn dense(p: &LaurentPoly, offset: i64) -> Vec<BigInt> {
    let len = (p.max_exp().unwrap() - offset + 1) as usize;
    let mut v = vec![BigInt::zero(); len];
    for (e, c) in p.terms() {
        v[(e - offset) as usize] = c.clone();
    }
    v
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return None;
        }
        let d = self.src[self.pos..self.pos + n].to_string();
        self.pos += n;
        Some(d)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in {:?}", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut neg = self.eat("-");
        loop {
            let (e, c) = self.term()?;
            acc.add_term(e, if neg { -c } else { c });
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<(i64, BigInt)> {
        if let Some(d) = self.digits() {
            let c = BigInt::from_str(&d).map_err(|_| self.err("bad integer"))?;
            if self.eat("*") {
                let e = self.power()?;
                Ok((e, c))
            } else {
                Ok((0, c))
            }
        } else {
            let e = self.power()?;
            Ok((e, BigInt::one()))
        }
    }

    fn power(&mut self) -> Result<i64> {
        if !self.eat(self.var) {
            return Err(self.err(&format!("expected `{}`", self.var)));
        }
        if !self.eat("^") {
            return Ok(1);
        }
        let neg = self.eat("-");
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let e: i64 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render("q"))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, "q")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
