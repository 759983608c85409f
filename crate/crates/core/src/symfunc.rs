//! Weyl-invariant elements of the group algebra of the coweight lattice and
//! their expansions in the monomial basis `m_nu`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::root_data::{Coweight, DatumTag, RootDatum};

/// Finite sum `sum_mu c_mu x^mu` with Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    rank: usize,
    terms: BTreeMap<Coweight, LaurentPoly>,
}

impl GroupAlgebraElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `c * x^mu`.
    pub fn monomial(mu: Coweight, c: LaurentPoly) -> Self {
        let mut e = Self::zero(mu.len());
        e.add_term(mu, &c);
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mu: &Coweight) -> LaurentPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mu: Coweight, c: &LaurentPoly) {
        debug_assert_eq!(mu.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c.clone());
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::Domain(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c);
        }
        Ok(out)
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero(self.rank);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), &f(c));
        }
        out
    }

    /// Exact quotient by `1 - x^{-beta}`, or `None` if it does not divide.
    ///
    /// Writing `f = g (1 - x^{-beta})` gives `g(mu) = sum_{j >= 0} f(mu + j beta)`
    /// along every `beta`-string; the quotient is finite iff every string sums
    /// to zero.
    pub fn div_one_minus(&self, beta: &Coweight) -> Option<Self> {
        let pivot = beta.0.iter().position(|&b| b != 0)?;
        let b = beta.0[pivot];
        // string representative and offset: mu = rep + k beta with rep[pivot] in [0, |b|)
        let mut strings: BTreeMap<Coweight, BTreeMap<i64, &LaurentPoly>> = BTreeMap::new();
        for (mu, c) in &self.terms {
            let k = mu.0[pivot].div_euclid(b);
            let rep = mu.sub(&beta.scale(k));
            strings.entry(rep).or_default().insert(k, c);
        }
        let mut out = Self::zero(self.rank);
        for (rep, string) in strings {
            let lo = *string.keys().next().unwrap();
            let hi = *string.keys().next_back().unwrap();
            let mut acc = LaurentPoly::zero();
            for k in (lo..=hi).rev() {
                if let Some(c) = string.get(&k) {
                    acc += c;
                }
                if k == lo {
                    if !acc.is_zero() {
                        return None;
                    }
                } else {
                    // acc = sum_{j >= k} f(rep + j beta) = g(rep + k beta)
                    out.add_term(rep.add(&beta.scale(k)), &acc);
                }
            }
        }
        Some(out)
    }
}

/// An element expanded in the monomial basis: dominant `nu -> coefficient of m_nu`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricFunction {
    datum: DatumTag,
    terms: BTreeMap<Coweight, LaurentPoly>,
}

impl SymmetricFunction {
    pub fn zero(datum: DatumTag) -> Self {
        Self {
            datum,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from `(nu, coefficient)` pairs; every `nu` must be dominant.
    pub fn from_terms(
        datum: &RootDatum,
        terms: impl IntoIterator<Item = (Coweight, LaurentPoly)>,
    ) -> Result<Self> {
        let mut out = Self::zero(datum.tag());
        for (nu, c) in terms {
            datum.require_dominant(&nu)?;
            out.add_term(nu, &c);
        }
        Ok(out)
    }

    /// The single basis element `m_nu`.
    pub fn basis(datum: &RootDatum, nu: &Coweight) -> Result<Self> {
        Self::from_terms(datum, [(nu.clone(), LaurentPoly::one())])
    }

    pub(crate) fn add_term(&mut self, nu: Coweight, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(nu.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&nu);
        }
    }

    pub fn datum(&self) -> DatumTag {
        self.datum
    }

    pub fn coeff(&self, nu: &Coweight) -> LaurentPoly {
        self.terms.get(nu).cloned().unwrap_or_default()
    }

    /// Terms in ascending lexicographic order of `nu`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Coweight, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Coweight> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero(self.datum);
        for (nu, c) in &self.terms {
            out.add_term(nu.clone(), &f(c));
        }
        out
    }

    /// Expands `sum c_nu m_nu` into the group algebra.
    pub fn to_group_algebra(&self, datum: &RootDatum) -> Result<GroupAlgebraElement> {
        self.check_datum(datum)?;
        let mut out = GroupAlgebraElement::zero(datum.rank());
        for (nu, c) in &self.terms {
            for mu in datum.orbit(nu) {
                out.add_term(mu, c);
            }
        }
        Ok(out)
    }

    fn check_datum(&self, datum: &RootDatum) -> Result<()> {
        if self.datum != datum.tag() {
            return Err(Error::Domain(format!(
                "symmetric function over {} used with datum {}",
                self.datum,
                datum.tag()
            )));
        }
        Ok(())
    }

    /// Parses the rendering of [`fmt::Display`], e.g. `m[2,0] + (1 - q^-1)·m[1,1]`.
    pub fn parse(datum: &RootDatum, s: &str) -> Result<Self> {
        let mut out = Self::zero(datum.tag());
        let src = s.trim();
        if src == "0" {
            return Ok(out);
        }
        let mut rest = src;
        let mut first = true;
        while !rest.is_empty() {
            let mut neg = false;
            rest = rest.trim_start();
            if first {
                if let Some(r) = rest.strip_prefix('-') {
                    neg = true;
                    rest = r;
                }
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                neg = true;
                rest = r;
            } else {
                return Err(Error::Parse(format!("expected + or - before {rest:?}")));
            }
            first = false;
            rest = rest.trim_start();
            let coeff;
            if let Some(r) = rest.strip_prefix('(') {
                let close = r
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed parenthesis in {s:?}")))?;
                coeff = LaurentPoly::parse(&r[..close], "q")?;
                rest = r[close + 1..].trim_start();
                rest = rest
                    .strip_prefix('·')
                    .ok_or_else(|| Error::Parse(format!("expected · in {s:?}")))?;
            } else if let Some(dot) = rest.find('·').filter(|&d| !rest[..d].contains('m')) {
                coeff = LaurentPoly::parse(&rest[..dot], "q")?;
                rest = &rest[dot + '·'.len_utf8()..];
            } else {
                coeff = LaurentPoly::one();
            }
            rest = rest.trim_start();
            let r = rest
                .strip_prefix("m[")
                .ok_or_else(|| Error::Parse(format!("expected m[...] in {s:?}")))?;
            let close = r
                .find(']')
                .ok_or_else(|| Error::Parse(format!("unclosed m[ in {s:?}")))?;
            let nu: Coweight = r[..close].parse()?;
            datum.require_dominant(&nu)?;
            rest = &r[close + 1..];
            out.add_term(nu, &if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl fmt::Display for SymmetricFunction {
    /// Highest `nu` first (descending lexicographic order).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (nu, c)) in self.terms.iter().rev().enumerate() {
            let single = c.num_terms() == 1;
            let (neg, body) = if single {
                let (e, k) = c.terms().next().unwrap();
                let neg = k < &num_bigint::BigInt::from(0);
                let mag = LaurentPoly::monomial(if neg { -k.clone() } else { k.clone() }, e);
                (neg, if mag.is_one() { String::new() } else { format!("{mag}·") })
            } else {
                (false, format!("({c})·"))
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{body}m{nu}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricFunction[{}]({self})", self.datum)
    }
}

/// `sum_{mu in W nu} x^mu`.
pub fn monomial_sym(datum: &RootDatum, nu: &Coweight) -> Result<GroupAlgebraElement> {
    datum.require_dominant(nu)?;
    SymmetricFunction::basis(datum, nu)?.to_group_algebra(datum)
}

/// Reads off the `m`-basis expansion of a Weyl-invariant element, verifying
/// that every coefficient is constant along Weyl orbits.
pub fn to_m_basis(datum: &RootDatum, e: &GroupAlgebraElement) -> Result<SymmetricFunction> {
    if e.rank() != datum.rank() {
        return Err(Error::Domain(format!(
            "element of rank {} used with datum {}",
            e.rank(),
            datum.tag()
        )));
    }
    let mut out = SymmetricFunction::zero(datum.tag());
    let mut visited = std::collections::BTreeSet::new();
    for (mu, c) in e.terms() {
        if visited.contains(mu) {
            continue;
        }
        let dom = datum.dominant_representative(mu);
        let dom_coeff = e.coeff(&dom);
        for other in datum.orbit(&dom) {
            let oc = e.coeff(&other);
            if oc != dom_coeff {
                return Err(Error::Invariance {
                    left: dom.to_string(),
                    left_coeff: dom_coeff.to_string(),
                    right: other.to_string(),
                    right_coeff: oc.to_string(),
                });
            }
            visited.insert(other);
        }
        debug_assert!(!c.is_zero());
        out.add_term(dom, &dom_coeff);
    }
    Ok(out)
}
