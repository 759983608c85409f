//! Hall-Littlewood polynomials by exact Weyl symmetrization.
//!
//! For dominant `lambda`,
//!
//! ```text
//! P_lambda = v_lambda(t)^-1 sum_{w in W} w( x^lambda prod_{a > 0} (1 - t x^-a) / (1 - x^-a) )
//! ```
//!
//! with the product over positive coroots `a`. Since
//! `w(prod (1 - x^-a)) = sign(w) x^{rho - w rho} prod (1 - x^-a)`, every term
//! shares the denominator `prod (1 - x^-a)`: the numerators are summed, the
//! denominator is removed one factor at a time by exact division, and the
//! result is divided exactly by the stabilizer Poincare polynomial
//! `v_lambda(t)`. Finally `t` becomes `q^-1`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::oracles::freudenthal::WeightMultiplicities;
use crate::root_data::{Coweight, RootDatum, DEFAULT_MAX_WEYL_ORDER};
use crate::symfunc::{to_m_basis, GroupAlgebraElement, SymmetricFunction};

/// Corpus limits; configuration, not algorithmic assumptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_weyl_order: u64,
    /// Bound on `<lambda, 2 rho>`.
    pub max_two_rho: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_weyl_order: DEFAULT_MAX_WEYL_ORDER,
            max_two_rho: 12,
        }
    }
}

impl Limits {
    pub fn with_max_two_rho(max_two_rho: i64) -> Self {
        Limits {
            max_two_rho,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, datum: &RootDatum, lambda: &Coweight) -> Result<()> {
        let order = datum.weyl_order();
        if order > self.max_weyl_order as u128 {
            return Err(Error::capacity(
                format!("|W({})| for lambda = {lambda}", datum.tag()),
                order,
                self.max_weyl_order,
            ));
        }
        let two_rho = datum.pair_rho(lambda).doubled();
        if two_rho > self.max_two_rho {
            return Err(Error::capacity(
                format!("<lambda, 2 rho> for lambda = {lambda}"),
                two_rho,
                self.max_two_rho,
            ));
        }
        Ok(())
    }
}

/// `P_lambda` in the `m`-basis, coefficients in `Z[q^-1]`.
#[derive(Clone, Debug)]
pub struct HLPolynomial {
    datum: RootDatum,
    lambda: Coweight,
    expansion: SymmetricFunction,
}

impl HLPolynomial {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn lambda(&self) -> &Coweight {
        &self.lambda
    }

    pub fn expansion(&self) -> &SymmetricFunction {
        &self.expansion
    }

    /// Checks unitriangularity, support and the absence of positive q-powers.
    fn validate(&self) -> Result<()> {
        if !self.expansion.coeff(&self.lambda).is_one() {
            return Err(Error::Consistency(format!(
                "coefficient of m{} in P{} is {}",
                self.lambda,
                self.lambda,
                self.expansion.coeff(&self.lambda)
            )));
        }
        for (nu, c) in self.expansion.terms() {
            if !self.datum.is_below(&self.lambda, nu) {
                return Err(Error::Consistency(format!(
                    "m{nu} in P{} but {nu} is not below {}",
                    self.lambda, self.lambda
                )));
            }
            if c.max_exp().is_some_and(|e| e > 0) {
                return Err(Error::Consistency(format!(
                    "coefficient {c} of m{nu} has positive powers of q"
                )));
            }
        }
        Ok(())
    }
}

pub fn hall_littlewood(datum: &RootDatum, lambda: &Coweight) -> Result<HLPolynomial> {
    hall_littlewood_with(datum, lambda, &Limits::default())
}

pub fn hall_littlewood_with(datum: &RootDatum, lambda: &Coweight, limits: &Limits) -> Result<HLPolynomial> {
    datum.require_dominant(lambda)?;
    limits.check(datum, lambda)?;
    let weyl = datum.weyl_elements_bounded(limits.max_weyl_order)?;
    let rank = datum.rank();
    let coroots = datum.positive_coroots();

    // x^lambda prod (1 - t x^-a), coefficients as polynomials in t
    let mut numer = GroupAlgebraElement::monomial(lambda.clone(), LaurentPoly::one());
    for a in coroots {
        let mut factor = GroupAlgebraElement::monomial(Coweight::zero(rank), LaurentPoly::one());
        factor.add_term(a.scale(-1), &LaurentPoly::monomial(-1, 1));
        numer = numer.multiply(&factor)?;
    }

    let two_rho_vee = coroots
        .iter()
        .fold(Coweight::zero(rank), |acc, a| acc.add(a));

    let total = weyl
        .par_iter()
        .map(|w| -> Result<GroupAlgebraElement> {
            let moved = w.apply(&two_rho_vee).sub(&two_rho_vee);
            if moved.0.iter().any(|c| c % 2 != 0) {
                return Err(Error::Consistency(format!(
                    "w(2 rho) - 2 rho = {moved} is not even"
                )));
            }
            let shift = Coweight(moved.0.iter().map(|c| c / 2).collect());
            let sign = w.sign();
            let mut term = GroupAlgebraElement::zero(rank);
            for (mu, c) in numer.terms() {
                let c = if sign < 0 { -c } else { c.clone() };
                term.add_term(w.apply(mu).add(&shift), &c);
            }
            Ok(term)
        })
        .try_reduce(
            || GroupAlgebraElement::zero(rank),
            |a, b| a.add(&b),
        )?;

    let mut quotient = total;
    for a in coroots {
        quotient = quotient.div_one_minus(a).ok_or_else(|| {
            Error::Consistency(format!(
                "symmetrized numerator for lambda = {lambda} not divisible by 1 - x^-{a}"
            ))
        })?;
    }

    let stab = datum.stabilizer_poincare(lambda)?;
    let mut in_q = GroupAlgebraElement::zero(rank);
    for (mu, c) in quotient.terms() {
        let qt = c.div_exact(&stab).ok_or_else(|| {
            Error::Consistency(format!(
                "coefficient {} not divisible by v_lambda(t) = {}",
                c.render("t"),
                stab.render("t")
            ))
        })?;
        in_q.add_term(mu.clone(), &qt.invert_variable());
    }

    let expansion = to_m_basis(datum, &in_q)?;
    let p = HLPolynomial {
        datum: datum.clone(),
        lambda: lambda.clone(),
        expansion,
    };
    p.validate()?;
    Ok(p)
}

/// Irreducible character with highest coweight `lambda`, from Freudenthal
/// multiplicities.
pub fn weyl_character(datum: &RootDatum, lambda: &Coweight) -> Result<SymmetricFunction> {
    weyl_character_with(datum, lambda, &Limits::default())
}

pub fn weyl_character_with(datum: &RootDatum, lambda: &Coweight, limits: &Limits) -> Result<SymmetricFunction> {
    let mults = WeightMultiplicities::compute_with(datum, lambda, limits)?;
    SymmetricFunction::from_terms(
        datum,
        mults
            .dominant()
            .map(|(nu, m)| (nu.clone(), LaurentPoly::constant(m.clone()))),
    )
}

/// Substitutes `t = q^-1 -> t0` coefficientwise.
pub fn specialize_t(f: &SymmetricFunction, t0: i64) -> Result<SymmetricFunction> {
    let t0 = num_bigint::BigInt::from(t0);
    let mut out = SymmetricFunction::zero(f.datum());
    for (nu, c) in f.terms() {
        if c.max_exp().is_some_and(|e| e > 0) {
            return Err(Error::Domain(format!(
                "coefficient {c} of m{nu} is not a polynomial in t = q^-1"
            )));
        }
        let value = c.invert_variable().eval(&t0)?;
        out.add_term(nu.clone(), &LaurentPoly::constant(value));
    }
    Ok(out)
}
