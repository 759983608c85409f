//! Weight multiplicities of irreducible highest-weight modules by the
//! Freudenthal recursion.
//!
//! The module has highest weight `lambda` (a coweight) for the root system
//! of coroots. The invariant form is `B(x, y) = sum_{a > 0} <x, a> <y, a>`
//! over positive roots; it is integral on coweights and positive definite on
//! the span of the coroots, which is all the recursion needs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hall_littlewood::Limits;
use crate::root_data::{Coweight, RootDatum};

#[derive(Clone, Debug)]
pub struct WeightMultiplicities {
    lambda: Coweight,
    /// dominant weight -> multiplicity, every weight of the module present
    dominant: BTreeMap<Coweight, BigInt>,
}

fn form(datum: &RootDatum, x: &Coweight, y: &Coweight) -> i64 {
    datum
        .positive_roots()
        .iter()
        .map(|a| datum.pair_root(x, a) * datum.pair_root(y, a))
        .sum()
}

impl WeightMultiplicities {
    pub fn compute(datum: &RootDatum, lambda: &Coweight) -> Result<Self> {
        Self::compute_with(datum, lambda, &Limits::default())
    }

    pub fn compute_with(datum: &RootDatum, lambda: &Coweight, limits: &Limits) -> Result<Self> {
        datum.require_dominant(lambda)?;
        limits.check(datum, lambda)?;
        let rank = datum.rank();
        let two_rho_vee = datum
            .positive_coroots()
            .iter()
            .fold(Coweight::zero(rank), |acc, a| acc.add(a));
        // (x + rho, x + rho) - (rho, rho) = B(x, x) + B(x, 2 rho)
        let casimir = |x: &Coweight| form(datum, x, x) + form(datum, x, &two_rho_vee);
        let top = casimir(lambda);

        let below = datum.dominant_below(lambda)?;
        let mut dominant: BTreeMap<Coweight, BigInt> = BTreeMap::new();
        for mu in &below {
            if mu == lambda {
                dominant.insert(mu.clone(), BigInt::from(1));
                continue;
            }
            let mut rhs = BigInt::zero();
            for beta in datum.positive_coroots() {
                let mut k = 1;
                loop {
                    let nu = mu.add(&beta.scale(k));
                    let rep = datum.dominant_representative(&nu);
                    let Some(m) = dominant.get(&rep) else { break };
                    rhs += m * BigInt::from(2 * form(datum, &nu, beta));
                    k += 1;
                }
            }
            let denom = top - casimir(mu);
            if denom <= 0 {
                return Err(Error::Consistency(format!(
                    "Freudenthal denominator {denom} at {mu} for lambda = {lambda}"
                )));
            }
            let (m, r) = rhs.div_rem(&BigInt::from(denom));
            if !r.is_zero() || m <= BigInt::zero() {
                return Err(Error::Consistency(format!(
                    "Freudenthal recursion gave {rhs}/{denom} at {mu} for lambda = {lambda}"
                )));
            }
            dominant.insert(mu.clone(), m);
        }
        Ok(Self {
            lambda: lambda.clone(),
            dominant,
        })
    }

    pub fn lambda(&self) -> &Coweight {
        &self.lambda
    }

    /// Multiplicities of the dominant weights, ascending lexicographically.
    pub fn dominant(&self) -> impl Iterator<Item = (&Coweight, &BigInt)> {
        self.dominant.iter()
    }

    /// Multiplicity of an arbitrary weight `nu`.
    pub fn get(&self, datum: &RootDatum, nu: &Coweight) -> BigInt {
        self.dominant
            .get(&datum.dominant_representative(nu))
            .cloned()
            .unwrap_or_default()
    }

    /// `dim V_lambda` as the sum of all weight multiplicities.
    pub fn dimension(&self, datum: &RootDatum) -> BigInt {
        self.dominant
            .iter()
            .map(|(nu, m)| m * BigInt::from(datum.orbit(nu).len()))
            .sum()
    }
}

/// Multiplicity of the weight `nu` in `V_lambda`.
pub fn freudenthal_multiplicity(datum: &RootDatum, lambda: &Coweight, nu: &Coweight) -> Result<BigInt> {
    datum.check_len(nu)?;
    Ok(WeightMultiplicities::compute(datum, lambda)?.get(datum, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_datum, Family};

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    #[test]
    fn examples() {
        let gl3 = build_root_datum(Family::GL, 3).unwrap();
        let lam = cw(&[2, 1, 0]);
        assert_eq!(freudenthal_multiplicity(&gl3, &lam, &lam).unwrap(), BigInt::from(1));
        assert_eq!(freudenthal_multiplicity(&gl3, &lam, &cw(&[1, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(freudenthal_multiplicity(&gl3, &lam, &cw(&[0, 1, 2])).unwrap(), BigInt::from(1));
        assert_eq!(freudenthal_multiplicity(&gl3, &lam, &cw(&[3, 0, 0])).unwrap(), BigInt::from(0));

        let a1 = build_root_datum(Family::A, 1).unwrap();
        assert_eq!(freudenthal_multiplicity(&a1, &cw(&[2]), &cw(&[0])).unwrap(), BigInt::from(1));
        assert_eq!(freudenthal_multiplicity(&a1, &cw(&[2]), &cw(&[1])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn weyl_dimension_formula() {
        // dim V = prod_{a > 0} <lambda + rho, a> / <rho, a> over positive coroots
        // of the module's root system, i.e. the positive roots pairing with coweights.
        for (f, r, lam) in [
            (Family::A, 2, vec![1, 1]),
            (Family::A, 3, vec![1, 0, 1]),
            (Family::B, 2, vec![1, 1]),
            (Family::C, 3, vec![0, 1, 0]),
            (Family::G2, 2, vec![1, 0]),
            (Family::G2, 2, vec![0, 1]),
            (Family::D, 4, vec![0, 1, 0, 0]),
        ] {
            let d = build_root_datum(f, r).unwrap();
            let lam = Coweight(lam);
            // <rho, a^vee> for the module's coroots = the datum's positive roots
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            let rho_doubled = d.positive_coroots().iter().fold(Coweight::zero(r), |a, b| a.add(b));
            for a in d.positive_roots() {
                let h_rho = d.pair_root(&rho_doubled, a);
                num *= BigInt::from(2 * d.pair_root(&lam, a) + h_rho);
                den *= BigInt::from(h_rho);
            }
            let expected = num / den;
            let m = WeightMultiplicities::compute(&d, &lam).unwrap();
            assert_eq!(m.dimension(&d), expected, "{f}{r} {lam}");
        }
    }
}
