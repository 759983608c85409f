//! Hodge-Euler characteristics `L_{lambda nu}(q) = E(Gr^lambda ∩ S_nu; q)`
//! read off from the monomial expansion of `P_lambda`:
//!
//! ```text
//! P_lambda = sum_nu q^{-<lambda + nu, rho>} L_{lambda nu}(q) m_nu
//! ```
//!
//! A table is certified at construction: each `L` must be a polynomial of
//! degree `<lambda + nu, rho>` with a non-negative expansion in powers of
//! `q - 1` (one `q^s (q - 1)^t` per cell of a paving), and `L(1)` must be 1
//! on the diagonal and 0 elsewhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hall_littlewood::HLPolynomial;
use crate::laurent::LaurentPoly;
use crate::root_data::{Coweight, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub nu: Coweight,
    pub l: LaurentPoly,
    /// `<lambda + nu, rho>`
    pub dimension: i64,
    /// `c` with `L = sum_j c_j (q - 1)^j`
    pub qm1: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct EulerTable {
    datum: RootDatum,
    lambda: Coweight,
    rows: BTreeMap<Coweight, EulerRow>,
}

impl EulerTable {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn lambda(&self) -> &Coweight {
        &self.lambda
    }

    pub fn row(&self, nu: &Coweight) -> Option<&EulerRow> {
        self.rows.get(nu)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows by descending dimension, ties broken lexicographically.
    pub fn rows(&self) -> Vec<&EulerRow> {
        let mut rows: Vec<&EulerRow> = self.rows.values().collect();
        rows.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.nu.cmp(&b.nu)));
        rows
    }

    fn lookup(&self, nu: &Coweight) -> Result<Option<&EulerRow>> {
        self.datum.check_len(nu)?;
        if !self.datum.is_dominant(nu) {
            return Err(Error::Domain(format!(
                "{nu} is not dominant; the table is indexed by dominant coweights"
            )));
        }
        Ok(self.rows.get(nu))
    }
}

/// Builds and certifies the table for `P_lambda`.
pub fn euler_table(p: &HLPolynomial) -> Result<EulerTable> {
    let datum = p.datum();
    let lambda = p.lambda();
    let mut rows = BTreeMap::new();
    for (nu, coeff) in p.expansion().terms() {
        let dim = datum.pair_rho(&lambda.add(nu)).to_integer()?;
        let l = coeff.shift(dim);
        if !l.is_polynomial() {
            return Err(Error::Polynomiality {
                nu: nu.to_string(),
                poly: l.to_string(),
            });
        }
        let degree = l.max_exp().unwrap_or(i64::MIN);
        if degree != dim {
            return Err(Error::Dimension {
                nu: nu.to_string(),
                degree,
                expected: dim,
            });
        }
        let qm1 = qm1_expand(&l)?;
        let at_one = l.eval(&BigInt::one())?;
        let expected = if nu == lambda { BigInt::one() } else { BigInt::zero() };
        if at_one != expected {
            return Err(Error::EulerCharacteristic {
                nu: nu.to_string(),
                value: at_one.to_string(),
            });
        }
        rows.insert(
            nu.clone(),
            EulerRow {
                nu: nu.clone(),
                l,
                dimension: dim,
                qm1,
            },
        );
    }
    Ok(EulerTable {
        datum: datum.clone(),
        lambda: lambda.clone(),
        rows,
    })
}

/// Coefficients of `L` in powers of `q - 1` (Taylor expansion at `q = 1`),
/// without the sign check.
pub fn qm1_coefficients(l: &LaurentPoly) -> Result<Vec<BigInt>> {
    if !l.is_polynomial() {
        return Err(Error::Domain(format!("{l} is not a polynomial in q")));
    }
    let Some(deg) = l.max_exp() else {
        return Ok(vec![]);
    };
    let deg = deg as usize;
    // binomial rows C(k, j)
    let mut out = vec![BigInt::zero(); deg + 1];
    let mut binom: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..=deg {
        if k > 0 {
            let mut next = vec![BigInt::one(); k + 1];
            for j in 1..k {
                next[j] = &binom[j - 1] + &binom[j];
            }
            binom = next;
        }
        let a = l.coeff(k as i64);
        if a.is_zero() {
            continue;
        }
        for (j, b) in binom.iter().enumerate() {
            out[j] += &a * b;
        }
    }
    Ok(out)
}

/// Like [`qm1_coefficients`], failing with a positivity violation on any
/// negative coefficient.
pub fn qm1_expand(l: &LaurentPoly) -> Result<Vec<BigInt>> {
    let c = qm1_coefficients(l)?;
    if c.iter().any(|x| x.is_negative()) {
        return Err(Error::Positivity {
            poly: l.to_string(),
            expansion: c.iter().map(ToString::to_string).collect(),
        });
    }
    Ok(c)
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

/// `L_{lambda nu}(q0)`; zero for a dominant `nu` outside the support.
pub fn predict_point_count(table: &EulerTable, nu: &Coweight, q0: u64) -> Result<BigInt> {
    if !is_prime_power(q0) {
        return Err(Error::Domain(format!("q0 = {q0} is not a prime power")));
    }
    match table.lookup(nu)? {
        Some(row) => row.l.eval(&BigInt::from(q0)),
        None => Ok(BigInt::zero()),
    }
}

/// `L_{lambda nu}(1)`, the compactly supported Euler characteristic.
pub fn topological_euler(table: &EulerTable, nu: &Coweight) -> Result<BigInt> {
    match table.lookup(nu)? {
        Some(row) => row.l.eval(&BigInt::one()),
        None => Ok(BigInt::zero()),
    }
}

/// `|Gr^lambda(F_q)| = q^{<lambda, 2 rho>} W(q^-1) / W_lambda(q^-1)` as a polynomial in `q`.
pub fn cartan_stratum_size(datum: &RootDatum, lambda: &Coweight) -> Result<LaurentPoly> {
    let whole = datum.weyl_poincare()?;
    let stab = datum.stabilizer_poincare(lambda)?;
    let ratio = whole.div_exact(&stab).ok_or_else(|| {
        Error::Consistency(format!(
            "W(t) = {} not divisible by W_lambda(t) = {}",
            whole.render("t"),
            stab.render("t")
        ))
    })?;
    Ok(ratio.invert_variable().shift(datum.pair_rho(lambda).doubled()))
}

/// Sum of `|W nu| * L_{lambda nu}(q0)` over the rows.
///
/// Treats every `nu` in a Weyl orbit as having the dominant representative's
/// count. This is a heuristic: it does not hold in general (already for
/// `GL_2`, `lambda = (1,0)` it gives `2q` against `|P^1| = q + 1`); it is
/// reported for comparison only.
pub fn orbit_weighted_total(table: &EulerTable, q0: u64) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for row in table.rows.values() {
        let size = table.datum.orbit(&row.nu).len();
        total += row.l.eval(&BigInt::from(q0))? * BigInt::from(size);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall_littlewood::hall_littlewood;
    use crate::root_data::{build_root_datum, Family};

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn table(f: Family, r: usize, lam: &[i64]) -> EulerTable {
        let d = build_root_datum(f, r).unwrap();
        euler_table(&hall_littlewood(&d, &cw(lam)).unwrap()).unwrap()
    }

    #[test]
    fn table_examples() {
        let t = table(Family::GL, 2, &[1, 0]);
        assert_eq!(t.len(), 1);
        let row = t.row(&cw(&[1, 0])).unwrap();
        assert_eq!((row.l.clone(), row.dimension), (p("q"), 1));

        let t = table(Family::GL, 2, &[2, 0]);
        assert_eq!(t.len(), 2);
        let top = t.row(&cw(&[2, 0])).unwrap();
        assert_eq!((top.l.clone(), top.dimension), (p("q^2"), 2));
        let torus = t.row(&cw(&[1, 1])).unwrap();
        assert_eq!((torus.l.clone(), torus.dimension), (p("q - 1"), 1));
        assert_eq!(t.rows()[0].nu, cw(&[2, 0]));

        let t = table(Family::A, 2, &[0, 0]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.row(&cw(&[0, 0])).unwrap().l, p("1"));
    }

    #[test]
    fn qm1_examples() {
        assert_eq!(qm1_expand(&p("q")).unwrap(), ints(&[1, 1]));
        assert_eq!(qm1_expand(&p("q - 1")).unwrap(), ints(&[0, 1]));
        assert_eq!(qm1_expand(&p("q^2")).unwrap(), ints(&[1, 2, 1]));
        assert_eq!(qm1_expand(&LaurentPoly::zero()).unwrap(), ints(&[]));
        // 2 - q = 1 - (q - 1)
        assert!(matches!(qm1_expand(&p("2 - q")), Err(Error::Positivity { .. })));
        assert!(matches!(qm1_expand(&p("q^-1")), Err(Error::Domain(_))));
    }

    #[test]
    fn point_count_examples() {
        let t = table(Family::GL, 2, &[2, 0]);
        assert_eq!(predict_point_count(&t, &cw(&[1, 1]), 3).unwrap(), BigInt::from(2));
        assert_eq!(predict_point_count(&t, &cw(&[2, 0]), 4).unwrap(), BigInt::from(16));
        assert!(matches!(predict_point_count(&t, &cw(&[0, 2]), 3), Err(Error::Domain(_))));
        assert!(predict_point_count(&t, &cw(&[1, 1]), 6).is_err());
        // dominant but outside the support: empty intersection
        assert_eq!(predict_point_count(&t, &cw(&[3, -1]), 2).unwrap(), BigInt::zero());

        let t = table(Family::GL, 2, &[1, 0]);
        assert_eq!(predict_point_count(&t, &cw(&[1, 0]), 2).unwrap(), BigInt::from(2));

        let t = table(Family::GL, 2, &[0, 0]);
        for q0 in [2, 3, 5, 7, 8, 9] {
            assert_eq!(predict_point_count(&t, &cw(&[0, 0]), q0).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn euler_characteristic_examples() {
        let t = table(Family::GL, 2, &[2, 0]);
        assert_eq!(topological_euler(&t, &cw(&[1, 1])).unwrap(), BigInt::zero());
        assert_eq!(topological_euler(&t, &cw(&[2, 0])).unwrap(), BigInt::one());
        let t = table(Family::GL, 2, &[0, 0]);
        assert_eq!(topological_euler(&t, &cw(&[0, 0])).unwrap(), BigInt::one());
    }

    #[test]
    fn stratum_sizes() {
        let gl2 = build_root_datum(Family::GL, 2).unwrap();
        assert_eq!(cartan_stratum_size(&gl2, &cw(&[1, 0])).unwrap(), p("q + 1"));
        assert_eq!(cartan_stratum_size(&gl2, &cw(&[2, 0])).unwrap(), p("q^2 + q"));
        assert_eq!(cartan_stratum_size(&gl2, &cw(&[1, 1])).unwrap(), p("1"));
        let gl3 = build_root_datum(Family::GL, 3).unwrap();
        // P^2
        assert_eq!(cartan_stratum_size(&gl3, &cw(&[1, 0, 0])).unwrap(), p("q^2 + q + 1"));
    }

    #[test]
    fn orbit_heuristic_is_not_the_stratum_size() {
        let t = table(Family::GL, 2, &[1, 0]);
        assert_eq!(orbit_weighted_total(&t, 2).unwrap(), BigInt::from(4));
        let gl2 = build_root_datum(Family::GL, 2).unwrap();
        let exact = cartan_stratum_size(&gl2, &cw(&[1, 0])).unwrap();
        assert_eq!(exact.eval(&BigInt::from(2)).unwrap(), BigInt::from(3));
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<u64> = (0..30).filter(|&q| is_prime_power(q)).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]);
    }
}
