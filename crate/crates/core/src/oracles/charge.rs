//! Type A oracle: Kostka-Foulkes polynomials from the charge statistic on
//! semistandard tableaux, and Hall-Littlewood polynomials of `GL_n` obtained
//! by inverting `s_lambda = sum_mu K_{lambda mu}(t) P_mu`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::root_data::{build_root_datum, Coweight, Family};
use crate::symfunc::SymmetricFunction;

/// A partition with its zero parts stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Reads a weakly decreasing tuple of non-negative integers.
    pub fn from_coweight(mu: &Coweight) -> Result<Self> {
        if mu.0.iter().any(|&c| c < 0) {
            return Err(Error::Domain(format!("{mu} has negative parts")));
        }
        Self::new(mu.0.iter().map(|&c| c as usize))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn padded(&self, n: usize) -> Coweight {
        let mut v: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        v.resize(n, 0);
        Coweight(v)
    }

    /// All partitions of `n` with at most `max_parts` parts, in decreasing
    /// lexicographic order (a linear extension of dominance).
    pub fn all(n: usize, max_parts: usize) -> Vec<Partition> {
        fn go(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=rem.min(max_part)).rev() {
                cur.push(p);
                go(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, max_parts, &mut Vec::new(), &mut out);
        out
    }
}

/// Semistandard tableau in English notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Tableau { rows };
        if !t.is_semistandard() {
            return Err(Error::Domain(format!("{:?} is not semistandard", t.rows)));
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0) as usize;
        let mut c = vec![0; max];
        for &x in self.rows.iter().flatten() {
            c[x as usize - 1] += 1;
        }
        c
    }

    pub fn is_semistandard(&self) -> bool {
        let shape_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len())
            && self.rows.iter().all(|r| !r.is_empty());
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.iter().all(|&x| x >= 1) && r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above));
        shape_ok && rows_ok && cols_ok
    }

    /// Rows read bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn charge(&self) -> u64 {
        charge(&self.reading_word())
    }
}

/// Charge of a word whose content is a partition.
///
/// Standard subwords are peeled off by scanning leftwards (cyclically) for
/// `1, 2, 3, ...`; within a subword the index rises by one each time the
/// next letter is found only after wrapping around.
pub fn charge(word: &[u32]) -> u64 {
    let mut remaining: Vec<(usize, u32)> = word.iter().copied().enumerate().collect();
    let mut total = 0u64;
    while !remaining.is_empty() {
        let len = remaining.len();
        let mut picked = Vec::new();
        // start just right of the end so the first leftward step reaches the last letter
        let mut cursor = len;
        let mut index = 0u64;
        let mut letter = 1u32;
        loop {
            let mut found = None;
            let mut wrapped = false;
            for step in 1..=len {
                let raw = cursor as isize - step as isize;
                let pos = raw.rem_euclid(len as isize) as usize;
                if raw < 0 {
                    wrapped = true;
                }
                if remaining[pos].1 == letter && !picked.contains(&pos) {
                    found = Some(pos);
                    break;
                }
            }
            let Some(pos) = found else { break };
            if letter > 1 && wrapped {
                index += 1;
            }
            total += index;
            picked.push(pos);
            cursor = pos;
            letter += 1;
        }
        if picked.is_empty() {
            // content is not a partition (no 1 present); treat rest as charge 0
            break;
        }
        picked.sort_unstable();
        for pos in picked.into_iter().rev() {
            remaining.remove(pos);
        }
    }
    total
}

/// All semistandard tableaux of the given shape and content.
pub fn semistandard_tableaux(shape: &[usize], content: &[usize]) -> Vec<Tableau> {
    let mut out = Vec::new();
    if shape.iter().sum::<usize>() != content.iter().sum::<usize>() {
        return out;
    }
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
    fill(shape, content, 0, &mut rows, &mut out);
    out
}

fn fill(shape: &[usize], content: &[usize], letter: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
    if letter == content.len() {
        if rows.iter().zip(shape).all(|(r, &s)| r.len() == s) {
            out.push(Tableau { rows: rows.clone() });
        }
        return;
    }
    let before: Vec<usize> = rows.iter().map(Vec::len).collect();
    strip(shape, content, letter, &before, 0, content[letter], rows, out);
}

/// Adds a horizontal strip of `remaining` copies of `letter + 1`, choosing
/// how many go into row `row` and recursing on the rows below.
#[allow(clippy::too_many_arguments)]
fn strip(
    shape: &[usize],
    content: &[usize],
    letter: usize,
    before: &[usize],
    row: usize,
    remaining: usize,
    rows: &mut Vec<Vec<u32>>,
    out: &mut Vec<Tableau>,
) {
    if remaining == 0 || row == shape.len() {
        if remaining == 0 {
            fill(shape, content, letter + 1, rows, out);
        }
        return;
    }
    // a horizontal strip never places two cells in one column
    let cap = if row == 0 { shape[0] } else { before[row - 1].min(shape[row]) };
    let room = cap.saturating_sub(before[row]);
    for k in (0..=room.min(remaining)).rev() {
        for _ in 0..k {
            rows[row].push(letter as u32 + 1);
        }
        strip(shape, content, letter, before, row + 1, remaining - k, rows, out);
        for _ in 0..k {
            rows[row].pop();
        }
    }
}

/// Kostka number: the number of semistandard tableaux of shape `lambda`, content `mu`.
pub fn kostka_number(lambda: &Partition, mu: &Partition) -> u64 {
    semistandard_tableaux(lambda.parts(), mu.parts()).len() as u64
}

/// `K_{lambda mu}(t) = sum_T t^charge(T)` over tableaux of shape `lambda`, content `mu`.
pub fn kostka_foulkes_charge(lambda: &Partition, mu: &Partition) -> Result<LaurentPoly> {
    if lambda.size() != mu.size() {
        return Err(Error::Domain(format!(
            "|lambda| = {} but |mu| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(LaurentPoly::from_terms(
        semistandard_tableaux(lambda.parts(), mu.parts())
            .iter()
            .map(|t| (t.charge() as i64, 1)),
    ))
}

/// `P_lambda` for `GL_n` in the `m`-basis (coefficients in `q^-1 = t`),
/// computed from Kostka-Foulkes and Kostka numbers alone.
pub fn hl_charge_type_a(n: usize, lambda: &Partition) -> Result<SymmetricFunction> {
    if lambda.num_parts() > n {
        return Err(Error::Domain(format!(
            "{lambda:?} has more than {n} parts"
        )));
    }
    let datum = build_root_datum(Family::GL, n)?;
    let parts = Partition::all(lambda.size(), n);
    let start = parts
        .iter()
        .position(|p| p == lambda)
        .ok_or_else(|| Error::Consistency(format!("{lambda:?} missing from enumeration")))?;

    // row lambda of the inverse Kostka-Foulkes matrix, by forward substitution
    let mut inverse: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    inverse.insert(start, LaurentPoly::one());
    for j in start + 1..parts.len() {
        let mut acc = LaurentPoly::zero();
        for (&i, x) in &inverse {
            let k = kostka_foulkes_charge(&parts[i], &parts[j])?;
            acc -= &(x * &k);
        }
        if !acc.is_zero() {
            inverse.insert(j, acc);
        }
    }

    let mut out = SymmetricFunction::zero(datum.tag());
    for (&i, x) in &inverse {
        for nu in &parts[i..] {
            let k = kostka_number(&parts[i], nu);
            if k == 0 {
                continue;
            }
            let coeff = x.scale(&BigInt::from(k)).invert_variable();
            out.add_term(nu.padded(n), &coeff);
        }
    }
    Ok(out)
}
