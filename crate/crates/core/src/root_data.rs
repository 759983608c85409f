//! Root data, Weyl groups and the coweight combinatorics indexing the Cartan
//! and Iwasawa decompositions.
//!
//! Simple families store coweights in fundamental-coweight coordinates, so
//! that the `i`-th coordinate of `mu` is the pairing `<mu, alpha_i>` with the
//! `i`-th simple root and dominance is coordinatewise non-negativity. `GL_n`
//! uses the standard coordinates on `Z^n`.
//!
//! Cartan matrices follow the Bourbaki/Humphreys convention
//! `cartan[i][j] = <alpha_i, alpha_j^vee>`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Default bound on `|W|` for element enumeration.
pub const DEFAULT_MAX_WEYL_ORDER: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    GL,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
            Family::GL => "GL",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" | "G" => Ok(Family::G2),
            "GL" => Ok(Family::GL),
            other => Err(Error::Config(format!("unsupported family {other:?}"))),
        }
    }
}

/// Identifies a datum; cheap to copy and compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DatumTag {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for DatumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::G2 => write!(f, "G2"),
            fam => write!(f, "{fam}{}", self.rank),
        }
    }
}

/// A coweight as an integer tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Coweight(coords.into())
    }

    pub fn zero(len: usize) -> Self {
        Coweight(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| a * k).collect())
    }

    /// Adds `c` to every coordinate (the central shift of `GL_n`).
    pub fn shift_center(&self, c: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| a + c).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coweight {
    type Err = Error;

    /// Accepts `[2,0]`, `2,0`, `(2, 0)` or `2 0`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')']);
        if inner.trim().is_empty() {
            return Ok(Coweight(vec![]));
        }
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coweight coordinate {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Coweight)
    }
}

impl From<Vec<i64>> for Coweight {
    fn from(v: Vec<i64>) -> Self {
        Coweight(v)
    }
}

impl<const N: usize> From<[i64; N]> for Coweight {
    fn from(v: [i64; N]) -> Self {
        Coweight(v.to_vec())
    }
}

/// Exact half-integer, stored as its doubled value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value; an odd numerator is a consistency failure.
    pub fn to_integer(self) -> Result<i64> {
        if self.is_integer() {
            Ok(self.doubled / 2)
        } else {
            Err(Error::Consistency(format!(
                "expected an integer pairing, got {self}"
            )))
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Integer square matrix acting on coweight coordinates (column vectors).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.data[r * self.n + c] * v[c]).sum())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = self.data.chunks(self.n.max(1)).collect();
        write!(f, "{rows:?}")
    }
}

/// An element of the Weyl group with its lexicographically least reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: IntMatrix,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, mu: &Coweight) -> Coweight {
        Coweight(self.matrix.apply(&mu.0))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Simple roots as integer functionals on coweight coordinates.
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Coweight>,
    /// Positive roots as functionals, with their simple-root coefficients.
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Coweight>,
    /// Sum of positive roots, as a functional: `<mu, 2 rho>`.
    two_rho: Vec<i64>,
    reflections: Vec<IntMatrix>,
}

/// Weyl group order for a supported family.
fn weyl_order(family: Family, rank: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match family {
        Family::A => fact(rank + 1),
        Family::B | Family::C => (1u128 << rank) * fact(rank),
        Family::D => (1u128 << (rank - 1)) * fact(rank),
        Family::G2 => 12,
        Family::GL => fact(rank),
    }
}

fn published_cartan(family: Family, r: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match family {
        Family::A | Family::GL => {
            for i in 1..r {
                link(i - 1, i, -1, -1);
            }
        }
        Family::B => {
            for i in 1..r {
                if i == r - 1 {
                    link(i - 1, i, -2, -1);
                } else {
                    link(i - 1, i, -1, -1);
                }
            }
        }
        Family::C => {
            for i in 1..r {
                if i == r - 1 {
                    link(i - 1, i, -1, -2);
                } else {
                    link(i - 1, i, -1, -1);
                }
            }
        }
        Family::D => {
            // chain 0 - 1 - ... - (r-3), with r-2 and r-1 both attached to r-3
            for i in 1..r.saturating_sub(2) {
                link(i - 1, i, -1, -1);
            }
            if r >= 3 {
                link(r - 3, r - 2, -1, -1);
                link(r - 3, r - 1, -1, -1);
            }
        }
        Family::G2 => {
            link(0, 1, -1, -3);
        }
    }
    a
}

/// Builds a root datum for a supported family and rank.
///
/// For `GL` the rank is `n`, the dimension of the coweight lattice `Z^n`.
pub fn build_root_datum(family: Family, rank: usize) -> Result<RootDatum> {
    let ok = match family {
        Family::A | Family::B | Family::C | Family::GL => rank >= 1,
        Family::D => rank >= 2,
        Family::G2 => rank == 2,
    };
    if !ok {
        return Err(Error::Config(format!(
            "unsupported family/rank combination {family} rank {rank}"
        )));
    }
    let (simple_roots, simple_coroots, cartan) = match family {
        Family::GL => {
            let n = rank;
            let mut roots = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                roots.push(v);
            }
            let coroots: Vec<Coweight> = roots.iter().cloned().map(Coweight).collect();
            let cartan = roots
                .iter()
                .map(|a| coroots.iter().map(|c| dot(a, &c.0)).collect())
                .collect();
            (roots, coroots, cartan)
        }
        _ => {
            let cartan = published_cartan(family, rank);
            let roots: Vec<Vec<i64>> = (0..rank)
                .map(|i| {
                    let mut v = vec![0; rank];
                    v[i] = 1;
                    v
                })
                .collect();
            // alpha_j^vee has i-th coordinate <alpha_i, alpha_j^vee> = cartan[i][j]
            let coroots = (0..rank)
                .map(|j| Coweight((0..rank).map(|i| cartan[i][j]).collect()))
                .collect();
            (roots, coroots, cartan)
        }
    };
    let dim = rank;
    let r = simple_roots.len();

    // Closure on simple-root coefficient vectors.
    let root_coeffs = positive_closure(r, |k, j| (0..r).map(|i| k[i] * cartan[i][j]).sum());
    let coroot_coeffs = positive_closure(r, |k, j| (0..r).map(|i| k[i] * cartan[j][i]).sum());

    let combine = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
        let mut v = vec![0; dim];
        for (c, b) in coeffs.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        v
    };
    let positive_roots: Vec<Vec<i64>> = root_coeffs.iter().map(|k| combine(k, &simple_roots)).collect();
    let coroot_basis: Vec<Vec<i64>> = simple_coroots.iter().map(|c| c.0.clone()).collect();
    let positive_coroots: Vec<Coweight> = coroot_coeffs
        .iter()
        .map(|k| Coweight(combine(k, &coroot_basis)))
        .collect();

    let mut two_rho = vec![0; dim];
    for a in &positive_roots {
        for (x, y) in two_rho.iter_mut().zip(a) {
            *x += y;
        }
    }

    let reflections = (0..r)
        .map(|j| {
            // s_j(mu) = mu - <mu, alpha_j> alpha_j^vee
            let mut m = IntMatrix::identity(dim);
            for row in 0..dim {
                for col in 0..dim {
                    m.data[row * dim + col] -= simple_coroots[j].0[row] * simple_roots[j][col];
                }
            }
            m
        })
        .collect();

    let datum = RootDatum {
        family,
        rank,
        cartan,
        simple_roots,
        simple_coroots,
        positive_roots,
        positive_coroots,
        two_rho,
        reflections,
    };
    datum.check_invariants()?;
    Ok(datum)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive roots (as simple-root coefficient vectors) of the root system
/// whose reflections act by `s_j(k) = k - pair(k, j) e_j`.
fn positive_closure(r: usize, pair: impl Fn(&[i64], usize) -> i64) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for j in 0..r {
        let mut e = vec![0; r];
        e[j] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(k) = queue.pop_front() {
        for j in 0..r {
            let p = pair(&k, j);
            if p == 0 {
                continue;
            }
            let mut next = k.clone();
            next[j] -= p;
            if next.iter().all(|&c| c >= 0) && next.iter().any(|&c| c > 0) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|k| (k.iter().sum::<i64>(), std::cmp::Reverse(k.clone())));
    out
}

impl RootDatum {
    pub fn family(&self) -> Family {
        self.family
    }

    /// Lattice dimension; for `GL_n` this is `n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn tag(&self) -> DatumTag {
        DatumTag {
            family: self.family,
            rank: self.rank,
        }
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.positive_coroots
    }

    pub fn simple_reflection(&self, j: usize) -> &IntMatrix {
        &self.reflections[j]
    }

    pub fn weyl_order(&self) -> u128 {
        weyl_order(self.family, self.rank)
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.semisimple_rank();
        if self.family != Family::GL && self.cartan != published_cartan(self.family, r) {
            return Err(Error::Consistency("Cartan matrix does not match its family".into()));
        }
        let expected = match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::G2 => 6,
            Family::GL => self.rank * (self.rank - 1) / 2,
        };
        if self.positive_coroots.len() != expected || self.positive_roots.len() != expected {
            return Err(Error::Consistency(format!(
                "{} positive coroots, expected {expected}",
                self.positive_coroots.len()
            )));
        }
        for c in &self.simple_coroots {
            if self.pair_rho(c) != HalfInt::from_int(1) {
                return Err(Error::Consistency(format!("<{c}, rho> != 1")));
            }
        }
        Ok(())
    }

    pub fn check_len(&self, mu: &Coweight) -> Result<()> {
        if mu.len() != self.rank {
            return Err(Error::Domain(format!(
                "coweight {mu} has {} coordinates, datum {} needs {}",
                mu.len(),
                self.tag(),
                self.rank
            )));
        }
        Ok(())
    }

    /// `<mu, alpha_j>` for the `j`-th simple root.
    pub fn simple_pairing(&self, mu: &Coweight, j: usize) -> i64 {
        dot(&self.simple_roots[j], &mu.0)
    }

    pub fn pair_root(&self, mu: &Coweight, root: &[i64]) -> i64 {
        dot(root, &mu.0)
    }

    /// `<mu, rho>` where `2 rho` is the sum of the positive roots.
    pub fn pair_rho(&self, mu: &Coweight) -> HalfInt {
        HalfInt::from_doubled(dot(&self.two_rho, &mu.0))
    }

    pub fn is_dominant(&self, mu: &Coweight) -> bool {
        mu.len() == self.rank && (0..self.semisimple_rank()).all(|j| self.simple_pairing(mu, j) >= 0)
    }

    pub fn require_dominant(&self, mu: &Coweight) -> Result<()> {
        self.check_len(mu)?;
        if !self.is_dominant(mu) {
            return Err(Error::Domain(format!("{mu} is not dominant for {}", self.tag())));
        }
        Ok(())
    }

    pub fn reflect(&self, mu: &Coweight, j: usize) -> Coweight {
        let p = self.simple_pairing(mu, j);
        Coweight(
            mu.0.iter()
                .zip(&self.simple_coroots[j].0)
                .map(|(m, c)| m - p * c)
                .collect(),
        )
    }

    /// The dominant element of the Weyl orbit of `mu`.
    pub fn dominant_representative(&self, mu: &Coweight) -> Coweight {
        let mut cur = mu.clone();
        'outer: loop {
            for j in 0..self.semisimple_rank() {
                if self.simple_pairing(&cur, j) < 0 {
                    cur = self.reflect(&cur, j);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// All Weyl group elements, identity first, ordered by length and then
    /// lexicographically by reduced word.
    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>> {
        self.weyl_elements_bounded(DEFAULT_MAX_WEYL_ORDER)
    }

    pub fn weyl_elements_bounded(&self, bound: u64) -> Result<Vec<WeylElement>> {
        let order = self.weyl_order();
        if order > bound as u128 {
            return Err(Error::capacity(format!("|W({})|", self.tag()), order, bound));
        }
        let gens: Vec<usize> = (0..self.semisimple_rank()).collect();
        Ok(self.generate_subgroup(&gens))
    }

    /// Breadth-first closure of the subgroup generated by the given simple
    /// reflections; appending generators in increasing order at each level
    /// yields lexicographically least reduced words.
    fn generate_subgroup(&self, gens: &[usize]) -> Vec<WeylElement> {
        let dim = self.rank;
        let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
        let id = WeylElement {
            word: vec![],
            matrix: IntMatrix::identity(dim),
        };
        seen.insert(id.matrix.clone(), ());
        let mut all = vec![id];
        let mut level_start = 0;
        loop {
            let level_end = all.len();
            for idx in level_start..level_end {
                for &j in gens {
                    let m = all[idx].matrix.mul(&self.reflections[j]);
                    if seen.contains_key(&m) {
                        continue;
                    }
                    seen.insert(m.clone(), ());
                    let mut word = all[idx].word.clone();
                    word.push(j);
                    all.push(WeylElement { word, matrix: m });
                }
            }
            if all.len() == level_end {
                break;
            }
            level_start = level_end;
        }
        all
    }

    /// Number of positive coroots sent to negative coroots by `w`.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let pos: BTreeSet<&Coweight> = self.positive_coroots.iter().collect();
        self.positive_coroots
            .iter()
            .filter(|c| {
                let image = w.apply(c);
                !pos.contains(&image)
            })
            .count()
    }

    /// The Weyl orbit of `mu`, each element once.
    pub fn orbit(&self, mu: &Coweight) -> BTreeSet<Coweight> {
        let mut seen = BTreeSet::new();
        seen.insert(mu.clone());
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(cur) = queue.pop_front() {
            for j in 0..self.semisimple_rank() {
                let next = self.reflect(&cur, j);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Simple reflections fixing the dominant coweight `lambda`.
    pub fn stabilizer_generators(&self, lambda: &Coweight) -> Vec<usize> {
        (0..self.semisimple_rank())
            .filter(|&j| self.simple_pairing(lambda, j) == 0)
            .collect()
    }

    /// `sum_{w in W_lambda} t^{l(w)}` as a polynomial in `t`.
    pub fn stabilizer_poincare(&self, lambda: &Coweight) -> Result<LaurentPoly> {
        self.require_dominant(lambda)?;
        let gens = self.stabilizer_generators(lambda);
        Ok(poincare(&self.generate_subgroup(&gens)))
    }

    /// Poincare polynomial of the whole Weyl group, in `t`.
    pub fn weyl_poincare(&self) -> Result<LaurentPoly> {
        Ok(poincare(&self.weyl_elements()?))
    }

    /// Dominant `nu` with `lambda - nu` a non-negative integer combination of
    /// simple coroots, sorted by descending `<nu, rho>` then lexicographically.
    pub fn dominant_below(&self, lambda: &Coweight) -> Result<Vec<Coweight>> {
        self.require_dominant(lambda)?;
        // height(lambda - nu) = <lambda - nu, rho> <= <lambda, rho> since <nu, rho> >= 0
        let max_height = self.pair_rho(lambda).doubled() / 2;
        let r = self.semisimple_rank();
        let mut out = Vec::new();
        let mut coeffs = vec![0i64; r];
        self.enumerate_below(lambda, 0, max_height, &mut coeffs, &mut out);
        out.sort_by(|a, b| {
            self.pair_rho(b)
                .cmp(&self.pair_rho(a))
                .then_with(|| a.cmp(b))
        });
        Ok(out)
    }

    fn enumerate_below(
        &self,
        lambda: &Coweight,
        j: usize,
        budget: i64,
        coeffs: &mut Vec<i64>,
        out: &mut Vec<Coweight>,
    ) {
        if j == coeffs.len() {
            let mut nu = lambda.clone();
            for (k, c) in coeffs.iter().zip(&self.simple_coroots) {
                for (x, y) in nu.0.iter_mut().zip(&c.0) {
                    *x -= k * y;
                }
            }
            if self.is_dominant(&nu) {
                out.push(nu);
            }
            return;
        }
        for k in 0..=budget {
            coeffs[j] = k;
            self.enumerate_below(lambda, j + 1, budget - k, coeffs, out);
        }
        coeffs[j] = 0;
    }

    /// Whether `lambda - nu` is a non-negative integer combination of simple
    /// coroots.
    pub fn is_below(&self, lambda: &Coweight, nu: &Coweight) -> bool {
        match self.coroot_coefficients(&lambda.sub(nu)) {
            Some(k) => k.iter().all(|&c| c >= 0),
            None => false,
        }
    }

    /// Coefficients of `mu` in the basis of simple coroots, if `mu` lies in
    /// the coroot lattice.
    pub fn coroot_coefficients(&self, mu: &Coweight) -> Option<Vec<i64>> {
        match self.family {
            Family::GL => {
                // e_i - e_{i+1} basis: partial sums; total must vanish.
                if mu.0.iter().sum::<i64>() != 0 {
                    return None;
                }
                let mut acc = 0;
                let n = mu.len();
                Some(
                    mu.0[..n.saturating_sub(1)]
                        .iter()
                        .map(|x| {
                            acc += x;
                            acc
                        })
                        .collect(),
                )
            }
            _ => solve_integer(&self.simple_coroots, &mu.0),
        }
    }

    /// All dominant coweights with `<lambda, 2 rho> <= bound`; for `GL_n`
    /// only those with last coordinate 0 (one representative per central shift).
    pub fn dominant_up_to(&self, bound: i64) -> Vec<Coweight> {
        let mut out = Vec::new();
        if bound < 0 {
            return out;
        }
        match self.family {
            Family::GL => {
                let n = self.rank;
                // differences d_i = lambda_i - lambda_{i+1} >= 0, weight of d_i is i(n-i)
                let weights: Vec<i64> = (1..n).map(|i| (i * (n - i)) as i64).collect();
                for d in bounded_vectors(&weights, bound) {
                    let mut lam = vec![0i64; n];
                    for i in (0..n.saturating_sub(1)).rev() {
                        lam[i] = lam[i + 1] + d[i];
                    }
                    out.push(Coweight(lam));
                }
            }
            _ => {
                for c in bounded_vectors(&self.two_rho, bound) {
                    out.push(Coweight(c));
                }
            }
        }
        out.sort_by(|a, b| {
            self.pair_rho(a)
                .cmp(&self.pair_rho(b))
                .then_with(|| a.cmp(b))
        });
        out
    }
}

fn poincare(elements: &[WeylElement]) -> LaurentPoly {
    LaurentPoly::from_terms(elements.iter().map(|w| (w.length() as i64, 1)))
}

/// Non-negative integer vectors `c` with `sum c_i w_i <= bound` (`w_i > 0`).
fn bounded_vectors(weights: &[i64], bound: i64) -> Vec<Vec<i64>> {
    fn go(weights: &[i64], j: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if j == weights.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0;
        while k * weights[j] <= budget {
            cur.push(k);
            go(weights, j + 1, budget - k * weights[j], cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, bound, &mut Vec::new(), &mut out);
    out
}

/// Solves `sum k_j basis_j = target` over the integers when the basis is
/// square and nonsingular (fraction-free elimination).
fn solve_integer(basis: &[Coweight], target: &[i64]) -> Option<Vec<i64>> {
    let n = basis.len();
    if n == 0 {
        return if target.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
    }
    // augmented matrix: rows = coordinates, columns = basis vectors + target
    let mut m: Vec<Vec<num_rational::Ratio<i64>>> = (0..n)
        .map(|row| {
            let mut v: Vec<_> = basis.iter().map(|b| b.0[row].into()).collect();
            v.push(target[row].into());
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0.into())?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0.into() {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            let v = row[n];
            v.is_integer().then(|| v.to_integer())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(f: Family, r: usize) -> RootDatum {
        build_root_datum(f, r).unwrap()
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    #[test]
    fn build_examples() {
        let a1 = datum(Family::A, 1);
        assert_eq!(a1.positive_coroots().len(), 1);
        assert_eq!(a1.weyl_elements().unwrap().len(), 2);

        assert_eq!(datum(Family::G2, 2).positive_coroots().len(), 6);

        let gl2 = datum(Family::GL, 2);
        assert_eq!(gl2.positive_coroots(), &[cw(&[1, -1])]);
        assert_eq!(gl2.pair_rho(&cw(&[5, 2])), HalfInt::from_doubled(3));
    }

    #[test]
    fn unsupported_combinations() {
        assert!(matches!(build_root_datum(Family::D, 1), Err(Error::Config(_))));
        assert!(matches!(build_root_datum(Family::G2, 3), Err(Error::Config(_))));
        assert!(matches!(build_root_datum(Family::A, 0), Err(Error::Config(_))));
        assert!("E8".parse::<Family>().is_err());
    }

    #[test]
    fn published_matrices() {
        assert_eq!(datum(Family::B, 2).cartan(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(datum(Family::C, 2).cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(datum(Family::G2, 2).cartan(), &[vec![2, -1], vec![-3, 2]]);
        assert_eq!(
            datum(Family::D, 4).cartan(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2]
            ]
        );
        assert_eq!(datum(Family::GL, 3).cartan(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn root_counts() {
        for (f, r, n) in [
            (Family::A, 3, 6),
            (Family::B, 3, 9),
            (Family::C, 3, 9),
            (Family::D, 4, 12),
            (Family::D, 2, 2),
            (Family::G2, 2, 6),
            (Family::GL, 4, 6),
            (Family::GL, 1, 0),
        ] {
            assert_eq!(datum(f, r).positive_coroots().len(), n, "{f}{r}");
        }
    }

    #[test]
    fn weyl_lengths() {
        let mut a2: Vec<usize> = datum(Family::A, 2)
            .weyl_elements()
            .unwrap()
            .iter()
            .map(|w| w.length())
            .collect();
        a2.sort();
        assert_eq!(a2, vec![0, 1, 1, 2, 2, 3]);

        let b2 = datum(Family::B, 2).weyl_elements().unwrap();
        assert_eq!(b2.len(), 8);
        assert_eq!(b2.iter().map(|w| w.length()).max(), Some(4));
        assert!(b2[0].word.is_empty());
        assert_eq!(datum(Family::G2, 2).weyl_elements().unwrap().len(), 12);
        assert_eq!(datum(Family::D, 4).weyl_elements().unwrap().len(), 192);
    }

    #[test]
    fn weyl_capacity() {
        let a7 = datum(Family::A, 7);
        match a7.weyl_elements() {
            Err(Error::Capacity { actual, .. }) => assert_eq!(actual, "40320"),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn lengths_are_inversion_counts() {
        for (f, r) in [(Family::A, 3), (Family::B, 3), (Family::C, 2), (Family::G2, 2), (Family::D, 4), (Family::GL, 4)] {
            let d = datum(f, r);
            for w in d.weyl_elements().unwrap() {
                assert_eq!(d.inversion_count(&w), w.length(), "{f}{r} {:?}", w.word);
            }
        }
    }

    #[test]
    fn words_are_ordered() {
        let d = datum(Family::A, 3);
        let ws = d.weyl_elements().unwrap();
        for pair in ws.windows(2) {
            let key = |w: &WeylElement| (w.length(), w.word.clone());
            assert!(key(&pair[0]) < key(&pair[1]));
        }
    }

    #[test]
    fn rho_pairing_examples() {
        let gl2 = datum(Family::GL, 2);
        assert_eq!(gl2.pair_rho(&cw(&[3, 1])).to_integer().unwrap(), 1);
        assert_eq!(gl2.pair_rho(&cw(&[4, 0])).to_integer().unwrap(), 2);
        assert_eq!(gl2.pair_rho(&cw(&[1, 0])), HalfInt::from_doubled(1));
        assert!(gl2.pair_rho(&cw(&[1, 0])).to_integer().is_err());
        for (f, r) in [(Family::B, 3), (Family::G2, 2), (Family::D, 3)] {
            let d = datum(f, r);
            assert_eq!(d.pair_rho(&Coweight::zero(r)), HalfInt::from_int(0));
            for c in d.simple_coroots() {
                assert_eq!(d.pair_rho(c), HalfInt::from_int(1));
            }
        }
    }

    #[test]
    fn dominant_below_examples() {
        let gl2 = datum(Family::GL, 2);
        assert_eq!(gl2.dominant_below(&cw(&[1, 0])).unwrap(), vec![cw(&[1, 0])]);
        assert_eq!(gl2.dominant_below(&cw(&[2, 0])).unwrap(), vec![cw(&[2, 0]), cw(&[1, 1])]);
        assert_eq!(gl2.dominant_below(&cw(&[0, 0])).unwrap(), vec![cw(&[0, 0])]);
        assert!(matches!(gl2.dominant_below(&cw(&[0, 1])), Err(Error::Domain(_))));
        let a2 = datum(Family::A, 2);
        // adjoint: theta = (1,1) in fundamental coordinates, below it only 0
        assert_eq!(a2.dominant_below(&cw(&[1, 1])).unwrap(), vec![cw(&[1, 1]), cw(&[0, 0])]);
        // (3,0) - (1,1) = alpha_1^vee
        assert_eq!(a2.dominant_below(&cw(&[3, 0])).unwrap(), vec![cw(&[3, 0]), cw(&[1, 1]), cw(&[0, 0])]);
    }

    #[test]
    fn orbit_examples() {
        let gl2 = datum(Family::GL, 2);
        assert_eq!(gl2.orbit(&cw(&[1, 0])).len(), 2);
        assert_eq!(gl2.orbit(&cw(&[1, 1])).len(), 1);
        assert_eq!(datum(Family::GL, 3).orbit(&cw(&[2, 1, 0])).len(), 6);
    }

    #[test]
    fn stabilizer_examples() {
        let gl2 = datum(Family::GL, 2);
        assert_eq!(gl2.stabilizer_poincare(&cw(&[2, 0])).unwrap(), LaurentPoly::one());
        assert_eq!(
            gl2.stabilizer_poincare(&cw(&[1, 1])).unwrap(),
            LaurentPoly::from_terms([(0, 1), (1, 1)])
        );
        let gl3 = datum(Family::GL, 3);
        assert_eq!(
            gl3.stabilizer_poincare(&cw(&[1, 1, 0])).unwrap(),
            LaurentPoly::from_terms([(0, 1), (1, 1)])
        );
        assert!(gl3.stabilizer_poincare(&cw(&[0, 1, 1])).is_err());
    }

    #[test]
    fn gl_bounded_enumeration() {
        let gl2 = datum(Family::GL, 2);
        assert_eq!(gl2.dominant_up_to(2), vec![cw(&[0, 0]), cw(&[1, 0]), cw(&[2, 0])]);
        assert_eq!(gl2.dominant_up_to(0), vec![cw(&[0, 0])]);
        let a1 = datum(Family::A, 1);
        assert_eq!(a1.dominant_up_to(2), vec![cw(&[0]), cw(&[1]), cw(&[2])]);
    }

    #[test]
    fn coroot_lattice_membership() {
        let b2 = datum(Family::B, 2);
        assert!(b2.is_below(&cw(&[0, 2]), &cw(&[0, 0])));
        assert!(b2.is_below(&cw(&[0, 1]), &cw(&[0, 0])));
        // index-2 sublattice: (1,0) is not in the coroot lattice
        assert!(!b2.is_below(&cw(&[1, 0]), &cw(&[0, 0])));
        let gl3 = datum(Family::GL, 3);
        assert!(gl3.is_below(&cw(&[2, 0, 0]), &cw(&[1, 1, 0])));
        assert!(!gl3.is_below(&cw(&[1, 1, 0]), &cw(&[2, 0, 0])));
        assert!(!gl3.is_below(&cw(&[2, 0, 0]), &cw(&[1, 0, 0])));
    }

    #[test]
    fn coweight_parsing() {
        assert_eq!("[2,0]".parse::<Coweight>().unwrap(), cw(&[2, 0]));
        assert_eq!("(1, -1, 0)".parse::<Coweight>().unwrap(), cw(&[1, -1, 0]));
        assert_eq!("3 0".parse::<Coweight>().unwrap(), cw(&[3, 0]));
        assert!("[a]".parse::<Coweight>().is_err());
        assert_eq!(cw(&[2, -1]).to_string(), "[2,-1]");
    }
}
