//! Finite-field lattice model of the affine Grassmannian of `GL_n`.
//!
//! After a central shift making `min(lambda) = 0`, every lattice of Cartan
//! type `lambda` satisfies `L_0 <= L <= t^-M L_0` with `M = max(lambda)`, and
//! such lattices are exactly the `F_p[t]`-submodules of
//! `V = t^-M L_0 / L_0 = (F_p[t]/t^M)^n`. We enumerate those submodules
//! exhaustively and classify each one.
//!
//! Vectors of `V` are stored as `n * M` digits in `F_p`: digit `i * M + k`
//! is the coefficient of `t^-(M - k)` in coordinate `i`, so within a
//! coordinate the highest pole comes first. Submodules are kept as reduced
//! row echelon bases of the underlying `F_p`-subspace, which is canonical.
//!
//! Conventions: the lattice `t^-lambda L_0` has Cartan type `lambda`; the
//! Iwasawa type is `nu_i = -min val(x_i)` over `x` in `L` with
//! `x_1 = ... = x_{i-1} = 0`, which is constant on orbits of the lower
//! triangular unipotent loop group. With this choice the big cell of
//! `Gr^(1,0) = P^1` is `S_(1,0)`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::root_data::Coweight;

/// Default bound on `q0^(n * n * M)`.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 24;

/// Finite fields supported by the enumeration.
pub const SUPPORTED_FIELDS: [u8; 2] = [2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuleShape {
    pub n: usize,
    /// truncation level `M`
    pub depth: usize,
    pub p: u8,
}

impl ModuleShape {
    pub fn new(n: usize, depth: usize, p: u8) -> Result<Self> {
        if !SUPPORTED_FIELDS.contains(&p) {
            return Err(Error::Domain(format!(
                "q0 = {p} unsupported; lattice counting runs over F_2 and F_3"
            )));
        }
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        Ok(ModuleShape { n, depth, p })
    }

    pub fn dim(&self) -> usize {
        self.n * self.depth
    }

    fn mul_t(&self, v: &[u8]) -> Vec<u8> {
        let m = self.depth;
        let mut out = vec![0; v.len()];
        for i in 0..self.n {
            for k in 1..m {
                out[i * m + k] = v[i * m + k - 1];
            }
        }
        out
    }

    /// The vector `c * t^-pole * e_coord`, for `1 <= pole <= M`.
    pub fn basis_vector(&self, coord: usize, pole: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim()];
        v[coord * self.depth + (self.depth - pole)] = 1;
        v
    }
}

fn inv(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u16 * b as u16) % p as u16 == 1).unwrap()
}

/// Reduced row echelon form over `F_p`; returns the nonzero rows.
fn rref(mut rows: Vec<Vec<u8>>, p: u8) -> Vec<Vec<u8>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let s = inv(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = ((*x as u16 * s as u16) % p as u16) as u8;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col] as u16;
                for c in 0..width {
                    let sub = (f * rows[r][c] as u16) % p as u16;
                    rows[i][c] = ((rows[i][c] as u16 + p as u16 - sub) % p as u16) as u8;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn leading(row: &[u8]) -> usize {
    row.iter().position(|&x| x != 0).expect("zero row in echelon basis")
}

/// Reduces `v` modulo the echelon basis; zero iff `v` lies in the span.
fn reduce(basis: &[Vec<u8>], v: &[u8], p: u8) -> Vec<u8> {
    let mut v = v.to_vec();
    for row in basis {
        let l = leading(row);
        if v[l] != 0 {
            let f = v[l] as u16;
            for (x, y) in v.iter_mut().zip(row) {
                let sub = (f * *y as u16) % p as u16;
                *x = ((*x as u16 + p as u16 - sub) % p as u16) as u8;
            }
        }
    }
    v
}

/// A lattice `L_0 <= L <= t^-M L_0`, shifted back by a central coweight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    shape: ModuleShape,
    /// central shift `c`: the lattice represented is `t^-c L`
    shift: i64,
    /// canonical echelon basis of `L / L_0`
    basis: Vec<Vec<u8>>,
    cartan_type: Coweight,
    iwasawa_type: Coweight,
}

impl LatticePoint {
    /// The lattice generated over `F_p[t]` by `L_0` and the given vectors of `V`.
    pub fn from_generators(shape: ModuleShape, shift: i64, generators: &[Vec<u8>]) -> Result<Self> {
        for g in generators {
            if g.len() != shape.dim() || g.iter().any(|&x| x >= shape.p) {
                return Err(Error::Domain(format!("malformed generator {g:?}")));
            }
        }
        let basis = submodule_basis(&shape, generators.to_vec());
        Self::from_basis(shape, shift, basis)
    }

    /// `t^-c L_0`.
    pub fn base_point(shape: ModuleShape, shift: i64) -> Self {
        Self::from_basis(shape, shift, vec![]).expect("zero submodule is well formed")
    }

    fn from_basis(shape: ModuleShape, shift: i64, basis: Vec<Vec<u8>>) -> Result<Self> {
        let (cartan_type, iwasawa_type) = classify(&shape, shift, &basis)?;
        Ok(LatticePoint {
            shape,
            shift,
            basis,
            cartan_type,
            iwasawa_type,
        })
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn cartan_type(&self) -> &Coweight {
        &self.cartan_type
    }

    pub fn iwasawa_type(&self) -> &Coweight {
        &self.iwasawa_type
    }
}

/// Reclassifies a lattice from its stored basis; fails on a basis that is
/// not a `t`-stable echelon form.
pub fn classify_lattice(point: &LatticePoint) -> Result<(Coweight, Coweight)> {
    let (c, i) = classify(&point.shape, point.shift, &point.basis)?;
    if c != point.cartan_type || i != point.iwasawa_type {
        return Err(Error::Consistency(format!(
            "stored types ({}, {}) disagree with recomputed ({c}, {i})",
            point.cartan_type, point.iwasawa_type
        )));
    }
    Ok((c, i))
}

/// Echelon basis of the `t`-stable span of the generators.
fn submodule_basis(shape: &ModuleShape, generators: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let mut all = Vec::new();
    for g in generators {
        let mut cur = g;
        for _ in 0..shape.depth {
            if cur.iter().all(|&x| x == 0) {
                break;
            }
            let next = shape.mul_t(&cur);
            all.push(cur);
            cur = next;
        }
    }
    rref(all, shape.p)
}

fn classify(shape: &ModuleShape, shift: i64, basis: &[Vec<u8>]) -> Result<(Coweight, Coweight)> {
    let p = shape.p;
    let m = shape.depth;
    for row in basis {
        if row.len() != shape.dim() || row.iter().all(|&x| x == 0) || row.iter().any(|&x| x >= p) {
            return Err(Error::Domain("malformed lattice basis".into()));
        }
    }
    if rref(basis.to_vec(), p) != basis {
        return Err(Error::Domain("lattice basis is not in canonical echelon form".into()));
    }
    for row in basis {
        let image = shape.mul_t(row);
        if reduce(basis, &image, p).iter().any(|&x| x != 0) {
            return Err(Error::Domain("lattice basis does not span a t-stable subspace".into()));
        }
    }

    // Cartan type: dim t^k S - dim t^{k+1} S counts the parts of size > k.
    let mut dims = vec![basis.len()];
    let mut cur: Vec<Vec<u8>> = basis.to_vec();
    for _ in 0..m {
        cur = rref(cur.iter().map(|r| shape.mul_t(r)).collect(), p);
        dims.push(cur.len());
    }
    let mut parts = vec![0i64; shape.n];
    for k in 0..m {
        let at_least = dims[k] - dims[k + 1];
        if at_least > shape.n {
            return Err(Error::Domain("submodule needs more than n generators".into()));
        }
        for part in parts.iter_mut().take(at_least) {
            *part += 1;
        }
    }
    let cartan = Coweight(parts.iter().map(|a| a + shift).collect());

    // Iwasawa type: largest pole in coordinate i among echelon rows leading there.
    let mut nu = vec![0i64; shape.n];
    for row in basis {
        let l = leading(row);
        let coord = l / m;
        let pole = (m - l % m) as i64;
        nu[coord] = nu[coord].max(pole);
    }
    let iwasawa = Coweight(nu.iter().map(|a| a + shift).collect());
    Ok((cartan, iwasawa))
}

/// Every lattice `L_0 <= L <= t^-M L_0`, classified.
#[derive(Clone, Debug)]
pub struct LatticeCensus {
    shape: ModuleShape,
    points: Vec<LatticePoint>,
    /// (cartan type, iwasawa type) -> count, unshifted
    tally: BTreeMap<(Coweight, Coweight), u64>,
}

impl LatticeCensus {
    pub fn enumerate(shape: ModuleShape) -> Result<Self> {
        Self::enumerate_bounded(shape, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn enumerate_bounded(shape: ModuleShape, bound: u64) -> Result<Self> {
        let exponent = (shape.n * shape.n * shape.depth) as u32;
        let cost = (shape.p as u64).checked_pow(exponent);
        if cost.map_or(true, |c| c > bound) {
            return Err(Error::capacity(
                format!("q0^(n*n*M) for n = {}, M = {}, q0 = {}", shape.n, shape.depth, shape.p),
                cost.map_or_else(|| format!("{}^{exponent}", shape.p), |c| c.to_string()),
                bound,
            ));
        }
        let dim = shape.dim();
        let p = shape.p;
        let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
        let mut queue = VecDeque::from([Vec::<Vec<u8>>::new()]);
        seen.insert(vec![]);
        while let Some(basis) = queue.pop_front() {
            let pivots: BTreeSet<usize> = basis.iter().map(|r| leading(r)).collect();
            let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
            // one representative per nonzero coset of V / S: vectors supported off the pivots
            let total = (p as u64).pow(free.len() as u32);
            for code in 1..total {
                let mut v = vec![0u8; dim];
                let mut c = code;
                for &col in &free {
                    v[col] = (c % p as u64) as u8;
                    c /= p as u64;
                }
                let mut gens = basis.clone();
                gens.push(v);
                let next = submodule_basis(&shape, gens);
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut bases: Vec<Vec<Vec<u8>>> = seen.into_iter().collect();
        bases.sort();
        let mut points = Vec::with_capacity(bases.len());
        let mut tally = BTreeMap::new();
        for b in bases {
            let point = LatticePoint::from_basis(shape, 0, b)?;
            *tally
                .entry((point.cartan_type.clone(), point.iwasawa_type.clone()))
                .or_insert(0) += 1;
            points.push(point);
        }
        Ok(LatticeCensus { shape, points, tally })
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Count for shift-normalized types (`min(cartan) = 0`).
    pub fn count(&self, cartan: &Coweight, iwasawa: &Coweight) -> u64 {
        self.tally
            .get(&(cartan.clone(), iwasawa.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Number of lattices of the given normalized Cartan type.
    pub fn stratum_size(&self, cartan: &Coweight) -> u64 {
        self.tally
            .iter()
            .filter(|((c, _), _)| c == cartan)
            .map(|(_, n)| n)
            .sum()
    }

    /// Iwasawa types met inside a normalized Cartan stratum, with counts.
    pub fn iwasawa_types(&self, cartan: &Coweight) -> BTreeMap<Coweight, u64> {
        self.tally
            .iter()
            .filter(|((c, _), _)| c == cartan)
            .map(|((_, nu), n)| (nu.clone(), *n))
            .collect()
    }
}

/// Splits `lambda` into its central shift `min(lambda)` and the normalized part.
pub fn normalize(lambda: &Coweight) -> (i64, Coweight) {
    let c = lambda.0.iter().copied().min().unwrap_or(0);
    (c, lambda.shift_center(-c))
}

fn check_lattice_input(n: usize, lambda: &Coweight, nu: &Coweight) -> Result<()> {
    if lambda.len() != n || nu.len() != n {
        return Err(Error::Domain(format!(
            "lambda = {lambda} and nu = {nu} must have {n} coordinates"
        )));
    }
    if lambda.0.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain(format!("{lambda} is not dominant for GL{n}")));
    }
    Ok(())
}

/// Census sized for `lambda` (after normalization).
pub fn census_for(n: usize, lambda: &Coweight, q0: u8) -> Result<LatticeCensus> {
    let (_, norm) = normalize(lambda);
    let depth = norm.0.first().copied().unwrap_or(0) as usize;
    LatticeCensus::enumerate(ModuleShape::new(n, depth, q0)?)
}

/// Number of `F_q0`-points of `Gr^lambda ∩ S_nu` by exhaustive enumeration.
pub fn count_lattice_points(n: usize, lambda: &Coweight, nu: &Coweight, q0: u8) -> Result<u64> {
    check_lattice_input(n, lambda, nu)?;
    let census = census_for(n, lambda, q0)?;
    let (c, norm) = normalize(lambda);
    Ok(census.count(&norm, &nu.shift_center(-c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_lattice_points(2, &cw(&[1, 0]), &cw(&[1, 0]), 2).unwrap(), 2);
        assert_eq!(count_lattice_points(2, &cw(&[1, 0]), &cw(&[0, 1]), 2).unwrap(), 1);
        assert_eq!(count_lattice_points(2, &cw(&[2, 0]), &cw(&[1, 1]), 3).unwrap(), 2);
        assert_eq!(count_lattice_points(2, &cw(&[0, 0]), &cw(&[0, 0]), 3).unwrap(), 1);
    }

    #[test]
    fn count_errors() {
        assert!(matches!(count_lattice_points(2, &cw(&[0, 1]), &cw(&[0, 1]), 2), Err(Error::Domain(_))));
        assert!(matches!(count_lattice_points(2, &cw(&[1, 0]), &cw(&[1, 0]), 5), Err(Error::Domain(_))));
        assert!(matches!(
            count_lattice_points(3, &cw(&[3, 0, 0]), &cw(&[1, 1, 1]), 3),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let shape = ModuleShape::new(2, 1, 2).unwrap();
        let base = LatticePoint::base_point(shape, 0);
        assert_eq!(classify_lattice(&base).unwrap(), (cw(&[0, 0]), cw(&[0, 0])));

        let whole = LatticePoint::from_generators(
            shape,
            0,
            &[shape.basis_vector(0, 1), shape.basis_vector(1, 1)],
        )
        .unwrap();
        assert_eq!(classify_lattice(&whole).unwrap(), (cw(&[1, 1]), cw(&[1, 1])));

        let line = LatticePoint::from_generators(shape, 0, &[shape.basis_vector(0, 1)]).unwrap();
        assert_eq!(classify_lattice(&line).unwrap(), (cw(&[1, 0]), cw(&[1, 0])));
        let other = LatticePoint::from_generators(shape, 0, &[shape.basis_vector(1, 1)]).unwrap();
        assert_eq!(classify_lattice(&other).unwrap(), (cw(&[1, 0]), cw(&[0, 1])));
    }

    #[test]
    fn malformed_basis_is_rejected() {
        let shape = ModuleShape::new(2, 2, 2).unwrap();
        // t^-2 e_1 alone is not t-stable
        let mut point = LatticePoint::base_point(shape, 0);
        point.basis = vec![shape.basis_vector(0, 2)];
        assert!(matches!(classify_lattice(&point), Err(Error::Domain(_))));
        assert!(LatticePoint::from_generators(shape, 0, &[vec![0, 5, 0, 0]]).is_err());
    }

    #[test]
    fn p1_census() {
        let census = LatticeCensus::enumerate(ModuleShape::new(2, 1, 3).unwrap()).unwrap();
        assert_eq!(census.stratum_size(&cw(&[1, 0])), 4);
        assert_eq!(census.count(&cw(&[1, 0]), &cw(&[1, 0])), 3);
        assert_eq!(census.count(&cw(&[1, 0]), &cw(&[0, 1])), 1);
        assert_eq!(census.points().len(), 6);
    }
}
