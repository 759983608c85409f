//! Batch commands behind the command-line interface.
//!
//! Independent `lambda` jobs run on the ambient rayon pool; results are
//! collected in input order so output never depends on scheduling.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hall_littlewood::{hall_littlewood, specialize_t, weyl_character, HLPolynomial};
use crate::hodge_euler::{cartan_stratum_size, euler_table, predict_point_count, qm1_coefficients};
use crate::laurent::LaurentPoly;
use crate::oracles::lattice::{census_for, normalize};
use crate::oracles::{hl_charge_type_a, Partition, WeightMultiplicities};
use crate::report::{Format, Report, TableReport};
use crate::root_data::{build_root_datum, Coweight, Family, RootDatum};
use crate::symfunc::SymmetricFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub family: Family,
    pub rank: usize,
    pub lambdas: Vec<Coweight>,
    /// Bound on `<lambda, 2 rho>` for generated `lambda`.
    pub bound: Option<i64>,
    pub q0s: Vec<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        JobSpec {
            family,
            rank,
            lambdas: vec![],
            bound: None,
            q0s: vec![],
            format: Format::Text,
            out: None,
        }
    }

    /// Builds the datum and checks every field against it.
    pub fn validate(&self) -> Result<RootDatum> {
        let datum = build_root_datum(self.family, self.rank)?;
        if let Some(b) = self.bound {
            if b < 0 {
                return Err(Error::Config(format!("bound must be non-negative, got {b}")));
            }
        }
        for lam in &self.lambdas {
            datum
                .require_dominant(lam)
                .map_err(|e| Error::Config(format!("--lambda {lam}: {e}")))?;
        }
        for &q in &self.q0s {
            if q < 2 {
                return Err(Error::Config(format!("q0 must be at least 2, got {q}")));
            }
        }
        Ok(datum)
    }

    /// The explicit `lambda` list, else everything within the bound.
    fn corpus(&self, datum: &RootDatum, default_bound: Option<i64>) -> Result<Vec<Coweight>> {
        if !self.lambdas.is_empty() {
            return Ok(self.lambdas.clone());
        }
        match self.bound.or(default_bound) {
            Some(b) => Ok(datum.dominant_up_to(b)),
            None => Err(Error::Config("give at least one --lambda or a --bound".into())),
        }
    }
}

fn compute_one(datum: &RootDatum, lambda: &Coweight) -> Result<TableReport> {
    let p = hall_littlewood(datum, lambda)?;
    let table = euler_table(&p)?;
    Ok(TableReport::new(&p, &table))
}

fn compute_all(datum: &RootDatum, lambdas: &[Coweight]) -> Result<Report> {
    let tables = lambdas
        .par_iter()
        .map(|lam| compute_one(datum, lam))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        datum: datum.tag(),
        tables,
    })
}

/// `P_lambda` and its Euler table for each requested `lambda`.
pub fn cmd_compute(spec: &JobSpec) -> Result<Report> {
    let datum = spec.validate()?;
    let lambdas = spec.corpus(&datum, None)?;
    compute_all(&datum, &lambdas)
}

/// One combined report over all dominant `lambda` within the bound.
pub fn cmd_table(spec: &JobSpec) -> Result<Report> {
    let datum = spec.validate()?;
    let Some(bound) = spec.bound else {
        return Err(Error::Config("table needs --bound".into()));
    };
    compute_all(&datum, &datum.dominant_up_to(bound))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    TypeACharge,
    WeylChar,
    Specializations,
    Positivity,
    LatticeCount,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::TypeACharge,
        Suite::WeylChar,
        Suite::Specializations,
        Suite::Positivity,
        Suite::LatticeCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TypeACharge => "typeA-charge",
            Suite::WeylChar => "weyl-char",
            Suite::Specializations => "specializations",
            Suite::Positivity => "positivity",
            Suite::LatticeCount => "lattice-count",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|t| t.name()).collect();
                Error::Usage(format!("unknown suite {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Reported for reference; never a failure.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub instance: String,
    pub expected: String,
    pub actual: String,
    pub outcome: Outcome,
}

impl Check {
    fn compare(instance: String, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let outcome = if expected == actual { Outcome::Pass } else { Outcome::Fail };
        Check {
            instance,
            expected,
            actual,
            outcome,
        }
    }

    /// Capacity limits mark the instance as skipped rather than failed.
    fn failed(instance: String, expected: impl ToString, err: &Error) -> Self {
        let (actual, outcome) = match err {
            Error::Capacity { .. } => (format!("skipped: {err}"), Outcome::Info),
            _ => (err.to_string(), Outcome::Fail),
        };
        Check {
            instance,
            expected: expected.to_string(),
            actual,
            outcome,
        }
    }

    fn info(instance: String, expected: impl ToString, actual: impl ToString) -> Self {
        Check {
            instance,
            expected: expected.to_string(),
            actual: actual.to_string(),
            outcome: Outcome::Info,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub datum: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail).count()
    }

    pub fn emit(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::Io(e.to_string())),
            f => Err(Error::Usage(format!("verify reports are text or json, not {f}"))),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Info => "INFO",
            };
            let _ = writeln!(
                out,
                "{tag}  {}  expected: {}  actual: {}",
                c.instance, c.expected, c.actual
            );
        }
        let passed = self.checks.iter().filter(|c| c.outcome == Outcome::Pass).count();
        let _ = writeln!(
            out,
            "{} {}: {} passed, {} failed, {} checked{}",
            self.suite,
            self.datum,
            passed,
            self.failures(),
            self.checks.len(),
            if self.passed() { "" } else { "  FAILED" }
        );
        out
    }
}

/// Runs a verification suite over the job's `lambda` list or bound, or the
/// suite's default corpus when neither is given.
pub fn cmd_verify(suite: Suite, spec: &JobSpec) -> Result<VerifyReport> {
    let datum = spec.validate()?;
    let checks = match suite {
        Suite::TypeACharge => verify_charge(&datum, spec)?,
        Suite::WeylChar => per_lambda(&datum, &spec.corpus(&datum, Some(8))?, verify_weyl_char),
        Suite::Specializations => per_lambda(&datum, &spec.corpus(&datum, Some(8))?, verify_specializations),
        Suite::Positivity => per_lambda(&datum, &spec.corpus(&datum, Some(8))?, verify_positivity),
        Suite::LatticeCount => verify_lattice(&datum, spec)?,
    };
    Ok(VerifyReport {
        suite: suite.name(),
        datum: datum.tag().to_string(),
        checks,
    })
}

fn per_lambda(
    datum: &RootDatum,
    lambdas: &[Coweight],
    f: impl Fn(&RootDatum, &Coweight) -> Vec<Check> + Sync,
) -> Vec<Check> {
    lambdas
        .par_iter()
        .map(|lam| f(datum, lam))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn label(datum: &RootDatum, lambda: &Coweight) -> String {
    format!("{} lambda={lambda}", datum.tag())
}

fn require_gl(datum: &RootDatum, suite: Suite) -> Result<()> {
    if datum.family() != Family::GL {
        return Err(Error::Config(format!(
            "suite {} runs on GL only, not {}",
            suite.name(),
            datum.tag()
        )));
    }
    Ok(())
}

fn verify_charge(datum: &RootDatum, spec: &JobSpec) -> Result<Vec<Check>> {
    require_gl(datum, Suite::TypeACharge)?;
    let n = datum.rank();
    let lambdas: Vec<Coweight> = if spec.lambdas.is_empty() && spec.bound.is_none() {
        (0..=5).flat_map(|k| Partition::all(k, n)).map(|p| p.padded(n)).collect()
    } else {
        spec.corpus(datum, None)?
    };
    Ok(per_lambda(datum, &lambdas, |d, lam| {
        let id = label(d, lam);
        let oracle = Partition::from_coweight(lam).and_then(|p| hl_charge_type_a(d.rank(), &p));
        let expected = match oracle {
            Ok(e) => e,
            Err(e) => return vec![Check::failed(id, "charge oracle", &e)],
        };
        match hall_littlewood(d, lam) {
            Ok(p) => vec![Check::compare(id, &expected, p.expansion())],
            Err(e) => vec![Check::failed(id, expected, &e)],
        }
    }))
}

/// Weyl dimension formula, read off the datum's roots.
fn weyl_dimension(datum: &RootDatum, lambda: &Coweight) -> BigInt {
    let two_rho_vee = datum
        .positive_coroots()
        .iter()
        .fold(Coweight::zero(datum.rank()), |a, b| a.add(b));
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in datum.positive_roots() {
        let h = datum.pair_root(&two_rho_vee, a);
        num *= BigInt::from(2 * datum.pair_root(lambda, a) + h);
        den *= BigInt::from(h);
    }
    num / den
}

fn character_dimension(datum: &RootDatum, f: &SymmetricFunction) -> Result<BigInt> {
    let mut dim = BigInt::zero();
    for (nu, c) in f.terms() {
        if !c.is_constant() {
            return Err(Error::Consistency(format!("non-constant coefficient {c} at {nu}")));
        }
        dim += c.constant_term() * BigInt::from(datum.orbit(nu).len());
    }
    Ok(dim)
}

fn verify_weyl_char(datum: &RootDatum, lambda: &Coweight) -> Vec<Check> {
    let id = label(datum, lambda);
    let mut out = Vec::new();
    let chi = match weyl_character(datum, lambda) {
        Ok(c) => c,
        Err(e) => return vec![Check::failed(id, "character", &e)],
    };
    let dim = weyl_dimension(datum, lambda);
    match character_dimension(datum, &chi) {
        Ok(d) => out.push(Check::compare(format!("{id} dim"), &dim, d)),
        Err(e) => out.push(Check::failed(format!("{id} dim"), &dim, &e)),
    }
    match hall_littlewood(datum, lambda).and_then(|p| specialize_t(p.expansion(), 0)) {
        Ok(s) => out.push(Check::compare(format!("{id} P(t=0)"), &chi, s)),
        Err(e) => out.push(Check::failed(format!("{id} P(t=0)"), &chi, &e)),
    }
    out
}

fn verify_specializations(datum: &RootDatum, lambda: &Coweight) -> Vec<Check> {
    let id = label(datum, lambda);
    let p = match hall_littlewood(datum, lambda) {
        Ok(p) => p,
        Err(e) => return vec![Check::failed(id, "P_lambda", &e)],
    };
    let mut out = Vec::new();
    match weyl_character(datum, lambda) {
        Ok(chi) => match specialize_t(p.expansion(), 0) {
            Ok(s) => out.push(Check::compare(format!("{id} t=0"), &chi, s)),
            Err(e) => out.push(Check::failed(format!("{id} t=0"), &chi, &e)),
        },
        Err(e) => out.push(Check::failed(format!("{id} t=0"), "character", &e)),
    }
    let m = SymmetricFunction::basis(datum, lambda);
    match (m, specialize_t(p.expansion(), 1)) {
        (Ok(m), Ok(s)) => out.push(Check::compare(format!("{id} t=1"), &m, s)),
        (Err(e), _) | (_, Err(e)) => out.push(Check::failed(format!("{id} t=1"), format!("m{lambda}"), &e)),
    }
    out
}

/// Row-level checks computed from `P_lambda` directly, so one bad row does
/// not hide the others.
fn verify_positivity(datum: &RootDatum, lambda: &Coweight) -> Vec<Check> {
    let id = label(datum, lambda);
    let p: HLPolynomial = match hall_littlewood(datum, lambda) {
        Ok(p) => p,
        Err(e) => return vec![Check::failed(id, "P_lambda", &e)],
    };
    let mut out = Vec::new();
    for (nu, c) in p.expansion().terms().rev() {
        let row = format!("{id} nu={nu}");
        let shift = match datum.pair_rho(&lambda.add(nu)).to_integer() {
            Ok(s) => s,
            Err(e) => {
                out.push(Check::failed(row, "integral <lambda+nu, rho>", &e));
                continue;
            }
        };
        let l: LaurentPoly = c.shift(shift);
        let qm1 = match qm1_coefficients(&l) {
            Ok(v) => v,
            Err(e) => {
                out.push(Check::failed(row, "polynomial", &e));
                continue;
            }
        };
        let shown: Vec<String> = qm1.iter().map(ToString::to_string).collect();
        let shown = format!("[{}]", shown.join(","));
        let ok = qm1.iter().all(|x| x >= &BigInt::zero());
        out.push(Check {
            instance: format!("{row} L={l}"),
            expected: "non-negative (q-1)-expansion".into(),
            actual: shown,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        });
        out.push(Check::compare(format!("{row} deg L"), shift, l.max_exp().unwrap_or(i64::MIN)));
        let delta = i64::from(nu == lambda);
        match l.eval(&BigInt::one()) {
            Ok(v) => out.push(Check::compare(format!("{row} L(1)"), delta, v)),
            Err(e) => out.push(Check::failed(format!("{row} L(1)"), delta, &e)),
        }
    }
    out
}

fn verify_lattice(datum: &RootDatum, spec: &JobSpec) -> Result<Vec<Check>> {
    require_gl(datum, Suite::LatticeCount)?;
    let n = datum.rank();
    let mut lambdas = spec.corpus(datum, None).unwrap_or_default();
    if lambdas.is_empty() {
        // normalized lambda with <lambda, 2 rho> <= 2(n-1), plus central shifts by 1 and 2
        for lam in datum.dominant_up_to(2 * (n as i64 - 1)) {
            lambdas.extend((0..=2).map(|c| lam.shift_center(c)));
        }
    }
    let q0s: Vec<u64> = if spec.q0s.is_empty() { vec![2, 3] } else { spec.q0s.clone() };
    let jobs: Vec<(Coweight, u64)> = lambdas
        .iter()
        .flat_map(|l| q0s.iter().map(move |&q| (l.clone(), q)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(lam, q0)| lattice_checks(datum, lam, *q0))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

fn lattice_checks(datum: &RootDatum, lambda: &Coweight, q0: u64) -> Vec<Check> {
    let n = datum.rank();
    let id = format!("{} q0={q0}", label(datum, lambda));
    let table = match hall_littlewood(datum, lambda).and_then(|p| euler_table(&p)) {
        Ok(t) => t,
        Err(e) => return vec![Check::failed(id, "Euler table", &e)],
    };
    let census = match u8::try_from(q0)
        .map_err(|_| Error::Domain(format!("q0 = {q0} not supported by the lattice oracle")))
        .and_then(|q| census_for(n, lambda, q))
    {
        Ok(c) => c,
        Err(e) => return vec![Check::failed(id, "census", &e)],
    };
    let (c, norm) = normalize(lambda);
    let mut out = Vec::new();
    let types = census.iwasawa_types(&norm);
    let mut dominant: Vec<Coweight> = datum.dominant_below(lambda).unwrap_or_default();
    dominant.sort();
    dominant.reverse();
    for nu in &dominant {
        let count = census.count(&norm, &nu.shift_center(-c));
        let row = format!("{id} nu={nu}");
        match predict_point_count(&table, nu, q0) {
            Ok(pred) => out.push(Check::compare(row, pred, count)),
            Err(e) => out.push(Check::failed(row, "L(q0)", &e)),
        }
    }
    for (nu, count) in &types {
        let nu = nu.shift_center(c);
        if !datum.is_dominant(&nu) {
            out.push(Check::info(format!("{id} nu={nu}"), "non-dominant", count));
        }
    }
    let total = census.stratum_size(&norm);
    match cartan_stratum_size(datum, lambda).and_then(|s| s.eval(&BigInt::from(q0))) {
        Ok(size) => out.push(Check::compare(format!("{id} |Gr^lambda|"), size, total)),
        Err(e) => out.push(Check::failed(format!("{id} |Gr^lambda|"), "stratum size", &e)),
    }
    out
}

/// Shared by the weyl-char suite and the tests.
pub fn weyl_dimension_of(datum: &RootDatum, lambda: &Coweight) -> Result<BigInt> {
    datum.require_dominant(lambda)?;
    let m = WeightMultiplicities::compute(datum, lambda)?;
    let formula = weyl_dimension(datum, lambda);
    let summed = m.dimension(datum);
    if formula != summed {
        return Err(Error::Consistency(format!(
            "dimension formula gives {formula}, weights sum to {summed}"
        )));
    }
    Ok(formula)
}
