//! Serialized reports: one entry per `lambda` holding the `m`-expansion of
//! `P_lambda` and its Euler table.
//!
//! JSON and CSV parse back to identical data. All emitters are
//! deterministic; row order is whatever the report holds.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hall_littlewood::HLPolynomial;
use crate::hodge_euler::EulerTable;
use crate::laurent::LaurentPoly;
use crate::root_data::{Coweight, DatumTag, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" | "tex" => Ok(Format::Latex),
            "text" | "txt" => Ok(Format::Text),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected json, csv, latex or text)"
            ))),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "latex",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTerm {
    pub nu: Coweight,
    pub coeff: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRecord {
    pub nu: Coweight,
    pub l: LaurentPoly,
    pub dim: i64,
    pub qm1: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub lambda: Coweight,
    pub p: Vec<PTerm>,
    pub euler: Vec<EulerRecord>,
}

impl TableReport {
    /// `P` terms highest `nu` first; Euler rows by descending dimension.
    pub fn new(p: &HLPolynomial, table: &EulerTable) -> Self {
        TableReport {
            lambda: p.lambda().clone(),
            p: p
                .expansion()
                .terms()
                .rev()
                .map(|(nu, c)| PTerm {
                    nu: nu.clone(),
                    coeff: c.clone(),
                })
                .collect(),
            euler: table
                .rows()
                .into_iter()
                .map(|r| EulerRecord {
                    nu: r.nu.clone(),
                    l: r.l.clone(),
                    dim: r.dimension,
                    qm1: r.qm1.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub datum: DatumTag,
    pub tables: Vec<TableReport>,
}

impl Report {
    pub fn emit(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv()?,
            Format::Latex => self.to_latex(),
            Format::Text => self.to_text(),
        })
    }

    /// Parses json or csv; the other formats are write-only.
    pub fn parse(format: Format, s: &str) -> Result<Self> {
        match format {
            Format::Json => Self::from_json(s),
            Format::Csv => Self::from_csv(s),
            f => Err(Error::Usage(format!("{f} output cannot be parsed back"))),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(
            out,
            "  \"datum\": {{\"family\": {}, \"rank\": {}}},",
            json_str(&self.datum.family.to_string()),
            self.datum.rank
        );
        out.push_str("  \"tables\": [");
        for (i, t) in self.tables.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            out.push_str("    {\n");
            let _ = writeln!(out, "      \"lambda\": {},", json_ints(t.lambda.coords()));
            out.push_str("      \"P\": [");
            for (j, term) in t.p.iter().enumerate() {
                out.push_str(if j == 0 { "\n" } else { ",\n" });
                let _ = write!(
                    out,
                    "        {{\"nu\": {}, \"coeff\": {}}}",
                    json_ints(term.nu.coords()),
                    json_str(&term.coeff.to_string())
                );
            }
            out.push_str(if t.p.is_empty() { "],\n" } else { "\n      ],\n" });
            out.push_str("      \"euler\": [");
            for (j, row) in t.euler.iter().enumerate() {
                out.push_str(if j == 0 { "\n" } else { ",\n" });
                let _ = write!(
                    out,
                    "        {{\"nu\": {}, \"L\": {}, \"dim\": {}, \"qm1\": {}}}",
                    json_ints(row.nu.coords()),
                    json_str(&row.l.to_string()),
                    row.dim,
                    json_ints(&row.qm1)
                );
            }
            out.push_str(if t.euler.is_empty() { "]\n" } else { "\n      ]\n" });
            out.push_str("    }");
        }
        out.push_str(if self.tables.is_empty() { "]\n" } else { "\n  ]\n" });
        out.push_str("}\n");
        out
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: WireReport =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("json: {e}")))?;
        let datum = DatumTag {
            family: wire.datum.family.parse()?,
            rank: wire.datum.rank,
        };
        let mut tables = Vec::with_capacity(wire.tables.len());
        for t in wire.tables {
            let p = t
                .p
                .into_iter()
                .map(|w| {
                    Ok(PTerm {
                        nu: Coweight(w.nu),
                        coeff: w.coeff.parse()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let euler = t
                .euler
                .into_iter()
                .map(|w| {
                    Ok(EulerRecord {
                        nu: Coweight(w.nu),
                        l: w.l.parse()?,
                        dim: w.dim,
                        qm1: w
                            .qm1
                            .iter()
                            .map(|n| parse_int(&n.to_string()))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            tables.push(TableReport {
                lambda: Coweight(t.lambda),
                p,
                euler,
            });
        }
        Ok(Report { datum, tables })
    }

    /// One line per `P` term and per Euler row; `section` is `P` or `L`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(format!("csv: {e}"));
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        let family = self.datum.family.to_string();
        let rank = self.datum.rank.to_string();
        for t in &self.tables {
            let lambda = t.lambda.to_string();
            for term in &t.p {
                w.write_record([
                    family.as_str(),
                    &rank,
                    &lambda,
                    "P",
                    &term.nu.to_string(),
                    &term.coeff.to_string(),
                    "",
                    "",
                ])
                .map_err(csv_err)?;
            }
            for row in &t.euler {
                w.write_record([
                    family.as_str(),
                    &rank,
                    &lambda,
                    "L",
                    &row.nu.to_string(),
                    &row.l.to_string(),
                    &row.dim.to_string(),
                    &json_ints(&row.qm1),
                ])
                .map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(s.as_bytes());
        let headers = r.headers().map_err(|e| Error::Parse(format!("csv: {e}")))?;
        if headers.iter().ne(CSV_HEADER) {
            return Err(Error::Parse(format!("csv: unexpected header {headers:?}")));
        }
        let mut datum: Option<DatumTag> = None;
        let mut tables: Vec<TableReport> = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse(format!("csv: {e}")))?;
            let line = i + 2;
            let field = |k: usize| rec.get(k).unwrap_or("");
            let tag = DatumTag {
                family: field(0).parse::<Family>()?,
                rank: field(1)
                    .parse()
                    .map_err(|_| Error::Parse(format!("csv line {line}: bad rank {:?}", field(1))))?,
            };
            match datum {
                None => datum = Some(tag),
                Some(d) if d != tag => {
                    return Err(Error::Parse(format!("csv line {line}: mixed data {d} and {tag}")))
                }
                _ => {}
            }
            let lambda: Coweight = field(2).parse()?;
            if tables.last().map(|t| &t.lambda) != Some(&lambda) {
                tables.push(TableReport {
                    lambda,
                    p: vec![],
                    euler: vec![],
                });
            }
            let table = tables.last_mut().unwrap();
            let nu: Coweight = field(4).parse()?;
            let poly: LaurentPoly = field(5).parse()?;
            match field(3) {
                "P" => table.p.push(PTerm { nu, coeff: poly }),
                "L" => table.euler.push(EulerRecord {
                    nu,
                    l: poly,
                    dim: field(6)
                        .parse()
                        .map_err(|_| Error::Parse(format!("csv line {line}: bad dim {:?}", field(6))))?,
                    qm1: parse_int_list(field(7))?,
                }),
                other => return Err(Error::Parse(format!("csv line {line}: unknown section {other:?}"))),
            }
        }
        let datum = datum.ok_or_else(|| Error::Parse("csv: no data rows".into()))?;
        Ok(Report { datum, tables })
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% {}", self.datum);
        for t in &self.tables {
            let lam = tex_weight(&t.lambda);
            out.push('\n');
            let _ = writeln!(out, "\\[ P_{{{lam}}} = {} \\]", tex_expansion(&t.p));
            let _ = writeln!(out, "\\begin{{tabular}}{{llll}}");
            let _ = writeln!(
                out,
                "$\\nu$ & $L_{{\\lambda\\nu}}$ & $\\dim$ & $(q-1)$-expansion \\\\"
            );
            out.push_str("\\hline\n");
            for row in &t.euler {
                let _ = writeln!(
                    out,
                    "${}$ & ${}$ & {} & ${}$ \\\\",
                    tex_weight(&row.nu),
                    tex_poly(&row.l),
                    row.dim,
                    tex_qm1(&row.qm1)
                );
            }
            out.push_str("\\end{tabular}\n");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "{}  lambda = {}", self.datum, t.lambda);
            let _ = writeln!(out, "P = {}", text_expansion(&t.p));
            let cells: Vec<[String; 4]> = t
                .euler
                .iter()
                .map(|r| {
                    [
                        r.nu.to_string(),
                        r.l.to_string(),
                        r.dim.to_string(),
                        json_ints(&r.qm1),
                    ]
                })
                .collect();
            let head = ["nu", "L", "dim", "qm1"].map(String::from);
            let mut widths = head.clone().map(|h| h.len());
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            for row in std::iter::once(&head).chain(&cells) {
                let mut line = String::from(" ");
                for (k, (w, c)) in widths.iter().zip(row).enumerate() {
                    line.push(' ');
                    line.push_str(c);
                    if k + 1 < row.len() {
                        line.push_str(&" ".repeat(w - c.chars().count() + 1));
                    }
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
        out
    }
}

const CSV_HEADER: [&str; 8] = ["family", "rank", "lambda", "section", "nu", "poly", "dim", "qm1"];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireDatum {
    family: String,
    rank: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireP {
    nu: Vec<i64>,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEuler {
    nu: Vec<i64>,
    #[serde(rename = "L")]
    l: String,
    dim: i64,
    qm1: Vec<serde_json::Number>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireTable {
    lambda: Vec<i64>,
    #[serde(rename = "P")]
    p: Vec<WireP>,
    euler: Vec<WireEuler>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireReport {
    datum: WireDatum,
    tables: Vec<WireTable>,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

fn json_ints<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..] list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner.split(',').map(parse_int).collect()
}

fn text_expansion(p: &[PTerm]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in p.iter().enumerate() {
        let (neg, body) = split_sign(&t.coeff, |c| format!("({c})·"), |m| format!("{m}·"));
        push_sign(&mut out, i, neg);
        let _ = write!(out, "{body}m{}", t.nu);
    }
    out
}

fn tex_expansion(p: &[PTerm]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in p.iter().enumerate() {
        let (neg, body) = split_sign(
            &t.coeff,
            |c| format!("({})\\,", tex_poly(c)),
            |m| format!("{}\\,", tex_poly(m)),
        );
        push_sign(&mut out, i, neg);
        let _ = write!(out, "{body}m_{{{}}}", tex_weight(&t.nu));
    }
    out
}

/// Pulls the sign out of a single-term coefficient; unit magnitudes vanish.
fn split_sign(
    c: &LaurentPoly,
    multi: impl Fn(&LaurentPoly) -> String,
    single: impl Fn(&LaurentPoly) -> String,
) -> (bool, String) {
    if c.num_terms() != 1 {
        return (false, multi(c));
    }
    let (e, k) = c.terms().next().unwrap();
    let mag = LaurentPoly::monomial(k.abs(), e);
    let body = if mag.is_one() { String::new() } else { single(&mag) };
    (k.is_negative(), body)
}

fn push_sign(out: &mut String, i: usize, neg: bool) {
    match (i, neg) {
        (0, true) => out.push('-'),
        (0, false) => {}
        (_, true) => out.push_str(" - "),
        (_, false) => out.push_str(" + "),
    }
}

fn tex_weight(mu: &Coweight) -> String {
    let parts: Vec<String> = mu.coords().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn tex_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        push_sign(&mut out, i, c.is_negative());
        let mag = c.abs();
        if e == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if mag != BigInt::from(1) {
            out.push_str(&mag.to_string());
        }
        match e {
            1 => out.push('q'),
            _ => {
                let _ = write!(out, "q^{{{e}}}");
            }
        }
    }
    out
}

fn tex_qm1(c: &[BigInt]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (k, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if !first {
            out.push_str(" + ");
        }
        first = false;
        match k {
            0 => out.push_str(&a.to_string()),
            _ => {
                if a != &BigInt::from(1) {
                    out.push_str(&a.to_string());
                }
                out.push_str("(q-1)");
                if k > 1 {
                    let _ = write!(out, "^{{{k}}}");
                }
            }
        }
    }
    if first {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall_littlewood::hall_littlewood;
    use crate::hodge_euler::euler_table;
    use crate::root_data::build_root_datum;

    fn report(f: Family, r: usize, lams: &[&[i64]]) -> Report {
        let d = build_root_datum(f, r).unwrap();
        let tables = lams
            .iter()
            .map(|l| {
                let p = hall_littlewood(&d, &Coweight(l.to_vec())).unwrap();
                let t = euler_table(&p).unwrap();
                TableReport::new(&p, &t)
            })
            .collect();
        Report {
            datum: d.tag(),
            tables,
        }
    }

    #[test]
    fn gl2_json() {
        let r = report(Family::GL, 2, &[&[2, 0]]);
        let expected = r#"{
  "datum": {"family": "GL", "rank": 2},
  "tables": [
    {
      "lambda": [2,0],
      "P": [
        {"nu": [2,0], "coeff": "1"},
        {"nu": [1,1], "coeff": "1 - q^-1"}
      ],
      "euler": [
        {"nu": [2,0], "L": "q^2", "dim": 2, "qm1": [1,2,1]},
        {"nu": [1,1], "L": "q - 1", "dim": 1, "qm1": [0,1]}
      ]
    }
  ]
}
"#;
        assert_eq!(r.to_json(), expected);
        assert_eq!(Report::from_json(expected).unwrap(), r);
    }

    #[test]
    fn csv_round_trip() {
        let r = report(Family::B, 2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 0]]);
        let s = r.to_csv().unwrap();
        assert!(s.starts_with("family,rank,lambda,section,nu,poly,dim,qm1\n"));
        assert_eq!(Report::from_csv(&s).unwrap(), r);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn latex_and_text() {
        let r = report(Family::GL, 2, &[&[1, 0]]);
        let tex = r.to_latex();
        assert!(tex.contains("\\[ P_{(1,0)} = m_{(1,0)} \\]"), "{tex}");
        assert!(tex.contains("$(1,0)$ & $q$ & 1 & $1 + (q-1)$ \\\\"), "{tex}");
        let r = report(Family::GL, 2, &[&[2, 0]]);
        let text = r.to_text();
        assert!(text.contains("P = m[2,0] + (1 - q^-1)·m[1,1]"), "{text}");
        assert!(text.contains("[1,1]  q - 1  1    [0,1]"), "{text}");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Report::from_json("{}"), Err(Error::Parse(_))));
        assert!(matches!(Report::from_csv("a,b\n"), Err(Error::Parse(_))));
        assert!(matches!(Report::parse(Format::Latex, ""), Err(Error::Usage(_))));
        assert!(matches!("xml".parse::<Format>(), Err(Error::Config(_))));
    }
}
