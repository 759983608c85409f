#![allow(dead_code)]

use hlhodge_core::{build_root_datum, Coweight, Family, RootDatum};

pub fn cw(v: &[i64]) -> Coweight {
    Coweight(v.to_vec())
}

pub fn datum(f: Family, r: usize) -> RootDatum {
    build_root_datum(f, r).unwrap()
}

/// The main corpus: every dominant lambda with `<lambda, 2 rho> <= 8`.
pub fn corpus() -> Vec<(RootDatum, Vec<Coweight>)> {
    [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::C, 2),
        (Family::G2, 2),
        (Family::GL, 2),
        (Family::GL, 3),
    ]
    .into_iter()
    .map(|(f, r)| {
        let d = datum(f, r);
        let lams = d.dominant_up_to(8);
        (d, lams)
    })
    .collect()
}

/// Rank <= 3 in every family, plus `GL_4`.
pub fn wide_corpus() -> Vec<(RootDatum, Vec<Coweight>)> {
    let mut out = corpus();
    for (f, r, b) in [
        (Family::B, 3, 8),
        (Family::C, 3, 8),
        (Family::D, 2, 8),
        (Family::D, 3, 8),
        (Family::GL, 1, 8),
        (Family::GL, 4, 8),
    ] {
        let d = datum(f, r);
        let lams = d.dominant_up_to(b);
        out.push((d, lams));
    }
    out
}
