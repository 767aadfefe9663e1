//! Shared fixtures: worked examples over several fields, plus the
//! integer families whose fibers get compared.

use theta_forge::{
    parse_poly, CoeffDomain, FamilySpec, FiberId, MatrixFactorization, PolyMatrix, PolyRing,
    Polynomial,
};

pub fn ring(domain: CoeffDomain, vars: &[&str]) -> PolyRing {
    PolyRing::new(domain, vars)
}

pub fn poly(ring: &PolyRing, text: &str) -> Polynomial {
    parse_poly(ring, text).unwrap()
}

pub fn matrix(ring: &PolyRing, rows: usize, texts: &[&str]) -> PolyMatrix {
    let entries: Vec<Polynomial> = texts.iter().map(|t| poly(ring, t)).collect();
    let cols = entries.len() / rows;
    PolyMatrix::new(ring.clone(), rows, cols, entries)
}

pub fn mf(ring: &PolyRing, f: &str, rows: usize, a: &[&str], b: &[&str]) -> MatrixFactorization {
    MatrixFactorization::validate(
        matrix(ring, rows, a),
        matrix(ring, rows, b),
        poly(ring, f),
    )
    .unwrap()
}

pub struct Pair {
    pub name: &'static str,
    pub mf_m: MatrixFactorization,
    pub mf_n: MatrixFactorization,
}

fn node_pairs(domain: CoeffDomain, out: &mut Vec<Pair>, tag: &'static [&'static str]) {
    let r = ring(domain, &["x", "y"]);
    let mx = mf(&r, "x*y", 1, &["x"], &["y"]);
    let my = mf(&r, "x*y", 1, &["y"], &["x"]);
    let sum = mx.direct_sum(&my).unwrap();
    let all = [
        (tag[0], mx.clone(), mx.clone()),
        (tag[1], mx.clone(), my.clone()),
        (tag[2], my.clone(), mx.clone()),
        (tag[3], my.clone(), my.clone()),
        (tag[4], sum.clone(), mx.clone()),
        (tag[5], mx.clone(), sum.clone()),
        (tag[6], sum.clone(), sum.clone()),
    ];
    for (name, mf_m, mf_n) in all {
        out.push(Pair { name, mf_m, mf_n });
    }
}

fn quadric_pairs(domain: CoeffDomain, out: &mut Vec<Pair>, tag: &'static [&'static str]) {
    let r = ring(domain, &["x1", "x2", "y1", "y2"]);
    let f = "x1*y1 + x2*y2";
    let qm = mf(&r, f, 2, &["y1", "-x2", "y2", "x1"], &["x1", "x2", "-y2", "y1"]);
    let qn = mf(&r, f, 2, &["x1", "-y2", "x2", "y1"], &["y1", "y2", "-x2", "x1"]);
    let qe = mf(&r, f, 2, &["y1", "y2", "-x2", "x1"], &["x1", "-y2", "x2", "y1"]);
    let all = [
        (tag[0], qm.clone(), qn.clone()),
        (tag[1], qn.clone(), qm.clone()),
        (tag[2], qn.clone(), qn.clone()),
        (tag[3], qm.clone(), qm.clone()),
        (tag[4], qe.clone(), qe.clone()),
        (tag[5], qm.clone(), qe.clone()),
        (tag[6], qe.clone(), qn.clone()),
    ];
    for (name, mf_m, mf_n) in all {
        out.push(Pair { name, mf_m, mf_n });
    }
}

fn cusp_pairs(out: &mut Vec<Pair>) {
    let r = ring(CoeffDomain::Rationals, &["x", "y"]);
    let f = "x^3 + y^3";
    let line = mf(&r, f, 1, &["x + y"], &["x^2 - x*y + y^2"]);
    let block = mf(&r, f, 2, &["x", "-y^2", "y", "x^2"], &["x^2", "y^2", "-y", "x"]);
    let all = [
        ("cusp line/line", line.clone(), line.clone()),
        ("cusp line/block", line.clone(), block.clone()),
        ("cusp block/line", block.clone(), line.clone()),
        ("cusp block/block", block.clone(), block.clone()),
    ];
    for (name, mf_m, mf_n) in all {
        out.push(Pair { name, mf_m, mf_n });
    }
}

/// The full pairing corpus: 27 pairs over QQ, GF(3), GF(5).
pub fn pairs() -> Vec<Pair> {
    let mut out = Vec::new();
    node_pairs(
        CoeffDomain::Rationals,
        &mut out,
        &[
            "node x/x", "node x/y", "node y/x", "node y/y", "node sum/x", "node x/sum",
            "node sum/sum",
        ],
    );
    node_pairs(
        CoeffDomain::PrimeField(5),
        &mut out,
        &[
            "node5 x/x", "node5 x/y", "node5 y/x", "node5 y/y", "node5 sum/x",
            "node5 x/sum", "node5 sum/sum",
        ],
    );
    quadric_pairs(
        CoeffDomain::Rationals,
        &mut out,
        &[
            "quadric M/N", "quadric N/M", "quadric N/N", "quadric M/M", "quadric E/E",
            "quadric M/E", "quadric E/N",
        ],
    );
    let r3 = ring(CoeffDomain::PrimeField(3), &["x1", "x2", "y1", "y2"]);
    let f = "x1*y1 + x2*y2";
    let qm3 = mf(&r3, f, 2, &["y1", "-x2", "y2", "x1"], &["x1", "x2", "-y2", "y1"]);
    let qn3 = mf(&r3, f, 2, &["x1", "-y2", "x2", "y1"], &["y1", "y2", "-x2", "x1"]);
    out.push(Pair { name: "quadric3 M/N", mf_m: qm3.clone(), mf_n: qn3.clone() });
    out.push(Pair { name: "quadric3 N/N", mf_m: qn3.clone(), mf_n: qn3 });
    cusp_pairs(&mut out);
    out
}

/// QQ plus every prime fiber up to 13.
pub fn default_fibers() -> Vec<FiberId> {
    let mut fibers = vec![FiberId::Rationals];
    for p in [2, 3, 5, 7, 11, 13] {
        fibers.push(FiberId::PrimeField(p));
    }
    fibers
}

/// Integer families: (label, family data, pair to track, expected value
/// when one is pinned by hand).
pub fn integer_families() -> Vec<(&'static str, FamilySpec, Option<i64>)> {
    let all_fibers = default_fibers;

    let mut out = Vec::new();

    let zq = ring(CoeffDomain::Integers, &["x1", "x2", "y1", "y2"]);
    let f = "x1*y1 + x2*y2";
    let qm = mf(&zq, f, 2, &["y1", "-x2", "y2", "x1"], &["x1", "x2", "-y2", "y1"]);
    let qn = mf(&zq, f, 2, &["x1", "-y2", "x2", "y1"], &["y1", "y2", "-x2", "x1"]);
    out.push((
        "quadric",
        FamilySpec::new(
            poly(&zq, f),
            vec![("M".to_string(), qm), ("N".to_string(), qn)],
            all_fibers(),
        )
        .unwrap(),
        Some(1),
    ));

    let zn = ring(CoeffDomain::Integers, &["x", "y"]);
    let nx = mf(&zn, "x*y", 1, &["x"], &["y"]);
    out.push((
        "node",
        FamilySpec::new(
            poly(&zn, "x*y"),
            vec![("M".to_string(), nx.clone()), ("N".to_string(), nx)],
            all_fibers(),
        )
        .unwrap(),
        Some(-1),
    ));

    let zb = ring(CoeffDomain::Integers, &["x", "y"]);
    let rot = mf(&zb, "x^2 + y^2", 2, &["x", "y", "-y", "x"], &["x", "-y", "y", "x"]);
    out.push((
        "binary quadric",
        FamilySpec::new(
            poly(&zb, "x^2 + y^2"),
            vec![("M".to_string(), rot.clone()), ("N".to_string(), rot)],
            all_fibers(),
        )
        .unwrap(),
        None,
    ));

    let zf = ring(CoeffDomain::Integers, &["x", "y", "z"]);
    let a3 = matrix(
        &zf,
        4,
        &[
            "x", "-y^2", "-z^2", "0", "y", "x^2", "0", "-z^2", "z", "0", "x^2", "y^2",
            "0", "z", "-y", "x",
        ],
    );
    let b3 = matrix(
        &zf,
        4,
        &[
            "x^2", "y^2", "z^2", "0", "-y", "x", "0", "z^2", "-z", "0", "x", "-y^2",
            "0", "-z", "y", "x^2",
        ],
    );
    let fermat = MatrixFactorization::validate(a3, b3, poly(&zf, "x^3 + y^3 + z^3")).unwrap();
    out.push((
        "fermat cubic",
        FamilySpec::new(
            poly(&zf, "x^3 + y^3 + z^3"),
            vec![("M".to_string(), fermat.clone()), ("N".to_string(), fermat)],
            all_fibers(),
        )
        .unwrap(),
        None,
    ));

    out
}
