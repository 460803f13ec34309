//! Acceptance criteria.
//!
//! Each test runs one criterion of the reproduction suite, prints its status
//! line, and cross-checks the result against an independent computation.

use fqgalois::ffield::{Fe, FieldSpec};
use fqgalois::paperprops::CheckStatus;
use fqgalois::polyring::{UniPoly, XTPoly};
use fqgalois::reproduce::{run_criterion, CriterionReport};

fn run(id: u8) -> CriterionReport {
    let r = run_criterion(id);
    println!("{}", r.line());
    for d in &r.details {
        println!("    {d}");
    }
    assert!(r.passed(), "{}", r.line());
    r
}

fn xt(p: u64, s: &str) -> XTPoly {
    XTPoly::parse(&FieldSpec::prime(p).unwrap(), s).unwrap()
}

/// Cycle type from root counts: N_d = #roots in F_{p^d}, so the number of
/// irreducible factors of degree d is (Σ_{e|d} μ(d/e) N_e) / d.
fn shape_by_root_counts(g: &UniPoly, p: u64) -> Vec<usize> {
    let n = g.degree().unwrap();
    let mut counts = vec![0usize; n + 1];
    for d in 1..=n {
        let k = FieldSpec::new(p, d, None).unwrap();
        let emb = fqgalois::ffield::Embedding::find(g.field(), &k).unwrap();
        let h = g.map(&emb);
        counts[d] = k.elements().filter(|&a| h.eval(a).is_zero()).count();
    }
    let mut parts = Vec::new();
    let mut seen = vec![0usize; n + 1];
    for d in 1..=n {
        let in_proper: usize = (1..d).filter(|e| d % e == 0).map(|e| seen[e] * e).sum();
        let new = (counts[d] - in_proper) / d;
        seen[d] = new;
        parts.extend(std::iter::repeat(d).take(new));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

#[test]
fn criterion_01_shapes() {
    run(1);
    // Root counts: x^24 + x = x (x^23 + 1) splits over F_2048 since ord_23(2) = 11;
    // x^24 + x + 1 has 3 roots in F_8, none in F_128 and 24 in F_{2^21}.
    let f = xt(2, "x^24+x+t");
    let roots_in = |t0: u64, d: usize| {
        let g = f.eval_t(Fe(t0));
        let k = FieldSpec::new(2, d, None).unwrap();
        let h = g.map(&fqgalois::ffield::Embedding::find(g.field(), &k).unwrap());
        k.elements().filter(|&a| h.eval(a).is_zero()).count()
    };
    assert_eq!(roots_in(0, 11), 24);
    assert_eq!(roots_in(0, 1), 2);
    assert_eq!(roots_in(1, 3), 3);
    assert_eq!(roots_in(1, 7), 0);
    assert_eq!(roots_in(1, 21), 24);
}

#[test]
fn criterion_02_semilinear_relation() {
    run(2);
    let f = xt(2, "x^24+x+t");
    let l = xt(2, "x^2048+t^64*x^512+t^8*x^16+t^16*x^8+x+t+t^24");
    let (_, r) = l.divmod(&f).unwrap();
    assert!(r.is_zero(), "L(x) - c(t) is a multiple of f");
}

#[test]
fn criterion_03_s11_additive_multiple() {
    run(3);
}

#[test]
fn criterion_04_fano_additive_multiple() {
    run(4);
    let f = xt(2, "x^7+t*x+1");
    assert_eq!(f.shift_x(1), xt(2, "x^8+t*x^2+x"));
}

#[test]
fn criterion_05_discriminant() {
    run(5);
    // disc(x^11 + a x^2 - 1) = 1 for every a in F_9: compare with the
    // resultant of the specialization and its derivative.
    let k = FieldSpec::new(3, 2, None).unwrap();
    let f = xt(3, "x^11+t*x^2-1").map(&fqgalois::ffield::Embedding::find(&FieldSpec::prime(3).unwrap(), &k).unwrap());
    for a in k.elements() {
        let g = f.eval_t(a);
        let r = g.resultant(&g.derivative());
        // disc = (-1)^{n(n-1)/2} res(g, g') / lc = -res for n = 11
        assert_eq!(k.neg(r), k.one(), "t = {}", k.format(a));
    }
}

#[test]
fn criterion_06_series_oracles() {
    run(6);
}

#[test]
fn criterion_07_puiseux() {
    run(7);
}

#[test]
fn criterion_08_resolvent() {
    let r = run(8);
    // The t^4 claim for non-block values does not hold: they start at t^6.
    assert_eq!(r.status, CheckStatus::Deviation);
    assert!(r.details.iter().any(|d| d.contains("0 of 396") && d.contains("6..=6")));
}

#[test]
fn criterion_09_steiner() {
    run(9);
    // Brute-force coverage count on the shipped blocks.
    let blocks = fqgalois::permgrp::steiner11_blocks();
    let mut cover = std::collections::HashMap::new();
    for b in blocks.blocks() {
        for skip in 0..5 {
            let four: Vec<usize> = (0..5).filter(|&i| i != skip).map(|i| b[i]).collect();
            *cover.entry(four).or_insert(0) += 1;
        }
    }
    assert_eq!(cover.len(), 330);
    assert!(cover.values().all(|&c| c == 1));
}

#[test]
fn criterion_10_identification() {
    let r = run(10);
    assert_eq!(r.status, CheckStatus::Deviation);
    assert!(r.details.iter().any(|d| d.starts_with("deviation: x^13+x+t over F_2")));
    assert!(r.details.iter().any(|d| d.starts_with("deviation: x^8+x^7+t over F_2")));
    assert!(r.details.iter().any(|d| d.starts_with("ok: x^13+x+t over F_3")));
    // x^13 + x + 1 over F_2 has factors of degree 8 and 5.
    assert_eq!(shape_by_root_counts(&xt(2, "x^13+x+t").eval_t(Fe(1)), 2), vec![8, 5]);
    assert_eq!(shape_by_root_counts(&xt(2, "x^8+x^7+t").eval_t(Fe(1)), 2), vec![6, 2]);
}

#[test]
fn criterion_11_properties() {
    run(11);
}
