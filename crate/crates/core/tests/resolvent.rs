use std::time::Instant;

use fqgalois::ffield::{Fe, FieldSpec, FqElem};
use fqgalois::permgrp::{k_subsets, steiner11_blocks};
use fqgalois::polyring::XTPoly;
use fqgalois::resolvent::*;
use fqgalois::series::{all_taylor_roots, m11_epsilon, m11_series, TruncSeries};

const F66: &str = "x^66+t*x^62+2*t^5*x^57+t^3*x^54+t^6*x^53+t*x^51+2*t^7*x^49+t^10*x^48+2*t^2*x^47+t^5*x^46+2*t^8*x^45+t^3*x^43+2*t^6*x^42+t*x^40+2*t^7*x^38+t^2*x^36+t^8*x^34+x^33+2*t^6*x^31+t^9*x^30+2*t*x^29+2*t^7*x^27+2*t^5*x^24+2*t^3*x^21+2*t^6*x^20+2*t*x^18+2*t^7*x^16+t^2*x^14+t^5*x^13+t^8*x^12+2*t^3*x^10+2*t^6*x^9+2*t*x^7+2*t^2*x^3+1";

fn s11_roots(prec: usize) -> Vec<TruncSeries> {
    let eps = m11_epsilon();
    (0..11).map(|i| m11_series(&eps, i, prec).unwrap()).collect()
}

#[test]
fn steiner_products_give_f66() {
    let start = Instant::now();
    let f3 = FieldSpec::prime(3).unwrap();
    let f66 = XTPoly::parse(&f3, F66).unwrap();
    let roots = s11_roots(120);
    let blocks = steiner11_blocks();
    let prods: Vec<TruncSeries> = blocks.blocks().iter().map(|b| product_of(&roots, b)).collect();
    let r = reconstruct_poly(&prods, 10, DEFAULT_GUARD).unwrap();
    assert!(r.guard_ok);
    let down = descend(&r.poly, &f3).unwrap().unwrap();
    assert_eq!(down, f66);

    let all = subset_products(&roots, 5, DEFAULT_PRODUCT_BUDGET).unwrap();
    assert_eq!(all.len(), 462);
    let values: Vec<TruncSeries> = all.iter().map(|p| p.value.clone()).collect();
    let full = reconstruct_poly(&values, 70, DEFAULT_GUARD).unwrap();
    assert!(full.guard_ok);
    let full = descend(&full.poly, &f3).unwrap().unwrap();
    assert_eq!(full.degree_x(), Some(462));
    let q = full.div_exact(&f66).unwrap();
    assert_eq!(q.degree_x(), Some(396));

    let roots100 = s11_roots(100);
    for s in k_subsets(11, 5) {
        let v = eval_at_series(&f66, &product_of(&roots100, &s)).unwrap();
        if blocks.contains(&s) {
            assert!(v.is_zero() && v.prec() >= 100, "{s:?}");
        } else {
            assert_eq!(v.valuation(), 6, "{s:?}");
            assert!(v.coeff(4).unwrap().is_zero());
        }
    }
    eprintln!("f66 checks: {:?}", start.elapsed());
}

#[test]
fn d4_pair_resolvent_has_rational_factor() {
    let f2 = FieldSpec::prime(2).unwrap();
    let f = XTPoly::parse(&f2, "x^4+x+t").unwrap();
    let roots = all_taylor_roots(&f, 64, None).unwrap();
    assert_eq!(roots.count(), 4);
    let pairs = subset_products(&roots.series, 2, 100).unwrap();
    let values: Vec<TruncSeries> = pairs.iter().map(|p| p.value.clone()).collect();
    let found = rational_subfactor_search(&values, &f2, 8, DEFAULT_GUARD, 1 << 20, None).unwrap();
    let proper: Vec<_> = found.iter().filter(|(s, _)| s.len() < 6).collect();
    assert!(!proper.is_empty());
    assert!(found.iter().any(|(s, _)| s.len() == 6));
}

#[test]
fn full_root_set_gives_f() {
    let f2 = FieldSpec::prime(2).unwrap();
    let f = XTPoly::parse(&f2, "x^24+x+t").unwrap();
    let roots = all_taylor_roots(&f, 40, None).unwrap();
    let all: Vec<usize> = (0..24).collect();
    let found = rational_subfactor_search(&roots.series, &f2, 1, DEFAULT_GUARD, 0, Some(&[all])).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].1, f);
}

#[test]
fn single_irrational_root() {
    let f2 = FieldSpec::prime(2).unwrap();
    let f = XTPoly::parse(&f2, "x^3+x+t").unwrap();
    let r = fqgalois::series::newton_lift(&f, &FqElem::new(&f2, Fe(0)), 40).unwrap();
    let out = reconstruct_poly(&[r.clone()], 1, DEFAULT_GUARD);
    assert!(!matches!(out, Ok(ref x) if x.guard_ok));
    let short = r.truncate(10);
    assert!(matches!(
        reconstruct_poly(&[short], 1, DEFAULT_GUARD),
        Err(fqgalois::Error::InsufficientPrecision { .. })
    ));
    let k1 = subset_products(&[r.clone()], 1, 10).unwrap();
    assert_eq!(k1[0].value, r);
}
