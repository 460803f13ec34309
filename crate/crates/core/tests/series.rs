use fqgalois::ffield::{Fe, FieldSpec, FqElem};
use fqgalois::polyring::XTPoly;
use fqgalois::series::*;

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn residual_vanishes(f: &XTPoly, s: &TruncSeries) -> bool {
    let r = s.compose_poly(f).unwrap();
    r.is_zero()
}

#[test]
fn lift_of_cubic() {
    let f = XTPoly::parse(&f2(), "x^3+x+t").unwrap();
    let x0 = FqElem::new(&f2(), Fe(0));
    let s = newton_lift(&f, &x0, 10).unwrap();
    assert_eq!(s.to_string(), "t + t^3 + t^5 + t^9 + O(t^10)");
    assert!(residual_vanishes(&f, &s));
    let one = FqElem::new(&f2(), Fe(1));
    assert!(matches!(newton_lift(&f, &one, 10), Err(fqgalois::Error::NotLiftable(_))));
}

#[test]
fn mathieu_lift_at_one() {
    let f = XTPoly::parse(&f2(), "x^24+x+t").unwrap();
    let x0 = FqElem::new(&f2(), Fe(1));
    let s = newton_lift(&f, &x0, 100).unwrap();
    assert_eq!(s.support(), vec![0, 1, 8, 16, 24, 64, 80]);
    assert!(residual_vanishes(&f, &s));
}

#[test]
fn mathieu_grammar_matches_every_lift() {
    let k = mathieu_field();
    let f = XTPoly::parse(&f2(), "x^24+x+t").unwrap();
    let mut seen = 0;
    for a in k.elements() {
        if a.is_zero() || k.pow(a, 23) != k.one() {
            continue;
        }
        let alpha = FqElem::new(&k, a);
        let lifted = newton_lift(&f, &alpha, 512).unwrap();
        let built = mathieu_series(&alpha, 512).unwrap();
        assert_eq!(lifted.first_difference(&built), None, "alpha = {alpha}");
        seen += 1;
    }
    assert_eq!(seen, 23);
}

#[test]
fn literal_grammar_variants_diverge() {
    let k = mathieu_field();
    let f = XTPoly::parse(&f2(), "x^24+x+t").unwrap();
    let alpha = FqElem::new(&k, k.one());
    let lifted = newton_lift(&f, &alpha, 1 << 15).unwrap();
    let b = ExponentLanguage {
        b_prefix_101000: true,
        ..ExponentLanguage::mathieu()
    };
    let kz = ExponentLanguage {
        k_twelve_zeros: true,
        ..ExponentLanguage::mathieu()
    };
    let support = lifted.support();
    let disagree = |l: &ExponentLanguage| (0..1u64 << 15).find(|&n| l.contains(n) != support.contains(&(n as i64)));
    assert_eq!(disagree(&ExponentLanguage::mathieu()), None);
    assert_eq!(disagree(&b), Some(320));
    assert_eq!(disagree(&kz), Some(16384));
}

#[test]
fn fano_series_are_roots() {
    let k = fano_field();
    let eps = fano_epsilon();
    let s = fano_series(&eps, 9).unwrap();
    assert_eq!(
        s.to_text_powers("t", eps.value(), "e"),
        "e + e^2*t + e^4*t^3 + e*t^7 + e^2*t^8 + O(t^9)"
    );
    let f = XTPoly::parse(&f2(), "x^7+t*x+1").unwrap();
    for j in 0..7 {
        let root = eps.pow(j);
        let built = fano_series(&root, 300).unwrap();
        let lifted = newton_lift(&f, &root, 300).unwrap();
        assert_eq!(built.first_difference(&lifted), None, "j = {j}");
    }
    let zero = FqElem::new(&k, Fe(0));
    assert!(fano_series(&zero, 5).is_err());
}

#[test]
fn m11_coefficients_and_roots() {
    assert_eq!(m11_coeffs(10), vec![1, 1, 0, 1, 1, 0, 0, 0, 0, 2]);
    let eps = m11_epsilon();
    let k = m11_field();
    assert_eq!(k.order(eps.value()).unwrap(), 11);
    let f = XTPoly::parse(&FieldSpec::prime(3).unwrap(), "x^11+t*x^2-1").unwrap();
    for i in 0..11 {
        let iter = m11_series(&eps, i, 243).unwrap();
        let closed = m11_series_closed_form(&eps, i, 243).unwrap();
        let lifted = newton_lift(&f, &eps.pow(i as u64), 243).unwrap();
        assert_eq!(iter.first_difference(&closed), None);
        assert_eq!(iter.first_difference(&lifted), None);
    }
}

#[test]
fn taylor_census_with_multiple_roots() {
    let f = XTPoly::parse(&f2(), "x^4+x^2+t*x").unwrap();
    let r = all_taylor_roots(&f, 20, None).unwrap();
    assert_eq!(r.count(), 2);
    assert_eq!(r.exact, vec![false, true]);
    assert_eq!(r.series[0].support(), vec![1, 3, 5, 9, 11, 17, 19]);
    assert!(r.series.iter().all(|s| residual_vanishes(&f, s)));
    assert_eq!(r.non_liftable.len(), 1);
    assert_eq!(r.non_liftable[0].root, Fe(1));
    assert_eq!(r.non_liftable[0].multiplicity, 2);
}

#[test]
fn taylor_census_counts_simple_roots() {
    let f = XTPoly::parse(&f2(), "x^24+x+t").unwrap();
    let r = all_taylor_roots(&f, 64, None).unwrap();
    assert_eq!(r.count(), 24);
    assert_eq!(r.field.k(), 11);
    assert!(r.non_liftable.is_empty());
}

#[test]
fn branches_at_infinity() {
    let f = XTPoly::parse(&f2(), "x^4+x^2+t*x").unwrap();
    let e = puiseux_expand(&f, ExpansionPoint::Infinity, 4, None).unwrap();
    let exact: Vec<_> = e.branches.iter().filter(|b| b.exact).collect();
    let tame: Vec<_> = e.branches.iter().filter(|b| !b.exact).collect();
    assert_eq!(exact.len(), 1);
    assert!(exact[0].series.is_zero());
    assert_eq!(tame.len(), 3);
    assert!(tame.iter().all(|b| b.series.ram() == 3));
    assert!(e.wild.is_empty());
    // support -1/3, 1/3, 5/3, 7/3, ...
    let s = &tame[0].series;
    assert_eq!(&s.support()[..4], &[-1, 1, 5, 7]);
    let g = XTPoly::parse(&f2(), "t*x^4+t*x^2+x").unwrap();
    for b in &e.branches {
        assert!(b.series.compose_poly(&g).unwrap().is_zero());
    }
}

#[test]
fn wild_branch_at_origin() {
    let f = XTPoly::parse(&f2(), "x^2+x*t+t").unwrap();
    let e = puiseux_expand(&f, ExpansionPoint::Origin, 8, None).unwrap();
    assert!(e.branches.is_empty());
    assert_eq!(e.wild.len(), 1);
    assert_eq!(e.wild[0].ram, 2);
    assert_eq!(e.wild[0].valuation, (1, 2));
}

#[test]
fn tame_branch_residuals() {
    let f3 = FieldSpec::prime(3).unwrap();
    let f = XTPoly::parse(&f3, "x^2-t^3-t^4").unwrap();
    let e = puiseux_expand(&f, ExpansionPoint::Origin, 12, None).unwrap();
    assert_eq!(e.branches.len(), 2);
    for b in &e.branches {
        assert_eq!(b.series.ram(), 2);
        assert_eq!(b.series.valuation(), 3);
        assert!(b.series.compose_poly(&f).unwrap().is_zero());
    }
}
