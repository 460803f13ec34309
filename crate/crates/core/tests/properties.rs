use proptest::prelude::*;

use fqgalois::additive::{minimal_additive_multiple, AdditiveOptions};
use fqgalois::ffield::{Fe, FieldSpec, FqElem};
use fqgalois::polyring::{UniPoly, XTPoly};
use fqgalois::resolvent::{product_of, reconstruct_poly};
use fqgalois::series::{fano_epsilon, fano_series, newton_lift};

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just((2u64, 1usize)),
        Just((2, 3)),
        Just((2, 8)),
        Just((3, 1)),
        Just((3, 5)),
        Just((5, 2)),
        Just((7, 1)),
        Just((65521, 1)),
    ]
    .prop_map(|(p, k)| FieldSpec::new(p, k, None).unwrap())
}

fn elem(f: &FieldSpec, r: u64) -> Fe {
    Fe(r % f.q())
}

fn poly(f: &FieldSpec, coeffs: &[u64]) -> UniPoly {
    UniPoly::new(f, coeffs.iter().map(|&c| elem(f, c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(a, f.q() as u128), a);
    }

    #[test]
    fn factorization_refactors(f in field_strategy(), coeffs in prop::collection::vec(any::<u64>(), 2..14)) {
        let g = poly(&f, &coeffs);
        prop_assume!(g.degree().unwrap_or(0) >= 1);
        let factors = g.factor_complete();
        let mut back = UniPoly::constant(&f, g.lc());
        for (h, m) in &factors {
            prop_assert!(h.is_irreducible());
            prop_assert_eq!(h.lc(), f.one());
            back = back.mul(&h.pow(*m as u64));
        }
        prop_assert_eq!(back, g);
    }

    #[test]
    fn gcd_and_resultant(f in field_strategy(), a in prop::collection::vec(any::<u64>(), 1..9), b in prop::collection::vec(any::<u64>(), 1..9)) {
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert_eq!(g.lc(), f.one());
        if a.degree() > Some(0) && b.degree() > Some(0) {
            prop_assert_eq!(a.resultant(&b).is_zero(), g.degree() > Some(0));
        }
    }

    #[test]
    fn text_round_trip(p in prop_oneof![Just(2u64), Just(3), Just(7), Just(65521)], terms in prop::collection::vec((0usize..6, 0usize..5, any::<u64>()), 1..8)) {
        // The text grammar has integer coefficients, so only prime fields round-trip.
        let f = FieldSpec::prime(p).unwrap();
        let mut rows = vec![vec![Fe::ZERO; 5]; 6];
        for (i, j, c) in terms {
            rows[i][j] = elem(&f, c);
        }
        let p = XTPoly::new(&f, rows.into_iter().map(|r| UniPoly::new(&f, r)).collect());
        let back = XTPoly::parse(&f, &p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn additive_relation_is_additive(t0 in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let f2 = FieldSpec::prime(2).unwrap();
        let rel = minimal_additive_multiple(&XTPoly::parse(&f2, "x^7+t*x+1").unwrap(), &AdditiveOptions::default()).unwrap();
        let k = FieldSpec::new(2, 10, None).unwrap();
        let e = |v: u64| FqElem::new(&k, elem(&k, v));
        let (t0, a, b) = (e(t0), e(a), e(b));
        let sum = FqElem::new(&k, k.add(a.value(), b.value()));
        let lhs = rel.eval(&t0, &sum).unwrap().value();
        let rhs = k.add(rel.eval(&t0, &a).unwrap().value(), rel.eval(&t0, &b).unwrap().value());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lifted_series_satisfy_the_equation(p in prop_oneof![Just(2u64), Just(3), Just(5)], a in prop::collection::vec(0u64..5, 3), r in 0u64..5, n in 8usize..80) {
        // f = (x - r)(x^2 + a0 x + a1) + t (x + a2) has the simple root r at t = 0
        // whenever r is not a root of the quadratic.
        let k = FieldSpec::prime(p).unwrap();
        let r = r % p;
        let quad = poly(&k, &[a[1] % p, a[0] % p, 1]);
        prop_assume!(!quad.eval(Fe(r)).is_zero());
        let src = format!("(x - {r})*(x^2 + {}*x + {}) + t*(x + {})", a[0] % p, a[1] % p, a[2] % p);
        let f = XTPoly::parse(&k, &src).unwrap();
        let x0 = FqElem::new(&k, Fe(r));
        let s = newton_lift(&f, &x0, n).unwrap();
        prop_assert!(s.compose_poly(&f).unwrap().is_zero());
        let longer = newton_lift(&f, &x0, n + 17).unwrap();
        prop_assert_eq!(longer.truncate(n as i64), s);
    }

    #[test]
    fn reconstruction_is_idempotent(subset in prop::sample::subsequence((0..7usize).collect::<Vec<_>>(), 1..7), extra in 0usize..24) {
        let eps = fano_epsilon();
        let base = 40;
        let roots = |n: usize| -> Vec<_> { (0..7).map(|i| fano_series(&eps.pow(i), n).unwrap()).collect() };
        let vals = |n: usize| -> Vec<_> { let r = roots(n); subset.iter().map(|&i| r[i].clone()).collect::<Vec<_>>() };
        let a = reconstruct_poly(&vals(base), 6, 16);
        let b = reconstruct_poly(&vals(base + extra), 6, 16);
        if let (Ok(a), Ok(b)) = (a, b) {
            if a.guard_ok {
                prop_assert_eq!(&a.poly, &b.poly);
            }
        }
        let all: Vec<_> = roots(base);
        let whole = reconstruct_poly(&(0..7).map(|i| product_of(&all, &[i])).collect::<Vec<_>>(), 1, 16).unwrap();
        prop_assert!(whole.guard_ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_group_laws(images in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle(), other in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle()) {
        use fqgalois::permgrp::Permutation;
        let p = Permutation::new(images).unwrap();
        let q = Permutation::new(other).unwrap();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
        prop_assert_eq!(p.cycle_shape().degree(), 9);
        prop_assert_eq!(p.order(), p.cycle_shape().order());
    }
}

#[test]
fn parallel_results_are_deterministic() {
    let f = XTPoly::parse(&FieldSpec::prime(2).unwrap(), "x^24+x+t").unwrap();
    let a = fqgalois::identify::shape_sweep(&f, 3, 1000).unwrap();
    let b = fqgalois::identify::shape_sweep(&f, 3, 1000).unwrap();
    assert_eq!(a, b);
    let r1 = fqgalois::paperprops::m11_verify(100).unwrap();
    let r2 = fqgalois::paperprops::m11_verify(100).unwrap();
    assert_eq!(r1, r2);
}
