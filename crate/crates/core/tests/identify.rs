use std::time::Instant;

use fqgalois::ffield::FieldSpec;
use fqgalois::identify::*;
use fqgalois::permgrp::{closure, element_shapes, CycleShape};
use fqgalois::polyring::{UniPoly, XTPoly};

fn xt(p: u64, s: &str) -> XTPoly {
    XTPoly::parse(&FieldSpec::prime(p).unwrap(), s).unwrap()
}

fn shape(s: &str) -> CycleShape {
    CycleShape::parse(s).unwrap()
}

fn run(p: u64, f: &str, opts: &IdentifyOptions) -> EvidenceReport {
    let t = Instant::now();
    let r = identify(&xt(p, f), &Catalog::shipped(), opts).unwrap();
    eprintln!("{f} over F_{p}: {:?} in {:.1?} shapes {:?}", r.survivor_names(), t.elapsed(), r.shapes);
    r
}

#[test]
fn specializations_of_degree_24() {
    let f = xt(2, "x^24+x+t");
    let f2 = FieldSpec::prime(2).unwrap();
    let at = |a: u64| specialize_shape(&f, &SpecPoint::Element(fqgalois::ffield::Fe(a))).unwrap().unwrap();
    assert_eq!(at(0), shape("[11,11,1,1]"));
    assert_eq!(at(1), shape("[21,3]"));
    let g = UniPoly::parse(&f2, "t^3+t^2+1", 't').unwrap();
    assert_eq!(specialize_shape(&f, &SpecPoint::MinPoly(g)).unwrap().unwrap(), shape("[23,1]"));
}

#[test]
fn specialization_skips_bad_points() {
    // x^2 + t is a square at t = 0 and inseparable everywhere in char 2.
    let f = xt(3, "x^2+t");
    assert_eq!(specialize_shape(&f, &SpecPoint::Element(fqgalois::ffield::Fe(0))).unwrap(), None);
    let g = xt(3, "t*x^2+x+1");
    assert_eq!(specialize_shape(&g, &SpecPoint::Element(fqgalois::ffield::Fe(0))).unwrap(), None);
}

#[test]
fn sweeps_contain_expected_shapes() {
    let s = shape_sweep(&xt(2, "x^4+x+t"), 2, 1000).unwrap();
    let got: Vec<CycleShape> = s.iter().map(|x| x.cycle_shape()).collect();
    assert!(got.contains(&shape("[4]")) && got.contains(&shape("[2,1,1]")));
    assert_eq!(s[0].point, "t = 0");

    let s = shape_sweep(&xt(3, "x^11+t*x^2-1"), 5, 10_000).unwrap();
    let got: Vec<CycleShape> = s.iter().map(|x| x.cycle_shape()).collect();
    for want in ["[5,5,1]", "[6,3,2]", "[8,2,1]", "[11]"] {
        assert!(got.contains(&shape(want)), "missing {want}");
    }

    let one = shape_sweep(&xt(2, "x^3+x+1"), 1, 1).unwrap();
    assert_eq!(one.len(), 1);
}

#[test]
fn sweep_replays() {
    let f = xt(2, "x^24+x+t");
    for s in shape_sweep(&f, 3, 1000).unwrap() {
        let point = if s.ext_degree == 1 {
            SpecPoint::Element(fqgalois::ffield::Fe(s.point.trim_start_matches("t = ").parse().unwrap()))
        } else {
            SpecPoint::MinPoly(UniPoly::parse(f.field(), &s.point, 't').unwrap())
        };
        assert_eq!(specialize_shape(&f, &point).unwrap().unwrap(), s.cycle_shape());
    }
}

#[test]
fn discriminant_parity() {
    let d = disc_square_test(&xt(3, "x^11+t*x^2-1")).unwrap();
    assert_eq!(d.verdict, DiscVerdict::Square);
    assert_eq!(d.value.as_deref(), Some("1"));
    let d = disc_square_test(&xt(3, "x^2+t")).unwrap();
    assert_eq!(d.verdict, DiscVerdict::Nonsquare);
    assert_eq!(d.value.as_deref(), Some("2*t"));
    assert_eq!(disc_square_test(&xt(2, "x^7+x+t")).unwrap().verdict, DiscVerdict::NotApplicable);
}

fn partitions(n: usize) -> std::collections::BTreeSet<CycleShape> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut std::collections::BTreeSet<CycleShape>) {
        if n == 0 {
            out.insert(CycleShape::new(cur.clone()));
        }
        for part in 1..=n.min(max) {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = std::collections::BTreeSet::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn catalog_small_groups_rederived() {
    let cat = Catalog::shipped();
    for e in &cat.entries {
        let gens = e.generator_perms().unwrap();
        assert!(gens.iter().all(|g| g.degree() == e.degree), "{}", e.name);
        assert_eq!(e.in_alternating, gens.iter().all(|g| g.cycle_shape().is_even()), "{}", e.name);
        let order = e.order_u128();
        if order <= 200_000 {
            let all = closure(&gens, 200_001).unwrap();
            assert_eq!(all.len() as u128, order, "{}", e.name);
            let shapes: std::collections::BTreeSet<CycleShape> = all.iter().map(|g| g.cycle_shape()).collect();
            match e.shape_list() {
                Some(list) => assert_eq!(shapes, list, "{}", e.name),
                None => {
                    let want = partitions(e.degree)
                        .into_iter()
                        .filter(|s| e.is_symmetric() || s.is_even())
                        .collect();
                    assert_eq!(shapes, want, "{}", e.name);
                }
            }
        } else if let Some(list) = e.shape_list() {
            let census = element_shapes(&gens, 20_000).unwrap();
            assert!(census.shapes.is_subset(&list), "{}", e.name);
        }
    }
}

#[test]
fn catalog_k_subset_orbits() {
    let cat = Catalog::shipped();
    let find = |name: &str, n: usize| cat.entries.iter().find(|e| e.name == name && e.degree == n).unwrap();
    assert_eq!(find("M11", 11).k_subset_orbit_sizes(5, 1000).unwrap(), Some(vec![66, 396]));
    assert_eq!(find("A11", 11).k_subset_orbit_sizes(5, 1000).unwrap(), Some(vec![462]));
    assert_eq!(find("D4", 4).k_subset_orbit_sizes(2, 100).unwrap(), Some(vec![2, 4]));
    assert_eq!(find("S4", 4).k_subset_orbit_sizes(2, 100).unwrap(), Some(vec![6]));
}

#[test]
fn identifies_m24() {
    let r = run(2, "x^24+x+t", &IdentifyOptions::default());
    assert_eq!(r.identified.as_deref(), Some("M24"));
    assert!(r.transitive);
    let why = |n: &str| r.excluded.iter().find(|x| x.name == n).unwrap().rule.clone();
    assert_eq!(why("A24"), "R6");
    assert_eq!(why("S24"), "R6");
    assert_eq!(r.additive.as_ref().unwrap().homogeneous_pdeg, Some(12));
}

#[test]
fn identifies_psl32() {
    let r = run(2, "x^7+x+t", &IdentifyOptions::default());
    assert_eq!(r.identified.as_deref(), Some("PSL3(2)"));
}

#[test]
fn identifies_d4_by_pair_resolvent() {
    let r = run(2, "x^4+x+t", &IdentifyOptions::default());
    assert_eq!(r.identified.as_deref(), Some("D4"));
    assert_eq!(r.resolvents[0].factor_degrees, vec![2]);
}

#[test]
fn identifies_m23() {
    let r = run(2, "x^23+x^3+t", &IdentifyOptions::default());
    assert_eq!(r.identified.as_deref(), Some("M23"));
}

#[test]
fn identifies_m11_with_blocks() {
    let plain = run(3, "x^11+t*x^2-1", &IdentifyOptions { sweep_degree: 5, ..Default::default() });
    assert!(plain.identified.is_none());
    let mut names = plain.survivor_names();
    names.sort();
    assert_eq!(names, vec!["A11", "M11"]);

    let opts = IdentifyOptions {
        sweep_degree: 5,
        blocks: Some(BlockSpec::steiner11()),
        ..Default::default()
    };
    let r = run(3, "x^11+t*x^2-1", &opts);
    assert_eq!(r.identified.as_deref(), Some("M11"));
    assert_eq!(r.resolvents[0].factor_degrees, vec![66]);
    let a11 = r.excluded.iter().find(|x| x.name == "A11").unwrap();
    assert_eq!(a11.rule, "R7");
}

#[test]
fn containment_rows() {
    for (p, f, g, sweep) in [(3, "x^12+x+t", "M11", 3), (7, "x^8+x^7+t", "PGL2(7)", 2)] {
        let r = run(p, f, &IdentifyOptions { sweep_degree: sweep, ..Default::default() });
        assert!(r.survivor_names().contains(&g), "{f}: {:?}", r.survivor_names());
        if r.survivors.len() > 1 {
            assert!(r.survivors.iter().all(|s| s.note.is_some()));
        }
    }
}

#[test]
fn degree_13_row_needs_characteristic_3() {
    // Over F_2 an element of order 20 (and one of order 40 at t = 1) rules
    // out PSL3(3), whose order 5616 is prime to 5.
    let r = run(2, "x^13+x+t", &IdentifyOptions::default());
    let x = r.excluded.iter().find(|x| x.name == "PSL3(3)").unwrap();
    assert_eq!(x.rule, "R2");
    let r = run(3, "x^13+x+t", &IdentifyOptions::default());
    assert_eq!(r.identified.as_deref(), Some("PSL3(3)"));
}

#[test]
fn degree_8_row_over_f2_has_a_6_2_shape() {
    let f = xt(2, "x^8+x^7+t");
    let s = specialize_shape(&f, &SpecPoint::Element(fqgalois::ffield::Fe(1))).unwrap().unwrap();
    assert_eq!(s, shape("[6,2]"));
    let r = run(2, "x^8+x^7+t", &IdentifyOptions { sweep_degree: 4, ..Default::default() });
    assert!(!r.survivor_names().contains(&"PSL2(7)"));
    assert!(!r.survivor_names().contains(&"PGL2(7)"));
}

#[test]
fn every_exclusion_cites_one_rule() {
    let r = run(2, "x^7+x+t", &IdentifyOptions::default());
    let cat = Catalog::shipped();
    let mut names: Vec<&str> = r.excluded.iter().map(|x| x.name.as_str()).chain(r.survivor_names()).collect();
    names.sort();
    let mut want: Vec<&str> = cat.of_degree(7).iter().map(|e| e.name.as_str()).collect();
    want.sort();
    assert_eq!(names, want);
    let json = serde_json::to_string(&r).unwrap();
    let back: EvidenceReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
