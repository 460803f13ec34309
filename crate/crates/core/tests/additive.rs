use fqgalois::additive::{affine_relation, minimal_additive_multiple, AdditiveOptions};
use fqgalois::ffield::FieldSpec;
use fqgalois::polyring::{UniPoly, XTPoly};

fn xt(p: u64, s: &str) -> XTPoly {
    XTPoly::parse(&FieldSpec::prime(p).unwrap(), s).unwrap()
}

#[test]
fn mathieu_affine_and_homogeneous_relations() {
    let f = xt(2, "x^24+x+t");
    let opts = AdditiveOptions::default();
    let aff = affine_relation(&f, &opts).unwrap();
    assert_eq!(aff.l_text(), "x^2048 + t^64*x^512 + t^8*x^16 + t^16*x^8 + x");
    assert_eq!(aff.c_text(), "t + t^24");
    assert_eq!(aff.pdeg, 11);

    let hom = minimal_additive_multiple(&f, &opts).unwrap();
    assert_eq!(hom.pdeg, 12);
    // L^2 + c L in characteristic 2
    let l = aff.to_xtpoly();
    let expected = l.mul(&l).add(&l.scale_t(&aff.affine_c));
    assert_eq!(hom.to_xtpoly(), expected);
}

#[test]
fn s11_additive_multiple() {
    let f = xt(3, "x^11+t*x^2-1");
    let t0 = std::time::Instant::now();
    let hom = minimal_additive_multiple(&f, &AdditiveOptions::default()).unwrap();
    eprintln!("s11 additive: {:?}", t0.elapsed());
    assert_eq!(hom.pdeg, 10);
    assert_eq!(hom.term_count(), 326);
    let _ = UniPoly::one(&hom.field);
}
