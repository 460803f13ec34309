use fqgalois::paperprops::*;

fn status(r: &VerifyReport, id: &str) -> CheckStatus {
    r.check(id).unwrap_or_else(|| panic!("missing check {id}")).status
}

#[test]
fn fano_checks_pass_at_128() {
    let r = fano_verify(128).unwrap();
    for c in &r.checks {
        assert_eq!(c.status, CheckStatus::Pass, "{}: {:?}", c.check_id, c.notes);
    }
    assert!(r.ok());
    let f = r.check("f_y_sum_product").unwrap();
    assert!(f.notes.iter().any(|n| n.starts_with("u^3 + L0^2 = t: holds")));
    assert!(f.notes.iter().any(|n| n.starts_with("printed u^3 + L0 = t: fails")));
}

#[test]
fn fano_low_precision_is_reported() {
    let r = fano_verify(32).unwrap();
    assert!(r.checks.iter().all(|c| c.status == CheckStatus::InsufficientPrecision));
    assert!(!r.ok());
}

#[test]
fn fano_perturbation_is_caught() {
    let r = fano_verify_with(96, Some(Perturbation { root: 0, exponent: 40 })).unwrap();
    for id in ["a_roots", "b_incidence", "e_factorization"] {
        assert_eq!(status(&r, id), CheckStatus::Fail, "{id}");
    }
    assert_eq!(r.check("a_roots").unwrap().first_divergence_exponent, Some(40));
    assert!(!r.ok());
    let json = r.to_json();
    assert_eq!(json["checks"][0]["status"], "fail");
}

#[test]
fn m11_checks_pass_at_120() {
    let r = m11_verify(120).unwrap();
    for c in &r.checks {
        assert!(
            matches!(c.status, CheckStatus::Pass | CheckStatus::Deviation),
            "{}: {:?}",
            c.check_id,
            c.notes
        );
    }
    assert!(r.ok());
    assert_eq!(status(&r, "f66_reconstruction"), CheckStatus::Pass);
    let t4 = r.check("f66_nonblocks_t4").unwrap();
    assert_eq!(t4.status, CheckStatus::Deviation);
    assert_eq!(t4.first_divergence_exponent, Some(6));
}

#[test]
fn m11_block_swap_is_caught() {
    let ctx = M11Context::new(100, None).unwrap();
    let intruder = fqgalois::permgrp::k_subsets(11, 5)
        .into_iter()
        .find(|s| !ctx.blocks.contains(s))
        .unwrap();
    let swap = BlockSwap { block: 0, with: intruder };
    let r = m11_verify_with(100, Some(&swap)).unwrap();
    assert_eq!(status(&r, "steiner"), CheckStatus::Fail);
    assert_eq!(status(&r, "f66_blocks_vanish"), CheckStatus::Fail);
    assert_eq!(r.check("f66_blocks_vanish").unwrap().first_divergence_exponent, Some(6));
    assert_eq!(status(&r, "f66_reconstruction"), CheckStatus::Fail);
}
