use hexlat::verification::{
    bound_terms, coverage_manifest, verify_all, verify_only, Comparison, LemmaReport, VerifyConfig,
};
use std::sync::OnceLock;

fn suite() -> &'static Vec<LemmaReport> {
    static SUITE: OnceLock<Vec<LemmaReport>> = OnceLock::new();
    SUITE.get_or_init(|| verify_all(&VerifyConfig::default()).unwrap())
}

#[test]
fn manifest_matches_checked_in_list() {
    let expected: Vec<&str> = include_str!("data/report_ids.txt").lines().filter(|l| !l.is_empty()).collect();
    assert_eq!(coverage_manifest(), expected);
}

#[test]
fn suite_emits_manifest_in_order() {
    let ids: Vec<&str> = suite().iter().map(|r| r.lemma_id.as_str()).collect();
    assert_eq!(ids, coverage_manifest());
}

#[test]
fn pass_flag_agrees_with_comparison() {
    for r in suite() {
        assert_eq!(r.pass, r.comparison.holds(r.computed, r.claimed, r.tolerance), "{}", r.lemma_id);
        assert!(r.tolerance >= 0.0 && !r.grid.is_empty(), "{}", r.lemma_id);
    }
}

#[test]
fn suite_is_deterministic() {
    let ids: Vec<String> = ["lb_floor", "eps_c1", "double_sum_third_kind"].iter().map(|s| s.to_string()).collect();
    let a = verify_only(&ids, &VerifyConfig::default()).unwrap();
    let b = verify_only(&ids, &VerifyConfig::default()).unwrap();
    assert_eq!(a, b);
    for r in &a {
        let full = suite().iter().find(|s| s.lemma_id == r.lemma_id).unwrap();
        assert_eq!(r, full);
    }
}

#[test]
fn seed_changes_random_points_only() {
    let ids = vec!["la_floor".to_string()];
    let a = verify_only(&ids, &VerifyConfig::default()).unwrap();
    let b = verify_only(&ids, &VerifyConfig { seed: 7, ..VerifyConfig::default() }).unwrap();
    assert_eq!(a[0].claimed, b[0].claimed);
    assert!((a[0].computed - b[0].computed).abs() <= 1e-3 * a[0].computed.abs());
}

#[test]
fn unknown_id_is_an_error() {
    assert!(verify_only(&["NOPE".to_string()], &VerifyConfig::default()).is_err());
}

#[test]
fn bound_terms_nonnegative() {
    for t in bound_terms(&VerifyConfig::default()).unwrap() {
        assert!(t.value >= 0.0 && t.value.is_finite(), "{}", t.name);
    }
}

// Frozen outputs. The constants agree with their printed digits; sigma3 and
// the region floors were cross-checked by separate scripts.
#[test]
fn frozen_values() {
    let get = |id: &str| suite().iter().find(|r| r.lemma_id == id).unwrap().computed;
    let cases = [
        ("HHH", 1.127_521_32, 1e-7),
        ("bn_limit", 81.845_466_17, 1e-7),
        ("nu_unit_crossing", 0.298_993_812_3, 1e-9),
        ("sigma3", 1.776_088_878e-5, 1e-8),
        ("eps_d1", 3.916_582_644e-4, 1e-8),
        ("eps_d2", 9.261_851_261e-4, 1e-8),
        ("lb_floor", 0.296_462_443, 1e-8),
        ("rc_floor", 0.449_941_400_3, 1e-8),
    ];
    for (id, v, rel) in cases {
        let c = get(id);
        assert!((c - v).abs() <= rel * v.abs(), "{id}: {c}");
    }
}

#[test]
fn comparison_symbols() {
    assert_eq!(Comparison::Le.symbol(), "<=");
    assert_eq!(Comparison::Ge.symbol(), ">=");
}

#[test]
fn default_suite_passes() {
    let failed: Vec<String> = suite()
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} (computed {:.6e}, claimed {} {:.6e})", r.lemma_id, r.computed, r.comparison.symbol(), r.claimed))
        .collect();
    assert!(failed.is_empty(), "{} failing reports:\n{}", failed.len(), failed.join("\n"));
}
