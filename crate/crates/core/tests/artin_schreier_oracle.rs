use ordinarity_core::artin_schreier::{census_analytic, census_enumerated, enumerate_covers};
use ordinarity_core::prank_oracle::{cross_validate, Cover};
use ordinarity_core::FieldSpec;

#[test]
fn every_small_cover_agrees_with_the_oracle() {
    let f = FieldSpec::from_q(2).unwrap();
    for inf in [false, true] {
        for m in 2..=6 {
            for c in enumerate_covers(&f, m, inf) {
                let r = cross_validate(&Cover::ArtinSchreier(c)).unwrap();
                r.ensure_agree().unwrap();
                assert!(r.genus <= 2);
            }
        }
    }
}

#[test]
fn char_three_oracle() {
    let f = FieldSpec::from_q(3).unwrap();
    for m in 2..=5 {
        for c in enumerate_covers(&f, m, false) {
            cross_validate(&Cover::ArtinSchreier(c)).unwrap().ensure_agree().unwrap();
        }
    }
}

#[test]
fn census_routes_over_f4_and_f5() {
    for (q, m) in [(4u64, 6u32), (5, 5)] {
        let f = FieldSpec::from_q(q).unwrap();
        for inf in [false, true] {
            assert!(census_analytic(q, m, inf).unwrap().same_counts(&census_enumerated(&f, m, inf).unwrap()));
        }
    }
}

#[test]
fn census_json_shape() {
    let t = census_analytic(2, 6, false).unwrap();
    let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["m"], 2);
    assert_eq!(v["rows"][0]["a"], "2");
    assert_eq!(v["source"], "analytic");
}
