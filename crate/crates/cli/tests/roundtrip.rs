use ainfinity::transfer_minimal_model;
use hochschild::hochschild_report;
use mf_core::{MFMorphism, StabilizationConfig};
use mfcat::checks::random_koszul;
use mfcat::json::*;
use proptest::prelude::*;
use ring_core::{parse_series, RingCtx};
use stabilize::{decompose_potential, make_koszul_mf, stabilized_diagonal};

fn reparse(v: &serde_json::Value) -> serde_json::Value {
    serde_json::from_str(&to_canonical_string(v)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn factorizations_round_trip(seed in 0u64..10_000) {
        let kd = random_koszul(seed).unwrap();
        prop_assert_eq!(koszul_from_json(&reparse(&koszul_to_json(&kd))).unwrap(), kd.clone());
        let x = make_koszul_mf(&kd).unwrap();
        prop_assert_eq!(mf_from_json(&reparse(&mf_to_json(&x))).unwrap(), x.clone());
        let d = stabilized_diagonal(kd.potential()).unwrap();
        prop_assert_eq!(mf_from_json(&reparse(&mf_to_json(&d))).unwrap(), d);
        let f = MFMorphism::scalar(&x, &kd.generators()[0]);
        prop_assert_eq!(morphism_from_json(&reparse(&morphism_to_json(&f))).unwrap(), f);
        let w = kd.potential();
        prop_assert_eq!(&potential_from_json(&reparse(&potential_to_json(w))).unwrap(), w);
    }
}

#[test]
fn structures_and_reports_round_trip() {
    for (names, w) in [(&["x"][..], "x^2 + x^3"), (&["x", "y"][..], "x^2*y + y^3")] {
        let w = parse_series(&RingCtx::rational(names), w).unwrap();
        let s = transfer_minimal_model(&w, 4).unwrap();
        assert_eq!(ainf_from_json(&reparse(&ainf_to_json(&s))).unwrap(), s);
        let mut r = hochschild_report(&w, StabilizationConfig::default()).unwrap();
        r.stabilized_at = 0;
        assert_eq!(hh_from_json(&reparse(&hh_to_json(&r))).unwrap(), r);
        let kd = decompose_potential(&w).unwrap();
        assert_eq!(koszul_from_json(&koszul_to_json(&kd)).unwrap(), kd);
    }
    let c = RingCtx::from_spec("x,y;prime=5;trunc=7").unwrap();
    let w = parse_series(&c, "x^2 + 3*y^3").unwrap();
    assert_eq!(potential_from_json(&potential_to_json(&w)).unwrap(), w);
}

#[test]
fn corrupted_witness_is_a_verification_error() {
    let c = RingCtx::rational(&["x"]);
    let kd = decompose_potential(&parse_series(&c, "x^3").unwrap()).unwrap();
    let mut v = koszul_to_json(&kd);
    v["witnesses"][0] = serde_json::json!([[[2], "5"]]);
    assert!(matches!(koszul_from_json(&v), Err(mfcat::CliError::Verification(_))));
}
