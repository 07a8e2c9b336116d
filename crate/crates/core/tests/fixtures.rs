//! The curated elliptic model fixtures must reproduce their hand-computed
//! intersection numbers and agree with the Neron-Tate oracle.

use ffheights::config::Caps;
use ffheights::elliptic::{is_torsion, nt_height};
use ffheights::lattice::{faltings_hriljac_check, model_pairing};
use ffheights::rat::{rat, rat_int, rat_zero};
use ffheights::wire::FhInput;

fn load(name: &str) -> FhInput {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let data = std::fs::read_to_string(path).unwrap();
    serde_json::from_str(&data).unwrap()
}

#[test]
fn nontorsion_fixture_pairing_is_minus_one() {
    let input = load("fh_nontorsion.json");
    let (_k, model, divisor, class) = input.load().unwrap();
    let pairing = model_pairing(&model, &divisor, &divisor).unwrap();
    assert_eq!(pairing, rat_int(-1));

    let (curve, point) = class.unwrap();
    assert!(!curve.is_isotrivial());
    assert!(!is_torsion(&curve, &point).unwrap());
    // the theta-normalized height of this section is 1/2
    let caps = Caps::default();
    let h = nt_height(&curve, &point, &rat(1, 100), &caps).unwrap();
    let expected = rat(1, 2);
    let diff = if h.value > expected {
        h.value.clone() - expected
    } else {
        expected - h.value.clone()
    };
    assert!(diff <= h.error_bound.clone());

    let rep = faltings_hriljac_check(
        &model,
        &divisor,
        Some((&curve, &point)),
        &rat(1, 100),
        &caps,
    )
    .unwrap();
    assert!(rep.pass, "{rep:?}");
    assert_eq!(rep.pairing, rat_int(-1));
}

#[test]
fn torsion_fixture_pairing_is_zero() {
    let input = load("fh_torsion.json");
    let (_k, model, divisor, class) = input.load().unwrap();
    let pairing = model_pairing(&model, &divisor, &divisor).unwrap();
    assert_eq!(pairing, rat_zero());

    let (curve, point) = class.unwrap();
    assert!(is_torsion(&curve, &point).unwrap());
    let caps = Caps::default();
    let rep = faltings_hriljac_check(
        &model,
        &divisor,
        Some((&curve, &point)),
        &rat(1, 100),
        &caps,
    )
    .unwrap();
    assert!(rep.pass, "{rep:?}");
    assert_eq!(rep.pairing, rat_zero());
}
