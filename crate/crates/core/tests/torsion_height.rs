//! Torsion <=> small canonical height, on every point found by exhaustive
//! small-height x-search over two curated curves: one with only torsion
//! sections and one with only non-torsion ones.

use ffheights::config::Caps;
use ffheights::elliptic::{is_torsion, nt_height, point_search, EllipticCurve};
use ffheights::ffield::parse::parse_ratfunc;
use ffheights::ffield::{GroundField, RatFunc};
use ffheights::rat::rat;
use num::Signed;

#[test]
fn torsion_iff_small_height_on_enumerated_points() {
    let k = GroundField::new(5, 1).unwrap();
    let caps = Caps::default();
    let eps = rat(1, 100);

    // y^2 = x^3 + t^2: every rational point is 3-torsion
    let torsion_curve =
        EllipticCurve::short(RatFunc::zero(&k), parse_ratfunc("t^2", &k).unwrap(), &k).unwrap();
    // y^2 = x^3 + t^2 x + t^2: rank-positive, small sections non-torsion
    let free_curve = EllipticCurve::short(
        parse_ratfunc("t^2", &k).unwrap(),
        parse_ratfunc("t^2", &k).unwrap(),
        &k,
    )
    .unwrap();

    let mut saw_torsion = false;
    let mut saw_free = false;
    for curve in [&torsion_curve, &free_curve] {
        for p in point_search(curve, 1, 64).unwrap() {
            let tor = is_torsion(curve, &p).unwrap();
            let h = nt_height(curve, &p, &eps, &caps).unwrap();
            let small = h.value.abs() <= eps.clone() + h.error_bound.clone();
            assert_eq!(
                tor, small,
                "torsion flag and height classification disagree at {:?}: h = {h:?}",
                p
            );
            saw_torsion |= tor;
            saw_free |= !tor;
        }
    }
    assert!(saw_torsion, "expected some torsion points in the search");
    assert!(saw_free, "expected some non-torsion points in the search");
}
