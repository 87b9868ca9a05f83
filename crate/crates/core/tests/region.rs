use halasz::region::{hbar, hbar_closed_form, kappa, region_constants, ConvexRegion};
use proptest::prelude::*;
use std::f64::consts::PI;

fn region_strategy() -> impl Strategy<Value = ConvexRegion> {
    prop_oneof![
        (0.05..0.99f64).prop_map(|r| ConvexRegion::disc(r).unwrap()),
        (0.05..0.99f64).prop_map(|q| ConvexRegion::sector(q * PI).unwrap()),
        (3u32..12).prop_map(|m| ConvexRegion::roots_of_unity(m).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The integrand is a maximum of affine functions of α, so h̄ is convex.
    #[test]
    fn hbar_is_convex(region in region_strategy(), a in 0.0..1.0f64, b in 0.0..1.0f64, t in 0.0..1.0f64) {
        let mid = t * a + (1.0 - t) * b;
        let lhs = hbar(&region, mid).unwrap();
        let rhs = t * hbar(&region, a).unwrap() + (1.0 - t) * hbar(&region, b).unwrap();
        prop_assert!(lhs <= rhs + 1e-10, "h({mid}) = {lhs} > {rhs}");
    }

    #[test]
    fn nested_discs_order_kappa(r1 in 0.05..0.95f64, dr in 0.01..0.04f64, alpha in 0.0..1.0f64) {
        let small = ConvexRegion::disc(r1).unwrap();
        let big = ConvexRegion::disc(r1 + dr).unwrap();
        prop_assert!(hbar(&small, alpha).unwrap() <= hbar(&big, alpha).unwrap() + 1e-10);
        prop_assert!(kappa(&small).unwrap() >= kappa(&big).unwrap() - 1e-12);
    }

    /// A larger φ keeps a shorter arc of the circle, so the region shrinks.
    #[test]
    fn nested_sectors_order_hbar(q in 0.05..0.9f64, dq in 0.01..0.09f64, alpha in 0.0..1.0f64) {
        let big = ConvexRegion::sector(q * PI).unwrap();
        let small = ConvexRegion::sector((q + dq) * PI).unwrap();
        prop_assert!(hbar(&small, alpha).unwrap() <= hbar(&big, alpha).unwrap() + 1e-10);
    }

    #[test]
    fn kappa_solves_hbar_equals_one(region in region_strategy()) {
        let c = region_constants(&region).unwrap();
        prop_assert!(c.kappa * c.nu <= 1.0 + 1e-12);
        prop_assert!(c.kappa >= c.kappa_lb - 1e-12);
        if c.kappa < 1.0 && c.kappa > 0.0 {
            prop_assert!((hbar(&region, c.kappa).unwrap() - 1.0).abs() <= 1e-9);
        }
        prop_assert!((c.lambda - 2.0 * PI * c.hbar0).abs() <= 1e-12 * c.lambda.max(1.0));
    }

    #[test]
    fn closed_form_agrees_with_quadrature(r in 0.05..0.99f64, alpha in 0.0..0.999f64) {
        let d = ConvexRegion::disc(r).unwrap();
        let gap = (hbar_closed_form(&d, alpha).unwrap() - hbar(&d, alpha).unwrap()).abs();
        prop_assert!(gap <= 1e-9, "gap {gap}");
    }
}
