use ccm_core::region::{contains, frontier, max_gap, max_ratio, region_from_points, NESTING_TOL};
use ccm_core::RatePoint;
use proptest::prelude::*;

fn points(max: usize) -> impl Strategy<Value = Vec<RatePoint>> {
    prop::collection::vec((0.0..10.0f64, 0.0..10.0f64), 1..max)
        .prop_map(|v| v.into_iter().map(|(a, b)| RatePoint::new(a, b)).collect())
}

/// An outer hull over all points and an inner hull over a nonempty prefix.
fn nested() -> impl Strategy<Value = (Vec<RatePoint>, usize)> {
    points(12).prop_flat_map(|pts| {
        let n = pts.len();
        (Just(pts), 1..=n)
    })
}

proptest! {
    #[test]
    fn hull_contains_its_inputs(pts in points(20)) {
        let r = region_from_points(&pts);
        for p in &pts {
            prop_assert!(r.contains_point(*p, 1e-9), "{p:?} outside");
        }
    }

    #[test]
    fn zero_gap_iff_mutual_containment((pts, k) in nested()) {
        let outer = region_from_points(&pts);
        let inner = region_from_points(&pts[..k]);
        prop_assert!(contains(&outer, &inner, NESTING_TOL));
        let g = max_gap(&outer, &inner).unwrap();
        prop_assert_eq!(g == 0.0, contains(&inner, &outer, NESTING_TOL), "gap {}", g);
    }

    #[test]
    fn ratio_is_scale_invariant((pts, k) in nested(), s in prop::sample::select(vec![0.5, 2.0, 10.0])) {
        let outer = region_from_points(&pts);
        let inner = region_from_points(&pts[..k]);
        let base = max_ratio(&outer, &inner).unwrap();
        let scaled = max_ratio(&outer.scaled(s), &inner.scaled(s)).unwrap();
        if base.is_finite() {
            prop_assert!((base - scaled).abs() <= 1e-6 * base, "{base} vs {scaled}");
        } else {
            prop_assert!(scaled.is_infinite());
        }
    }

    #[test]
    fn frontier_points_lie_in_region(pts in points(12), res in 2usize..100) {
        let r = region_from_points(&pts);
        for p in frontier(&r, res).unwrap() {
            prop_assert!(r.contains_point(p, 1e-9), "{p:?} outside");
        }
    }
}
