use ccm_core::gaussian::{
    inner_region, is_pdc, outer_bounds, outer_region, scheme_d_region, time_division_region, GaussianChannelParams,
};
use ccm_core::region::{contains, NESTING_TOL};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gain(w: f64) -> impl Strategy<Value = Complex64> {
    (-w..w, -w..w).prop_map(|(re, im)| Complex64::new(re, im))
}

fn params() -> impl Strategy<Value = GaussianChannelParams> {
    (gain(5.0), gain(3.0), 0.0..20.0f64, 0.0..20.0f64)
        .prop_map(|(a, b, p1, p2)| GaussianChannelParams::new(a, b, p1, p2).unwrap())
}

#[test]
fn pdc_holds_whenever_b_is_at_most_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let r = rng.gen_range(0.0..=1.0f64);
        let b = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        let a = Complex64::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let p = GaussianChannelParams::new(a, b, rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)).unwrap();
        assert!(is_pdc(&p), "{p}");
    }
}

proptest! {
    #[test]
    fn outer_bounds_grow_with_power(p in params(), alpha in 0.0..=1.0f64, dp in 0.0..10.0f64) {
        let (r1, sum) = outer_bounds(&p, alpha).unwrap();
        for q in [
            GaussianChannelParams { p1: p.p1 + dp, ..p },
            GaussianChannelParams { p2: p.p2 + dp, ..p },
        ] {
            let (r1q, sumq) = outer_bounds(&q, alpha).unwrap();
            prop_assert!(r1q >= r1 - 1e-12 && sumq >= sum - 1e-12);
        }
    }

    #[test]
    fn inner_regions_lie_in_outer_region(p in params()) {
        let outer = outer_region(&p, 101).unwrap();
        for inner in [inner_region(&p, 101).unwrap(), scheme_d_region(&p, 101).unwrap(), time_division_region(&p, 101).unwrap()] {
            prop_assert!(contains(&outer, &inner, NESTING_TOL));
        }
    }
}
