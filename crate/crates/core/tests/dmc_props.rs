use ccm_core::dmc::{cond_mutual_information, inner_bound_point, outer_bound_point, Dmc, JointDistribution};
use ccm_core::region::contains;
use proptest::prelude::*;

fn law(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, n).prop_filter_map("zero mass", |v| {
        let s: f64 = v.iter().sum();
        (s > 1e-3).then(|| v.into_iter().map(|p| p / s).collect())
    })
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// A channel with `|X1| = |X2| = |Y1| = |Y2| = 2`.
fn channel() -> impl Strategy<Value = Dmc> {
    prop::collection::vec(law(4), 4).prop_map(|rows| Dmc::new([2, 2, 2, 2], rows.concat()).unwrap())
}

proptest! {
    #[test]
    fn mutual_information_is_symmetric_and_nonnegative(
        (dims, table) in (prop::array::uniform3(2usize..4))
            .prop_flat_map(|d| (Just(d), law(d.iter().product())))
    ) {
        let j = JointDistribution::new(names(&["A", "B", "C"]), dims.to_vec(), table).unwrap();
        for cond in [&[][..], &["C"][..]] {
            let ab = cond_mutual_information(&j, &["A"], &["B"], cond).unwrap();
            let ba = cond_mutual_information(&j, &["B"], &["A"], cond).unwrap();
            prop_assert!(ab >= 0.0);
            prop_assert!((ab - ba).abs() < 1e-12, "{ab} vs {ba}");
        }
    }

    #[test]
    fn inner_bound_lies_in_outer_bound(ch in channel(), aux in law(16)) {
        // law over (U1c, U2c, X1, X2), all binary
        let joint = JointDistribution::new(names(&["U1c", "U2c", "X1", "X2"]), vec![2; 4], aux.clone()).unwrap();
        let mut marginal = vec![0.0; 4];
        for (i, p) in aux.iter().enumerate() {
            marginal[i % 4] += p;
        }
        let input = JointDistribution::inputs(2, 2, marginal).unwrap();
        let inner = inner_bound_point(&ch, &joint).unwrap().region();
        let outer = outer_bound_point(&ch, &input).unwrap().region();
        prop_assert!(contains(&outer, &inner, 1e-9));
    }
}
