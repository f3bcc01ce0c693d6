use std::collections::BTreeMap;

use ccm_core::fme::{eliminate, prune, th2_pre_elimination, LinearExpr, SymbolicInequality, SymbolicSystem};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];
const ATOMS: [&str; 3] = ["A", "B", "C"];

#[test]
fn shipped_system_matches_canned() {
    let text = include_str!("../data/th2_pre.json");
    let parsed: SymbolicSystem = serde_json::from_str(text).unwrap();
    assert_eq!(parsed, th2_pre_elimination());
}

fn inequality() -> impl Strategy<Value = SymbolicInequality> {
    (prop::array::uniform3(-2i64..=2), prop::array::uniform3(-2i64..=2)).prop_map(|(rc, ac)| {
        let rhs = LinearExpr::from_terms(ATOMS.iter().copied().zip(ac));
        SymbolicInequality::new(VARS.iter().copied().zip(rc), rhs)
    })
}

fn system() -> impl Strategy<Value = SymbolicSystem> {
    prop::collection::vec(inequality(), 1..7)
        .prop_map(|ineqs| SymbolicSystem::new(VARS.iter().map(|s| s.to_string()).collect(), ineqs).unwrap())
}

fn atoms() -> impl Strategy<Value = BTreeMap<String, f64>> {
    prop::array::uniform3(-3.0..3.0f64).prop_map(|v| ATOMS.iter().map(|s| s.to_string()).zip(v).collect())
}

fn rates(x: f64, y: f64, z: f64) -> BTreeMap<String, f64> {
    VARS.iter().map(|s| s.to_string()).zip([x, y, z]).collect()
}

fn all_hold(sys: &SymbolicSystem, r: &BTreeMap<String, f64>, a: &BTreeMap<String, f64>, tol: f64) -> bool {
    sys.inequalities.iter().all(|i| i.holds(r, a, tol).unwrap())
}

/// Whether some `x` satisfies every inequality at `(y, z)`, by intersecting
/// the one-dimensional bounds directly. `None` when the answer is within
/// `margin` of flipping.
fn x_exists(sys: &SymbolicSystem, y: f64, z: f64, a: &BTreeMap<String, f64>, margin: f64) -> Option<bool> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let mut worst_const = f64::INFINITY;
    for i in &sys.inequalities {
        let c = i.coeff("x") as f64;
        let rest = i.rhs.evaluate(a).unwrap() - i.coeff("y") as f64 * y - i.coeff("z") as f64 * z;
        if c > 0.0 {
            hi = hi.min(rest / c);
        } else if c < 0.0 {
            lo = lo.max(rest / c);
        } else {
            worst_const = worst_const.min(rest);
        }
    }
    let slack = worst_const.min(hi - lo);
    (slack.abs() > margin).then_some(slack > 0.0)
}

proptest! {
    #[test]
    fn elimination_is_exact_projection(
        sys in system(),
        a in atoms(),
        samples in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 32),
    ) {
        let projected = eliminate(&sys, "x").unwrap();
        for i in &projected.inequalities {
            prop_assert_eq!(i.coeff("x"), 0);
        }
        for (y, z) in samples {
            let Some(want) = x_exists(&sys, y, z, &a, 1e-6) else { continue };
            let got = all_hold(&projected, &rates(0.0, y, z), &a, 1e-9);
            prop_assert_eq!(got, want, "at y={}, z={}", y, z);
        }
    }

    #[test]
    fn prune_preserves_feasible_set(
        base in system(),
        picks in prop::collection::vec((0usize..6, 0usize..6), 0..4),
        a in atoms(),
        samples in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64), 32),
    ) {
        // pad with duplicates and pairwise sums so prune has something to remove
        let mut sys = base.clone();
        let n = base.inequalities.len();
        for (p, q) in picks {
            let (s, t) = (&base.inequalities[p % n], &base.inequalities[q % n]);
            let rates: Vec<(&str, i64)> = VARS.iter().map(|v| (*v, s.coeff(v) + t.coeff(v))).collect();
            sys.inequalities.push(SymbolicInequality::new(rates, s.rhs.plus(&t.rhs)));
            sys.inequalities.push(s.clone());
        }
        let pruned = prune(&sys, &[]);
        prop_assert!(pruned.inequalities.len() <= sys.inequalities.len());
        for (x, y, z) in samples {
            let r = rates(x, y, z);
            let full = all_hold(&sys, &r, &a, 0.0);
            prop_assert!(!full || all_hold(&pruned, &r, &a, 0.0));
            prop_assert!(!all_hold(&pruned, &r, &a, 0.0) || all_hold(&sys, &r, &a, 1e-9));
        }
    }
}
