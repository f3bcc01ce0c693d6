//! Acceptance criteria 1–9 at full size. Prints one PASS/FAIL line per
//! criterion, then fails if any criterion failed.

use std::time::Instant;

use ccm_core::verify::{
    check_containment, check_fme, check_oracle, check_pdc, check_regime_map, check_semidet, check_sweep, check_vsi,
    CheckResult, ContainmentTally, VerifyConfig, CAPACITY_GAP, CONSTANT_FACTOR, CONSTANT_GAP, F_COSTA_TOL,
    FME_RUNTIME_S, ORACLE_TOL, PDC_RUNTIME_S, SEMIDET_DEVIATION, SEMIDET_REGION_TOL, SEMIDET_RUNTIME_S,
};

#[test]
fn acceptance() {
    // Pinned thresholds; a change here is a change to the acceptance contract.
    assert_eq!(FME_RUNTIME_S, 1.0);
    assert_eq!(SEMIDET_RUNTIME_S, 120.0);
    assert_eq!(SEMIDET_DEVIATION, 1e-12);
    assert_eq!(SEMIDET_REGION_TOL, 1e-9);
    assert_eq!(ORACLE_TOL, 1e-9);
    assert_eq!(F_COSTA_TOL, 1e-12);
    assert_eq!(CAPACITY_GAP, 1e-3);
    assert_eq!(PDC_RUNTIME_S, 300.0);
    assert_eq!(CONSTANT_GAP, 1.87);
    assert_eq!(CONSTANT_FACTOR, 2.0 + 1e-6);

    let cfg = VerifyConfig::default();
    assert_eq!((cfg.oracle_draws, cfg.pdc_draws, cfg.vsi_draws), (1000, 500, 500));
    assert_eq!((cfg.alpha_steps, cfg.semidet_channels, cfg.semidet_grid), (1001, 20, 16));
    assert_eq!(cfg.regime.cells, 60);

    let mut tally = ContainmentTally::default();
    let mut results: Vec<CheckResult> = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Vec<CheckResult>| {
        let t = Instant::now();
        let rs = f();
        let secs = t.elapsed().as_secs_f64();
        for r in rs {
            println!("{}  [{secs:.1} s]", r.line());
            results.push(r);
        }
    };
    timed(&mut || vec![check_fme()]);
    timed(&mut || vec![check_semidet(&cfg).unwrap()]);
    timed(&mut || vec![check_oracle(&cfg, &mut tally).unwrap()]);
    timed(&mut || vec![check_pdc(&cfg, &mut tally).unwrap()]);
    timed(&mut || vec![check_vsi(&cfg, &mut tally).unwrap()]);
    timed(&mut || {
        let (gap, ratio) = check_sweep(&cfg, &mut tally).unwrap();
        vec![gap, ratio]
    });
    let containment = check_containment(&tally);
    timed(&mut || vec![containment.clone()]);
    timed(&mut || vec![check_regime_map(&cfg).unwrap()]);

    assert_eq!(results.iter().map(|r| r.id).collect::<Vec<_>>(), (1..=9).collect::<Vec<u8>>());
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
