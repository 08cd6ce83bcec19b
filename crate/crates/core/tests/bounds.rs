use std::time::Duration;

use bwc_core::bounds::{best_bounds, BoundsEngine, BoundsOptions, Extra, ProblemSpec, RuleSet};
use bwc_core::exact::{exact_value, Target};
use bwc_core::tables::KnownTable;
use bwc_core::Error;
use proptest::prelude::*;

fn table() -> KnownTable {
    KnownTable::load_default().unwrap()
}

#[test]
fn exact_values_lie_in_intervals() {
    let t = table();
    for rules in [RuleSet::Elementary, RuleSet::All] {
        let e = BoundsEngine::new(&t, BoundsOptions { rules, ..Default::default() }, 24, &[]).unwrap();
        for n in 1..=8 {
            // odd distances at length 8 take seconds each
            for d in (1..=n).filter(|&d| n < 8 || d % 2 == 0) {
                for w in 0..=n {
                    let ex = exact_value(Target::B, n, d, w, Duration::from_secs(60)).unwrap();
                    assert!(ex.proved_optimal);
                    let i = e.interval(&ProblemSpec::b(n, d, w).unwrap()).unwrap();
                    assert!(i.contains(ex.value as u128), "B({n},{d},{w}) = {} not in {i}", ex.value);
                }
            }
        }
    }
}

#[test]
fn exact_search_as_extra_closes_the_interval() {
    let t = table();
    let spec = ProblemSpec::b(9, 4, 6).unwrap();
    let ex = exact_value(Target::B, 9, 4, 6, Duration::from_secs(60)).unwrap();
    assert!(ex.proved_optimal);
    let v = ex.value as u128;
    let extras = [Extra::lower(spec, v, "exact search"), Extra::upper(spec, v, "exact search")];
    let out = best_bounds(&spec, &t, &BoundsOptions::default(), &extras).unwrap();
    assert_eq!((out.interval.lower, out.interval.upper), (v, v));
    // the neighbours inherit it through monotonicity
    let next = best_bounds(&ProblemSpec::b(9, 4, 7).unwrap(), &t, &BoundsOptions::default(), &extras).unwrap();
    assert!(next.interval.upper <= v);
}

#[test]
fn contradicting_extras_name_both_rules() {
    let t = table();
    let spec = ProblemSpec::l(16, 6, 6).unwrap();
    let err = best_bounds(&spec, &t, &BoundsOptions::default(), &[Extra::upper(spec, 100, "too small")]).unwrap_err();
    match err {
        Error::Inconsistent { upper_rule, .. } => assert!(upper_rule.contains("too small")),
        e => panic!("{e}"),
    }
}

#[test]
fn selfdual_rule_is_off_by_default() {
    let t = table();
    let spec = ProblemSpec::b(64, 6, 32).unwrap();
    let off = best_bounds(&spec, &t, &BoundsOptions::default(), &[]).unwrap();
    let on = best_bounds(&spec, &t, &BoundsOptions { asymptotic_rules: true, ..Default::default() }, &[]).unwrap();
    assert!(on.interval.lower >= off.interval.lower);
    assert!(on.trace.iter().any(|r| r.rule == "self-dual"));
    assert!(!off.trace.iter().any(|r| r.rule == "self-dual"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn l_and_b_agree(n in 1u32..=20, d_frac in 0.0f64..1.0, w_frac in 0.0f64..=1.0) {
        let t = table();
        let d = 1 + ((n - 1) as f64 * d_frac) as u32;
        let w = (n as f64 * w_frac) as u32;
        let b = best_bounds(&ProblemSpec::b(n, d, w).unwrap(), &t, &BoundsOptions::default(), &[]).unwrap();
        let l = best_bounds(&ProblemSpec::l(n, d, n - w).unwrap(), &t, &BoundsOptions::default(), &[]).unwrap();
        prop_assert_eq!(b.interval, l.interval);
    }

    #[test]
    fn small_exact_values_are_bracketed(n in 2u32..=7, d_frac in 0.0f64..1.0, w_frac in 0.0f64..=1.0) {
        let t = table();
        let d = 1 + ((n - 1) as f64 * d_frac) as u32;
        let w = (n as f64 * w_frac) as u32;
        let ex = exact_value(Target::L, n, d, w, Duration::from_secs(30)).unwrap();
        let l = best_bounds(&ProblemSpec::l(n, d, w).unwrap(), &t, &BoundsOptions::default(), &[]).unwrap();
        prop_assert!(l.interval.contains(ex.value as u128));
    }
}
