use std::time::Duration;

use bwc_core::exact::assets::{asset_dir, verified_code};
use bwc_core::exact::{covering_radius, exact_value, Target};
use bwc_core::tables::{KnownTable, Quantity};

#[test]
fn covering_radius_records_match_their_codes() {
    let t = KnownTable::load_default().unwrap();
    let dir = asset_dir();
    let mut checked = 0;
    for r in t.records().filter(|r| r.quantity == Quantity::CoveringRadius) {
        let name = r.source.strip_prefix("asset:").and_then(|s| s.split(';').next()).expect("asset source");
        let (code, report) = verified_code(&dir, name).unwrap();
        let a = t.query_a(r.n, r.d);
        assert!(a.is_exact(), "A({},{}) not exact", r.n, r.d);
        assert_eq!(report.size as u128, a.lower, "{name}");
        assert!(report.d >= r.d, "{name}");
        assert_eq!(code.length() as u32, r.n);
        assert!(covering_radius(&code).unwrap() as u128 >= r.lower, "{name}");
        checked += 1;
    }
    assert!(checked >= 30);
}

#[test]
fn small_search_records_are_reproduced() {
    let t = KnownTable::load_default().unwrap();
    let budget = Duration::from_secs(30);
    for r in t.records().filter(|r| r.source.starts_with("exact search") && r.n <= 9) {
        let res = match r.quantity {
            Quantity::A => exact_value(Target::A, r.n, r.d, 0, budget).unwrap(),
            Quantity::Aw => exact_value(Target::Aw, r.n, r.d, r.w.unwrap(), budget).unwrap(),
            _ => continue,
        };
        assert!(res.proved_optimal, "{:?}", r.key());
        assert_eq!(res.value as u128, r.lower, "{:?}", r.key());
        assert_eq!(r.lower, r.upper);
    }
}
