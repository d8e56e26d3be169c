use std::sync::OnceLock;

use proptest::prelude::*;
use wps_core::catalog::{
    bundled_catalog, find, parse_catalog, to_canonical_string, verify_all, CatalogEntry,
    EntryReport, Status, BUNDLED,
};
use wps_core::{Error, Exec};

fn reports() -> &'static [EntryReport] {
    static R: OnceLock<Vec<EntryReport>> = OnceLock::new();
    R.get_or_init(|| verify_all(&bundled_catalog().unwrap(), Exec::Parallel))
}

fn report(name: &str) -> &'static EntryReport {
    reports().iter().find(|r| r.name == name).unwrap()
}

#[test]
fn bundled_file_is_canonical() {
    let cat = bundled_catalog().unwrap();
    assert_eq!(to_canonical_string(&cat), BUNDLED);
}

#[test]
fn save_then_load_round_trips_through_disk() {
    let dir = std::env::temp_dir().join(format!("wps-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    let cat = bundled_catalog().unwrap();
    wps_core::catalog::save_catalog(&path, &cat).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), BUNDLED);
    assert_eq!(wps_core::catalog::load_catalog(&path).unwrap(), cat);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn missing_file_is_an_io_error() {
    let err = wps_core::catalog::load_catalog("/nonexistent/catalog.json").unwrap_err();
    assert!(matches!(err, Error::Io(_)), "{err:?}");
}

#[test]
fn schema_error_points_at_the_field() {
    let text = BUNDLED.replacen("\"degree\": 42", "\"degree\": \"42\"", 1);
    match parse_catalog(&text).unwrap_err() {
        Error::Schema { line, path, .. } => {
            assert_eq!(path, "[0].expected.degree");
            assert_eq!(text.lines().nth(line - 1).unwrap().trim(), "\"degree\": \"42\",");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let text = BUNDLED.replacen("\"exponent\": 42", "\"exponent\": 42,\n      \"exponant\": 42", 1);
    assert!(matches!(parse_catalog(&text), Err(Error::Schema { .. })));
}

#[test]
fn truncated_file_is_a_schema_error() {
    let text = &BUNDLED[..BUNDLED.len() / 2];
    assert!(matches!(parse_catalog(text), Err(Error::Schema { .. })));
}

#[test]
fn inconsistent_normal_form_is_rejected() {
    let mut cat = bundled_catalog().unwrap();
    let e12 = cat.iter_mut().find(|e| e.name == "E12").unwrap();
    e12.exponents = Some([2, 3, 8]);
    match parse_catalog(&to_canonical_string(&cat)) {
        Err(Error::Consistency { entry, check }) => {
            assert_eq!(entry, "E12");
            assert!(check.contains("[12, 8, 3], degree 24"), "{check}");
        }
        other => panic!("unexpected {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any perturbation of an entry's expected weights or degree is caught at
    /// load time.
    #[test]
    fn perturbed_weights_fail_consistency(idx in 0usize..17, coord in 0usize..4, delta in 1i64..5) {
        let mut cat: Vec<CatalogEntry> = bundled_catalog().unwrap();
        let e = &mut cat[idx];
        if coord == 3 {
            e.expected.degree += delta;
        } else {
            e.expected.weights[coord] += delta;
        }
        let is_consistency = matches!(parse_catalog(&to_canonical_string(&cat)), Err(Error::Consistency { .. }));
        prop_assert!(is_consistency);
    }

    #[test]
    fn canonical_form_is_a_fixed_point(idx in prop::collection::vec(0usize..17, 0..6)) {
        let cat = bundled_catalog().unwrap();
        let mut seen = std::collections::BTreeSet::new();
        let subset: Vec<CatalogEntry> =
            idx.into_iter().filter(|i| seen.insert(*i)).map(|i| cat[i].clone()).collect();
        let text = to_canonical_string(&subset);
        let again = parse_catalog(&text).unwrap();
        prop_assert_eq!(to_canonical_string(&again), text);
    }
}

#[test]
fn pristine_catalog_has_no_failures() {
    for r in reports() {
        for c in &r.claims {
            assert_ne!(c.status, Status::Fail, "{} {}: {}", r.name, c.id, c.detail);
        }
    }
}

#[test]
fn errata_only_where_declared() {
    let cat = bundled_catalog().unwrap();
    for r in reports() {
        let entry = find(&cat, &r.name).unwrap();
        for c in r.claims.iter().filter(|c| c.status == Status::KnownErratum) {
            assert!(entry.errata.contains_key(&c.id), "{} {}", r.name, c.id);
        }
    }
    let flagged: Vec<(&str, &str)> = reports()
        .iter()
        .flat_map(|r| {
            r.claims
                .iter()
                .filter(|c| c.status == Status::KnownErratum)
                .map(move |c| (r.name.as_str(), c.id.as_str()))
        })
        .collect();
    assert_eq!(
        flagged,
        [
            ("Q11", "normal_form"),
            ("E20", "dual_set_count"),
            ("E20", "hit:5:dual_set"),
            ("E20", "hit:5:ambient"),
        ]
    );
}

#[test]
fn every_entry_checks_monodromy_degree_and_dolgachev() {
    for r in reports() {
        for id in ["weights", "B", "deg_theta", "exponent", "dolgachev", "hits"] {
            let c = r.claim(id).unwrap_or_else(|| panic!("{} lacks {id}", r.name));
            assert_eq!(c.status, Status::Pass, "{} {id}: {}", r.name, c.detail);
        }
    }
}

#[test]
fn e12_report() {
    let r = report("E12");
    assert!(r.passed());
    assert_eq!(r.claim("dual_set_count").unwrap().detail, "computed 4, expected 4");
    assert_eq!(r.claim("hits").unwrap().detail, "w3 = [1], expected [1]");
    assert!(r.claim("c_squared").unwrap().detail.starts_with("C² = 1/42"));
}

#[test]
fn e20_flags_the_printed_dual_entry() {
    let r = report("E20");
    assert!(r.passed());
    assert_eq!(r.claim("hits").unwrap().status, Status::Pass);
    let c = r.claim("hit:5:dual_set").unwrap();
    assert_eq!(c.status, Status::KnownErratum);
    assert!(c.detail.contains("1/3(1,2)"), "{}", c.detail);
}

#[test]
fn q12_rejects_w3_two_for_a_contained_edge() {
    let c = report("Q12").claim("rejected:2").unwrap();
    assert_eq!(c.status, Status::Pass);
    assert!(c.detail.starts_with("edge (0,3) contained / not well-formed"), "{}", c.detail);
}

#[test]
fn lookup_by_alias() {
    let cat = bundled_catalog().unwrap();
    assert_eq!(find(&cat, "Cu(-1)").unwrap().name, "E12");
    assert_eq!(find(&cat, "tr(-2,-2,-5)").unwrap().name, "Q12");
    assert_eq!(find(&cat, "V18'").unwrap().name, "V18'");
    assert!(find(&cat, "X9").is_none());
}
