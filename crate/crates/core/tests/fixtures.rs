use std::collections::BTreeMap;
use std::path::PathBuf;

use dirac_core::atlas::{self, FixtureKind, KgbRecord, Records};
use dirac_core::weyl::fully_supported_involutions;
use dirac_core::{Engine, Error};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn table_kgb() -> BTreeMap<u64, KgbRecord> {
    atlas::load_kgb(&dir().join(atlas::TABLE_KGB_FILE)).unwrap().into_iter().map(|r| (r.id, r)).collect()
}

#[test]
fn involution_fixture_matches_derivation() {
    let e = Engine::shared();
    let kgb = atlas::load_kgb(&dir().join(atlas::KGB_FILE)).unwrap();
    let derived = fully_supported_involutions(&e.lat);
    assert_eq!(kgb.len(), derived.len());
    for (r, t) in kgb.iter().zip(&derived) {
        assert_eq!(&r.theta, t);
        assert!(r.fully_supported());
    }
}

#[test]
fn table_parameters_are_consistent() {
    let params = atlas::load_params(&dir().join(atlas::TABLE_PARAMS_FILE)).unwrap();
    assert_eq!(params.len(), 74);
    assert!(params.iter().all(|p| p.flags.unitary && p.flags.fully_supported));
    assert!(atlas::check_params(&params, &table_kgb()).unwrap().is_empty());
}

#[test]
fn every_table_row_verifies() {
    let e = Engine::shared();
    let rows = match atlas::load(FixtureKind::Table, &dir().join(atlas::TABLE_FILE)).unwrap() {
        Records::Table(r) => r,
        other => panic!("{other:?}"),
    };
    let kgb = table_kgb();
    assert_eq!(rows.iter().map(|r| r.multiplicity()).sum::<usize>(), 73);
    for row in &rows {
        let rep = atlas::verify_table_row(e, row, kgb.get(&row.x));
        assert!(rep.passed(), "{rep}");
    }
    let wallach = rows.iter().find(|r| r.x == 2989).unwrap();
    assert_eq!(wallach.spin_lkts.len(), 6);
    assert!(wallach.lkt_flags[0]);
}

#[test]
fn perturbed_nu_is_caught() {
    let e = Engine::shared();
    let mut row = atlas::load_table(&dir().join(atlas::TABLE_FILE)).unwrap().remove(0);
    row.nu[0] += dirac_core::rational::int(1);
    let rep = atlas::verify_table_row(e, &row, table_kgb().get(&row.x));
    assert!(!rep.passed());
}

#[test]
fn phi_cap_must_be_inactive() {
    let e = Engine::shared();
    let kgb = atlas::load_kgb(&dir().join(atlas::KGB_FILE)).unwrap();
    assert!(matches!(atlas::enumerate_phi(e, &kgb, 8), Err(Error::ActiveCap { cap: 8, .. })));
    assert!(matches!(atlas::enumerate_phi(e, &[], 64), Err(Error::Domain(_))));
    let census = atlas::enumerate_phi(e, &kgb, 14).unwrap();
    assert_eq!(census.phi.len(), 178192);
}

#[test]
fn missing_fixture_is_reported() {
    let p = dir().join("no-such-file.kgb");
    assert!(matches!(atlas::load_kgb(&p), Err(Error::FixtureMissing(q)) if q == p));
}
