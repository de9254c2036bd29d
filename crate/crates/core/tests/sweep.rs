use std::fs;

use ggmd_core::verify::{run_sweep, write_csv, CacheMode, CheckOptions, Family, SweepOptions, SweepOutcome};

fn options(families: Vec<Family>, max_order: u64) -> SweepOptions {
    SweepOptions {
        max_order,
        families,
        cache: None,
        cache_mode: CacheMode::Use,
        checks: CheckOptions::default(),
        group_cap: 10_000,
    }
}

fn csv(outcome: &SweepOutcome) -> String {
    let mut buf = Vec::new();
    write_csv(&outcome.results, false, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn cyclic_sweep_passes_and_includes_z12() {
    let out = run_sweep(&options(vec![Family::Cyclic], 60)).unwrap();
    let bad: Vec<_> = out
        .results
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| (r.spec.clone(), c.clone())))
        .filter(|(_, c)| c.name != "counting_order_p")
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
    let z12 = out.results.iter().find(|r| r.spec == "Z12").unwrap();
    assert_eq!((z12.dim_exact, z12.dim_formula), (Some(4), Some(4)));
}

#[test]
fn family_sweep_passes_isomorphism_and_dimension_rows() {
    let fams = vec![Family::Dihedral, Family::Quaternion, Family::Semidihedral];
    let out = run_sweep(&options(fams, 40)).unwrap();
    assert!(out.passed(), "{:#?}", out.results.iter().filter(|r| !r.passed()).collect::<Vec<_>>());
    assert!(out.results.iter().all(|r| r.check("surrogate_isomorphism").is_some()));
    assert!(out.results.iter().filter(|r| r.dim_formula.is_some()).all(|r| r.check("dim_formula").unwrap().pass));
}

#[test]
fn injected_fault_is_detected() {
    let mut opts = options(Family::ALL.to_vec(), 16);
    opts.checks.inject_fault = true;
    assert!(!run_sweep(&opts).unwrap().passed());
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let opts = options(Family::ALL.to_vec(), 30);
    assert_eq!(csv(&run_sweep(&opts).unwrap()), csv(&run_sweep(&opts).unwrap()));
}

#[test]
fn cache_hits_reproduce_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let mut opts = options(vec![Family::Cyclic, Family::Dihedral], 30);
    opts.cache = Some(path.clone());

    let first = run_sweep(&opts).unwrap();
    assert_eq!(first.cache_hits, 0);
    let lines = fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(lines, first.results.len());

    let second = run_sweep(&opts).unwrap();
    assert_eq!(second.cache_hits, second.results.len());
    assert_eq!(csv(&first), csv(&second));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), lines, "hits are not re-appended");

    opts.cache_mode = CacheMode::Audit;
    let audit = run_sweep(&opts).unwrap();
    assert_eq!((audit.cache_hits, audit.audit_mismatches), (0, 0));
    assert_eq!(csv(&first), csv(&audit));
}

#[test]
fn audit_flags_a_tampered_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let mut opts = options(vec![Family::Cyclic], 12);
    opts.cache = Some(path.clone());
    run_sweep(&opts).unwrap();
    let tampered = fs::read_to_string(&path).unwrap().replace("\"pass\":true", "\"pass\":false");
    fs::write(&path, tampered).unwrap();
    opts.cache_mode = CacheMode::Audit;
    let audit = run_sweep(&opts).unwrap();
    assert!(audit.audit_mismatches > 0);
    assert!(!audit.passed());
}

#[test]
fn corrupt_cache_is_rebuilt_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    fs::write(&path, "{not json\n").unwrap();
    let mut opts = options(vec![Family::Cyclic], 20);
    opts.cache = Some(path.clone());
    let out = run_sweep(&opts).unwrap();
    assert_eq!(out.warnings.len(), 1);
    assert!(out.warnings[0].contains("corrupted"));
    assert_eq!(out.cache_hits, 0);
    let rebuilt = fs::read_to_string(&path).unwrap();
    assert_eq!(rebuilt.lines().count(), out.results.len());
    assert!(run_sweep(&opts).unwrap().warnings.is_empty());
}

#[test]
fn faulty_runs_bypass_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let mut opts = options(vec![Family::Cyclic], 12);
    opts.cache = Some(path.clone());
    opts.checks.inject_fault = true;
    run_sweep(&opts).unwrap();
    assert!(!path.exists());
}
