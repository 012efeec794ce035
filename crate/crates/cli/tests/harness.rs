use curvetrack::traintrack::Builtin;
use curvetrack_cli::{parse_surface, verify_all, CheckId, ExperimentConfig, HarnessError, Samples};

#[test]
fn surfaces_parse_by_id() {
    assert_eq!(parse_surface("s05").unwrap(), Builtin::S05);
    assert_eq!(parse_surface("s12").unwrap(), Builtin::S12);
    assert!(matches!(parse_surface("s23"), Err(HarnessError::ConfigInvalid(_))));
}

#[test]
fn zero_parameters_are_rejected() {
    for tweak in [
        (|c: &mut ExperimentConfig| c.bound = 0) as fn(&mut ExperimentConfig),
        |c| c.cap = 0,
        |c| c.workers = 0,
    ] {
        let mut cfg = ExperimentConfig::new(Builtin::S05, 1);
        tweak(&mut cfg);
        assert!(matches!(verify_all(&cfg), Err(HarnessError::ConfigInvalid(_))));
    }
}

#[test]
fn report_has_one_csv_row_per_check() {
    let mut cfg = ExperimentConfig::new(Builtin::S12, 3);
    cfg.samples = Samples::uniform(2);
    let report = verify_all(&cfg).unwrap();
    let mut buf = Vec::new();
    report.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("surface,seed,check,samples,violations,truncated,passed,metrics"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), report.checks.len());
    assert!(rows.iter().all(|r| r.starts_with("s12,3,")));
    assert!(report.check(CheckId::StructuralCounts).is_some());
}
