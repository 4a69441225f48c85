use shl::cache::Calibrations;
use shl::format::{self, FormatError, Input};
use shl::registry::ENTRIES;
use shl::report;
use shl_core::frame_geometry::{classify_frame_at, coframe_torsion};
use shl_core::rep_theory::StructureKind;
use shl_core::Rational;

fn identity_coframe_json(dim: usize) -> String {
    let rows: Vec<String> = (0..dim)
        .map(|i| {
            let cells: Vec<String> = (0..dim).map(|j| format!("\"{}\"", u8::from(i == j))).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!(
        r#"{{"format": "shl-coframe", "kind": "skew_hermitian", "dim": {dim}, "forms": [{}]}}"#,
        rows.join(", ")
    )
}

#[test]
fn every_registry_entry_round_trips() {
    for e in &ENTRIES {
        let input = e.input();
        let text = format::emit_input(&input);
        let back = format::parse_input(&text).unwrap_or_else(|err| panic!("{}: {err}", e.key));
        assert_eq!(back, input, "{}", e.key);
        // emission is a function of the value
        assert_eq!(format::emit_input(&back), text, "{}", e.key);
    }
}

#[test]
fn identity_coframe_has_no_torsion() {
    let Input::CoFrame(cf) = format::parse_input(&identity_coframe_json(8)).unwrap() else {
        panic!("expected a coframe");
    };
    let p = vec![Rational::from_int(3); 8];
    let t = coframe_torsion(&cf, &p).unwrap();
    assert!(t.exact().unwrap().is_zero());
}

#[test]
fn file_input_is_read_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.json");
    std::fs::write(&path, identity_coframe_json(8)).unwrap();
    assert!(matches!(format::read_input(&path).unwrap(), Input::CoFrame(_)));
    let missing = format::read_input(&dir.path().join("missing.json")).unwrap_err();
    assert!(matches!(missing, FormatError::Io { .. }));
}

#[test]
fn short_row_names_the_row() {
    let text = identity_coframe_json(8).replacen(r#"["0", "0", "1", "0", "0", "0", "0", "0"]"#, r#"["0", "0", "1"]"#, 1);
    let err = format::parse_input(&text).unwrap_err();
    assert_eq!(err.pointer(), Some("/forms/2"), "{err}");
}

#[test]
fn malformed_expression_names_the_cell() {
    let text = identity_coframe_json(8).replacen(r#"["1", "0""#, r#"["(+ x1", "0""#, 1);
    let err = format::parse_input(&text).unwrap_err();
    assert_eq!(err.pointer(), Some("/forms/0/0"), "{err}");
}

#[test]
fn schema_violations_are_rejected() {
    let flat = identity_coframe_json(8);
    let cases = [
        (flat.replace("skew_hermitian", "kaehler"), "/kind"),
        (flat.replace("\"dim\": 8", "\"dim\": 12"), "/forms"),
        (flat.replace("shl-coframe", "shl-other"), "/format"),
        (r#"{"format": "shl-coframe", "kind": "skew_hermitian", "dim": 8}"#.to_string(), "/forms"),
    ];
    for (text, pointer) in cases {
        let err = format::parse_input(&text).unwrap_err();
        assert_eq!(err.pointer(), Some(pointer), "{err}");
    }
    assert!(matches!(format::parse_input("{ not json").unwrap_err(), FormatError::Json(_)));
}

#[test]
fn singular_coframe_is_rejected() {
    let text = identity_coframe_json(8).replacen(r#"["1", "0""#, r#"["0", "0""#, 1);
    let Input::CoFrame(cf) = format::parse_input(&text).unwrap() else {
        panic!("expected a coframe");
    };
    assert!(coframe_torsion(&cf, &vec![Rational::zero(); 8]).is_err());
}

#[test]
fn homogeneous_bracket_table_is_validated() {
    let e = ENTRIES.iter().find(|e| e.key == "lie-triangular-x35").unwrap();
    let text = format::emit_input(&e.input());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // a duplicated bracket entry
    let mut dup = v.clone();
    let first = dup["brackets"][0].clone();
    dup["brackets"].as_array_mut().unwrap().push(first);
    let err = format::parse_input(&dup.to_string()).unwrap_err();
    assert!(err.pointer().is_some_and(|p| p.starts_with("/brackets/")), "{err}");
    // an index outside the algebra
    let mut out = v;
    out["brackets"][0][0] = serde_json::json!(999);
    let err = format::parse_input(&out.to_string()).unwrap_err();
    assert!(err.pointer().is_some_and(|p| p.starts_with("/brackets/0")), "{err}");
}

#[test]
fn reports_are_byte_identical() {
    let cal = Calibrations::with_dir(None);
    let d = cal.get(StructureKind::HsH, 2).unwrap();
    let e = ENTRIES.iter().find(|e| e.key == "r8-x123567").unwrap();
    let Input::CoFrame(cf) = e.input() else { unreachable!() };
    let p = e.base_point(cf.dim());
    let a = report::classification_json(e.key, Some(&p), &classify_frame_at(&cf, &p, &d).unwrap());
    let b = report::classification_json(e.key, Some(&p), &classify_frame_at(&cf, &p, &d).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["report"]["type"], "X123567");
    assert_eq!(v["point"][0], "0/1");
    // fixed key order
    let keys = ["\"kind\"", "\"n\"", "\"type\"", "\"exact\"", "\"components\"", "\"flags\""];
    let pos: Vec<usize> = keys.iter().map(|k| a.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn floats_have_seventeen_significant_digits() {
    let s = serde_json::to_string(&report::F17(1.0 / 3.0)).unwrap();
    assert_eq!(s, "3.3333333333333331e-1");
    assert_eq!(serde_json::to_string(&report::F17(f64::NAN)).unwrap(), "null");
    assert_eq!(report::pq(&Rational::from_int(3)), "3/1");
    assert_eq!(report::pq(&Rational::new(-2, 4)), "-1/2");
}

#[test]
fn calibration_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let first = Calibrations::with_dir(Some(dir.path().to_path_buf()));
    let built = first.get(StructureKind::QsH, 2).unwrap();
    let path = first.file_for(StructureKind::QsH, 2).unwrap();
    assert!(path.exists());

    let second = Calibrations::with_dir(Some(dir.path().to_path_buf()));
    let loaded = second.get(StructureKind::QsH, 2).unwrap();
    assert_eq!(loaded.components.len(), built.components.len());
    for (a, b) in loaded.components.iter().zip(&built.components) {
        assert_eq!(a.label, b.label);
        assert_eq!(a.projector, b.projector);
    }

    // a damaged file is ignored and replaced
    std::fs::write(&path, "{\"version\": \"garbage\"}").unwrap();
    let third = Calibrations::with_dir(Some(dir.path().to_path_buf()));
    let rebuilt = third.get(StructureKind::QsH, 2).unwrap();
    assert_eq!(rebuilt.components.len(), built.components.len());
    assert!(std::fs::read_to_string(&path).unwrap().contains("shl-calibration"));
}
