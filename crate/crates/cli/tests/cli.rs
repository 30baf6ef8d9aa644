use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use inertia_core::ingest::{canonical_descriptor, load_series, Manifest};
use inertia_core::{SeriesKind, Unit};

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/manifest.toml")
        .canonicalize()
        .unwrap()
}

fn inertia(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inertia"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn unknown_table_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest();
    let o = inertia(dir.path(), &["tables", "--table", "9", "--manifest", m.to_str().unwrap()]);
    assert_eq!(code(&o), 64);
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&inertia(dir.path(), &[])), 64);
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&inertia(dir.path(), &["--help"])), 0);
}

#[test]
fn zero_step_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest();
    let o = inertia(dir.path(), &["project", "--manifest", m.to_str().unwrap(), "--dt", "0"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("dt must be in (0,1]"), "{err}");
}

#[test]
fn missing_manifest_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = inertia(dir.path(), &["ingest", "--manifest", "absent.toml"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("absent.toml"));
}

#[test]
fn gap_in_annual_series_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("energy.csv"),
        "year,ej\n1980,300\n1981,305\n1983,312\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("m.toml"),
        "[series.energy]\npath = \"energy.csv\"\nkind = \"energy\"\nunit = \"EJ/yr\"\n\
         year_column = \"year\"\nvalue_column = \"ej\"\nscale = 1.0\n",
    )
    .unwrap();
    let o = inertia(dir.path(), &["ingest", "--manifest", "m.toml", "--out", "out"]);
    assert_eq!(code(&o), 2);
    let report = fs::read_to_string(dir.path().join("out/validation.json")).unwrap();
    assert!(report.contains("1982"), "{report}");
}

#[test]
fn ingest_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest();
    let o = inertia(dir.path(), &["ingest", "--manifest", m.to_str().unwrap(), "--out", "out"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let source = Manifest::load(&m).unwrap();
    for (name, d) in &source.series {
        let original = load_series(d).unwrap();
        let path = dir.path().join("out").join(format!("{name}.csv"));
        let reread = load_series(&canonical_descriptor(path, d.kind, d.unit)).unwrap();
        assert_eq!(original, reread, "{name}");
    }
}

#[test]
fn trajectory_csv_reloads_as_series() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest();
    let o = inertia(
        dir.path(),
        &["project", "--manifest", m.to_str().unwrap(), "--out", "t.csv", "--curve"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut d = canonical_descriptor(dir.path().join("t.csv"), SeriesKind::Concentration, Unit::Ppmv);
    d.value_column = "committed_concentration_ppmv".into();
    let s = load_series(&d).unwrap();
    assert_eq!(s.points().len(), 41);
    assert_eq!(s.points()[0].0, 2017);
    assert!(dir.path().join("t_curve.csv").exists());
    assert!(dir.path().join("t.manifest.json").exists());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("550 ppmv"), "{stdout}");
}

#[test]
fn tables_are_reproducible() {
    let m = manifest();
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let o = inertia(
            dir.path(),
            &["tables", "--table", "3", "--manifest", m.to_str().unwrap(), "--out", "o"],
        );
        assert_eq!(code(&o), 0);
        let mut files: Vec<_> = fs::read_dir(dir.path().join("o"))
            .unwrap()
            .map(|e| {
                let p = e.unwrap().path();
                (p.file_name().unwrap().to_owned(), fs::read(&p).unwrap())
            })
            .collect();
        files.sort();
        files
    };
    let (a, b) = (run(), run());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}
