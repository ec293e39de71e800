use std::path::Path;
use std::process::{Command, Output};

use ecomu3_core::pipeline::PipelineReport;
use ecomu3_core::specseq::FibrationConfig;

fn ecomu3(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecomu3"))
        .args(args)
        .env("ECOMU3_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json_report(cache: &Path, args: &[&str]) -> (PipelineReport, Option<i32>) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = ecomu3(cache, &all);
    let text = String::from_utf8(out.stdout).unwrap();
    (PipelineReport::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}")), out.status.code())
}

fn stage_summary(r: &PipelineReport, stage: &str) -> String {
    r.stage(stage).unwrap_or_else(|| panic!("no stage {stage}")).summary.clone()
}

#[test]
fn grpcoh_standard_sign_three_primary() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = json_report(dir.path(), &["grpcoh", "Σ3", "standard⊗sign", "11", "--prime", "3"]);
    assert_eq!(code, Some(0));
    assert!(r.passed);
    assert!(stage_summary(&r, "cohomology").ends_with("0:0 1:Z/3 2:0 3:0 4:0 5:Z/3 6:0 7:0 8:0 9:Z/3 10:0 11:0"));
}

#[test]
fn grpcoh_trivial_integral() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = json_report(dir.path(), &["grpcoh", "Σ3", "trivial", "12"]);
    assert_eq!(code, Some(0));
    let s = stage_summary(&r, "cohomology");
    assert!(s.ends_with("0:Z 1:0 2:Z/2 3:0 4:Z/6 5:0 6:Z/2 7:0 8:Z/6 9:0 10:Z/2 11:0 12:Z/6"), "{s}");
    assert!(r.validations.len() == 13 && r.validations.iter().all(|v| v.passed));
}

#[test]
fn grpcoh_degree_zero_and_max_degree_flag() {
    let dir = tempfile::tempdir().unwrap();
    let (r, _) = json_report(dir.path(), &["grpcoh", "S3", "trivial", "0"]);
    assert!(stage_summary(&r, "cohomology").ends_with(": 0:Z"));
    let (r, _) = json_report(dir.path(), &["grpcoh", "S3", "sign", "--max-degree", "3"]);
    assert!(stage_summary(&r, "cohomology").ends_with("0:0 1:Z/2 2:Z/3 3:Z/2"));
}

#[test]
fn unknown_names_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["grpcoh", "Σ9", "trivial", "3"][..], &["grpcoh", "Σ3", "bogus", "3"], &["serre", "nope"]] {
        let out = ecomu3(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn serre_flbar3_three_local() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = json_report(dir.path(), &["serre", "flbar3", "--prime", "3"]);
    assert_eq!(code, Some(0));
    assert!(stage_summary(&r, "totals").ends_with("0:Z 1:0 2:0 3:0 4:Z/3 5:Z/3 6:0"));
    assert_eq!(stage_summary(&r, "series"), "mod 3 series 1+t^3+2t^4+t^5");
}

#[test]
fn serre_fl3xfl3_two_local_table() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = json_report(dir.path(), &["serre", "fl3xfl3", "--prime", "2"]);
    assert_eq!(code, Some(0));
    let t = stage_summary(&r, "totals");
    assert!(t.ends_with("0:Z 1:0 2:Z/2 3:0 4:Z + Z/2 5:0 6:Z^2 + Z/2 7:Z/2 8:Z 9:Z/2 10:0 11:Z/2 12:Z"), "{t}");
}

#[test]
fn serre_config_file_loosened_bound_is_ambiguous() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = FibrationConfig::bundled("flbar3").unwrap();
    cfg.top_dimension = 20;
    let path = dir.path().join("loose.cfg");
    std::fs::write(&path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let out = ecomu3(dir.path(), &["serre", path.to_str().unwrap(), "--prime", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("differential patterns make E_inf vanish above degree 20"), "{err}");
}

#[test]
fn u3t2_reports() {
    let dir = tempfile::tempdir().unwrap();
    for p in ["2", "3"] {
        let (r, code) = json_report(dir.path(), &["u3t2", "--prime", p]);
        assert_eq!(code, Some(0), "p={p}");
        assert!(r.validations.iter().any(|v| v.name.starts_with("transgression")));
    }
}

#[test]
fn holim_rejects_unsupported_prime_and_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ecomu3(dir.path(), &["ecom-u3", "--prime", "5"]).status.code(), Some(2));
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"schema\": \"nope\"}").unwrap();
    assert_eq!(ecomu3(dir.path(), &["holim", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn holim_accepts_a_diagram_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.json");
    std::fs::write(&path, ecomu3_core::holim::ECOM_U3_P2).unwrap();
    let (r, code) = json_report(dir.path(), &["holim", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(r.validations.iter().all(|v| v.provenance != ecomu3_core::Provenance::Paper || v.name.starts_with("lim²")));
}

#[test]
fn ecom_u3_mismatch_is_a_hard_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = json_report(dir.path(), &["ecom-u3", "--prime", "2"]);
    assert_eq!(code, Some(1));
    assert!(!r.passed);
    let failed: Vec<_> = r.failures().map(|v| v.name.as_str()).collect();
    assert_eq!(failed, ["H^*(E_com U(3); F2) table"]);
    assert!(r.validations.iter().any(|v| v.name == "Euler characteristic equals the rational one" && v.passed));
}

#[test]
fn json_and_text_carry_the_same_content() {
    let dir = tempfile::tempdir().unwrap();
    let (r, _) = json_report(dir.path(), &["serre", "flbar3", "--prime", "2"]);
    let text = String::from_utf8(ecomu3(dir.path(), &["serre", "flbar3", "--prime", "2"]).stdout).unwrap();
    for s in &r.stages {
        assert!(text.contains(&format!("[{}] {}", s.provenance, s.name)));
        for line in s.summary.lines() {
            assert!(text.contains(&format!("    {line}")));
        }
    }
    for v in &r.validations {
        assert!(text.contains(&format!("PASS [{}] {}: {}", v.provenance, v.name, v.actual)));
    }
    for i in &r.inputs {
        assert!(text.contains(&i.sha256));
    }
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["serre", "fl3xfl3", "--prime", "3"];
    let (cold, _) = json_report(dir.path(), &args);
    let (warm, _) = json_report(dir.path(), &args);
    assert_eq!(cold.without_timings().to_json(), warm.without_timings().to_json());
    let other = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ecomu3"))
        .args(args)
        .args(["--format", "json", "--no-cache"])
        .env_remove("ECOMU3_CACHE_DIR")
        .env("HOME", other.path())
        .output()
        .unwrap();
    let uncached = PipelineReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(cold.without_timings(), uncached.without_timings());
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 0);
}

#[test]
fn report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (r, _) = json_report(dir.path(), &["rational-ring"]);
    assert_eq!(PipelineReport::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn cache_env_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = ecomu3(env_dir.path(), &["grpcoh", "Σ3", "trivial", "4", "--cache-dir", flag_dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_dir(env_dir.path()).unwrap().count() > 0);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 0);
}

#[test]
fn snf_inline_and_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = json_report(dir.path(), &["snf", "[[2,4,4],[-6,6,12],[10,-4,-16]]"]);
    assert_eq!(code, Some(0));
    assert_eq!(stage_summary(&r, "snf"), "rank 3, invariant factors [2, 6, 12]");
    let path = dir.path().join("m.json");
    std::fs::write(&path, "[[0,0],[0,0]]").unwrap();
    let (r, _) = json_report(dir.path(), &["snf", path.to_str().unwrap()]);
    assert_eq!(stage_summary(&r, "snf"), "rank 0, invariant factors []");
}
