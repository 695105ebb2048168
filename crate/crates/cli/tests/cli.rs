mod common;

use common::*;
use serde_json::json;
use std::fs;
use std::path::Path;
use std::process::Command;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn assess(store: &str, gaps: &str, system: &str, date: &str, level: &str) -> Output {
    mlq(&[
        "assess", "--gaps", gaps, "--team", "search", "--system", system, "--date", date,
        "--criticality", level, "--store", store,
    ])
}

#[test]
fn assess_all_green() {
    let tmp = tempfile::tempdir().unwrap();
    let gaps = write(tmp.path(), "gaps.csv", &gaps_csv(|_| "no"));
    let store = tmp.path().join("store");
    let out = assess(path_str(&store), &gaps, "ranker", "2024-01-05", "5");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().next(), Some("score=100 maturity=5 required=5"));
    for f in ["gaps.csv", "snapshot.json", "report.html"] {
        assert!(store.join("search/ranker/2024-01-05").join(f).is_file(), "{f}");
    }
}

#[test]
fn illegal_small_gap_reports_line() {
    let tmp = tempfile::tempdir().unwrap();
    let gaps = write(
        tmp.path(),
        "gaps.csv",
        &gaps_csv(|id| if id == "fairness" { "small" } else { "no" }),
    );
    let out = assess(path_str(&tmp.path().join("s")), &gaps, "r", "2024-01-05", "3");
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 23"), "{}", out.stderr);
    assert!(out.stderr.contains("fairness"));
    assert!(!tmp.path().join("s").exists());
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let gaps = write(tmp.path(), "gaps.csv", &gaps_csv(|_| "no"));
    let store = tmp.path().join("s");
    let out = mlq(&[
        "assess", "--gaps", &gaps, "--team", "t", "--system", "s", "--date", "2024-01-05",
        "--store", path_str(&store),
    ]);
    assert_eq!(out.code, 2);
    assert_eq!(mlq(&["frobnicate"]).code, 2);
    assert_eq!(mlq(&[]).code, 2);
    assert_eq!(assess(path_str(&store), &gaps, "s", "2024-01-05", "4").code, 2);
    assert_eq!(assess(path_str(&store), &gaps, "s", "yesterday", "3").code, 2);
    assert_eq!(mlq(&["fleet", "--store", "x", "--out", "y", "--before", "2024-01-01"]).code, 2);
    assert_eq!(mlq(&["--help"]).code, 0);
}

#[test]
fn criticality_from_usage_and_fleet() {
    let tmp = tempfile::tempdir().unwrap();
    let gaps = write(tmp.path(), "gaps.csv", &gaps_csv(|_| "no"));
    let mut systems = Vec::new();
    for (i, rpd) in [10, 20, 30].into_iter().enumerate() {
        let mut r = complete_record(&format!("s{i}"), "t");
        r["requests_per_day"] = json!(rpd);
        systems.push(r);
    }
    let fleet = write(tmp.path(), "fleet.json", &snapshot("2024-01-05", systems).to_string());
    let usage = write(
        tmp.path(),
        "usage.json",
        r#"{"requests_per_day": 21, "dependent_consumers": 0, "revenue_share": 0.0, "strategic": false, "in_production": true}"#,
    );
    let store = tmp.path().join("s");
    let out = mlq(&[
        "assess", "--gaps", &gaps, "--team", "t", "--system", "x", "--date", "2024-01-05",
        "--usage", &usage, "--fleet", &fleet, "--store", path_str(&store),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("score=100 maturity=5 required=5"), "{}", out.stdout);
}

#[test]
fn infer_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let mut unowned = complete_record("beta", "search");
    unowned.as_object_mut().unwrap().remove("owner_team");
    let systems = vec![complete_record("alpha", "search"), unowned, complete_record("gamma", "ads")];
    let registry = write(tmp.path(), "registry.json", &snapshot("2024-02-01", systems).to_string());
    let overrides = write(
        tmp.path(),
        "overrides.json",
        r#"{"systems": {"alpha": {"readability": "full", "modularity": "full"}}}"#,
    );
    let store = tmp.path().join("store");
    let args = [
        "infer", "--registry", &registry, "--overrides", &overrides, "--store", path_str(&store),
    ];
    let out = mlq(&args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 3);

    let snap = |system: &str| {
        let p = store.join(format!("{system}/2024-02-01/snapshot.json"));
        serde_json::from_str::<serde_json::Value>(&fs::read_to_string(p).unwrap()).unwrap()
    };
    let gaps = |system: &str| snap(system)["result"]["assessment"]["gaps"].clone();
    assert_eq!(gaps("search/alpha")["readability"]["gap"], "no");
    assert_eq!(gaps("search/beta")["ownership"]["gap"], "large");
    assert_eq!(gaps("search/beta")["readability"]["gap"], "large");
    let report = fs::read_to_string(store.join("search/beta/2024-02-01/report.html")).unwrap();
    let green = report.split("<section class=\"gaps green\"").nth(1).unwrap();
    assert!(!green.contains("data-sub=\"ownership\""));

    let before = fs::read(store.join("search/alpha/2024-02-01/report.html")).unwrap();
    assert_eq!(mlq(&args).code, 0);
    assert_eq!(fs::read(store.join("search/alpha/2024-02-01/report.html")).unwrap(), before);
}

#[test]
fn infer_rejects_bad_snapshot() {
    let tmp = tempfile::tempdir().unwrap();
    let registry = write(tmp.path(), "r.json", r#"{"schema_version": 7, "systems": []}"#);
    let out = mlq(&["infer", "--registry", &registry, "--store", path_str(tmp.path())]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("schema_version"));
}

#[test]
fn fleet_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let store = tmp.path().join("store");
    let store_s = path_str(&store);
    for (k, day) in ["2024-01-10", "2024-02-10", "2024-03-10"].iter().enumerate() {
        let gaps = write(
            tmp.path(),
            "g.csv",
            &gaps_csv(move |id| if id == "testability" && k == 0 { "large" } else { "no" }),
        );
        for system in ["ranker", "indexer"] {
            assert_eq!(assess(store_s, &gaps, system, day, "3").code, 0);
        }
    }
    let out_dir = tmp.path().join("out");
    let out = mlq(&[
        "fleet", "--store", store_s, "--out", path_str(&out_dir), "--before", "2024-01-31",
        "--after", "2024-03-01",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let trend = fs::read_to_string(out_dir.join("trend.svg")).unwrap();
    assert_eq!(trend.matches("<polyline").count(), 2);
    let compliance = fs::read_to_string(out_dir.join("compliance.csv")).unwrap();
    assert_eq!(compliance.lines().count(), 26);
    assert!(compliance.contains("\ntestability,0.0000,1.0000\n"));
    let dist = fs::read_to_string(out_dir.join("distribution.csv")).unwrap();
    assert_eq!(dist.lines().count(), 4);
    assert!(out_dir.join("compliance.svg").is_file());

    let empty = tmp.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let out = mlq(&["fleet", "--store", path_str(&empty), "--out", path_str(&out_dir)]);
    assert_eq!(out.code, 1);
}

#[test]
fn report_and_history() {
    let tmp = tempfile::tempdir().unwrap();
    let store = tmp.path().join("store");
    let gaps = write(tmp.path(), "g.csv", &gaps_csv(|id| if id == "accuracy" { "small" } else { "no" }));
    assert_eq!(assess(path_str(&store), &gaps, "ranker", "2024-01-05", "5").code, 0);
    assert_eq!(assess(path_str(&store), &gaps, "ranker", "2024-01-06", "5").code, 0);

    let out = mlq(&["report", "--store", path_str(&store), "--team", "search", "--system", "ranker"]);
    assert_eq!(out.code, 0);
    let stored = fs::read_to_string(store.join("search/ranker/2024-01-06/report.html")).unwrap();
    assert_eq!(out.stdout, stored);

    let out = mlq(&["history", "--store", path_str(&store)]);
    assert_eq!(
        out.stdout,
        "team,system,date,quality_score,maturity\nsearch,ranker,2024-01-05,98,2\nsearch,ranker,2024-01-06,98,2\n"
    );
    let out = mlq(&["report", "--store", path_str(&store), "--team", "search", "--system", "nope"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not found"));
}

#[test]
fn form_template_and_conversion() {
    let tmp = tempfile::tempdir().unwrap();
    let out = mlq(&["form"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.matches("\n### ").count(), 25);
    assert_eq!(out.stdout, mlq(&["form"]).stdout);
    let fairness = out.stdout.split("### fairness").nth(1).unwrap().split("###").next().unwrap();
    assert!(!fairness.contains("Minimal"));

    let filled = out.stdout.replace("- [ ] Full", "- [x] Full");
    let form = write(tmp.path(), "filled.md", &filled);
    let csv = tmp.path().join("gaps.csv");
    assert_eq!(mlq(&["form", "--from", &form, "--out", path_str(&csv)]).code, 0);
    let out = assess(path_str(&tmp.path().join("s")), path_str(&csv), "x", "2024-01-05", "1");
    assert_eq!(out.stdout.lines().next(), Some("score=100 maturity=5 required=1"));
}

#[test]
fn validate_model_config() {
    let tmp = tempfile::tempdir().unwrap();
    let good = write(tmp.path(), "good.toml", "[matrix]\nscalability = [\"-\", \"-\", \"-\", \"full\", \"full\"]\n");
    assert_eq!(mlq(&["validate", "--model", &good]).code, 0);
    let bad = write(tmp.path(), "bad.toml", "[matrix]\ntestability = [\"-\", \"full\", \"min\", \"min\", \"full\"]\n");
    let out = mlq(&["validate", "--model", &bad]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("testability"), "{}", out.stderr);
}

#[test]
fn binary_exit_codes_and_env_store() {
    let tmp = tempfile::tempdir().unwrap();
    let gaps = write(tmp.path(), "gaps.csv", &gaps_csv(|_| "no"));
    let store = tmp.path().join("envstore");
    let bin = env!("CARGO_BIN_EXE_mlq");
    let status = Command::new(bin)
        .args(["assess", "--gaps", &gaps, "--team", "t", "--system", "s", "--date", "2024-01-05", "--criticality", "5"])
        .env("MLQ_STORE", &store)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(store.join("t/s/2024-01-05/report.html").is_file());
    let status = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["history", "--store"])
        .arg(tmp.path().join("missing"))
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}
