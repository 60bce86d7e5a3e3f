use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn daga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daga"))
        .args(args)
        .env_remove("DAGA_WORKERS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMOKE: &str = r#"
name = "smoke"
algorithm = "ga"
trials = 4
base_seed = 3

[problem]
name = "maxones"
size = 24

[ga]
population = 30
crossover_prob = 0.9
mutation_prob = 0.04
max_evaluations = 3000
"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn bundled_configs_validate() {
    let mut configs: Vec<String> = std::fs::read_dir(repo().join("configs"))
        .unwrap()
        .map(|e| e.unwrap().path().to_str().unwrap().to_string())
        .collect();
    configs.sort();
    let mut args = vec!["validate-config"];
    args.extend(configs.iter().map(String::as_str));
    let out = daga(&args);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches(": ok").count(), configs.len());
}

#[test]
fn config_errors_exit_2_and_list_everything() {
    let dir = tempfile::tempdir().unwrap();
    let bad = SMOKE
        .replace("trials = 4", "trials = 0")
        .replace("crossover_prob = 0.9", "crossover_prob = 1.5")
        .replace("size = 24", "size = 0");
    let path = write(dir.path(), "bad.toml", &bad);
    let out = daga(&["run", &path, "-o", dir.path().join("out").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    for needle in ["trials", "crossover_prob", "problem.size"] {
        assert!(err.contains(needle), "missing {needle} in {err}");
    }
    assert!(!dir.path().join("out").exists());
}

#[test]
fn numeric_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
name = "diverge"
algorithm = "daga"
trials = 1

[problem]
name = "maxones"
size = 16

[daga]
population = 20
trunc_percent = 50
epochs = 5
learning_rate = 1e308
corruption_rate = 0.1
hidden_size = 8
max_evaluations = 2000
"#;
    let path = write(dir.path(), "diverge.toml", cfg);
    let out = daga(&["run", &path, "-o", dir.path().join("out").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("numeric"));
}

#[test]
fn run_reproduce_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "smoke.toml", SMOKE);
    let out_dir = dir.path().join("run");
    let out = daga(&["run", &path, "-o", out_dir.to_str().unwrap(), "--trials", "5", "--base-seed", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(out_dir.join("results.csv")).unwrap();
    let seeds: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(seeds, ["10", "11", "12", "13", "14"]);
    assert!(out_dir.join("summary.csv").exists());

    let manifest = out_dir.join("manifest.toml");
    let replay_dir = dir.path().join("replay");
    let out = Command::new(env!("CARGO_BIN_EXE_daga"))
        .args(["reproduce", manifest.to_str().unwrap(), "-o", replay_dir.to_str().unwrap()])
        .env("DAGA_WORKERS", "3")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("results identical"));
    assert_eq!(std::fs::read(replay_dir.join("results.csv")).unwrap(), csv.as_bytes());
}

#[test]
fn compare_reports_and_refuses_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.toml", SMOKE);
    let b = write(dir.path(), "b.toml", &SMOKE.replace("mutation_prob = 0.04", "mutation_prob = 0.0"));
    let c = write(dir.path(), "c.toml", &SMOKE.replace("size = 24", "size = 20"));
    for (cfg, out) in [(&a, "ra"), (&b, "rb"), (&c, "rc")] {
        assert!(daga(&["run", cfg, "-o", dir.path().join(out).to_str().unwrap()]).status.success());
    }
    let csv = |d: &str| dir.path().join(d).join("results.csv").to_str().unwrap().to_string();
    let out = daga(&["compare", &csv("ra"), &csv("rb")]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = stdout(&out);
    for col in ["min", "max", "mean", "mean evals", "success", "p (best)", "p (evals)"] {
        assert!(report.contains(col), "{report}");
    }
    let out = daga(&["compare", &csv("ra"), &csv("rc")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("different problems"));
}

#[test]
fn fig1a_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = daga(&["analyze", "fig1a", "--seed", "2", "-o", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("[0, 7, 63]"));
    let transition = std::fs::read_to_string(dir.path().join("fig1a-seed2-transition.tsv")).unwrap();
    assert_eq!(transition.lines().count(), 1 + 64 * 64);
    assert!(dir.path().join("fig1a-seed2-marginal.tsv").exists());
}
