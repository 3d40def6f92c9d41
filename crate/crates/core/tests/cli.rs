use std::process::{Command, Output};

use revlogic::gate::Gate;
use revlogic::library::{build, GateId};

fn revlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revlogic"))
        .args(args)
        .env_remove("REVLOGIC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gates_show_prints_layout_and_json() {
    let o = revlogic(&["gates", "show", "cl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("x1 x2 x3 | x1' x2' x3'"));
    assert!(text.contains(" 0  1  0 |   0   1   1"));
    assert!(text.contains(r#""table":["000","001","011","010","101","100","111","110"]"#));
}

#[test]
fn gates_show_json_round_trips() {
    for id in GateId::ALL {
        let o = revlogic(&["gates", "show", id.as_str(), "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let g: Gate = serde_json::from_slice(&o.stdout).unwrap();
        assert!(g.same_table(&build(id)), "{id}");
    }
}

#[test]
fn unknown_gate_and_verb_are_usage_errors() {
    assert_eq!(
        revlogic(&["gates", "show", "fredkin"]).status.code(),
        Some(2)
    );
    assert_eq!(revlogic(&["transmogrify"]).status.code(), Some(2));
    assert_eq!(
        revlogic(&["simulate", "--input", "21"]).status.code(),
        Some(2)
    );
    assert_eq!(
        revlogic(&["energy", "--gate", "cl", "--fix", "4=0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_all_passes() {
    let o = revlogic(&["verify-all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert!(passes >= 8, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_all_json() {
    let o = revlogic(&["verify-all", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v.as_array().unwrap();
    assert_eq!(checks.len(), 11);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn machine_u4_needs_distinguishable() {
    let o = revlogic(&["machine", "--norm", "u4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = revlogic(&["machine", "--norm", "u4", "--distinguishable"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS u4: I {x3=1} -> IMPLIES_AB"));
}

#[test]
fn machine_json_mirrors_table() {
    let o = revlogic(&["machine", "--norm", "delta", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["connective"], "XOR");
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["table"]["rows"][1]["output"], "011");

    let all = revlogic(&["machine", "--all"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(
        stdout(&all)
            .lines()
            .filter(|l| l.starts_with("PASS"))
            .count(),
        8
    );
}

#[test]
fn simulate_is_deterministic_and_honours_seed_env() {
    let a = revlogic(&["simulate", "--input", "11", "--n", "500", "--seed", "7"]);
    let b = revlogic(&["simulate", "--input", "11", "--n", "500", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let via_env = Command::new(env!("CARGO_BIN_EXE_revlogic"))
        .args(["simulate", "--input", "11", "--n", "500"])
        .env("REVLOGIC_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, via_env.stdout);

    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("bin_low,bin_high,count"));
    let total: u64 = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 500);
    let summary: serde_json::Value = serde_json::from_slice(&a.stderr).unwrap();
    assert_eq!(summary["summary"]["n"], 500);
}

#[test]
fn simulate_json_summary() {
    let o = revlogic(&["simulate", "--input", "01", "--n", "2000", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    let mean = v["summary"]["mean"].as_f64().unwrap();
    assert!((mean - 0.855).abs() < 0.01, "{mean}");
}

#[test]
fn energy_reports_or_projection() {
    let o = revlogic(&["energy", "--gate", "cl", "--fix", "3=0", "--project", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let erased = v["report"]["erased_bits"].as_f64().unwrap();
    let oracle = 2.0 - (-(0.25f64 * 0.25f64.log2()) - 0.75 * 0.75f64.log2());
    assert!((erased - oracle).abs() < 1e-12);

    let kept = revlogic(&["energy", "--gate", "cl", "--fix", "3=0"]);
    let v: serde_json::Value = serde_json::from_slice(&kept.stdout).unwrap();
    assert!(v["report"]["erased_bits"].as_f64().unwrap().abs() < 1e-12);
}
