use std::process::{Command, Output};

fn pentaloss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentaloss"))
        .args(args)
        .env_remove("PENTALOSS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pentaloss(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn code_show_lists_stabilizers() {
    let text = stdout(&["code", "show"]);
    assert!(text.contains("XZIIZ"));
    assert!(text.contains("ZYYZI"));
    assert!(text.contains("distance:          3"));
}

#[test]
fn minimal_weight_listing() {
    let text = stdout(&["code", "show", "--basis", "Z", "--min-weight"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"-IXXIZ"));
    assert!(lines.contains(&"-YIIYZ"));
}

#[test]
fn other_ring_sizes() {
    let text = stdout(&["code", "show", "--ring", "6"]);
    assert_eq!(text.lines().next(), Some("XZIIIZ"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn thresholds() {
    assert_eq!(stdout(&["threshold", "--mode", "pre"]).trim(), "0.500000000");
    let t: f64 = stdout(&["threshold", "--mode", "nonpre"]).trim().parse().unwrap();
    assert!((0.20..=0.26).contains(&t));
    assert_eq!(stdout(&["threshold", "--base", "identity"]).trim(), "no threshold");
}

#[test]
fn curve_csv() {
    let text = stdout(&["curve", "--mode", "pre", "--levels", "1..5", "--grid", "0:0.5:0.1"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mode,level,p,P_eff"));
    let rows: Vec<(u32, f64, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 30);
    for &(_, p, v) in &rows {
        if p == 0.0 {
            assert_eq!(v, 0.0);
        }
        if p == 0.5 {
            assert!((v - 0.5).abs() < 1e-12);
        }
    }
    let deep = rows.iter().find(|r| r.0 == 5 && (r.1 - 0.4).abs() < 1e-12).unwrap().2;
    assert!((deep - 1.1567e-8).abs() < 1e-11);
}

#[test]
fn tables_are_reproducible() {
    for which in ["1", "2", "3"] {
        let a = stdout(&["table", "--which", which]);
        let b = stdout(&["table", "--which", which]);
        assert_eq!(a, b);
        let csv = stdout(&["table", "--which", which, "--format", "csv"]);
        let json: serde_json::Value = serde_json::from_str(&stdout(&["table", "--which", which, "--format", "json"])).unwrap();
        let mut from_json = Vec::new();
        for row in json["rows"].as_array().unwrap() {
            for cell in row["cells"].as_array().unwrap() {
                from_json.push(cell["display"].as_str().unwrap().to_string());
            }
        }
        let from_csv: Vec<String> = csv.lines().skip(1).map(|l| l.rsplit(',').nth(2).unwrap().to_string()).collect();
        assert_eq!(from_csv, from_json);
    }
}

#[test]
fn literal_tree_is_flagged() {
    let out = pentaloss(&["verify", "tree"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("unreachable branch"));
    assert!(text.contains("5Y"));
}

#[test]
fn gates_verify_cleanly() {
    let out = pentaloss(&["verify", "gates"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn comparison_mentions_cited_overhead() {
    assert!(stdout(&["compare"]).contains("22188"));
}

#[test]
fn simulation_is_seeded() {
    let args = ["simulate", "--mode", "nonpre", "--p", "0.1,0.2", "--levels", "2", "--shots", "20000", "--seed", "11"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert_eq!(a.lines().count(), 2);
    let with_env = Command::new(env!("CARGO_BIN_EXE_pentaloss"))
        .args(&args[..args.len() - 2])
        .env("PENTALOSS_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(with_env.stdout).unwrap(), a);
}

#[test]
fn operational_errors_exit_one() {
    for args in [
        &["table", "--which", "9"][..],
        &["threshold", "--mode", "sideways"][..],
        &["simulate", "--p", "1.5"][..],
        &["verify", "gates", "--adjacency", "/nonexistent/edges"][..],
    ] {
        let out = pentaloss(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}
