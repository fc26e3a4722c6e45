use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde_json::Value;

// HDIOPH_THREADS is process-wide; runs are serialized so one test's
// setting never leaks into another.
static LOCK: Mutex<()> = Mutex::new(());

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hdioph-test-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn run(out: &Path, args: &[&str]) -> i32 {
    let _g = LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let mut argv = vec!["hdioph", "--out", out.to_str().unwrap()];
    argv.extend_from_slice(args);
    cli::run(argv)
}

fn summary(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap()
}

fn result<'a>(s: &'a Value, key: &str) -> &'a Value {
    &s["results"][key]["value"]
}

#[test]
fn summary_layout() {
    let d = tmp("layout");
    assert_eq!(run(&d, &["nt", "gcd", "--a", "5", "--b", "2+i"]), 0);
    let s = summary(&d);
    assert_eq!(s["schema_version"], 1);
    assert_eq!(s["command"], "nt gcd");
    assert_eq!(s["failure"], Value::Null);
    assert_eq!(s["results"]["gcd"]["provenance"], "exact");
    assert_eq!(result(&s, "gcd"), "2+1i");
}

#[test]
fn phi_starred_sum_at_ten() {
    // a = x + iy with x, y > 0 coprime and N(a) ≤ 10: 1+i, 1+2i, 2+i, 1+3i, 3+i
    let by_hand: f64 = [(2, 1.0), (5, 4.0), (5, 4.0), (10, 4.0), (10, 4.0)]
        .iter()
        .map(|&(n, phi)| phi / (n * n) as f64)
        .sum();
    let d = tmp("sum");
    assert_eq!(run(&d, &["nt", "sum", "--kind", "phi_starred", "--K", "10"]), 0);
    let v: f64 = result(&summary(&d), "value").as_str().unwrap().parse().unwrap();
    assert!((v - by_hand).abs() < 1e-12, "{v} vs {by_hand}");
}

#[test]
fn heisenberg_product() {
    let d = tmp("mul");
    assert_eq!(run(&d, &["group", "mul", "--g", "1,0,0", "--h", "0,1,0"]), 0);
    // t'' = 0 + 0 + 2(1·1 − 0·0)
    let p = result(&summary(&d), "product").as_str().unwrap().replace(' ', "");
    assert_eq!(p, "(1,1,2)");
}

#[test]
fn siegel_inverse() {
    let d = tmp("inv");
    assert_eq!(run(&d, &["--model", "siegel", "group", "inv", "--g", "1+i, 1+i"]), 0);
    let p = result(&summary(&d), "inverse").as_str().unwrap().replace(' ', "");
    assert_eq!(p, "(-1-1i,1-1i)");
}

#[test]
fn rational_expansion_terminates() {
    let d = tmp("cf");
    assert_eq!(run(&d, &["--model", "siegel", "cf", "expand", "--point", "0, 1/3i"]), 0);
    let s = summary(&d);
    assert_eq!(result(&s, "terminated"), true);
    assert_eq!(result(&s, "digit_count"), 1);
}

#[test]
fn game_is_deterministic() {
    let a = tmp("game-a");
    let b = tmp("game-b");
    let args = ["game", "--rounds", "6", "--games", "2"];
    assert_eq!(run(&a, &args), 0);
    assert_eq!(run(&b, &args), 0);
    assert_eq!(fs::read(a.join("summary.json")).unwrap(), fs::read(b.join("summary.json")).unwrap());
    assert_eq!(fs::read(a.join("detail.csv")).unwrap(), fs::read(b.join("detail.csv")).unwrap());
    assert_eq!(result(&summary(&a), "verified"), 2);
}

#[test]
fn cantor_counts_leaves() {
    let d = tmp("cantor");
    assert_eq!(run(&d, &["cantor", "--branching", "2", "--depth", "2"]), 0);
    let s = summary(&d);
    assert_eq!(result(&s, "leaf_count"), 4);
    assert_eq!(result(&s, "verified_chains"), 4);
}

#[test]
fn inadmissible_game_config_exits_two() {
    let d = tmp("badcfg");
    let cfg = d.join("cfg.json");
    fs::write(&cfg, r#"{"alpha":"1/2","beta":"1/4","epsilon":"1/1000","r1":"1/200","L":"1","delta":4}"#).unwrap();
    assert_eq!(run(&d, &["validate", cfg.to_str().unwrap()]), 2);
    let s = summary(&d);
    assert_eq!(result(&s, "valid"), false);
    assert!(!result(&s, "diagnostics").as_array().unwrap().is_empty());
    assert_eq!(run(&d, &["game", "--config", cfg.to_str().unwrap()]), 2);
}

#[test]
fn non_associative_spec_exits_two() {
    let d = tmp("badspec");
    let spec = d.join("spec.json");
    fs::write(
        &spec,
        r#"{"layer_dims":[2,1],"weights":["1","1/2"],"law_polynomials":[[{"coeff":1,"exponents":[2,0,0,0,0,0]}]]}"#,
    )
    .unwrap();
    assert_eq!(run(&d, &["validate", spec.to_str().unwrap()]), 2);
}

#[test]
fn usage_errors_exit_two() {
    let d = tmp("usage");
    assert_eq!(run(&d, &["nt", "sum", "--kind", "nonsense", "--K", "10"]), 2);
    assert_eq!(run(&d, &["--precision-bits", "32", "nt", "gcd", "--a", "1", "--b", "1"]), 2);
    assert_eq!(run(&d, &["--help"]), 0);
}

#[test]
fn thread_variable_is_checked() {
    let d = tmp("threads");
    let _g = LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let argv = ["hdioph", "--out", d.to_str().unwrap(), "nt", "gcd", "--a", "3", "--b", "3"];
    std::env::set_var(cli::THREADS_ENV, "zero");
    let bad = cli::run(argv);
    std::env::set_var(cli::THREADS_ENV, "1");
    let good = cli::run(argv);
    std::env::remove_var(cli::THREADS_ENV);
    assert_eq!((bad, good), (2, 0));
}

#[test]
fn unwritable_output_exits_one() {
    let d = tmp("io");
    let file = d.join("occupied");
    fs::write(&file, "").unwrap();
    assert_eq!(run(&file, &["nt", "gcd", "--a", "1", "--b", "1"]), 1);
}
