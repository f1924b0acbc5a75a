use std::process::{Command, Output};

fn indreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indreg"))
        .args(args)
        .env_remove("INDREG_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exact_pk_prints_rational_and_value() {
    let out = indreg(&["pk", "--k", "5", "--exact"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "12/2^10\n0.01171875\n");
}

#[test]
fn json_flag_emits_an_object() {
    let out = indreg(&["--json", "pk", "--k", "5", "--exact"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["k"], 5);
    assert_eq!(v["exact"]["rational"], "12/2^10");
    assert_eq!(v["exact"]["value"], 0.01171875);
}

#[test]
fn search_on_a_triangle_with_a_tail() {
    let out = indreg(&["search", "--graph6", "Bw"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("size 3\n"), "{text}");
    assert!(text.contains("r 2\n"), "{text}");
    assert!(text.contains("optimal true"), "{text}");
}

#[test]
fn ratio_with_equal_shift() {
    let out = indreg(&["ratio", "--k", "5", "--i", "2", "--d", "1,1", "--s", "1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 1.0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(indreg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(indreg(&["pk"]).status.code(), Some(2));
    assert_eq!(indreg(&["sweep", "--n", "70"]).status.code(), Some(2));
    assert_eq!(indreg(&["sweep", "--n", "30", "--search", "exact"]).status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_one() {
    let out = indreg(&["pki", "--k", "19", "--i", "2", "--exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn sweep_is_reproducible_and_writes_files() {
    let args = ["sweep", "--n", "10,14", "--trials", "2", "--seed", "3"];
    let a = indreg(&args);
    let b = indreg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("n,trial,seed,observed_max_size,observed_r,optimal,bound_2n23,k,log_ex\n"));
    assert_eq!(text.lines().count(), 5);

    let path = std::env::temp_dir().join(format!("indreg-sweep-{}.csv", std::process::id()));
    let mut with_output = args.to_vec();
    let p = path.to_str().unwrap();
    with_output.extend(["--output", p]);
    assert!(indreg(&with_output).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn printed_config_replays_the_same_sweep() {
    let out = indreg(&["sweep", "--n", "12", "--trials", "2", "--seed", "9", "--print-config"]);
    assert!(out.status.success());
    let path = std::env::temp_dir().join(format!("indreg-config-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let from_file = indreg(&["sweep", "--config", path.to_str().unwrap()]);
    let direct = indreg(&["sweep", "--n", "12", "--trials", "2", "--seed", "9"]);
    std::fs::remove_file(&path).unwrap();
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, direct.stdout);
}

#[test]
fn moments_csv_has_one_row_per_overlap() {
    let out = indreg(&["moments", "--n", "1000000", "--k", "101", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("i,case,source,log_binomial_ratio,log_pki_ratio,log_g,log_covariance,log_contribution,constant_sensitive")
    );
    let is: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(is, (2..=100).collect::<Vec<_>>());
}

#[test]
fn search_on_a_sampled_graph() {
    let a = indreg(&["--json", "search", "--gnp", "16", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, indreg(&["--json", "search", "--gnp", "16", "--seed", "5"]).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["optimal"], true);
    assert_eq!(v["subset"].as_array().unwrap().len() as u64, v["size"].as_u64().unwrap());
    assert_eq!(indreg(&["search", "--gnp", "16"]).status.code(), Some(2));
    assert_eq!(indreg(&["search", "--graph6", "Bw", "--seed", "1"]).status.code(), Some(2));
}
