use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfectlike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("perfectlike-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bounds_prints_integer() {
    let o = run(&["bounds", "--q", "3", "--n", "3", "--lambda", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = run(&["bounds", "--q", "3", "--n", "3", "--mu", "6"]);
    assert_eq!(stdout(&o).trim(), "24");
    let o = run(&["bounds", "--q", "3", "--n", "4", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_table_lists_admissible_lengths() {
    let o = run(&["--tsv", "bounds", "--q", "3", "--table", "40", "--lambda", "1"]);
    let text = stdout(&o);
    let lengths: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(lengths, ["3", "12", "21", "30", "39"]);
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["bounds", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["repro", "13"]).status.code(), Some(2));
}

#[test]
fn construct_then_verify() {
    let path = temp("short.code");
    let p = path.to_str().unwrap();
    let o = run(&["construct", "shorten", "--q", "3", "--m", "2", "--out", p]);
    assert!(o.status.success());
    assert!(run(&["verify", "--kind", "packing", "--lambda", "1", "--input", p]).status.success());
    assert!(run(&["verify", "--kind", "cr", "--input", p]).status.success());
    let o = run(&["verify", "--kind", "perfect", "--input", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness"));

    let o = run(&["--tsv", "spectra", "--input", p]);
    let text = stdout(&o);
    assert!(text.contains("A\t1/1\t0/1\t0/1\t2/1"), "{text}");
    assert!(text.contains("B\t1/1\t0/1\t6/1\t2/1"), "{text}");
}

#[test]
fn lengthen_embedded_partition_is_unsat() {
    let o = run(&["lengthen", "partition", "--name", "h44-partition"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("UNSAT"));
    assert!(text.contains("conflict core: 3 classes {2, 3, C}"), "{text}");
}

#[test]
fn catalog_round_trip() {
    let path = temp("h44.part");
    let p = path.to_str().unwrap();
    assert!(run(&["catalog", "export", "--name", "h44-partition", "--out", p]).status.success());
    let o = run(&["lengthen", "partition", "--input", p]);
    assert!(stdout(&o).starts_with("UNSAT"));
    assert_eq!(stdout(&run(&["catalog", "list"])).trim(), "h44-partition");
}

#[test]
fn search_requires_seed_and_is_repeatable() {
    assert_eq!(run(&["lengthen", "search", "--q", "4"]).status.code(), Some(2));
    let args = ["lengthen", "search", "--q", "4", "--seed", "3", "--partitions", "1"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(run(&["--threads", "2", "lengthen", "search", "--q", "4", "--seed", "3", "--partitions", "1"]).stdout, a.stdout);
}

#[test]
fn theorem4_oracle_descriptor() {
    let o = run(&["construct", "theorem4", "--m", "3", "--oracle"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 20);
    assert_eq!(v["size"], "17179869184");
    assert_eq!(v["min_distance"], 3);
}

#[test]
fn repro_single_criterion() {
    let o = run(&["repro", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/1 criteria passed"));
}
