use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tiling-forge"));
    c.env_remove("TILING_FORGE_TIER");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("single JSON document")
}

const Z7: &str = r#"{"group":{"orders":[7]},"S":[[1],[2],[4]],"k_plus":1,"k_minus":0,"t":2}"#;

#[test]
fn ball_size() {
    let o = run(&[
        "ball", "size", "--n", "11", "--t", "2", "--kplus", "2", "--kminus", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "243");
}

#[test]
fn ball_enum_formats() {
    let o = run(&["ball", "enum", "--n", "3", "--t", "2", "--kplus", "1"]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert_eq!(v[0], serde_json::json!([0, 0, 0]));
    let o = run(&[
        "--format", "tsv", "ball", "enum", "--n", "3", "--t", "2", "--kplus", "1",
    ]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = run(&[
        "ball", "enum", "--n", "30", "--t", "30", "--kplus", "9", "--cap", "1000",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn split_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("z7.json");
    std::fs::write(&good, Z7).unwrap();
    let o = run(&[
        "split",
        "verify",
        "--file",
        good.to_str().unwrap(),
        "--mode",
        "full",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["valid"], true);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, Z7.replace("[4]", "[3]")).unwrap();
    let o = run(&["split", "verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["failure"]["kind"], "collision");

    let o = run_stdin(&["split", "verify"], "{not json");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn splitting_lattice_round_trip() {
    let o = run_stdin(&["split", "to-lattice"], Z7);
    assert_eq!(o.status.code(), Some(0));
    let lattice = stdout(&o);
    let args = ["--n", "3", "--t", "2", "--kplus", "1"];
    let o = run_stdin(&[&["tile", "verify"][..], &args].concat(), &lattice);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["tiles"], true);
    let o = run_stdin(&[&["tile", "to-split"][..], &args].concat(), &lattice);
    assert_eq!(o.status.code(), Some(0));
    let back = stdout(&o);
    let o = run_stdin(&["split", "verify"], &back);
    assert_eq!(o.status.code(), Some(0));

    let o = run_stdin(
        &[&["tile", "verify"][..], &args].concat(),
        "3 3\n2 0 0\n0 2 0\n0 0 2\n",
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn codes_and_lattices_compose() {
    let code = stdout(&run(&["code", "build", "golay3"]));
    let o = run_stdin(&["code", "certify", "--t", "2"], &code);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["is_perfect_for_t"], 2);
    let o = run_stdin(&["code", "certify", "--t", "3"], &code);
    assert_eq!(o.status.code(), Some(1));

    let lattice = stdout(&run_stdin(&["lattice", "from-code"], &code));
    let o = run_stdin(&["lattice", "det"], &lattice);
    assert_eq!(stdout(&o).trim(), "243");
    let q = json(&run_stdin(&["lattice", "quotient"], &lattice));
    assert_eq!(q["group"]["orders"], serde_json::json!([3, 3, 3, 3, 3]));
    let back = json(&run_stdin(
        &["lattice", "extract-code", "--p", "3"],
        &lattice,
    ));
    assert_eq!(back["k"], 6);
    let o = run_stdin(&["lattice", "extract-code", "--p", "4"], &lattice);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn snf_text_input() {
    let o = run_stdin(
        &["--format", "text", "lattice", "snf"],
        "3 3\n2 4 4\n-6 6 12\n10 -4 -16\n",
    );
    assert_eq!(stdout(&o).trim(), "2 6 12");
}

#[test]
fn search_exit_codes() {
    let base = [
        "search", "split", "--kplus", "1", "--kminus", "0", "--t", "2",
    ];
    let o = run(&[&base[..], &["--group", r#"{"orders":[7]}"#, "--n", "3"]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "found");
    let o = run(&[&base[..], &["--group", r#"{"orders":[16]}"#, "--n", "5"]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "exhausted_none");
    let o = run(&[
        &base[..],
        &[
            "--group",
            r#"{"orders":[211]}"#,
            "--n",
            "20",
            "--node-budget",
            "10",
        ],
    ]
    .concat());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tier_environment_overrides_flag() {
    let args = [
        "search",
        "split",
        "--group",
        r#"{"orders":[27,3,3]}"#,
        "--kplus",
        "2",
        "--t",
        "2",
        "--n",
        "11",
        "--node-budget",
        "1",
        "--tier",
        "extended",
    ];
    assert_eq!(run(&args).status.code(), Some(3));
    let o = bin()
        .args(args)
        .env("TILING_FORGE_TIER", "basic")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("extended"));
}

#[test]
fn classify_verdicts() {
    let o = run(&[
        "classify", "--n", "3", "--t", "2", "--kplus", "2", "--kminus", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "blocked_general");
    assert!(v["triggers"]
        .as_array()
        .unwrap()
        .iter()
        .any(|t| t["id"] == "midrange-asymmetric"));

    let v = json(&run(&["classify", "--n", "9", "--t", "6", "--kplus", "2"]));
    assert_eq!(v["status"], "blocked_lattice");

    let v = json(&run(&["classify", "--n", "5", "--t", "2", "--kplus", "1"]));
    assert_eq!(v["status"], "exists_with_witness");

    let v = json(&run(&[
        "classify", "table", "--family", "b210", "--n-max", "8",
    ]));
    let exists: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "exists_with_witness")
        .map(|r| r["params"]["n"].as_u64().unwrap())
        .collect();
    assert_eq!(exists, vec![3, 5]);

    assert_eq!(run(&["classify", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["ball", "size", "--n", "2", "--t", "3", "--kplus", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn repro_single_check() {
    let o = run(&[
        "repro",
        "--only",
        "known-splittings",
        "--only",
        "ball-counts",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
    assert_eq!(run(&["repro", "--only", "nope"]).status.code(), Some(2));
}
