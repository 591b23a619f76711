use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_onechroma"));
    c.current_dir(root()).env_remove("ONECHROMA_BUDGET");
    c
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("onechroma-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_reports() {
    let ok = run(&["validate", "fixtures/hexx.opg"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("OK\n"));

    let bad = run(&["validate", "fixtures/bad_crossing.opg"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("share endpoint"));

    let missing = run(&["validate", "fixtures/none.opg"]);
    assert_eq!(missing.status.code(), Some(3));

    let edge_list = run(&["validate", "fixtures/petersen.el"]);
    assert_eq!(edge_list.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&edge_list.stderr).contains("needs a drawing"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = scratch("parse");
    let path = dir.join("broken.opg");
    std::fs::write(&path, "opg 1\nv 3\ne 0 1\ne 1 x\n").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn color_modes() {
    let exact = run(&["color", "--exact", "fixtures/hexx.opg"]);
    assert_eq!(exact.status.code(), Some(0));
    let text = stdout(&exact);
    assert!(text.starts_with("colors 3\n"));
    assert!(text.ends_with("class ONE\n"));

    let viz = run(&["color", "--vizing", "fixtures/petersen.el"]);
    assert_eq!(viz.status.code(), Some(0));
    let k: usize = stdout(&viz).lines().next().unwrap()[7..].parse().unwrap();
    assert!(k <= 4);

    let starved = run(&["color", "--exact", "--budget", "1", "fixtures/petersen.el"]);
    assert_eq!(starved.status.code(), Some(2));
    assert!(stdout(&starved).contains("class UNKNOWN"));

    let two = run(&["color", "fixtures/petersen.el"]);
    assert!(stdout(&two).contains("class TWO"));
}

#[test]
fn budget_from_environment() {
    let o = bin()
        .args(["color", "--exact", "fixtures/petersen.el"])
        .env("ONECHROMA_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let bad = bin()
        .args(["color", "fixtures/petersen.el"])
        .env("ONECHROMA_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn discharge_outputs() {
    let hexx = run(&["discharge", "fixtures/hexx.opg"]);
    assert_eq!(hexx.status.code(), Some(0));
    assert!(stdout(&hexx).ends_with("totals initial -8 final -8\n"));

    let c6 = stdout(&run(&["discharge", "fixtures/c6.opg"]));
    assert!(!c6.contains("transfers"));

    assert_eq!(run(&["discharge", "fixtures/two_c4.opg"]).status.code(), Some(3));
}

#[test]
fn check_outputs() {
    let all = run(&["check", "--lemma", "all", "fixtures/hexx.opg"]);
    assert_eq!(all.status.code(), Some(0));
    let text = stdout(&all);
    for line in [
        "lemma1 PASS",
        "lemma2 PASS",
        "lemma3 NOT_APPLICABLE",
        "lemma4 NOT_APPLICABLE",
    ] {
        assert!(text.contains(line), "{text}");
    }
    assert!(text.contains("class ONE"));

    let na = run(&["check", "--theorem1", "fixtures/hexx.opg"]);
    assert!(stdout(&na).starts_with("theorem1 NOT_APPLICABLE"));

    let gen = run(&["check", "--theorem1", "fixtures/gen_s7_n30_bip.opg"]);
    assert_eq!(gen.status.code(), Some(0));
    assert!(stdout(&gen).starts_with("theorem1 PASS"));

    let c5 = run(&["check", "--lemma", "3", "fixtures/c5.el"]);
    assert!(stdout(&c5).starts_with("lemma3 PASS"));

    assert_eq!(run(&["check", "--lemma", "7", "fixtures/hexx.opg"]).status.code(), Some(3));
    assert_eq!(run(&["check", "--lemma", "1", "fixtures/petersen.el"]).status.code(), Some(3));
}

#[test]
fn non_minimal_drawing_fails_with_caveat() {
    let dir = scratch("nonmin");
    let path = dir.join("hexx_minus_05.opg");
    std::fs::write(
        &path,
        "opg 1\nv 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 0 3\ne 1 4\nx (0 3) (1 4) 0\n\
         r 0: 1 z(0 3)\nr 1: 2 z(1 4) 0\nr 2: 3 1\nr 3: 4 z(3 0) 2\nr 4: 5 z(4 1) 3\nr 5: 4\n",
    )
    .unwrap();
    let o = run(&["check", "--lemma", "2", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("[2(1)]"));
    assert!(text.contains("not crossing-minimal"));
}

#[test]
fn gen_writes_valid_files() {
    let dir = scratch("gen");
    let a = dir.join("a.opg");
    let b = dir.join("b.opg");
    let args = ["gen", "--seed", "7", "--n", "30", "--delta", "7", "--crossings", "5", "--mode", "bipartite", "--out"];
    for p in [&a, &b] {
        let mut full: Vec<&str> = args.to_vec();
        full.push(p.to_str().unwrap());
        assert_eq!(run(&full).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(run(&["validate", a.to_str().unwrap()]).status.code(), Some(0));

    assert_eq!(run(&["gen", "--seed", "1", "--delta", "40", "--n", "10"]).status.code(), Some(3));
    assert_eq!(run(&["gen", "--seed", "1", "--n", "8"]).status.code(), Some(4));
    assert_eq!(run(&["gen", "--seed", "1", "--n", "30", "--mode", "odd"]).status.code(), Some(3));
}

#[test]
fn json_reports() {
    let o = run(&["--json", "--deterministic", "validate", "fixtures/hexx.opg", "fixtures/bad_crossing.opg"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_status"], 1);
    assert!(v.get("timestamp").is_none());
    let items = v["items"].as_array().unwrap();
    assert_eq!(items[0]["path"], "fixtures/bad_crossing.opg");
    assert_eq!(items[1]["status"], "pass");
    assert_eq!(items[1]["sha256"].as_str().unwrap().len(), 64);

    let stamped = run(&["--json", "validate", "fixtures/hexx.opg"]);
    let v: serde_json::Value = serde_json::from_slice(&stamped.stdout).unwrap();
    assert!(v["timestamp"].is_u64());
}

#[test]
fn jobs_keep_path_order() {
    let serial = run(&["--deterministic", "--json", "validate", "fixtures/c4.opg", "fixtures/hexx.opg", "fixtures/cube.opg"]);
    let parallel = run(&["--deterministic", "--json", "--jobs", "3", "validate", "fixtures/cube.opg", "fixtures/hexx.opg", "fixtures/c4.opg"]);
    let a: serde_json::Value = serde_json::from_slice(&serial.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&parallel.stdout).unwrap();
    assert_eq!(a["items"], b["items"]);

    let mixed = run(&["validate", "fixtures/bad_crossing.opg", "fixtures/none.opg"]);
    assert_eq!(mixed.status.code(), Some(3));
}
