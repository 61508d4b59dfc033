use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rbpair"));
    cmd.args(args).env_remove("RBPAIR_MAX_GROUP_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_valid_fixtures_exit_zero() {
    for args in [
        vec!["check", "lie", &f("sl2.json")],
        vec!["check", "rb-lie", &f("sl2_projection.json")],
        vec!["check", "quadratic", &f("aff1_cotangent.json")],
        vec!["check", "group", &f("group_q8.json")],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let out = run(&["check", "rb-group", &f("group_z4.json"), &f("z4_squaring.json")]);
    assert_eq!(code(&out), 0);
}

#[test]
fn corrupted_operator_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("sl2_projection.json")).unwrap()).unwrap();
    v["operator"]["matrix"][0][1] = Value::from("1");
    let path = write_temp(&dir, "bad.json", &v.to_string());
    let out = run(&["--report", "text", "check", "rb-lie", &path]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("FAIL rota-baxter")).expect("failing line");
    assert!(line.contains("witness:"), "{line}");
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write_temp(&dir, "ragged.json", r#"{"kind":"group","order":2,"elements":["e","a"],"table":[[0,1],[1]]}"#);
    let out = run(&["check", "group", &ragged]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());

    let truncated = write_temp(&dir, "trunc.json", "{\"kind\": \"lie_algebra\",\n\"dim\": ");
    let out = run(&["check", "lie", &truncated]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let float = write_temp(&dir, "float.json", r#"{"kind":"rb_lie","weight":-1,"algebra":{"kind":"lie_algebra","dim":0,"basis":[],"brackets":[]},"operator":{"matrix":[]}}"#);
    assert_eq!(code(&run(&["check", "rb-lie", &float])), 2);

    let missing = dir.path().join("absent.json");
    assert_eq!(code(&run(&["check", "lie", &missing.to_string_lossy()])), 2);
}

#[test]
fn not_a_group_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "g.json", r#"{"kind":"group","order":2,"elements":["e","a"],"table":[[0,1],[1,1]]}"#);
    let out = run(&["check", "group", &p]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["holds"] == false && c["witness"].is_string()));
}

#[test]
fn construct_matched_pair_on_sl2() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("mp.json");
    let out = run(&["construct", "matched-pair", &f("sl2_projection.json"), "--out", &out_path.to_string_lossy()]);
    assert_eq!(code(&out), 0);
    let mp: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(mp["kind"], "matched_pair_lie");
    assert_eq!(mp["g_plus"]["basis"], serde_json::json!(["h", "f"]));
    assert_eq!(mp["g_minus"]["basis"], serde_json::json!(["e"]));
    // h ▷ e = 2e and e ▶ f = h; f ▷ e and e ▶ h vanish
    assert_eq!(mp["rhd"], serde_json::json!([[0, 0, [[0, "2"]]]]));
    assert_eq!(mp["brhd"], serde_json::json!([[0, 1, [[0, "1"]]]]));
    assert_eq!(json(&out)["artifacts"][0], mp);

    let bc = run(&["construct", "bicrossed", &out_path.to_string_lossy()]);
    assert_eq!(code(&bc), 0);
    assert_eq!(json(&bc)["artifacts"][0]["dim"], 3);
}

#[test]
fn construct_manin_on_cotangent() {
    let out = run(&["construct", "manin", &f("aff1_cotangent.json")]);
    assert_eq!(code(&out), 0);
    let manin = &json(&out)["artifacts"][0];
    assert_eq!(manin["isotropy"], serde_json::json!({"plus": true, "minus": true}));
    assert_eq!(manin["sprime"].as_array().unwrap().len(), manin["bicrossed_dim"].as_u64().unwrap() as usize);
}

#[test]
fn construct_descend_on_abelian() {
    let out = run(&["construct", "descend", &f("abelian_half.json")]);
    assert_eq!(code(&out), 0);
    let g = &json(&out)["artifacts"][0];
    assert_eq!(g["kind"], "lie_algebra");
    assert_eq!(g["brackets"], serde_json::json!([]));
}

#[test]
fn construct_group_matched_pair() {
    let out = run(&["construct", "group-matched-pair", &f("group_z4.json"), &f("z4_squaring.json")]);
    assert_eq!(code(&out), 0);
    let mp = &json(&out)["artifacts"][0];
    assert_eq!(mp["kind"], "matched_pair_group");
    assert_eq!(mp["g_plus"]["order"], 2);
    assert_eq!(mp["g_minus"]["order"], 4);
}

#[test]
fn decompose_examples() {
    let out = run(&["decompose", "lie", &f("sl2_projection.json")]);
    assert_eq!(code(&out), 0);
    let d = &json(&out)["artifacts"][0];
    assert_eq!((d["g1_dim"].as_u64(), d["g2_dim"].as_u64(), d["quotient_dim"].as_u64()), (Some(3), Some(0), Some(0)));

    let out = run(&["decompose", "lie", &f("abelian_half.json")]);
    assert_eq!(code(&out), 0);
    let d = &json(&out)["artifacts"][0];
    assert_eq!((d["bicrossed_dim"].as_u64(), d["g1_dim"].as_u64(), d["g2_dim"].as_u64()), (Some(3), Some(2), Some(1)));

    let out = run(&["decompose", "group", &f("group_z4.json"), &f("z4_squaring.json")]);
    assert_eq!(code(&out), 0);
    let d = &json(&out)["artifacts"][0];
    assert_eq!(d["quotient_order"], 2);
    assert_eq!(d["bicrossed_order"], 8);
}

#[test]
fn decompose_weight_zero_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("abelian_half.json")).unwrap().replace("\"weight\": \"-1\"", "\"weight\": \"0\"");
    let p = write_temp(&dir, "w0.json", &text);
    let out = run(&["decompose", "lie", &p]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight"));
}

#[test]
fn search_counts() {
    for (file, count) in [("group_z2.json", 2), ("group_z3.json", 3), ("group_z4.json", 4), ("group_z2xz2.json", 16)] {
        let out = run(&["search", &f(file)]);
        assert_eq!(code(&out), 0);
        let census = &json(&out)["artifacts"][0];
        assert_eq!(census["kind"], "rb_census");
        assert_eq!(census["count"], count, "{file}");
        assert_eq!(census["operators"].as_array().unwrap().len(), count);
    }
}

#[test]
fn search_modes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let naive = dir.path().join("naive.json");
    let pruned = dir.path().join("pruned.json");
    for (mode, path) in [("naive", &naive), ("pruned", &pruned)] {
        let out = run(&["search", &f("group_z4.json"), "--mode", mode, "--out", &path.to_string_lossy()]);
        assert_eq!(code(&out), 0);
    }
    let read = |p: &Path| std::fs::read_to_string(p).unwrap();
    // the files differ only in the recorded mode
    assert_eq!(read(&naive).replace("\"mode\": \"naive\"", "\"mode\": \"pruned\""), read(&pruned));
}

#[test]
fn search_bound_from_environment() {
    let out = run_env(&["search", &f("group_d4.json")], &[("RBPAIR_MAX_GROUP_ORDER", "4")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
    let out = run_env(&["search", &f("group_z4.json")], &[("RBPAIR_MAX_GROUP_ORDER", "4")]);
    assert_eq!(code(&out), 0);
}

#[test]
fn search_jobs_are_byte_identical() {
    let one = run(&["search", &f("group_d4.json"), "--verify-all", "--jobs", "1"]);
    let four = run(&["search", &f("group_d4.json"), "--verify-all", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one)["artifacts"][0]["count"], 56);
}

#[test]
fn whole_suite_is_deterministic() {
    let suite: Vec<Vec<String>> = vec![
        vec!["check".into(), "lie".into(), f("sl2.json")],
        vec!["check".into(), "rb-lie".into(), f("sl2_projection.json")],
        vec!["check".into(), "quadratic".into(), f("aff1_cotangent.json")],
        vec!["check".into(), "group".into(), f("group_s3.json")],
        vec!["check".into(), "rb-group".into(), f("group_z4.json"), f("z4_squaring.json")],
        vec!["construct".into(), "matched-pair".into(), f("sl2_projection.json")],
        vec!["construct".into(), "bicrossed".into(), f("abelian_half.json")],
        vec!["construct".into(), "manin".into(), f("aff1_cotangent.json")],
        vec!["construct".into(), "descend".into(), f("sl2_projection.json")],
        vec!["construct".into(), "group-matched-pair".into(), f("group_z4.json"), f("z4_squaring.json")],
        vec!["decompose".into(), "lie".into(), f("abelian_half.json")],
        vec!["decompose".into(), "group".into(), f("group_z4.json"), f("z4_squaring.json")],
        vec!["search".into(), f("group_s3.json"), "--verify-all".into()],
    ];
    let pass = |format: &str| -> Vec<Vec<u8>> {
        suite
            .iter()
            .map(|args| {
                let mut full = vec!["--report", format];
                full.extend(args.iter().map(String::as_str));
                run(&full).stdout
            })
            .collect()
    };
    for format in ["json", "text"] {
        assert_eq!(pass(format), pass(format));
    }
}

#[test]
fn identity_listed_last_is_relabeled() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_temp(&dir, "z3.json", r#"{"kind":"group","order":3,"elements":["a","b","e"],"table":[[1,2,0],[2,0,1],[0,1,2]]}"#);
    let out = run(&["check", "group", &g]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["artifacts"][0], serde_json::json!({"kind": "relabeling", "new_to_old": [2, 1, 0]}));

    // a -> a, b -> e (file indices) is not a homomorphism, hence not Rota-Baxter on Z3
    let inv = write_temp(&dir, "bad.json", r#"{"kind":"group_map","values":[0,2,2]}"#);
    let id = write_temp(&dir, "id.json", r#"{"kind":"group_map","values":[0,1,2]}"#);
    assert_eq!(code(&run(&["check", "rb-group", &g, &inv])), 1);
    assert_eq!(code(&run(&["check", "rb-group", &g, &id])), 0);
    let out = run(&["search", &g]);
    assert_eq!(json(&out)["artifacts"][1]["count"], 3);
}
