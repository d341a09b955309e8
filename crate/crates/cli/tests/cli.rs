use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn finlang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finlang")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("finlang-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn count_reports_strata_and_conventions() {
    let out = finlang(&["count", "--group", "sl2", "--q", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["total"], 7);
    assert_eq!(v["pipeline"], "spectral");
    assert_eq!(v["spec_echo"]["type"], "A1");
    assert_eq!(v["conventions"]["whittaker_torsor_size"], 2);
    let counts: Vec<u64> = v["strata"].as_array().unwrap().iter().map(|s| s["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 1, 4, 1]);
}

#[test]
fn both_pipelines_agree_on_configs() {
    for (file, total) in [("gu3.toml", 24), ("sl2_over_f9.toml", 13)] {
        let out = finlang(&["count", "--config", &config(file), "--pipeline", "both"]);
        assert!(out.status.success(), "{file}");
        let v = json(&out);
        assert_eq!(v["spectral_total"], total, "{file}");
        assert_eq!(v["stratified_total"], total, "{file}");
        assert_eq!(v["pipelines_agree"], true, "{file}");
    }
}

#[test]
fn disconnected_group_defaults_to_stratified() {
    let out = finlang(&["count", "--config", &config("o2.toml")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pipeline"], "stratified");
    assert_eq!(v["total"], 4);
    assert_eq!(v["spec_echo"]["connected"], false);
    let spectral = finlang(&["count", "--config", &config("o2.toml"), "--pipeline", "spectral"]);
    assert_eq!(spectral.status.code(), Some(3));
}

#[test]
fn q_on_the_command_line_overrides_the_config() {
    let out = finlang(&["count", "--config", &config("o2.toml"), "--q", "5"]);
    assert_eq!(json(&out)["q"], 5);
    assert_eq!(json(&out)["total"], 5);
}

#[test]
fn compare_matches_oracle() {
    let out = finlang(&["compare", "--group", "pgl2", "--q", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["oracle_total"], 5);
    assert_eq!(v["match"], true);
}

#[test]
fn seeds_do_not_change_output() {
    let base = finlang(&["count", "--group", "gl2", "--q", "3", "--pipeline", "both"]).stdout;
    for seed in ["1", "17", "12345"] {
        let out = finlang(&["count", "--group", "gl2", "--q", "3", "--pipeline", "both", "--seed", seed]);
        assert_eq!(out.stdout, base, "seed {seed}");
    }
}

#[test]
fn json_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("finlang-cli-{}-report.json", std::process::id()));
    let path = path.to_string_lossy().into_owned();
    let out = finlang(&["count", "--group", "torus1", "--q", "4", "--json", &path]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 6] = [
        (&["count", "--group", "sl7", "--q", "3"], 2),
        (&["count", "--group", "sl2"], 2),
        (&["count", "--config", "/nonexistent/finlang.toml"], 2),
        (&["count", "--group", "so5", "--q", "2"], 3),
        (&["compare", "--group", "g2", "--q", "5"], 3),
        (&["cells", "E8"], 3),
    ];
    for (args, code) in cases {
        assert_eq!(finlang(args).status.code(), Some(code), "{args:?}");
    }
    let bad = scratch("bad.toml", "type = \"A1\"\nq = 3\ncolour = \"red\"\n");
    assert_eq!(finlang(&["count", "--config", &bad]).status.code(), Some(2));
    let not_auto = scratch("notauto.toml", "type = \"T1\"\nq = 3\ncomponent_group = [[[2]]]\n");
    assert_eq!(finlang(&["count", "--config", &not_auto]).status.code(), Some(2));
    let infinite = scratch("infinite.toml", "type = \"T2\"\nq = 3\ncomponent_group = [[[2, 1], [1, 1]]]\n");
    assert_eq!(finlang(&["count", "--config", &infinite]).status.code(), Some(2));
}

#[test]
fn cells_of_a2() {
    let v = json(&finlang(&["cells", "A2"]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["left_cells"], 4);
    let sizes: Vec<u64> = v["two_sided"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [1, 4, 1]);
    assert_eq!(v["two_sided"][0]["elements"][0], "e");
}

#[test]
fn tables_of_g2() {
    let v = json(&finlang(&["tables", "G2"]));
    let groups: Vec<&str> =
        v["family_groups"].as_array().unwrap().iter().map(|f| f["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["1", "S3", "1"]);
    assert_eq!(v["special_classes"].as_array().unwrap().len(), 3);
}

#[test]
fn oracle_subcommand() {
    let v = json(&finlang(&["oracle", "--group", "sl2", "--q", "3"]));
    assert_eq!(v["order"], 24);
    assert_eq!(v["class_count"], 7);
}
