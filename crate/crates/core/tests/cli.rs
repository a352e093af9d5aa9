use std::process::{Command, Output};

use serde_json::Value;

fn extremal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extremal"))
        .args(args)
        .env_remove("EXTREMAL_THREADS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn first(out: &Output) -> Value {
    report(out)["results"][0].clone()
}

#[test]
fn even_integers_have_density_one_half() {
    let r = first(&extremal(&["eval", "--group", "Z", "--set", "residues(2;0)", "--quantity", "is12"]));
    assert_eq!(r["kind"], "exact");
    assert_eq!(r["value"], "1/2");
    assert_eq!(r["method"], "quotient");
    assert_eq!(r["group"], "Z");
    assert_eq!(r["set"], "residues(2;0)");
}

#[test]
fn finite_collapse_on_cyclic_five() {
    let d = report(&extremal(&["check", "finite-collapse", "--group", "Zmod(5)"]));
    assert_eq!(d["meta"]["cases"], 32);
    assert_eq!(d["meta"]["violations"], 0);
    assert_eq!(d["meta"]["status"], "pass");
    assert!(d["meta"].get("counterexample").is_none());
    let results = d["results"].as_array().unwrap();
    assert!(results.iter().all(|r| r["value"] == "pass"));
    assert_eq!(results[31]["witness"]["is12"], "1/1");
}

#[test]
fn empty_set_is_null() {
    let r = first(&extremal(&["eval", "--group", "Zmod(4)", "--set", "{}", "--quantity", "iss213"]));
    assert_eq!(r["value"], "0/1");
    assert_eq!(r["kind"], "exact");
}

#[test]
fn reports_echo_configuration() {
    let d = report(&extremal(&["eval", "--group", "Zmod( 6 )", "--set", "{3,1}", "--quantity", "us12", "--kmax", "3"]));
    let meta = &d["meta"];
    assert_eq!(meta["tool"], "extremal");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["config"]["kmax"], 3);
    assert_eq!(meta["config"]["seed"], 0);
    assert_eq!(meta["config"]["format"], "json");
    assert_eq!(d["results"][0]["set"], "{1,3}");
    // uniform measures on at most three points cannot do better than two points
    assert_eq!(d["results"][0]["value"], "1/2");
    assert!(d["results"][0].get("runtime_ms").is_none());
    let timed = report(&extremal(&["eval", "--group", "Zmod(6)", "--set", "{1}", "--quantity", "is12", "--timings"]));
    assert!(timed["results"][0]["runtime_ms"].is_u64());
}

#[test]
fn witnesses_are_reported() {
    let r = first(&extremal(&["eval", "--group", "Zmod(3)", "--set", "{0}", "--quantity", "is12"]));
    let mu = r["witness"]["measure"].as_array().unwrap();
    assert_eq!(mu.len(), 3);
    assert!(mu.iter().all(|p| p[1] == "1/3"));
    let r = first(&extremal(&["eval", "--group", "Zmod(6)", "--set", "{0,1}", "--quantity", "cov"]));
    assert_eq!(r["value"], 3);
    assert_eq!(r["witness"].as_array().unwrap().len(), 3);
    let r = first(&extremal(&["eval", "--group", "Zmod(6)", "--set", "{0,3}", "--quantity", "sis123"]));
    assert_eq!(r["kind"], "interval");
    assert_eq!(r["hi"], "1/3");
}

#[test]
fn infinite_groups_need_windows() {
    let out = extremal(&["eval", "--group", "Free(2)", "--set", "prefix(a,A)", "--quantity", "pack"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window"));
    let r = first(&extremal(&[
        "eval", "--group", "Free(2)", "--set", "prefix(a,A)", "--quantity", "is12", "--support", "{1,B,BB,BBB,BBBB,BBBBB}",
    ]));
    assert_eq!(r["kind"], "upper");
    assert_eq!(r["value"], "1/6");
}

#[test]
fn exact_mode_rejects_bounds() {
    let args = ["eval", "--group", "Free(2)", "--set", "prefix(a,A)", "--quantity", "pack", "--radius", "3"];
    assert!(extremal(&args).status.success());
    let mut strict = args.to_vec();
    strict.extend(["--mode", "exact"]);
    let out = extremal(&strict);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mode exact"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["eval", "--group", "Zmod(4)", "--set", "{4}", "--quantity", "is12"],
        vec!["eval", "--group", "Sym(9)", "--set", "{}", "--quantity", "is12"],
        vec!["eval", "--group", "Zmod(4)", "--set", "{0}", "--quantity", "nope"],
        vec!["check", "kelley-duality"],
        vec!["check", "pack-cov", "--group", "Zmod(12)"],
        vec!["partition", "--group", "Zmod(4)", "--cell", "{0,1}", "--cell", "{1,2,3}"],
        vec!["--threads", "0", "check", "folner"],
    ] {
        let out = extremal(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = extremal(&["eval", "--group", "Zmod(4)", "--set", "{0} |", "--quantity", "is12"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("1:6") && msg.contains("expected a set"), "{msg}");
}

#[test]
fn partitions_are_analyzed() {
    let d = report(&extremal(&["partition", "--group", "Sym(3)", "--cell", "{[0,1,2],[1,2,0],[2,0,1]}", "--cell", "!{[0,1,2],[1,2,0],[2,0,1]}"]));
    let w = &d["results"][0]["witness"];
    assert_eq!(d["results"][0]["value"], "pass");
    assert_eq!(w["brs_bound"], 2);
    assert_eq!(w["cells"][0]["conjugation_invariant"], true);
    assert_eq!(w["invariant_cells_bound"], true);
    assert_eq!(w["minimal_cover"]["value"], 2);
}

#[test]
fn homothety_and_representability() {
    let r = first(&extremal(&["witness", "homothety", "--group", "Zmod(5)", "--set", "{0,2,4}", "--points", "{0,1}"]));
    assert_eq!(r["kind"], "found");
    assert_eq!(r["witness"]["degree"], 1);
    let r = first(&extremal(&[
        "witness", "representable", "--group", "Z", "--set", "residues(3;0,1)", "--points", "{0,1}", "--radius", "4",
    ]));
    assert_eq!(r["kind"], "found");
    assert_eq!(r["witness"], "0");
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_extremal"))
        .args(["check", "ergo-sum", "--group", "Zmod(3)"])
        .env("EXTREMAL_THREADS", "2")
        .output()
        .unwrap();
    let d = report(&out);
    assert_eq!(d["meta"]["config"]["threads"], 2);
    assert_eq!(d["meta"]["cases"], 64);
}

#[test]
fn tsv_mirrors_json() {
    let args = ["check", "hierarchy", "--group", "Zmod(2)"];
    let json = report(&extremal(&args));
    let mut t = args.to_vec();
    t.extend(["--format", "tsv"]);
    let out = extremal(&t);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next().unwrap(), "quantity\tgroup\tset\tkind\tvalue\tlo\thi\tmethod\twitness");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), json["results"].as_array().unwrap().len());
    for (row, rec) in rows.iter().zip(json["results"].as_array().unwrap()) {
        assert_eq!(row[2], rec["set"].as_str().unwrap());
        assert_eq!(row[4], rec["value"].as_str().unwrap());
    }
}

#[test]
fn help_exits_zero() {
    let out = extremal(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("eval"));
}
