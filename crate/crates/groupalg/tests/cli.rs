use std::path::PathBuf;
use std::process::Command;

use groupalg::cli::{run, Outcome};
use groupalg::report::{Report, SCHEMA};

fn fx(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("groupalg").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> Report {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = go(&a);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, out.stdout))
}

fn outcome<'a>(r: &'a Report, name: &str) -> &'a str {
    &r.check(name).unwrap_or_else(|| panic!("no check {}", name)).outcome
}

#[test]
fn o2_graph_is_purely_infinite_simple() {
    let out = go(&["graph", "--in", &fx("o2.dot"), "--verdict"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "verdict: simple_purely_infinite");
}

#[test]
fn loop_graph_is_not_simple() {
    let r = report(&["graph", "--in", &fx("loop.dot"), "--verdict"]);
    assert_eq!(outcome(&r, "verdict"), "not_simple");
    assert_eq!(r.check("verdict").unwrap().holds, Some(false));
}

#[test]
fn acyclic_graph_agrees_with_oracle() {
    for f in ["chain.dot", "two_sinks.dot"] {
        let r = report(&["graph", "--in", &fx(f)]);
        assert_eq!(r.check("oracle_agrees").unwrap().holds, Some(true), "{}", f);
    }
}

#[test]
fn z2_crosscheck() {
    let r = report(&["oracle", "--groupoid", &fx("z2.json"), "--check", "crosscheck"]);
    assert_eq!(r.schema, SCHEMA);
    assert_eq!(r.command, "oracle");
    assert_eq!(r.check("simple").unwrap().holds, Some(false));
    assert_eq!(r.check("topologically_free").unwrap().holds, Some(false));
    assert!(outcome(&r, "crosscheck").starts_with("agreement"));
}

#[test]
fn twisted_klein_is_simple() {
    let r = report(&[
        "oracle",
        "--groupoid",
        &fx("klein.json"),
        "--cocycle",
        &fx("klein_sign.json"),
        "--check",
        "crosscheck",
    ]);
    assert_eq!(r.check("simple").unwrap().holds, Some(true));
    assert_eq!(r.check("diagonal_maximal_abelian").unwrap().holds, Some(false));
    assert!(outcome(&r, "crosscheck").starts_with("agreement"));
}

#[test]
fn trivial_rep_on_pair() {
    let r = report(&["oracle", "--groupoid", &fx("pair2.json"), "--check", "trivialrep"]);
    assert!(r.checks.iter().all(|c| c.holds != Some(false)), "{:?}", r.checks);
}

#[test]
fn validation_failures_exit_one() {
    for args in [
        vec!["sgrp", "--in", "broken_semigroup.json"],
        vec!["oracle", "--groupoid", "broken_groupoid.json"],
        vec!["paction", "--in", "broken_paction.json"],
        vec!["selfsim", "--in", "broken_selfsim.json"],
        vec!["roe", "--in", "bad_support.json"],
    ] {
        let path = fx(args[2]);
        let a: Vec<&str> = args[..2].iter().copied().chain([path.as_str()]).collect();
        let out = go(&a);
        assert_eq!(out.code, 1, "{:?}: {}", args, out.stdout);
        assert!(out.stderr.contains("input failed validation"));
        assert!(out.stdout.contains("witness"));
    }
}

#[test]
fn broken_semigroup_report_lists_violations() {
    let out = go(&["--json", "sgrp", "--in", &fx("broken_semigroup.json")]);
    assert_eq!(out.code, 1);
    let r: Report = serde_json::from_str(&out.stdout).unwrap();
    let c = r.check("semigroup").unwrap();
    assert_eq!(c.holds, Some(false));
    let kinds: Vec<&str> = c
        .detail
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"idempotents_commute"), "{:?}", kinds);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(go(&["bogus"]).code, 2);
    assert_eq!(go(&["graph", "--in", "/nonexistent/graph.dot"]).code, 2);
    let out = go(&["algebra", "--groupoid", &fx("z2.json"), "--op", "rep", "--p", "3"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unsupported p"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "--seed", "7", "algebra", "--groupoid", &fx("pair2.json")];
    let a = go(&args);
    let b = go(&args);
    assert_eq!(a, b);
    let r: Report = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(r.seed, Some(7));
    assert!(r.elapsed_ms.is_none());
    let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn digest_tracks_input() {
    let a = report(&["graph", "--in", &fx("o2.dot")]);
    let b = report(&["graph", "--in", &fx("loop.dot")]);
    assert_eq!(a.input_digest.len(), 64);
    assert_ne!(a.input_digest, b.input_digest);
}

#[test]
fn timing_is_opt_in() {
    let r = report(&["--timing", "graph", "--in", &fx("o2.dot")]);
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn norms_chain_holds_on_random_element() {
    for seed in 0..5 {
        let s = seed.to_string();
        let r = report(&[
            "--seed",
            &s,
            "algebra",
            "--groupoid",
            &fx("klein.json"),
            "--cocycle",
            &fx("klein_sign.json"),
        ]);
        for c in ["chain_l2_le_geometric_le_i", "l1_equals_star_d", "linf_equals_star_r"] {
            assert_eq!(r.check(c).unwrap().holds, Some(true), "seed {} {}", seed, c);
        }
    }
}

#[test]
fn rep_round_trips_through_json() {
    let out = go(&[
        "--json",
        "algebra",
        "--groupoid",
        &fx("z2.json"),
        "--op",
        "rep",
        "--p",
        "inf",
    ]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["p"], "inf");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn semigroup_equivalences() {
    let r = report(&["sgrp", "--in", &fx("two_atoms.json")]);
    for c in [
        "closed_iff_hausdorff",
        "topfree_iff_groupoid_topfree",
        "minimal_iff_groupoid_minimal",
    ] {
        assert_eq!(r.check(c).unwrap().holds, Some(true), "{}", c);
    }
    assert_eq!(r.check("minimal").unwrap().holds, Some(false));
}

#[test]
fn paction_emits_a_valid_groupoid() {
    let out = go(&["paction", "--in", &fx("z2_swap.json"), "--emit-groupoid"]);
    assert_eq!(out.code, 0);
    let g = groupalg::io::groupoid_from_json(&out.stdout).unwrap();
    assert!(groupalg::groupoid::validate(&g).is_ok());
    assert_eq!(g.len(), 4);
    assert_eq!(g.units().len(), 2);
}

#[test]
fn selfsim_odometer_verdict() {
    let r = report(&["--depth", "6", "selfsim", "--in", &fx("odometer.json"), "--verdict"]);
    assert_eq!(r.depth, Some(6));
    assert_eq!(outcome(&r, "essential"), "simple_purely_infinite");
}

#[test]
fn roe_fixtures() {
    let r = report(&["roe", "--in", &fx("full3.json")]);
    assert_eq!(r.check("simple").unwrap().holds, Some(true));
    let r = report(&["roe", "--in", &fx("diag3.json"), "--check", "normbound", "--p", "2"]);
    assert_eq!(r.check("normbound_2").unwrap().holds, Some(true));
}

#[test]
fn corpus_runs_are_clean() {
    for kind in ["groupoids", "graphs", "roe"] {
        let out = go(&["--seed", "1", "corpus", "--kind", kind, "--trials", "10"]);
        assert_eq!(out.code, 0, "{}: {}", kind, out.stdout);
        assert!(!out.stdout.contains(": false"), "{}: {}", kind, out.stdout);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_groupalg");
    let ok = Command::new(bin)
        .args(["graph", "--in", &fx("o2.dot"), "--verdict"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout).trim(),
        "verdict: simple_purely_infinite"
    );
    let bad = Command::new(bin)
        .args(["sgrp", "--in", &fx("broken_semigroup.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("--no-such-flag").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
