use std::process::Command;

use pgcolor_cli::{run_with, EXIT_BUDGET, EXIT_FALSE, EXIT_OK, EXIT_USAGE};

fn pgcolor(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("pgcolor").chain(args.iter().copied());
    let code = run_with(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn builtin_property_e() {
    let (code, out) = pgcolor(&["property-e", "verify", "--q", "2", "--builtin"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "15 spreads, conditions (1)(2)(3) hold");
    let (code, out) = pgcolor(&["property-e", "show", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("P_0^0={{0,5,10},{1,12,13},"));
}

#[test]
fn usage_errors() {
    assert_eq!(pgcolor(&["hyperoval"]).0, EXIT_USAGE);
    assert_eq!(pgcolor(&["space", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(pgcolor(&["field", "--q", "6"]).0, EXIT_USAGE);
    assert_eq!(pgcolor(&["color", "recurse", "--n", "6", "--q", "2"]).0, EXIT_USAGE);
    assert_eq!(pgcolor(&["--help"]).0, EXIT_OK);
}

#[test]
fn recurse_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pg5q3.json");
    let (code, out) = pgcolor(&["color", "recurse", "--n", "5", "--q", "3", "-o", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out) = pgcolor(&["verify", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "121 spreads × 91 lines");
    let (code, _) = pgcolor(&["color", "verify", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn tampered_file_is_not_verified() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q2.json");
    assert_eq!(pgcolor(&["export", "--dataset", "2", "-o", file.to_str().unwrap()]).0, EXIT_OK);
    let (code, out) = pgcolor(&["import", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verified: 15 spreads"));
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, &text[..text.len() - 40]).unwrap();
    let (code, out) = pgcolor(&["verify", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_FALSE);
    assert!(out.starts_with("not verified"));
    assert_eq!(pgcolor(&["import", file.to_str().unwrap()]).0, EXIT_FALSE);
}

#[test]
fn searches_report_exit_codes() {
    let (code, out) = pgcolor(&["parallelism-search", "--n", "3", "--q", "2", "--seed", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "7 spreads × 5 lines");
    let (code, out) = pgcolor(&["spread-search", "--n", "3", "--q", "3", "--profile", "withE"]);
    assert_eq!(code, EXIT_FALSE);
    assert!(out.starts_with("none exists"));
    assert_eq!(pgcolor(&["spread-search", "--n", "3", "--q", "4", "--budget", "3"]).0, EXIT_BUDGET);
    let (code, out) = pgcolor(&["color", "search-pg4", "--q", "3", "--palette", "43"]);
    assert_eq!(code, EXIT_FALSE);
    assert!(out.contains("below the lower bound 44"));
}

#[test]
fn even_recursion_through_certificate_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let (pg4, ipg4, pg6) = (p("pg4.json"), p("ipg4.json"), p("pg6.json"));
    assert_eq!(pgcolor(&["color", "search-pg4", "--q", "2", "--budget", "1000000", "-o", &pg4]).0, EXIT_OK);
    assert_eq!(pgcolor(&["color", "search-pg4", "--q", "2", "--property-r", "--budget", "1000000", "-o", &ipg4]).0, EXIT_OK);
    let (code, out) =
        pgcolor(&["color", "recurse", "--n", "6", "--q", "2", "--pg4-cert", &pg4, "--ipg4-cert", &ipg4, "-o", &pg6]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PG(6,2): 66 colors, audits passed"));
    let (code, out) = pgcolor(&["verify", &pg6]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "proper coloring with 66 colors");
}

#[test]
fn tpg_and_space_reports() {
    let (code, out) = pgcolor(&["tpg", "resolve", "--n", "4", "--q", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("27 parallel classes"));
    let (_, out) = pgcolor(&["space", "--n", "3", "--q", "2", "--model", "product"]);
    assert!(out.contains("lines: 35"));
    let (_, out) = pgcolor(&["field", "--q", "16", "--table"]);
    assert_eq!(out.lines().count(), 17);
}

#[test]
fn budget_comes_from_the_environment() {
    let status = Command::new(env!("CARGO_BIN_EXE_pgcolor"))
        .args(["spread-search", "--n", "3", "--q", "4"])
        .env("PGCOLOR_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_BUDGET));
}
