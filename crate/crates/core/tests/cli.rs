//! Subcommands, exit codes and JSON output of the `sandpile` front end.

use std::process::Command;

use sandpile_groups::cli::{self, run_sweep, sweep_instances, Check, EXIT_OK, EXIT_USAGE};
use sandpile_groups::graphs::Family;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sandpile").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (code, v)
}

fn factors(g: &Value) -> Vec<String> {
    g["invariant_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn group_db_4_3_both_ways() {
    let (code, out, _) = run(&[
        "group", "--family", "db", "--n", "4", "--d", "3", "--method", "both",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("sandpile group (closed form)   Z_4"), "{out}");
    assert!(out.contains("sandpile group (SNF)           Z_4"), "{out}");
    assert!(out.contains("match                          yes"), "{out}");

    let (code, v) = json(&["group", "--family", "db", "--n", "4", "--d", "3", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(factors(&v["sandpile"]["closed"]), ["4"]);
    assert_eq!(factors(&v["sandpile"]["snf"]), ["4"]);
    assert_eq!(v["trees"], "4");
    assert_eq!(v["match"], true);
}

#[test]
fn group_db_3_2() {
    let (code, v) = json(&["group", "--family", "db", "--n", "3", "--d", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert!(factors(&v["sandpile"]["closed"]).is_empty());
    assert_eq!(factors(&v["sand_dune"]["closed"]), ["3"]);
    assert_eq!(factors(&v["sand_dune"]["snf"]), ["3"]);
    assert_eq!(v["trees"], "1");
}

#[test]
fn group_kautz_3_2() {
    let (code, out, _) = run(&[
        "group", "--family", "kautz", "--n", "3", "--d", "2", "--method", "both",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("Kautz(3, 2)"), "{out}");
    assert!(out.contains("Z_3"), "{out}");
    assert!(!out.contains("sand dune"), "{out}");
}

#[test]
fn group_methods_and_ranges() {
    let (code, v) = json(&[
        "group", "--family", "db", "--n", "5", "--d", "1", "--method", "snf", "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(v["sandpile"]["closed"].is_null());
    assert!(v["match"].is_null());

    let (code, _, err) = run(&["group", "--family", "db", "--n", "5", "--d", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("d >= 2"), "{err}");
    assert_eq!(
        run(&["group", "--family", "db", "--n", "1", "--d", "2"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["group", "--family", "dbx", "--n", "4", "--d", "2"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["group", "--family", "db", "--n", "4"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);

    let (code, out, _) = run(&[
        "group", "--family", "kautz", "--n", "12", "--d", "4", "--method", "closed",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("SNF"), "{out}");
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for sub in ["group", "sweep", "circulant", "normal-count", "snf"] {
        assert!(out.contains(sub), "{out}");
    }
}

#[test]
fn sweep_small_grid() {
    let (code, out, _) = run(&["sweep", "--family", "both", "--n-max", "12", "--d-max", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("0 failed"), "{out}");
    assert_eq!(run(&["sweep", "--n-max", "1"]).0, EXIT_USAGE);
    assert_eq!(run(&["sweep", "--d-max", "1"]).0, EXIT_USAGE);
    assert_eq!(run(&["sweep", "--checks", "nonsense"]).0, EXIT_USAGE);
}

#[test]
fn sweep_json_reports() {
    let (code, v) = json(&[
        "sweep", "--family", "db", "--n-max", "8", "--d-max", "3", "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 7 * 2);
    for r in reports {
        assert_eq!(r["instance"]["family"], "db");
        assert_eq!(r["pass"], true);
        for c in r["checks"].as_array().unwrap() {
            assert_eq!(c["pass"], true);
            assert_eq!(c["expected"], c["actual"]);
            assert!(c["runtime_ms"].as_f64().unwrap() >= 0.0);
        }
    }
    let names: Vec<&str> = reports[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(
        names.contains(&"closed_form") && names.contains(&"circulant_fixing_ones"),
        "{names:?}"
    );

    let (_, v) = json(&[
        "sweep",
        "--family",
        "kautz",
        "--n-max",
        "5",
        "--d-max",
        "2",
        "--checks",
        "closed-form,sand-dune",
        "--json",
    ]);
    for r in v.as_array().unwrap() {
        let names: Vec<&str> = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert_eq!(names, ["closed_form"]);
    }
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let checks = [Check::ClosedForm, Check::SandDune, Check::ElementOrders]
        .into_iter()
        .collect();
    let instances = sweep_instances(&[Family::DeBruijn, Family::Kautz], 20, 4);
    let strip = |reports: Vec<cli::VerificationReport>| {
        reports
            .into_iter()
            .map(|r| {
                (
                    r.instance,
                    r.pass,
                    r.checks
                        .into_iter()
                        .map(|c| (c.name, c.expected, c.actual))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Vec<_>>()
    };
    let one = strip(run_sweep(&instances, &checks, 1).unwrap());
    let three = strip(run_sweep(&instances, &checks, 3).unwrap());
    assert_eq!(one, three);
    assert_eq!(one.len(), instances.len());
    assert!(one.iter().zip(&instances).all(|(r, i)| r.0 == *i));
}

#[test]
fn circulant_7_2() {
    let (code, out, _) = run(&["circulant", "--n", "7", "--p", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("C(7, 2)                  Z_7^2"), "{out}");
    assert!(out.contains("C'(7, 2)                 Z_7^2"), "{out}");
    assert!(out.contains("C'(7, 2)/<x>             Z_7"), "{out}");
    assert!(
        out.contains("Σ(7, 2)                  Z_7^2  match yes"),
        "{out}"
    );
    assert!(
        out.contains("S(7, 2)                  Z_7  match yes"),
        "{out}"
    );

    let (code, v) = json(&["circulant", "--n", "7", "--p", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(factors(&v["C_prime"]), ["7", "7"]);
    assert_eq!(factors(&v["quotient_by_shift"]), ["7"]);
    assert_eq!(v["normal_elements"], "49");
    assert_eq!(v["match"]["quotient_vs_sandpile"], true);
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn circulant_cap_and_errors() {
    let (code, v) = json(&[
        "circulant",
        "--n",
        "12",
        "--p",
        "3",
        "--brute-cap",
        "100",
        "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(v["quotient_by_shift"].is_null());
    assert!(v["match"]["quotient_vs_sandpile"].is_null());
    assert_eq!(v["match"]["C_prime_vs_sand_dune"], true);

    let (code, _, err) = run(&["circulant", "--n", "6", "--p", "4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not prime"), "{err}");
    assert_eq!(run(&["circulant", "--n", "0", "--p", "2"]).0, EXIT_USAGE);
}

#[test]
fn normal_count() {
    let (code, out, _) = run(&["normal-count", "--p", "2", "--n", "3", "--brute"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "3 (verified by enumeration)");
    let (code, v) = json(&["normal-count", "--p", "2", "--n", "7", "--brute", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["normal_elements"], "49");
    assert_eq!(v["brute_force"], "49");
    let (code, out, _) = run(&["normal-count", "--p", "3", "--n", "40"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim().parse::<num_bigint::BigUint>().is_ok(), "{out}");
    assert_eq!(
        run(&[
            "normal-count",
            "--p",
            "2",
            "--n",
            "30",
            "--brute",
            "--brute-cap",
            "1024"
        ])
        .0,
        EXIT_USAGE
    );
    assert_eq!(run(&["normal-count", "--p", "9", "--n", "3"]).0, EXIT_USAGE);
}

#[test]
fn snf_file() {
    let dir = std::env::temp_dir().join(format!("sandpile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("lap.txt");
    std::fs::write(&good, "3 3\n2 0 -1\n0 2 -1\n-1 -1 2\n").unwrap();
    let (code, out, _) = run(&["snf", "--input", good.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("1 1 4"));
    assert!(out.contains("finite part: Z_4"), "{out}");

    let rank_deficient = dir.join("rd.txt");
    std::fs::write(&rank_deficient, "2 3\n2 4 6\n1 2 3\n").unwrap();
    let (code, v) = json(&["snf", "--input", rank_deficient.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["diagonal"], serde_json::json!(["1", "0"]));
    assert_eq!(v["group"]["free_rank"], 2);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2 2\n1 2\n3 four\n").unwrap();
    let (code, _, err) = run(&["snf", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = run(&["snf", "--input", dir.join("missing.txt").to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes_and_env_cap() {
    let bin = env!("CARGO_BIN_EXE_sandpile");
    let out = Command::new(bin)
        .args(["group", "--family", "db", "--n", "4", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("DB(4, 3)"));
    let status = Command::new(bin)
        .args(["sweep", "--n-max", "1"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_USAGE));

    let out = Command::new(bin)
        .args(["circulant", "--n", "10", "--p", "2", "--json"])
        .env(cli::BRUTE_CAP_ENV, "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["quotient_by_shift"].is_null());

    let out = Command::new(bin)
        .args(["normal-count", "--p", "2", "--n", "4", "--brute"])
        .env(cli::BRUTE_CAP_ENV, "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
