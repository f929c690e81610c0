//! End-to-end checks of the command-line interface: payloads, formats and
//! exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antichains"))
        .args(args)
        .env_remove("ANTICHAIN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn dedekind_methods_and_formats() {
    assert_eq!(stdout(&["dedekind", "0", "--method", "enumerate"]), "2\n");
    assert_eq!(stdout(&["dedekind", "6", "--method", "bn"]), "7828354\n");
    assert_eq!(stdout(&["dedekind", "5", "--method", "stirling"]), "7581\n");
    assert_eq!(stdout(&["dedekind", "5", "--method", "connected"]), "7581\n");
    assert_eq!(stdout(&["dedekind", "7", "--method", "pcoeff"]), "2414682040998\n");
    assert_eq!(
        stdout(&["--format", "json", "dedekind", "6"]),
        "{\"n\":6,\"method\":\"pcoeff\",\"value\":\"7828354\"}\n"
    );
    assert_eq!(
        stdout(&["--format", "csv", "dedekind", "3"]),
        "n,method,value\n3,enumerate,20\n"
    );
    // --verify runs every feasible pipeline and reports one agreed value.
    assert_eq!(
        stdout(&["--format", "json", "dedekind", "4", "--verify"]),
        "{\"n\":4,\"method\":\"verify\",\"value\":\"168\"}\n"
    );
}

#[test]
fn table_output() {
    let text = stdout(&["table", "--max-n", "4"]);
    assert_eq!(text, "n A B C D\n0 2 2 2 2\n1 3 1 1 1\n2 6 2 1 1\n3 20 9 5 5\n4 168 114 84 76\n");
    let json = stdout(&["--format", "json", "table", "--max-n", "1"]);
    assert_eq!(
        json,
        "{\"rows\":[{\"n\":0,\"a\":\"2\",\"b\":\"2\",\"c\":\"2\",\"d\":\"2\"},\
         {\"n\":1,\"a\":\"3\",\"b\":\"1\",\"c\":\"1\",\"d\":\"1\"}]}\n"
    );
}

#[test]
fn interval_size_payloads() {
    assert_eq!(stdout(&["interval-size", "--n", "3", "{}", "{{1,2,3}}"]), "20\n");
    assert_eq!(
        stdout(&["interval-size", "--n", "3", "{{}}", "{{1,2},{1,3},{2,3}}"]),
        "18\n"
    );
    // Incomparable endpoints size to zero rather than erroring.
    assert_eq!(stdout(&["interval-size", "--n", "3", "{{1,2}}", "{{3}}"]), "0\n");
    assert_eq!(
        stdout(&["interval-size", "--n", "3", "{}", "{{1,2,3}}", "--both-parities"]),
        "even 20\nodd 20\n"
    );
}

#[test]
fn pcoeff_payloads() {
    assert_eq!(stdout(&["pcoeff", "--n", "2", "{}", "{{}}"]), "2\n");
    assert_eq!(stdout(&["pcoeff", "--n", "3", "--k", "3", "{}", "{{}}"]), "16\n");
    // rho1 above rho2 has no admissible assignment.
    assert_eq!(stdout(&["pcoeff", "--n", "2", "{{1,2}}", "{{1}}"]), "0\n");
}

#[test]
fn verify_reports() {
    let text = stdout(&["verify", "3"]);
    for suite in ["lattice", "downset", "duality", "canonical", "sizes", "partitions", "pcoeff"] {
        assert!(text.contains(&format!("{suite}: pass")), "missing {suite} in {text}");
    }
    let one = stdout(&["verify", "4", "--suite", "partitions"]);
    assert!(one.starts_with("partitions: pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&["dedekind", "9"]), 2);
    assert_eq!(exit_code(&["dedekind", "8"]), 2); // missing --allow-long-run
    assert_eq!(exit_code(&["dedekind", "7", "--method", "enumerate"]), 2);
    assert_eq!(exit_code(&["dedekind", "6", "--method", "pcoeff", "--k", "3"]), 2);
    assert_eq!(exit_code(&["table", "--max-n", "8"]), 2);
    assert_eq!(exit_code(&["interval-size", "--n", "3", "{{9}}", "{}"]), 2);
    assert_eq!(exit_code(&["interval-size", "--n", "3", "not-an-antichain", "{}"]), 2);
    assert_eq!(exit_code(&["verify", "6"]), 2);
    assert_eq!(exit_code(&["verify", "3", "--suite", "nonsense"]), 2);
    assert_eq!(exit_code(&["no-such-subcommand"]), 2);
    assert_eq!(exit_code(&["dedekind", "3", "--no-such-flag"]), 2);
}

#[test]
fn diagnostics_stay_off_stdout() {
    let out = run(&["dedekind", "6", "--method", "pcoeff"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "7828354\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("progress:"), "expected progress on stderr, got: {err}");
}
