//! End-to-end checks of the command surface and the exit-code table:
//! 0 success / equal / yes, 1 negative, 2 outside the fragment, 3 input
//! error.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intermute"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn synth_emits_the_intermutation_head() {
    let out = run(&["synth", "-x", "(p&q)|(r&s)", "-y", "(p|r)&(q|s)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "ck{p,q,r,s}");
}

#[test]
fn legit_reverse_pair_exits_one() {
    let out = run(&["legit", "-x", "(p|r)&(q|s)", "-y", "(p&q)|(r&s)"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("not legitimate"));
}

#[test]
fn legit_witness_prints_both_maps() {
    let out = run(&["legit", "-x", "(p&q)|(r&s)", "-y", "(p|r)&(q|s)"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("merge map"));
    assert!(text.contains("split map"));
    let out = run(&["--json", "legit", "-x", "(p&q)|(r&s)", "-y", "(p|r)&(q|s)"]);
    assert!(stdout(&out).contains("\"merge\""));
}

#[test]
fn eval_mat_prints_the_permutation_rows() {
    let out = run(&["eval", "--mat", "-a", "ck{p,q,r,s}"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 1\n");
}

#[test]
fn eval_rel_json_matches_the_documented_serialization() {
    let out = run(&["--json", "eval", "--rel", "-a", "ck{p,q,r,s}"]);
    assert_eq!(
        stdout(&out).trim(),
        "{\"sourceSize\":4,\"targetSize\":4,\"pairs\":[[0,0],[1,2],[2,1],[3,3]]}"
    );
}

#[test]
fn parse_round_trips_and_rejects() {
    let out = run(&["parse", "-f", "p&(q|r)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "p&(q|r)");

    let out = run(&["parse", "-f", "p&&q"]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("parse error at"), "{err}");

    let out = run(&["parse", "-a", "ck{p,q,r,s} . id{(p&q)|(r&s)}"]);
    assert_eq!(code(&out), 0);

    // well-formed syntax but ill-typed composition is an input error
    let out = run(&["parse", "-a", "hd+{p} . ck{p,q,r,s}"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn nf_and_tblr() {
    let out = run(&["nf", "-f", "(p|F)&(T&q)"]);
    assert_eq!(stdout(&out).trim(), "p&q");

    let out = run(&["tblr", "-f", "p1&q1&r|((s&t|u&q2)&(v&p2|w))"]);
    let text = stdout(&out);
    assert!(text.contains("T: p1 q1 r"));
    assert!(text.contains("B: u q2 w"));
    assert!(text.contains("L: p1 s u"));
    assert!(text.contains("R: r p2 w"));
}

#[test]
fn equal_exit_codes_follow_the_verdict() {
    let out = run(&[
        "equal", "--theory", "SCk", "-a", "hc{p,p}", "-a", "id{p&p}",
    ]);
    assert_eq!(code(&out), 1);

    let out = run(&[
        "equal", "--theory", "ACk", "-a", "ck{p,q,r,s}", "-a", "ck{p,q,r,s}",
    ]);
    assert_eq!(code(&out), 0);

    let out = run(&["equal", "--theory", "ACkU", "-a", "id{p&F}", "-a", "id{p&F}"]);
    assert_eq!(code(&out), 2);

    // generator outside the theory is an input error
    let out = run(&["equal", "--theory", "A", "-a", "ck{p,q,r,s}", "-a", "ck{p,q,r,s}"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn exists_with_oracle_agreement() {
    let out = run(&[
        "exists", "--theory", "ACk", "--oracle", "-x", "(p&q)|(r&s)", "-y", "(p|r)&(q|s)",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("oracle: yes"));
    assert!(text.contains("yes"));

    let out = run(&["exists", "--theory", "ACk", "-x", "(p|r)&(q|s)", "-y", "(p&q)|(r&s)"]);
    assert_eq!(code(&out), 1);

    let out = run(&["exists", "--theory", "NA", "-x", "p&T", "-y", "p"]);
    assert_eq!(code(&out), 0);

    let out = run(&["exists", "--theory", "S", "-x", "p&q", "-y", "p|q"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn develop_prints_one_factor_per_line() {
    let out = run(&["develop", "-a", "ck{p,q,r,s} & ck{t,u,v,w}"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("ck{p,q,r,s}"));
    assert!(lines[1].contains("ck{t,u,v,w}"));
}

#[test]
fn axioms_filtered_run_passes() {
    let out = run(&["axioms", "--theory", "A", "--trials", "8", "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("pass pentagon-conj"));
    assert!(text.contains("pass pentagon-disj"));
    assert!(!text.contains("hexagon"), "symmetry schemas leak into A");
}

#[test]
fn reduce_lattice_and_restrict() {
    let out = run(&["reduce-lattice", "-a", "hk1{p,p} . hw{p}"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "id{p}");

    let out = run(&["reduce-lattice", "-a", "hk1{p,q}"]);
    assert_eq!(code(&out), 1);

    let out = run(&["restrict", "-a", "ck{p,q,r,s}", "-P", "r,s"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "id{p&q}");

    let out = run(&["restrict", "-a", "ck{p,q,r,s}", "-P", "p"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn grid_styles() {
    let out = run(&["grid", "-f", "(p&q)|(r&s)"]);
    let text = stdout(&out);
    assert!(text.contains('┌') && text.contains('┘'));
    for p in ["p", "q", "r", "s"] {
        assert!(text.contains(p));
    }

    let out = run(&["grid", "-f", "(p&q)|(r&s)", "--style", "svg"]);
    let text = stdout(&out);
    assert!(text.starts_with("<svg"));
    assert!(text.contains("<line"));

    let out = run(&["--json", "grid", "-f", "p&q"]);
    let text = stdout(&out);
    assert!(text.contains("\"segments\""));
    assert!(text.contains("\"1/2\""));

    // units are an input error for grids
    let out = run(&["grid", "-f", "p&T"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn purity_scan_reports() {
    let out = run(&["purity", "--theory", "ACkU", "-a", "kappa"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("letterless"));
}
