//! Drive every documented example in the fixtures file and hold the exit
//! codes to the table: 0 positive, 1 negative, 2 outside the fragment,
//! 3 input error.

use std::process::Command;

/// Whitespace-separated arguments with double-quoted values allowed.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut pending = false;
    for c in s.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                pending = true;
            }
            c if c.is_whitespace() && !quoted => {
                if pending {
                    out.push(std::mem::take(&mut cur));
                    pending = false;
                }
            }
            c => {
                cur.push(c);
                pending = true;
            }
        }
    }
    if pending {
        out.push(cur);
    }
    out
}

struct Case {
    args: Vec<String>,
    code: i32,
    lines: Vec<String>,
}

fn parse_cases(text: &str) -> Vec<Case> {
    let mut cases = Vec::new();
    let mut current: Option<Case> = None;
    for line in text.lines() {
        let line = line.trim_end();
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("$ ") {
            if let Some(done) = current.take() {
                cases.push(done);
            }
            current = Some(Case {
                args: split_args(rest),
                code: 0,
                lines: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("? ") {
            current.as_mut().expect("code before command").code = rest.trim().parse().unwrap();
        } else if let Some(rest) = line.strip_prefix("| ") {
            current.as_mut().expect("line before command").lines.push(rest.to_string());
        } else if line == "$" || line == "?" || line == "|" {
            panic!("malformed fixture line: {line}");
        }
    }
    if let Some(done) = current.take() {
        cases.push(done);
    }
    cases
}

#[test]
fn documented_examples_hold_their_exit_codes() {
    let text = include_str!("fixtures/commands.txt");
    let cases = parse_cases(text);
    assert!(cases.len() >= 20, "fixture file lost its cases");
    for case in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_intermute"))
            .args(&case.args)
            .output()
            .expect("binary runs");
        let code = out.status.code().expect("exit code");
        assert_eq!(
            code,
            case.code,
            "exit code of `{}` (stderr: {})",
            case.args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        );
        let stdout = String::from_utf8_lossy(&out.stdout);
        let mut produced = stdout.lines();
        for want in &case.lines {
            let got = loop {
                match produced.next() {
                    Some(l) if l.starts_with(want.as_str()) => break Some(l),
                    Some(_) => continue,
                    None => break None,
                }
            };
            assert!(
                got.is_some(),
                "`{}` missing output line `{want}` in:\n{stdout}",
                case.args.join(" ")
            );
        }
    }
}
