use std::process::Command;

use kmon::{run, Outcome, EXIT_PARSE, EXIT_REJECTED, EXIT_USAGE};

fn kmon(args: &[&str]) -> Outcome {
    run(std::iter::once("kmon").chain(args.iter().copied()))
}

#[test]
fn documented_invocations() {
    let member = kmon(&[
        "member",
        "--monoid",
        "dio n=2 { eq: x0 = x1; }",
        "--vec",
        "(aleph0, aleph0)",
    ]);
    assert_eq!(member.code, 0, "{}", member.stdout);

    let free = kmon(&["realizable2", "--pres", "twogen { }"]);
    assert_eq!(free.code, 0);
    assert!(free.stdout.contains("finite-shift [i=1, j=2]: YES"), "{}", free.stdout);

    let mixed = kmon(&[
        "braid-find",
        "--monoid",
        "N0",
        "--x",
        "fam {1*aleph0}",
        "--y",
        "fam {3*1}",
    ]);
    assert_eq!(mixed.code, 1);
    assert!(mixed
        .stdout
        .contains("finite support cannot be braided with one of infinite support"));
}

#[test]
fn unknown_verdicts_exit_with_two() {
    let out = kmon(&[
        "braid-find",
        "--monoid",
        "twogen { rel: 2*X1 = 1*X2; }",
        "--x",
        "fam { (1,0) * aleph0 }",
        "--y",
        "fam { (0,1) * aleph0 }",
    ]);
    assert_eq!(out.code, 2, "{}", out.stdout);
    assert!(out.stdout.contains("verdict: UNKNOWN"));
}

#[test]
fn error_classes() {
    assert_eq!(kmon(&["member"]).code, EXIT_USAGE);
    assert_eq!(
        kmon(&["--format", "xml", "member", "--monoid", "N0", "--vec", "(1)"]).code,
        EXIT_USAGE
    );
    let parse = kmon(&["member", "--monoid", "dio n=2 { eq: x0 = ; }", "--vec", "(1, 1)"]);
    assert_eq!(parse.code, EXIT_PARSE);
    assert!(parse.stdout.contains("line 1, column 20"), "{}", parse.stdout);
    let finite_kappa = kmon(&["--kappa", "5", "member", "--monoid", "N0", "--vec", "(1)"]);
    assert_eq!(finite_kappa.code, EXIT_REJECTED);
    let not_member = kmon(&["decompose", "--monoid", "dio n=2 { eq: x0 = x1; }", "--vec", "(1, 2)"]);
    assert_eq!(not_member.code, EXIT_REJECTED);
}

#[test]
fn json_reports_parse() {
    for args in [
        &["--format", "json", "realizable2", "--pres", "twogen { }"][..],
        &["--format", "json", "axioms", "--monoid", "qline", "--samples", "50"][..],
        &["--format", "json", "member", "--monoid", "bogus", "--vec", "(1)"][..],
    ] {
        let out = kmon(args);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).expect("valid json");
        assert!(v.get("command").is_some());
        if out.code < EXIT_USAGE {
            assert!(v["budget"]["used"].is_u64());
        } else {
            assert!(v["error"].is_string());
        }
    }
}

#[test]
fn arguments_may_come_from_files() {
    let dir = std::env::temp_dir().join(format!("kmon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("cert.txt");
    std::fs::write(
        &cert,
        "PREFIX\nB i={} j={} u=(0) v'=(0)\nCYCLE\nB i={(1)*2} j={(2)} u=(2) v'=(0)\n",
    )
    .unwrap();
    let out = kmon(&[
        "braid-check",
        "--monoid",
        "N0",
        "--x",
        "fam {1*aleph0}",
        "--y",
        "fam {2*aleph0}",
        "--cert",
        &format!("@{}", cert.display()),
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(kmon(&["realizable2", "--pres", "@/nonexistent/kmon"]).code == EXIT_PARSE);
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let args = [
        "--seed",
        "11",
        "axioms",
        "--monoid",
        "dedekind(G=2)",
        "--samples",
        "200",
    ];
    assert_eq!(kmon(&args), kmon(&args));
}

#[test]
fn binary_exit_status_matches_verdict() {
    let status = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_kmon"))
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["member", "--monoid", "N0^2", "--vec", "(1, aleph0)"]), Some(0));
    assert_eq!(
        status(&["member", "--monoid", "dio n=2 { eq: x0 = x1; }", "--vec", "(1, 2)"]),
        Some(1)
    );
    assert_eq!(status(&["frobnicate"]), Some(EXIT_USAGE));
}
