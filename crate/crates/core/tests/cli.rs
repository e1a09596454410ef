//! End-to-end checks of the command-line surface: subcommand wiring, exit
//! statuses, and byte-identical output across repeated invocations.

use pmtk::cli::cli_main;
use pmtk::fixtures;
use pmtk::textio::render_tm_file;
use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let code = cli_main(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("ascii output"),
        String::from_utf8(err).expect("ascii output"),
    )
}

/// Writes a machine file into the target-backed temp dir and returns its path.
fn machine_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("pmtk-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp dir is writable");
    path
}

#[test]
fn validate_accepts_the_fixture_and_rejects_a_mutation() {
    let good = machine_file("good.tm", &render_tm_file(&fixtures::seek_blank()));
    let (code, out, _) = run(&["tm", "validate", good.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "ok\n"));

    let broken = render_tm_file(&fixtures::seek_blank())
        .replace("delta: s |- -> s |- R", "delta: s |- -> s |- L");
    let bad = machine_file("bad.tm", &broken);
    let (code, out, _) = run(&["tm", "validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("violation: left move on end marker at (s,|-)"));
}

#[test]
fn run_prints_the_trace_and_verdict() {
    let file = machine_file("run.tm", &render_tm_file(&fixtures::seek_blank()));
    let (code, out, _) = run(&[
        "tm",
        "run",
        file.to_str().unwrap(),
        "--input",
        "a",
        "--trace",
    ]);
    assert_eq!(code, 0);
    let expected = "\
t=1 q=s n=1 tape=|-a
t=2 q=s n=2 tape=|-a
t=3 q=s n=3 tape=|-a
t=4 q=acc n=4 tape=|-a
verdict=accepted t=4
";
    assert_eq!(out, expected);

    let (code, out, _) = run(&[
        "tm",
        "run",
        file.to_str().unwrap(),
        "--input",
        "a",
        "--max-steps",
        "2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(out, "verdict=running\n");
}

#[test]
fn compile_prints_the_translated_instance() {
    let file = machine_file("compile.tm", &render_tm_file(&fixtures::seek_blank()));
    let (code, out, _) = run(&[
        "pm",
        "compile",
        file.to_str().unwrap(),
        "--construction",
        "t1",
        "--input",
        "a",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "t=1 g=(s,s,-1,1,2) p=[(1,|-);(2,a)]\n");

    let (code, out, _) = run(&[
        "pm",
        "compile",
        file.to_str().unwrap(),
        "--construction",
        "t2",
        "--input",
        "a",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "t=1 g=(s,s) p=[(|-,1,0,-1,-1,0);(a,-1,0,-1,-1,0)]\n");
}

#[test]
fn cosim_reports_ok_and_exits_zero() {
    let file = machine_file("cosim.tm", &render_tm_file(&fixtures::seek_blank()));
    for construction in ["t1", "t2"] {
        let (code, out, _) = run(&[
            "pm",
            "cosim",
            file.to_str().unwrap(),
            "--construction",
            construction,
            "--input",
            "a",
        ]);
        assert_eq!(code, 0, "{construction}");
        assert!(out.ends_with("COSIM ok\n"), "{construction}: {out}");
        assert!(out.starts_with("TM t=1 q=s n=1 tape=|-a\n"));
    }
}

#[test]
fn check_passes_for_both_constructions() {
    let file = machine_file("check.tm", &render_tm_file(&fixtures::seek_blank()));
    let (code, out, _) = run(&[
        "pm",
        "check",
        file.to_str().unwrap(),
        "--construction",
        "t1",
        "--samples",
        "2000",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("profile=t1"));
    assert!(out.ends_with("verdict=pass\n"));

    let (code, out, _) = run(&[
        "pm",
        "check",
        file.to_str().unwrap(),
        "--construction",
        "t2",
        "--samples",
        "2000",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("restriction 2 pull-interaction: pass"));
}

#[test]
fn repeated_invocations_are_byte_identical() {
    let file = machine_file("repeat.tm", &render_tm_file(&fixtures::even_palindrome()));
    let args = [
        "pm",
        "cosim",
        file.to_str().unwrap(),
        "--construction",
        "t2",
        "--input",
        "abba",
    ];
    let (code_a, out_a, err_a) = run(&args);
    let (code_b, out_b, err_b) = run(&args);
    assert_eq!(code_a, code_b);
    assert_eq!(out_a, out_b);
    assert_eq!(err_a, err_b);

    let check_args = [
        "pm",
        "check",
        file.to_str().unwrap(),
        "--construction",
        "t2",
        "--samples",
        "1000",
        "--seed",
        "7",
    ];
    let (_, out_a, _) = run(&check_args);
    let (_, out_b, _) = run(&check_args);
    assert_eq!(out_a, out_b);
}

#[test]
fn parse_errors_exit_with_two() {
    let file = machine_file("broken.tm", "states: s acc rej\nstart s\n");
    let (code, _, err) = run(&["tm", "validate", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("parse errors"));

    let (code, _, err) = run(&["tm", "validate", "/nonexistent/machine.tm"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}

#[test]
fn decide_halt_matches_the_documented_lines() {
    let (code, out, _) = run(&["pm", "decide-halt", "--fixture", "counter3"]);
    assert_eq!((code, out.as_str()), (0, "verdict=loops mu=0 lambda=3\n"));

    let (code, out, _) = run(&["pm", "decide-halt", "--fixture", "counter3-stop"]);
    assert_eq!((code, out.as_str()), (0, "verdict=halts t=2\n"));

    let (code, out, _) = run(&["pm", "decide-halt", "--fixture", "counter3", "--cap", "2"]);
    assert_eq!((code, out.as_str()), (1, "verdict=exhausted visited=2\n"));
}
