use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn paper_norms() -> String {
    root().join("norms/paper.json").display().to_string()
}

fn ltlnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltlnorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const PARADOX: &str = "{A,D};{B}|{}";

#[test]
fn eval_verdicts_and_exit_codes() {
    let o = ltlnorm(&["eval", "-f", "F B", "-t", PARADOX]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true\n", Some(0)));
    let o = ltlnorm(&["eval", "-f", "G !A", "-t", PARADOX]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("false\n", Some(1)));
    let o = ltlnorm(&["eval", "-f", "F(!C & D)", "-t", PARADOX]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true\n", Some(0)));
    assert!(stderr(&o).contains("atom C never occurs"));
}

#[test]
fn eval_position_and_trace_file() {
    let o = ltlnorm(&[
        "eval",
        "-f",
        "B",
        "--trace-file",
        &fixture("paradox.trace"),
        "--pos",
        "1",
    ]);
    assert_eq!(stdout(&o), "true\n");
    let o = ltlnorm(&["eval", "-f", "B", "-t", PARADOX, "--pos", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_parse_errors_exit_2() {
    let o = ltlnorm(&["eval", "-f", "(A & B", "-t", PARADOX]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unclosed"));
    let o = ltlnorm(&["eval", "-f", "A", "-t", "{A} | "]);
    assert_eq!(o.status.code(), Some(2));
    let o = ltlnorm(&["eval", "-f", "A"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_examples() {
    let norms = paper_norms();
    for (trace, label, code) in [
        ("|{C}", "FULLY_COMPLIANT\n", 0),
        ("{A}|{B}", "WEAKLY_COMPLIANT\n", 0),
        (PARADOX, "VIOLATING\n", 1),
    ] {
        let o = ltlnorm(&["classify", "--norms", &norms, "-t", trace]);
        assert_eq!(stdout(&o), label, "{trace}");
        assert_eq!(o.status.code(), Some(code), "{trace}");
    }
}

#[test]
fn classify_partition_violation_exit_3() {
    let o = ltlnorm(&[
        "classify",
        "--norms",
        &fixture("broken-weak.json"),
        "-t",
        PARADOX,
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("weak+violating"));
}

#[test]
fn bad_norm_files_exit_2() {
    let o = ltlnorm(&["compile", "--norms", &fixture("temporal-guard.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("temporal operator in guard of n1"));
    let o = ltlnorm(&["compile", "--norms", "/nonexistent/norms.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compile_output() {
    let o = ltlnorm(&["compile", "--norms", &paper_norms()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("full: "));
    assert!(lines[1].starts_with("weak: "));
    assert!(lines[2].starts_with("violating: "));

    let o = ltlnorm(&["compile", "--norms", &fixture("empty.json")]);
    assert!(stdout(&o).starts_with("full: (G true)\n"));

    let next = root().join("norms/paper-next.json").display().to_string();
    let out = stdout(&ltlnorm(&["compile", "--norms", &next]));
    let weak = out.lines().find(|l| l.starts_with("weak: ")).unwrap();
    assert!(weak.contains("(X B)") && !weak.contains("(F B)"), "{weak}");
}

#[test]
fn verify_partition_small_and_broken() {
    let o = ltlnorm(&[
        "verify-partition",
        "--norms",
        &fixture("single-a.json"),
        "--atoms",
        "A",
        "--max-prefix",
        "1",
        "--max-loop",
        "1",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.contains("total: 6\n"));
    assert!(out.contains("FULLY_COMPLIANT: 2\n"));
    assert!(out.contains("VIOLATING: 4\n"));

    let o = ltlnorm(&[
        "verify-partition",
        "--norms",
        &fixture("broken-weak.json"),
        "--atoms",
        "A,B,C,D",
        "--max-prefix",
        "1",
        "--max-loop",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("partition: fails"));

    let o = ltlnorm(&[
        "verify-partition",
        "--norms",
        &paper_norms(),
        "--atoms",
        "A,G",
        "--max-prefix",
        "1",
        "--max-loop",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = ltlnorm(&[
        "verify-partition",
        "--norms",
        &paper_norms(),
        "--atoms",
        "A",
        "--max-prefix",
        "1",
        "--max-loop",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_otimes_small_run() {
    let o = ltlnorm(&["check-otimes", "--seed", "1", "--cases", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mismatches: 0\n"));
    let o = ltlnorm(&["check-otimes", "--seed", "1", "--cases", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            ltlnorm(&[
                "verify-partition",
                "--norms",
                &fixture("broken-weak.json"),
                "--atoms",
                "A,B,C,D",
                "--max-prefix",
                "1",
                "--max-loop",
                "1",
            ])
            .stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(ltlnorm(&["paradox"]).stdout, ltlnorm(&["paradox"]).stdout);
    let compile = || ltlnorm(&["compile", "--norms", &paper_norms()]).stdout;
    assert_eq!(compile(), compile());
}
