use std::path::{Path, PathBuf};
use std::process::Command;

use omegahom::print::print_workspace;
use omegahom::{invoke, Invocation, LoadError, Workspace};
use omegahom_core::Truncation;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run(args: &str) -> Invocation {
    let main = corpus().join("main.omh");
    let mut argv = vec!["omegahom".to_string()];
    argv.extend(args.split_whitespace().map(String::from));
    argv.push("-f".into());
    argv.push(main.to_string_lossy().into_owned());
    invoke(argv)
}

#[test]
fn every_corpus_file_round_trips() {
    let mut files: Vec<_> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "omh"))
        .collect();
    files.sort();
    assert!(files.len() >= 7);
    for file in files {
        let ws = Workspace::load(&file, Truncation::DEFAULT).unwrap();
        let once = print_workspace(&ws);
        let again = Workspace::from_source(&once, &corpus(), Truncation::DEFAULT).unwrap();
        assert_eq!(print_workspace(&again), once, "{}", file.display());
    }
}

#[test]
fn boundary_of_the_three_column_scheme() {
    let out = run("boundary fig");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "[*,*,*]@1\n");
}

#[test]
fn passing_and_failing_invocations() {
    let cases = [
        ("validate Z2 W m1", 0),
        ("validate Broken", 1),
        ("boundary fig", 0),
        ("boundary point", 1),
        ("arity left", 0),
        ("arity bad", 1),
        ("normalize m1c", 0),
        ("normalize bad", 1),
        ("equal m1 m1b", 0),
        ("equal i1 m1", 1),
        ("suspend-scheme fig", 0),
        ("suspend-scheme top", 1),
        ("suspend-term i1", 0),
        ("suspend-term i3", 1),
        ("eval Z2 m1 aa", 0),
        ("eval Z2 m1 single", 1),
        ("hom Z2 * *", 0),
        ("hom Z2 a a", 1),
        ("hom-compare C x y --term-size 8 --diag-len 3", 0),
        ("hom-compare Skew", 1),
        ("invertible Z2 W a", 0),
        ("invertible Free Bad a", 1),
        ("groupoid Z2 W", 0),
        ("groupoid Free", 1),
        ("hom-groupoid Z2 W", 0),
        ("hom-groupoid Free", 1),
        ("rlp idD", 0),
        ("rlp toT", 1),
        ("enumerate terms 1 --term-size 5", 0),
        ("enumerate terms 4", 1),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.code, code, "{args}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in ["nonsense", "hom Z2", "eval Z2 m1 nowhere", "equal fig m1", "arity Z2"] {
        assert_eq!(run(args).code, 2, "{args}");
    }
}

#[test]
fn eval_of_the_binary_composite() {
    let out = run("eval Z2 m1 aa");
    assert_eq!(out.stdout, "1\n");
}

#[test]
fn suspension_commands_print_canonical_syntax() {
    assert_eq!(run("suspend-scheme fig").stdout, "[[[*],[],[*,*]]]@3\n");
    assert_eq!(run("suspend-term i1").stdout, "kappa(e@1, e@1, [[]]@2)\n");
}

#[test]
fn rlp_reports_the_least_lift() {
    let out = run("rlp squash");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("lift: kappa(1, (x, y), c) = p"), "{}", out.stdout);
    let out = run("rlp toT");
    assert!(
        out.stdout
            .contains("failure: no lift at dimension 1 for (s0, s0) over *1"),
        "{}",
        out.stdout
    );
}

#[test]
fn machine_format_uses_tabs() {
    let out = run("groupoid Z2 W --format machine");
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().all(|l| l.contains('\t')));
    assert!(out.stdout.starts_with("status\tok\n"));
}

#[test]
fn output_is_deterministic() {
    let a = run("hom-compare Q --term-size 6 --diag-len 2");
    let b = run("hom-compare Q --term-size 6 --diag-len 2");
    assert_eq!(a, b);
}

#[test]
fn load_failures_exit_two() {
    let dir = std::env::temp_dir().join(format!("omegahom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let parse = write("parse.omh", "scheme s = [*,*@1;\n");
    let dup = write("dup.omh", "term t = e@0;\nterm t = e@1;\n");
    write("a.omh", "include \"b.omh\";\n");
    let cyc = write("b.omh", "include \"a.omh\";\n");
    for (file, what) in [(&parse, "line 1"), (&dup, "already defined"), (&cyc, "cycle")] {
        let out = invoke(["omegahom", "validate", "-f", file.to_str().unwrap()]);
        assert_eq!(out.code, 2, "{}", file.display());
        assert!(out.stderr.contains(what), "{}", out.stderr);
    }
    assert!(matches!(
        Workspace::load(&dir.join("missing.omh"), Truncation::DEFAULT),
        Err(LoadError::Io { .. })
    ));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn max_dim_changes_the_truncation() {
    assert_eq!(run("suspend-scheme top --max-dim 4").code, 0);
    assert_eq!(run("suspend-term i3 --max-dim 4").code, 0);
}

#[test]
fn binary_runs_from_the_corpus_directory() {
    let out = Command::new(env!("CARGO_BIN_EXE_omegahom"))
        .args(["boundary", "fig"])
        .current_dir(corpus())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "[*,*,*]@1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_omegahom"))
        .args(["equal", "i1", "m1"])
        .current_dir(corpus())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "false\n");
}
