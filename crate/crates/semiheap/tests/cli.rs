use std::io::Write as _;
use std::process::{Command, Stdio};

use semiheap::format::{parse_group, parse_semiheap, parse_semiheap_stream, write_action, write_bundle, write_group, write_semiheap};
use semiheap_core::actions::{translation_action, ActionTable};
use semiheap_core::bundles::trivial_bundle;
use semiheap_core::corpus;
use semiheap_core::functors::heapify;
use semiheap_core::TernaryTable;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], input: &str) -> Output {
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("semiheap").chain(args.iter().copied());
    let code = semiheap::cli::run(argv, &mut stdin, &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn heap_text(g: &semiheap_core::FiniteGroup) -> String {
    let (s, _) = heapify(g).into_parts();
    write_semiheap(s.table(), None)
}

fn middle_projection() -> String {
    let t = TernaryTable::from_fn(2, |_, y, _| y).unwrap();
    write_semiheap(&t, None)
}

fn last_line(s: &str) -> &str {
    s.lines().last().unwrap_or("")
}

#[test]
fn check_reports_heap_and_abelian() {
    let out = run(&["check"], &heap_text(&corpus::cyclic(2)));
    assert_eq!((out.code, out.stdout.as_str()), (0, "pass para-associative=true heap=true abelian=true\n"));
    let out = run(&["check", "--jobs", "4"], &heap_text(&corpus::symmetric3()));
    assert_eq!(out.stdout, "pass para-associative=true heap=true abelian=false\n");
}

#[test]
fn check_emits_a_witness_on_failure() {
    let out = run(&["check"], &middle_projection());
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("fail law=para-associative quintuple="), "{}", out.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    let out = run(&["check"], "semiheap n=2\n0 0 0\n");
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error: line 2"), "{}", out.stderr);
    assert_eq!(run(&["frobnicate"], "").code, 2);
    assert_eq!(run(&["check", "--nope"], "").code, 2);
    assert_eq!(run(&["check", "--in", "/nonexistent/file.shf"], "").code, 2);
    assert_eq!(run(&["numeric", "--chart", "so7", "para-associative"], "").code, 2);
    assert_eq!(run(&["numeric", "left-invariant", "--basis", "9"], "").code, 2);
    assert_eq!(run(&["groupify"], &heap_text(&corpus::cyclic(3))).code, 2);
}

#[test]
fn heapify_then_groupify_round_trips() {
    for (name, g) in corpus::bundled() {
        let out = run(&["heapify"], &write_group(&g));
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        let doc = parse_semiheap(&out.stdout).unwrap();
        assert_eq!(doc.basepoint, Some(g.identity()));
        let back = run(&["groupify"], &out.stdout);
        assert_eq!(back.code, 0);
        assert_eq!(parse_group(&back.stdout).unwrap().into_group().unwrap(), g, "{name}");
    }
}

#[test]
fn groupify_requires_a_heap_unless_diagnostic() {
    let constant = write_semiheap(&TernaryTable::from_fn(2, |_, _, _| 0).unwrap(), None);
    let out = run(&["groupify", "--pt", "0"], &constant);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("fail law="), "{}", out.stdout);
    let out = run(&["groupify", "--pt", "0", "--diagnostic"], &constant);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("fail law=group"), "{}", out.stdout);
    let out = run(&["groupify", "--pt", "1"], &heap_text(&corpus::cyclic(3)));
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("group n=3 e=1"), "{}", out.stdout);
}

#[test]
fn translation_laws() {
    let z3 = heap_text(&corpus::cyclic(3));
    for law in ["right", "left", "commute"] {
        let out = run(&["translations", "--law", law], &z3);
        assert_eq!((out.code, out.stdout.trim()), (0, format!("pass law={law}").as_str()));
    }
    let out = run(&["translations", "--law", "centric"], &z3);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("fail law=centric closed=false"), "{}", out.stdout);
    let out = run(&["translations", "--law", "centric"], &heap_text(&corpus::cyclic(2)));
    assert_eq!(out.stdout, "pass law=centric closed=true\n");
}

#[test]
fn actions_and_orbits() {
    let dir = tempdir();
    let (s, _) = heapify(&corpus::cyclic(3)).into_parts();
    let shf = dir.join("z3.shf");
    std::fs::write(&shf, write_semiheap(s.table(), None)).unwrap();
    let shf = shf.to_str().unwrap();
    let act = write_action(translation_action(&s).unwrap().table());
    let out = run(&["action-check", "--semiheap", shf], &act);
    assert_eq!((out.code, out.stdout.trim()), (0, "pass action=true points=3 order=3"));
    let out = run(&["orbit", "--semiheap", shf, "--point", "1"], &act);
    assert_eq!((out.code, out.stdout.trim()), (0, "orbit point=1 points=0,1,2 symmetric=true"));

    let mut entries = translation_action(&s).unwrap().table().entries().to_vec();
    entries[4] = (entries[4] + 1) % 3;
    let broken = write_action(&ActionTable::new(3, 3, entries).unwrap());
    let out = run(&["action-check", "--semiheap", shf], &broken);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("fail law=action"), "{}", out.stdout);
}

#[test]
fn bundle_check() {
    let s = heapify(&corpus::cyclic(3)).into_parts().0;
    let b = trivial_bundle(3, &s).unwrap().into_bundle();
    let out = run(&["bundle-check"], &write_bundle(&b));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("pass bundle=true total=9 base=3 charts="), "{}", out.stdout);

    let mut broken = b.clone();
    let a = broken.action().clone();
    let mut entries = a.entries().to_vec();
    entries[0] = (entries[0] + 3) % 9;
    *broken.action_mut() = ActionTable::new(a.points(), a.order(), entries).unwrap();
    let out = run(&["bundle-check"], &write_bundle(&broken));
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("fail law=bundle"), "{}", out.stdout);
}

#[test]
fn enumerate_writes_tables_then_a_summary() {
    let out = run(&["enumerate", "--n", "2"], "");
    assert_eq!(out.code, 0);
    assert_eq!(last_line(&out.stdout), "n=2 kind=semiheap count=8 iso_count=6 complete=true");
    let body = out.stdout.rsplit_once("n=2 kind").unwrap().0;
    assert_eq!(parse_semiheap_stream(body).unwrap().len(), 8);

    let out = run(&["enumerate", "--n", "3", "--up-to-iso", "--jobs", "3"], "");
    assert_eq!(last_line(&out.stdout), "n=3 kind=semiheap count=135 iso_count=31 complete=true");
    let body = out.stdout.rsplit_once("n=3 kind").unwrap().0;
    assert_eq!(parse_semiheap_stream(body).unwrap().len(), 31);

    let out = run(&["enumerate", "--n", "4", "--heaps"], "");
    assert_eq!(last_line(&out.stdout), "n=4 kind=heap count=4 iso_count=2 complete=true");
}

#[test]
fn enumerate_honours_the_budget() {
    let out = run(&["enumerate", "--n", "5", "--budget", "0.05"], "");
    assert_eq!(out.code, 0);
    assert!(last_line(&out.stdout).ends_with("complete=false"), "{}", out.stdout);
}

#[test]
fn output_file_receives_the_data() {
    let dir = tempdir();
    let path = dir.join("heap.shf");
    let out = run(&["heapify", "--out", path.to_str().unwrap()], &write_group(&corpus::klein_four()));
    assert_eq!((out.code, out.stdout.as_str()), (0, ""));
    let doc = parse_semiheap(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.table.order(), 4);
    let out = run(&["check", "--in", path.to_str().unwrap()], "");
    assert_eq!(out.stdout, "pass para-associative=true heap=true abelian=true\n");
}

#[test]
fn numeric_checks_echo_their_seed() {
    let out = run(&["numeric", "para-associative"], "");
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("check=para-associative max_residual="), "{}", out.stdout);
    assert!(out.stdout.contains(" seed=42 pass=true"), "{}", out.stdout);

    let out = run(&["--seed", "7", "numeric", "--chart", "ut2", "--samples", "50", "tangent"], "");
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains(" seed=7 "));

    let a = run(&["numeric", "--samples", "30", "pushforward"], "");
    let b = run(&["numeric", "--samples", "30", "pushforward"], "");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn numeric_subcommands() {
    let passing: &[&[&str]] = &[
        &["numeric", "membership"],
        &["numeric", "--samples", "50", "convergence"],
        &["numeric", "--samples", "50", "left-invariant", "--basis", "2"],
        &["numeric", "--samples", "50", "group-vs-heap"],
        &["numeric", "--samples", "20", "bracket", "--u", "0", "--v", "1"],
        &["numeric", "--samples", "50", "coassociative", "--degree", "3"],
        &["numeric", "--chart", "r2", "multiplicative-function"],
        &["numeric", "--chart", "r1", "--samples", "20", "multiplicative-vector-field", "--field", "constant"],
        &["numeric", "--samples", "1000", "euclidean", "--dim", "3"],
        &["numeric", "--samples", "1000", "exp-hom"],
    ];
    for args in passing {
        let out = run(args, "");
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
        assert!(out.stdout.contains("pass=true"), "{args:?}: {}", out.stdout);
    }
    let out = run(&["numeric", "--chart", "r1", "multiplicative-function", "--function", "square"], "");
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("pass=false witness=x=["), "{}", out.stdout);
    let out = run(&["numeric", "--chart", "r1", "--samples", "20", "multiplicative-vector-field", "--field", "square"], "");
    assert_eq!(out.code, 1);
    let out = run(&["numeric", "multiplicative-vector-field"], "");
    assert_eq!(out.code, 2);
    let out = run(&["numeric", "--samples", "20", "convergence"], "");
    assert!(out.stdout.contains("h=1e-3 ratio=4.0"), "{}", out.stdout);
}

#[test]
fn binary_uses_process_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_semiheap");
    let spawn = |args: &[&str], input: &str| {
        let mut child =
            Command::new(exe).args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        child.wait_with_output().unwrap()
    };
    let ok = spawn(&["check"], &heap_text(&corpus::cyclic(2)));
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "pass para-associative=true heap=true abelian=true\n");
    assert_eq!(spawn(&["check"], &middle_projection()).status.code(), Some(1));
    assert_eq!(spawn(&["check"], "garbage").status.code(), Some(2));
    assert_eq!(spawn(&[], "").status.code(), Some(2));
    assert_eq!(spawn(&["--help"], "").status.code(), Some(0));
}

fn tempdir() -> std::path::PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("semiheap-cli-{}-{}", std::process::id(), NEXT.fetch_add(1, Ordering::Relaxed)));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
