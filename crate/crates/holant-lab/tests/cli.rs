use std::path::PathBuf;
use std::process::Command;

fn inst(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("instances")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (String, i32) {
    let o = Command::new(env!("CARGO_BIN_EXE_holant-lab"))
        .args(args)
        .output()
        .expect("binary runs");
    (String::from_utf8(o.stdout).unwrap(), o.status.code().unwrap())
}

fn value(out: &str) -> &str {
    out.lines().next().unwrap().strip_prefix("value\t").unwrap()
}

#[test]
fn eval_examples() {
    let (o, c) = run(&[
        "eval",
        "--grid",
        &inst("triangle.grid"),
        "--signatures",
        &inst("hw_le_1.sig"),
        "--k",
        "1",
    ]);
    assert_eq!((value(&o), c), ("3", 0));
    let even = [
        "eval",
        "--grid",
        &inst("triangle_even.grid"),
        "--signatures",
        &inst("even.sig"),
        "--coloured",
    ];
    let (o, c) = run(&even);
    assert_eq!((value(&o), c), ("1", 0));
    let (o, _) = run(&[&even[..], &["--mod", "2"]].concat());
    assert_eq!(value(&o), "1");
    let (o, _) = run(&[
        "eval",
        "--grid",
        &inst("k4_perfect.grid"),
        "--signatures",
        &inst("zero.sig"),
        "--k",
        "2",
    ]);
    assert_eq!(value(&o), "3");
    assert!(o.contains("route\tinterpolation"));
}

#[test]
fn routes_agree_on_files() {
    let base = [
        "eval",
        "--grid",
        &inst("star_h.grid"),
        "--signatures",
        &inst("corpus.sig"),
        "--coloured",
    ];
    let vals: Vec<String> = ["auto", "brute", "fast", "ie"]
        .iter()
        .map(|r| value(&run(&[&base[..], &["--route", r]].concat()).0).to_string())
        .collect();
    assert!(vals.iter().all(|v| v == &vals[0]), "{vals:?}");
    let g = [
        "--field",
        "gaussian",
        "eval",
        "--grid",
        &inst("gaussian.grid"),
        "--signatures",
        &inst("gaussian.sig"),
    ];
    let a = run(&[&g[..], &["--k", "2"]].concat()).0;
    let b = run(&[&g[..], &["--k", "2", "--route", "brute"]].concat()).0;
    assert_eq!(value(&a), value(&b));
}

#[test]
fn applications() {
    assert_eq!(
        run(&["count-matchings", "--graph", &inst("c4.graph"), "--k", "2"]).0,
        "2\n"
    );
    assert_eq!(
        run(&["count-matchings", "--graph", &inst("c4.graph"), "--colourful"]).0,
        "2\n"
    );
    assert_eq!(
        run(&["xor-weight", "--matrix", &inst("triangle.mat"), "--k", "3"]).0,
        "1\n"
    );
    assert_eq!(
        run(&["xor-weight", "--matrix", &inst("triangle.mat"), "--k", "2"]).0,
        "0\n"
    );
    assert_eq!(
        run(&[
            "count-factors",
            "--graph",
            &inst("c4.graph"),
            "--set",
            "0,1",
            "--k",
            "2"
        ])
        .0,
        "2\n"
    );
    assert_eq!(
        run(&["count-factors", "--graph", &inst("c4.graph"), "--set", "1", "--k", "2"]).0,
        "2\n"
    );
}

#[test]
fn classify_and_zeta() {
    let (o, c) = run(&["classify", "--signatures", &inst("hw_le_1.sig"), "--mod", "2"]);
    assert_eq!(c, 0);
    assert!(o
        .lines()
        .any(|l| l.starts_with("coloured_mod_p\tmatrix_multiplication")));
    let (o, _) = run(&["classify", "--signatures", &inst("factors.sig"), "--factor"]);
    assert!(o.starts_with("factor\tsharpW1_complete"));
    let (o, _) = run(&["zeta", "--signatures", &inst("even.sig"), "--k", "3"]);
    assert_eq!(o, "0,0,0|0-1,0-2,1-2\t3\t1/6\t2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--trials", "0"]).1, 1);
    assert_eq!(run(&["eval", "--grid", "x"]).1, 1);
    assert_eq!(run(&["bogus"]).1, 1);
    assert_eq!(run(&["--field", "gf", "4", "verify", "--trials", "1"]).1, 1);
    assert_eq!(
        run(&[
            "eval",
            "--grid",
            "/nonexistent",
            "--signatures",
            "/nonexistent",
            "--k",
            "1"
        ])
        .1,
        2
    );
    assert_eq!(
        run(&[
            "eval",
            "--grid",
            &inst("triangle.grid"),
            "--signatures",
            &inst("even.sig"),
            "--k",
            "1"
        ])
        .1,
        2
    );
    assert_eq!(
        run(&["count-matchings", "--graph", &inst("triangle.grid"), "--colourful"]).1,
        2
    );
    assert_eq!(run(&["--help"]).1, 0);
}

#[test]
fn deterministic_output() {
    let args = [
        "--format",
        "tsv",
        "verify",
        "--trials",
        "40",
        "--all-fields",
        "--seed",
        "9",
    ];
    let (a, c) = run(&args);
    assert_eq!(c, 0);
    assert_eq!(a, run(&args).0);
    assert_eq!(a.lines().count(), 42);
    let e = [
        "eval",
        "--grid",
        &inst("star_h.grid"),
        "--signatures",
        &inst("corpus.sig"),
        "--coloured",
    ];
    assert_eq!(run(&e).0, run(&e).0);
}

#[test]
fn bench_refuses_brute_beyond_limit() {
    let (o, c) = run(&["bench", "--family", "brute", "--sizes", "1000", "--timeout", "5"]);
    assert_eq!(c, 0);
    assert!(o.lines().nth(1).unwrap().contains("\trefused\t"), "{o}");
    let (o, _) = run(&["bench", "--family", "acyclic", "--sizes", "50,100", "--timeout", "30"]);
    assert!(o.lines().last().unwrap().starts_with("slope\t"));
}
