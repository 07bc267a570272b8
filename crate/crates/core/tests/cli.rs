use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const LEX: &str = r#"{"kind":"discrete","matrix":[[1,0],[0,1]]}"#;
const SQRT2: &str = r#"{"kind":"dense","theta":{"u":"0","v":"1","d":2}}"#;

fn vermactl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vermactl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_vector(dir: &Path, name: &str, order: &str, charge: [&str; 4], terms: &str) -> String {
    let p = dir.join(name);
    let c = charge.map(|x| format!("\"{x}\"")).join(",");
    fs::write(&p, format!(r#"{{"order":{order},"charge":[{c}],"terms":{terms}}}"#)).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn criterion_reports_and_validates() {
    let o = vermactl(&["criterion", "--order", LEX, "--charge", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"case":"discrete","epsilon":[1,0],"irreducible":true}"#);

    let o = vermactl(&["criterion", "--order", SQRT2, "--charge", "0,0,3,4"]);
    assert_eq!(stdout(&o).trim(), r#"{"case":"dense","irreducible":false}"#);

    let bad = r#"{"kind":"dense","theta":{"u":"0","v":"0","d":2}}"#;
    let o = vermactl(&["criterion", "--order", bad, "--charge", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("theta must be irrational"));

    let o = vermactl(&["criterion", "--order", "{not json", "--charge", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn act_certify_verify() {
    let dir = tempfile::tempdir().unwrap();
    let v = write_vector(dir.path(), "v.json", LEX, ["1", "0", "0", "0"], r#"[{"coeff":"1","t":[[1,0]],"e":[]}]"#);
    let e10 = r#"[{"coeff":"1","gen":{"kind":"E","alpha":[1,0]}}]"#;
    let o = vermactl(&["act", "--in", &v, "--elem", e10]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""terms":[{"coeff":"1","e":[],"t":[]}]"#));

    let k2 = r#"[{"coeff":"1","gen":{"kind":"K","i":2}}]"#;
    let o = vermactl(&["act", "--in", &v, "--elem", k2]);
    assert!(stdout(&o).contains(r#""terms":[]"#));

    let zero = write_vector(dir.path(), "z.json", LEX, ["1", "0", "0", "0"], "[]");
    let o = vermactl(&["act", "--in", &zero, "--elem", e10]);
    assert!(stdout(&o).contains(r#""terms":[]"#));

    let cert = dir.path().join("c.json");
    let cert_s = cert.to_str().unwrap();
    let o = vermactl(&["certify", "--in", &v, "--out", cert_s]);
    assert_eq!(o.status.code(), Some(0));
    let o = vermactl(&["verify", "--in", &v, "--cert", cert_s]);
    assert_eq!(o.status.code(), Some(0));

    let text = fs::read_to_string(&cert).unwrap();
    fs::write(&cert, text.replace(r#""scalar":"1""#, r#""scalar":"2""#)).unwrap();
    let o = vermactl(&["verify", "--in", &v, "--cert", cert_s]);
    assert_eq!(o.status.code(), Some(1));

    let r = write_vector(dir.path(), "r.json", LEX, ["0", "1", "0", "0"], r#"[{"coeff":"1","t":[[1,0]],"e":[]}]"#);
    let o = vermactl(&["certify", "--in", &r]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("criterion fails"));
}

#[test]
fn output_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let v = write_vector(
        dir.path(),
        "v.json",
        SQRT2,
        ["1", "1", "0", "0"],
        r#"[{"coeff":"2/4","t":[[1,1]],"e":[[0,1],[1,0]]}]"#,
    );
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = vermactl(&["certify", "--in", &v, "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let r1 = vermactl(&["check", "rep", "--trials", "20", "--seed", "3"]);
    let r2 = vermactl(&["check", "rep", "--trials", "20", "--seed", "3"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn check_suites_pass() {
    for (suite, trials) in [("jacobi", "1000"), ("rep", "200"), ("grading", "50"), ("prop38", "20")] {
        let o = vermactl(&["check", suite, "--trials", trials, "--seed", "42"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(r#""passed":true"#));
    }
    assert_eq!(vermactl(&["check", "nosuch"]).status.code(), Some(2));
}

#[test]
fn enumerate_and_member() {
    let o = vermactl(&["enumerate", "--order", LEX, "--degree", "0,0"]);
    assert!(stdout(&o).contains(r#""count":1"#));
    let o = vermactl(&["enumerate", "--order", LEX, "--degree", "-1,0", "--window", "3", "--maxlen", "3"]);
    assert!(stdout(&o).contains(r#""count":2"#));
    assert!(stdout(&o).contains(r#""maxlen":3"#) && stdout(&o).contains(r#""window":3"#));

    let dir = tempfile::tempdir().unwrap();
    let v = write_vector(dir.path(), "v.json", SQRT2, ["0", "0", "0", "0"], r#"[{"coeff":"1","t":[],"e":[[1,1]]}]"#);
    let o = vermactl(&["member", "prop37_1", "--in", &v]);
    assert_eq!(stdout(&o).trim(), r#"{"member":true,"variant":"prop37_1"}"#);
    assert_eq!(vermactl(&["member", "prop37_2", "--in", &v]).status.code(), Some(3));

    let w =
        write_vector(dir.path(), "w.json", LEX, ["0", "0", "0", "0"], r#"[{"coeff":"1","t":[[1,0],[1,0]],"e":[]}]"#);
    let params = r#"{"variant":"prop38_ab","a":{"1":"2"},"b":{},"window":3}"#;
    let o = vermactl(&["member", "prop38_ab", "--in", &w, "--params", params]);
    assert_eq!(stdout(&o).trim(), r#"{"h":0,"member":false,"variant":"prop38_ab","window":3}"#);
}
