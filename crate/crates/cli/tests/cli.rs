use std::path::PathBuf;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;

use realav::commands::to_json;
use realav::error::ErrorReport;
use realav::output::*;
use realav::wire::PointJson;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_realav"))
}

fn realav(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("realav-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}, stderr: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// write → parse → write must reproduce the bytes.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let parsed: T = serde_json::from_str(text).expect("output parses into its schema");
    assert_eq!(to_json(&parsed), text);
    parsed
}

fn error_of(o: &Output) -> ErrorReport {
    assert_eq!(o.status.code(), Some(1), "stdout: {}", String::from_utf8_lossy(&o.stdout));
    serde_json::from_slice(&o.stderr).expect("stderr carries a JSON error")
}

const DIAG_12: &str = r#"{"g":2,"mode":"exact","X":[["0","0"],["0","0"]],"Y":[["1","0"],["0","2"]]}"#;
const FLOAT_Z: &str = r#"{"g":2,"mode":"float","X":[[0.0,0.0],[0.0,0.0]],"Y":[[1.0,0.3],[0.3,2.0]]}"#;

#[test]
fn curves_for_genus_two() {
    let out: CurvesOut = round_trip(&stdout(&realav(&["atlas", "curves", "--g", "2"])));
    assert_eq!(out.count, 5);
    assert_eq!(out.types.len(), 5);
}

#[test]
fn abelian_table_round_trips() {
    let out: AbelianOut = round_trip(&stdout(&realav(&["atlas", "abelian", "--g", "3"])));
    assert_eq!(out.count, out.types.len());
    assert!(out.types.iter().any(|t| (t.alpha, t.lambda) == (0, 0)));
}

#[test]
fn classify_a_normal_matrix() {
    let s = Scratch::new("classify");
    let m = s.file("m.json", r#"[["0","1"],["1","0"]]"#);
    let out: ClassifyOut = round_trip(&stdout(&realav(&["atlas", "classify", "--M", &m])));
    assert_eq!((out.alpha, out.lambda), (2, 2));
}

#[test]
fn indefinite_imaginary_part_is_rejected() {
    let s = Scratch::new("validate");
    let z = s.file("z.json", r#"{"g":2,"mode":"exact","X":[["0","0"],["0","0"]],"Y":[["1","0"],["0","-1"]]}"#);
    let e = error_of(&realav(&["siegel", "validate", "--Z", &z]));
    assert_eq!(e.error, "NotPositiveDefinite");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(realav(&["atlas", "curves", "--g", "2", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(realav(&["nonsense"]).status.code(), Some(2));
    assert_eq!(realav(&["search", "sample", "--g", "2", "--type", "x"]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_domain_error() {
    let s = Scratch::new("malformed");
    let z = s.file("z.json", "{not json");
    assert_eq!(error_of(&realav(&["siegel", "validate", "--Z", &z])).error, "InvalidInput");
    let missing = s.0.join("absent.json");
    assert_eq!(error_of(&realav(&["siegel", "validate", "--Z", missing.to_str().unwrap()])).error, "Io");
}

#[test]
fn siegel_subcommands_round_trip() {
    let s = Scratch::new("siegel");
    let z = s.file("z.json", DIAG_12);
    let v: ValidateOut = round_trip(&stdout(&realav(&["siegel", "validate", "--Z", &z])));
    assert!(v.valid);
    let j: JmatOut = round_trip(&stdout(&realav(&["siegel", "jmat", "--Z", &z])));
    assert!(j.riemann_holds);
    let gamma = s.file("gamma.json", r#"[[0,0,-1,0],[0,0,0,-1],[1,0,0,0],[0,1,0,0]]"#);
    let acted: PointJson = round_trip(&stdout(&realav(&["siegel", "act", "--Z", &z, "--gamma", &gamma])));
    // -Z⁻¹ = diag(i, i/2)
    assert_eq!(serde_json::to_value(&acted.y).unwrap(), serde_json::json!([["1", "0"], ["0", "1/2"]]));
    let m = s.file("m.json", r#"[["1","0"],["0","0"]]"#);
    let t: PointJson = round_trip(&stdout(&realav(&["siegel", "tau", "--Z", &z, "--M", &m])));
    assert_eq!(serde_json::to_value(&t.x).unwrap(), serde_json::json!([["1", "0"], ["0", "0"]]));
    let fix: FixOut = round_trip(&stdout(&realav(&["siegel", "fix", "--Z", &z, "--M", &m])));
    assert!(!fix.in_fixed_locus);
    assert_eq!(serde_json::to_value(&fix.nearest.x).unwrap(), serde_json::json!([["1/2", "0"], ["0", "0"]]));
    let fz = s.file("f.json", FLOAT_Z);
    let jf: JmatOut = round_trip(&stdout(&realav(&["siegel", "jmat", "--Z", &fz])));
    assert!(jf.riemann_holds);
}

#[test]
fn quadratic_entries_are_read_and_written() {
    let s = Scratch::new("quadratic");
    let z = s.file(
        "z.json",
        r#"{"g":1,"mode":"exact","X":[["0"]],"Y":[[{"a":"0","b":"1","d":2}]]}"#,
    );
    let j: JmatOut = round_trip(&stdout(&realav(&["siegel", "jmat", "--Z", &z])));
    let text = serde_json::to_string(&j.j).unwrap();
    assert!(text.contains(r#""d":2"#), "{text}");
    assert!(j.riemann_holds);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = bin()
        .args(["siegel", "validate", "--Z", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(DIAG_12.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    let v: ValidateOut = round_trip(&stdout(&o));
    assert_eq!(v.g, 2);
}

#[test]
fn subvariety_commands_round_trip() {
    let s = Scratch::new("sub");
    let z = s.file("z.json", DIAG_12);
    let found: SubSearchOut = round_trip(&stdout(&realav(&["sub", "search", "--Z", &z, "--k", "1"])));
    assert!(found.count > 0);
    assert!(found.certificates.iter().all(|c| c.certified));
    let t = s.file("t.json", r#"[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]"#);
    let l = s.file("l.json", r#"[[1,0],[0,0],[0,1],[0,0]]"#);
    let cert: CertificateOut = round_trip(&stdout(&realav(&["sub", "check", "--Z", &z, "--T", &t, "--L", &l])));
    assert!(cert.certified);
    assert_eq!(cert.j_residual, Some(0.0));
    let with_t: SubSearchOut = round_trip(&stdout(&realav(&["sub", "search", "--Z", &z, "--k", "1", "--T", &t])));
    assert!(with_t.count <= found.count);
    assert_eq!(error_of(&realav(&["sub", "search", "--Z", &z, "--k", "2"])).error, "BadK");
}

#[test]
fn criterion_commands_round_trip() {
    let s = Scratch::new("criterion");
    // siegel_q(2): q(e_i, e_j) is the Sym² basis vector of {i, j}
    let q = s.file("q.json", r#"[[["1","0","0"],["0","1","0"]],[["0","1","0"],["0","0","1"]]]"#);
    let w = s.file("w.json", r#"[["1"],[{"re":"0","im":"1"}]]"#);
    let out: CriterionOut = round_trip(&stdout(&realav(&["criterion", "check", "--q", &q, "--W", &w])));
    assert!(out.condition1 && out.ek);
    assert_eq!((out.g, out.k, out.m), (2, 1, 3));
    let zero = s.file("zero.json", r#"[[["0"],["0"]],[["0"],["0"]]]"#);
    let out: CriterionOut = round_trip(&stdout(&realav(&["criterion", "check", "--q", &zero, "--W", &w])));
    assert!(!out.condition1 && !out.ek);
    let quartic = s.file(
        "f.json",
        r#"{"degree":4,"terms":[{"exponents":[4,0,0],"coeff":"1"},{"exponents":[0,4,0],"coeff":"1"},{"exponents":[0,0,4],"coeff":"1"}]}"#,
    );
    let w3 = s.file("w3.json", r#"[["1"],["0"],["0"]]"#);
    let out: CriterionOut = round_trip(&stdout(&realav(&["criterion", "check", "--curve", &quartic, "--W", &w3])));
    assert!(out.condition1);
    assert_eq!((out.g, out.m), (3, 6));
    let singular = s.file("sing.json", r#"{"degree":4,"terms":[{"exponents":[4,0,0],"coeff":"1"}]}"#);
    assert_eq!(error_of(&realav(&["criterion", "check", "--curve", &singular, "--W", &w3])).error, "SingularCurve");
    let fermat: FermatOut = round_trip(&stdout(&realav(&["criterion", "fermat", "--d", "4"])));
    assert!(fermat.passes);
    assert_eq!(fermat.rank, 3);
    assert_eq!(error_of(&realav(&["criterion", "fermat", "--d", "3"])).error, "DegreeTooSmall");
}

#[test]
fn grassmann_approx_and_config_precedence() {
    let s = Scratch::new("grassmann");
    let f = s.file("f.json", r#"[[1,0],[0,1]]"#);
    let l = s.file("l.json", &format!("[[1.0],[{}]]", std::f64::consts::SQRT_2));
    let out: ApproxOut = round_trip(&stdout(&realav(&["grassmann", "approx", "--F", &f, "--L", &l, "--denom", "5"])));
    assert_eq!(out.plane, vec![vec![realav::wire::ScalarJson::Rational("5".into())], vec![realav::wire::ScalarJson::Rational("7".into())]]);
    assert!((out.distance - 4.8e-3).abs() < 2e-4, "{}", out.distance);

    let cfg = s.file("cfg.toml", "denom_bound = 5\n");
    let from_file: ApproxOut = round_trip(&stdout(&realav(&["--config", &cfg, "grassmann", "approx", "--F", &f, "--L", &l])));
    assert_eq!(from_file.denom_bound, 5);
    let flag_wins: ApproxOut =
        round_trip(&stdout(&realav(&["grassmann", "approx", "--F", &f, "--L", &l, "--config", &cfg, "--denom-bound", "12"])));
    assert_eq!(flag_wins.denom_bound, 12);

    let bad = s.file("bad.toml", "denom_bound = 5\nflavour = 1\n");
    assert_eq!(error_of(&realav(&["--config", &bad, "atlas", "curves", "--g", "1"])).error, "InvalidInput");
    let negative = s.file("neg.toml", "tol_res = -1.0\n");
    assert_eq!(error_of(&realav(&["--config", &negative, "atlas", "curves", "--g", "1"])).error, "InvalidInput");
}

#[test]
fn search_run_produces_a_certified_witness() {
    let s = Scratch::new("run");
    let z = s.file("z.json", FLOAT_Z);
    let out: WitnessOut = round_trip(&stdout(&realav(&["search", "run", "--Z", &z, "--type", "0,0", "--k", "1", "--eps", "5e-2"])));
    assert!(out.certify.all_pass);
    assert!(out.j_residual <= 1e-8);
    assert!(out.displacement <= 5e-2);
    let split = s.file("split.json", DIAG_12);
    let out: WitnessOut = round_trip(&stdout(&realav(&["search", "run", "--Z", &split, "--type", "0,0"])));
    assert_eq!(out.displacement, 0.0);
    let off = s.file("off.json", r#"{"g":2,"mode":"float","X":[[0.3,0.0],[0.0,0.0]],"Y":[[1.0,0.0],[0.0,1.0]]}"#);
    assert_eq!(error_of(&realav(&["search", "run", "--Z", &off, "--type", "0,0"])).error, "NotInFixedLocus");
    assert_eq!(error_of(&realav(&["search", "run", "--Z", &z, "--type", "2,1"])).error, "IndexNotInI");
}

#[test]
fn sampling_is_deterministic_across_thread_counts() {
    let args = ["search", "sample", "--g", "2", "--k", "1", "--type", "1,2", "--n", "6", "--seed", "7"];
    let one = stdout(&realav(&[&args[..], &["--threads", "1"]].concat()));
    let four = stdout(&realav(&[&args[..], &["--threads", "4"]].concat()));
    assert_eq!(one, four);
    let table: SampleTableOut = round_trip(&one);
    assert_eq!(table.rows.len(), 12);
    assert!(table.summary.iter().all(|s| (0.0..=1.0).contains(&s.success_rate)));
    let csv = stdout(&realav(&[&args[..], &["--csv"]].concat()));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("sample,eps,success,j_residual,displacement,iterations,error"));
    assert_eq!(lines.count(), 12);
}

#[test]
fn help_exits_zero() {
    let o = realav(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("search"));
}
