use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use hyplp::bounds::closed_form::closed_form_h_bound;
use hyplp::{Params, Scalar};
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn hyplp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyplp")).current_dir(root()).args(args).output().expect("spawn hyplp")
}

fn hyplp_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyplp"))
        .current_dir(root())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hyplp");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = hyplp(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

fn text_field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')).map(|rest| rest.trim().to_string()))
        .unwrap_or_else(|| panic!("no field {key} in\n{out}"))
}

#[test]
fn closed_form_petersen() {
    let v = json(&["bound", "closed-form", "--r", "3", "--u", "2", "--theta", "1"]);
    assert_eq!(v["value"], 10);
    assert_eq!(v["d"], 2);
    assert_eq!(v["c"], "1");
}

#[test]
fn lp_certificate_file() {
    let v = json(&["bound", "lp", "--r", "6", "--u", "2", "--theta", "2", "--degree", "4", "--cert", "fixtures/v62.fpoly"]);
    assert_eq!(v["value"], "136/3");
}

#[test]
fn defect_region_row() {
    let out = stdout(&hyplp(&["bound", "defect-region", "--r", "8", "--u", "2", "--e", "8"]));
    for want in ["2.09503", "2.19258", "3.40512"] {
        assert!(out.contains(want), "{want} missing from\n{out}");
    }
}

#[test]
fn invalid_parameters_exit_2_naming_the_precondition() {
    let o = hyplp(&["bound", "closed-form", "--r", "1", "--u", "2", "--theta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
    let o = hyplp(&["bound", "ru1", "--r", "3", "--u", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("r >="), "{}", stderr(&o));
    let o = hyplp(&["bound", "no-such-kind"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table1_verifies() {
    let o = hyplp(&["table", "table1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("11/11 rows match"));
}

#[test]
fn table1_mismatch_exits_1() {
    let shipped = std::fs::read_to_string(root().join("fixtures/table1.tsv")).unwrap();
    let altered = shipped.replacen("2.09503", "2.09513", 1);
    assert_ne!(shipped, altered);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table1.tsv");
    std::fs::write(&path, altered).unwrap();
    let o = hyplp(&["table", "table1", "--verify", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("10/11 rows match"));
}

#[test]
fn catalog_mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.tsv");
    std::fs::write(&path, "5\t3\t2\t40\tLP_c\n").unwrap();
    let o = hyplp(&["table", "h-catalog", "--verify", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("0/1 rows match"));
}

#[test]
fn catalog_row_lp_c() {
    let o = hyplp(&["table", "h-catalog", "--r", "5", "--u", "3", "--theta", "2", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("39^LP_c"), "{out}");
    assert!(out.contains("1/1 rows match"));
}

#[test]
fn full_catalog_verifies() {
    let o = hyplp(&["table", "h-catalog", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let n = std::fs::read_to_string(root().join("fixtures/h_catalog.tsv"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .count();
    assert!(stdout(&o).contains(&format!("{n}/{n} rows match")));
}

#[test]
fn catalog_lp_column() {
    let v = json(&["table", "h-catalog", "--r", "3", "--u", "3", "--theta", "sqrt3", "--degree", "8"]);
    let row = &v[0];
    let lp = row["lp"]["value"].as_f64().unwrap();
    let cf = row["closed_form"]["value"].as_f64().unwrap();
    assert!(lp <= cf + 1e-5, "lp {lp} above closed form {cf}");
    assert!((lp - 20.85641).abs() < 1e-5, "lp {lp}");
}

#[test]
fn json_catalog_recomputes() {
    let v = json(&["table", "h-catalog"]);
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        let p = Params::new(row["r"].as_u64().unwrap(), row["u"].as_u64().unwrap()).unwrap();
        let theta = Scalar::parse(row["theta"].as_str().unwrap()).unwrap();
        let b = closed_form_h_bound(&p, &theta).unwrap();
        assert_eq!(row["d"].as_u64(), b.d.map(|d| d as u64), "{row}");
        let shown = row["closed_form"]["value"].as_f64().unwrap();
        assert_eq!(format!("{shown:.5}"), format!("{:.5}", b.approx()), "{row}");
        assert_eq!(row["closed_form"]["tag"], b.theorem.tag());
    }
}

#[test]
fn formats_carry_the_same_numbers() {
    let args = ["bound", "defect-region", "--r", "9", "--u", "2", "--e", "8"];
    let text = stdout(&hyplp(&args));
    let csv = stdout(&hyplp(&[&["--format", "csv"][..], &args].concat()));
    let js = json(&args);
    let obj = js.as_object().unwrap();
    let csv_fields: Vec<(String, String)> =
        csv.lines().skip(1).filter_map(|l| l.split_once(',')).map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let mut numeric = 0;
    for (key, val) in obj {
        let Some(x) = val.as_f64() else { continue };
        numeric += 1;
        let t = text_field(&text, key);
        let c = &csv_fields.iter().find(|(k, _)| k == key).unwrap().1;
        assert_eq!(t.parse::<f64>().unwrap(), x, "{key}");
        assert_eq!(c.parse::<f64>().unwrap(), x, "{key}");
    }
    assert!(numeric >= 3);
}

#[test]
fn table_formats_agree() {
    let args = ["table", "table1"];
    let text = stdout(&hyplp(&args));
    let csv = stdout(&hyplp(&[&["--format", "csv"][..], &args].concat()));
    let js = json(&args);
    let lowers: Vec<String> = js.as_array().unwrap().iter().map(|r| format!("{:.5}", r["lower"]["value"].as_f64().unwrap())).collect();
    assert_eq!(lowers.len(), 11);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "lower").unwrap();
    let csv_lowers: Vec<String> = csv.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().to_string()).collect();
    assert_eq!(csv_lowers, lowers);
    for x in &lowers {
        assert!(text.contains(&format!("{x}^DEFECT")), "{x}");
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let default = stdout(&hyplp(&["table", "h-catalog"]));
    let one = Command::new(env!("CARGO_BIN_EXE_hyplp"))
        .current_dir(root())
        .env("HYPLP_THREADS", "1")
        .args(["table", "h-catalog"])
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(String::from_utf8(one.stdout).unwrap(), default);
}

#[test]
fn analyze_petersen() {
    let built = hyplp(&["construct", "named", "petersen", "--quiet"]);
    assert_eq!(built.status.code(), Some(0));
    let o = hyplp_stdin(&["analyze", "-"], &built.stdout);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(text_field(&out, "vertices"), "10");
    assert_eq!(text_field(&out, "tau2"), "1.00000");
    assert_eq!(text_field(&out, "closed_form_bound"), "10^CLOSED_FORM");
    assert_eq!(text_field(&out, "order_vs_bound"), "met with equality");
    assert_eq!(text_field(&out, "distance_regular"), "yes {3, 2; 1, 1}");
    assert!(text_field(&out, "correspondence").starts_with("pass"));
}

#[test]
fn analyze_oa33_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oa33.hg");
    let o = hyplp(&["construct", "from-oa", "fixtures/oa33.txt", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(text_field(&stdout(&o), "vertices"), "9");
    let v = json(&["analyze", path.to_str().unwrap()]);
    assert_eq!(v["vertices"], 9);
    assert_eq!(v["tau2"].as_f64(), Some(0.0));
    assert_eq!(v["exact_value"]["value"], 9);
    assert_eq!(v["exact_value"]["tag"], "OA");
    assert_eq!(v["order_vs_exact"], "met with equality");
}

#[test]
fn construct_writes_file_and_reports_on_stderr() {
    let o = hyplp(&["construct", "from-oa", "fixtures/oa33.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let h: hyplp::Hypergraph = stdout(&o).parse().unwrap();
    assert_eq!(h.n(), 9);
    assert_eq!(h.num_edges(), 9);
    assert!(stderr(&o).contains("vertices"));
}

#[test]
fn malformed_hypergraph_exits_2_with_line() {
    let o = hyplp_stdin(&["analyze", "-"], b"3 2\n0 1\n0 x\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let o = hyplp(&["analyze", "no/such/file"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mols_pipeline_gives_fifteen_vertices() {
    let oa = hyplp(&["construct", "mols-oa", "--p", "5", "--rows", "4", "--quiet"]);
    assert_eq!(oa.status.code(), Some(0));
    let o = hyplp_stdin(&["--format", "json", "construct", "oa-minus", "--symbol", "0", "--out", "/dev/null"], &oa.stdout);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 15);
    assert!((v["tau2"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}
