use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonclassical")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn parse_and_domain_errors_exit_2() {
    for args in [
        vec!["wigner", "pacs:alpha=1,m=-1"],
        vec!["wigner", "squeezed:r=1"],
        vec!["ep", "thermal:x=1"],
        vec!["ep", "pacs:alpha=1", "--sweep", "beta=0:1:3"],
        vec!["spectrum", "fock:n=2,alpha=1"],
        vec!["wigner", "fock:n=1", "--grid", "-1:1:1", "-1:1:5"],
        vec!["nonsense"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_error_names_the_position() {
    let o = run(&["wigner", "pacs:alpha=1,m=x"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("15"), "{err}");
}

#[test]
fn truncation_exits_3() {
    let o = run(&["wigner", "coherent:alpha=3,dim=20"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn closed_evaluator_needs_a_closed_form() {
    let o = run(&["wigner", "coherent:alpha=1", "--evaluator", "closed"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wigner_csv_is_q_major() {
    let o = run(&["wigner", "fock:n=1", "--grid", "-1:1:3", "-2:2:5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("q,p,w"));
    let r = rows(&text);
    assert_eq!(r.len(), 15);
    assert_eq!((r[0][0], r[0][1]), (-1.0, -2.0));
    assert_eq!((r[1][0], r[1][1]), (-1.0, -1.0));
    assert_eq!((r[5][0], r[5][1]), (0.0, -2.0));
    assert_eq!((r[14][0], r[14][1]), (1.0, 2.0));
    // |1⟩ at the origin: −1/π
    assert!((r[7][2] + std::f64::consts::FRAC_1_PI).abs() < 1e-12);
}

#[test]
fn both_evaluators_write_two_files_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("field.csv");
    let o = run(&[
        "wigner",
        "pacs:alpha=0.9,m=2",
        "--evaluator",
        "both",
        "--grid",
        "-3:3:21",
        "-3:3:21",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let closed = rows(&read(&dir.path().join("field.closed.csv")));
    let numeric = rows(&read(&dir.path().join("field.numeric.csv")));
    assert_eq!(closed.len(), 441);
    let worst = closed.iter().zip(&numeric).map(|(a, b)| (a[2] - b[2]).abs()).fold(0.0, f64::max);
    let line = stdout(&o);
    let reported: f64 = line.trim().strip_prefix("max_abs_diff,").unwrap().parse().unwrap();
    assert_eq!(reported, worst);
    assert!(worst < 1e-10);
}

#[test]
fn heatmap_is_well_formed_with_white_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.svg");
    let o = run(&["wigner", "fock:n=1", "--grid", "-3:3:11", "-3:3:11", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = read(&path);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let fills: Vec<&str> = doc.descendants().filter_map(|n| n.attribute("fill")).collect();
    // the minimum −1/π saturates the negative end; the far corners are nearly white
    assert!(fills.contains(&"#2166ac"));
    let corner = doc
        .descendants()
        .find(|n| n.tag_name().name() == "rect" && n.attribute("x") == Some("70.000") && n.attribute("y") == Some("40.000"))
        .unwrap();
    assert_eq!(corner.attribute("fill"), Some("#ffffff"));
}

#[test]
fn compare_orders_columns() {
    let o = run(&["ep", "pa_thermal", "--sweep", "x=0:0.1:3", "--compare-orders"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("param,exact,order1,order2,defect"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    // at x = 0 all three are the single-photon state
    for v in &r[0][1..4] {
        assert!((v - 1.0).abs() < 1e-9);
    }
    assert!(r.iter().all(|row| row[4].abs() < 1e-15));
}

#[test]
fn compare_orders_rejects_other_families() {
    let o = run(&["ep", "pacs:alpha=1", "--compare-orders"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ep_sweep_rows() {
    let o = run(&["ep", "pacs:m=1", "--sweep", "alpha=0:2:5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("param,negativity,trace_norm,ep_bits"));
    for row in rows(&text) {
        let a = row[0];
        assert!((row[3] - ((2.0 + a * a) / (1.0 + a * a)).log2()).abs() < 1e-9);
        assert!((row[2] - 1.0 - 2.0 * row[1]).abs() < 1e-12);
    }
}

#[test]
fn spectrum_footer() {
    let o = run(&["spectrum", "fock:n=1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,eigenvalue");
    let last = lines.last().unwrap();
    let neg: f64 = last.strip_prefix("negativity,").unwrap().parse().unwrap();
    assert!((neg - 0.5).abs() < 1e-12);
    let eig: Vec<f64> = lines[1..lines.len() - 1].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(eig.windows(2).all(|w| w[0] >= w[1]));
    assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn csv_output_is_deterministic() {
    let args = ["wigner", "pa_thermal:x=0.3", "--grid", "-2:2:17", "-2:2:17"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["ep", "pacs:alpha=0.5+0.5i,m=2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
