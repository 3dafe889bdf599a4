use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn amoeba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amoeba"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn table1_prints_five_values() {
    let out = amoeba(&["table1"]);
    assert!(out.status.success());
    let values: Vec<String> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().last().unwrap().to_string())
        .collect();
    assert_eq!(
        values,
        ["2.633916", "2.292432", "1.995084", "2.112387", "1.535377"]
    );
}

#[test]
fn delta_on_three_points() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.txt",
        "# 1 + e^z + e^2z\n1 3\n0 1 0\n1 1 0\n2 1 0\n",
    );
    let out = amoeba(&["delta", "--input", &f]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "delta=0.693147 pivot=1");
    let out = amoeba(&["delta", "--input", &f, "--precision", "3"]);
    assert_eq!(stdout(&out).trim(), "delta=0.693 pivot=1");
}

#[test]
fn certify_prints_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "1 3\n0 1 0\n1 1 0\n2 1 0\n");
    let out = amoeba(&["certify", "--input", &f, "--point", "1.0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("status=OUTSIDE_BY_LOPSIDED"));
    assert!(text.contains("dominant=2"));
    assert!(text.contains("distance=1.000000"));

    let out = amoeba(&["certify", "--input", &f, "--point", "0.3"]);
    let text = stdout(&out);
    assert!(text.contains("status=UNCERTIFIED"));
    assert!(text.contains("not a membership claim"));

    let out = amoeba(&["certify", "--input", &f, "--point", "0"]);
    assert!(stdout(&out).contains("status=ON_TROPICAL"));
    let out = amoeba(&["certify", "--input", &f, "--point", "-1.5"]);
    assert!(stdout(&out).contains("dominant=0"));
}

#[test]
fn bound_commands() {
    let out = stdout(&amoeba(&["bounds", "--dimension", "2", "--mu", "0.5"]));
    assert!(out.contains("polynomial_bound=2.633916"));
    assert!(out.contains("general_bound=14.899678"));
    assert!(out.contains("improved_bound_2d=2.292432"));
    assert!(out.contains("vertex_bound=2.112387"));
    assert_eq!(
        stdout(&amoeba(&["sharp", "--dimension", "1"])).trim(),
        "sharp_bound=1.098612"
    );
    assert_eq!(
        stdout(&amoeba(&["sharp", "--dimension", "2", "--rhs", "2"])).trim(),
        "sharp_bound=1.535377"
    );
    let out = stdout(&amoeba(&["honeycomb"]));
    assert!(out.contains("honeycomb_root=1.999840"));
    assert!(out.contains("unit_neighbours=6 sqrt3_neighbours=6"));
    assert!(out.contains("exceeds_integer=true"));
    let out = stdout(&amoeba(&[
        "lower-bound",
        "--dimension",
        "1",
        "--m",
        "100",
        "--delta",
        "1.2",
    ]));
    assert!(out.contains("exceeds_one=false"));
    let out = stdout(&amoeba(&["explore-q52"]));
    assert!(out.contains("not a claim"));
}

#[test]
fn polynomial_commands() {
    let dir = tempfile::tempdir().unwrap();
    // w^2 - 3w + 2 = (w - 1)(w - 2)
    let g = write(dir.path(), "g.txt", "1 3\n0 2 0\n1 -3 0\n2 1 0\n");
    let out = stdout(&amoeba(&["roots", "--input", &g]));
    let moduli: Vec<&str> = out
        .lines()
        .map(|l| l.split_whitespace().nth(2).unwrap())
        .collect();
    assert_eq!(moduli, ["modulus=1.000000", "modulus=2.000000"]);
    let out = stdout(&amoeba(&["fujiwara", "--input", &g]));
    assert!(out.contains("fujiwara_expr=6.000000"));
    let out = stdout(&amoeba(&["fiber-min", "--input", &g, "--point", "0"]));
    assert!(out.contains("fiber_min=0.000000"));

    let h = write(dir.path(), "h.txt", "1 2\n0.5 1 0\n1 1 0\n");
    let out = amoeba(&["roots", "--input", &h]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn snap_outputs_a_parseable_sum() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.txt",
        "2 3\n0 0 1 0\n1.3 0.1 1 0\n0.2 2.9 1 0\n",
    );
    let out = amoeba(&["snap", "--input", &f]);
    assert!(out.status.success());
    let text = stdout(&out);
    let snapped = amoeba_tools::format::parse_exponential_sum(&text).unwrap();
    assert_eq!(snapped.len(), 3);
    assert!(text.starts_with("# pivot=0"));
}

#[test]
fn render_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "2 3\n0 0 1 0\n1 0 1 0\n0 1 1 0\n");
    let ppm = dir.path().join("out.ppm");
    let out = amoeba(&[
        "render",
        "--input",
        &f,
        "--window",
        "-3,3,-3,3",
        "--resolution",
        "3,3",
        "--output",
        ppm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("tropical="));
    let image = fs::read_to_string(&ppm).unwrap();
    assert!(image.starts_with("P3\n3 3\n255\n"));
    let csv = stdout(&amoeba(&[
        "render",
        "--input",
        &f,
        "--window",
        "-3,3,-3,3",
        "--resolution",
        "3,3",
        "--format",
        "csv",
    ]));
    assert_eq!(csv.lines().next(), Some("x,y,code"));
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.contains("0,0,0\n"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["bogus"][..],
        &[],
        &["sharp"],
        &["sharp", "--dimension", "0"],
        &["sharp", "--dimension", "2", "--rhs", "-1"],
        &["certify", "--input", "x", "--point", "a,b"],
        &["render", "--input", "x", "--window", "0,1,2"],
        &["table1", "--nope"],
    ] {
        let out = amoeba(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn computation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let line = write(dir.path(), "line.txt", "1 2\n0 1 0\n1 1 0\n");
    let single = write(dir.path(), "one.txt", "1 1\n0 1 0\n");
    let bad = write(dir.path(), "bad.txt", "1 2\n0 1 0\n0 2 0\n");
    for args in [
        vec!["delta", "--input", "/nonexistent/f.txt"],
        vec!["delta", "--input", &single],
        vec!["delta", "--input", &bad],
        vec!["certify", "--input", &line, "--point", "1,2"],
        vec!["render", "--input", &line, "--window", "-1,1,-1,1"],
    ] {
        let out = amoeba(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn help_exits_0() {
    let out = amoeba(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certify"));
}
