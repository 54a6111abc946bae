use std::path::Path;
use std::process::{Command, Output};

fn finosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finosc"))
        .args(args)
        .env_remove("FINOSC_OUT_DIR")
        .env_remove("FINOSC_TOL")
        .output()
        .expect("spawn finosc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).filter(|l| !l.is_empty()).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn gaussian_g4_matches_binomial_column() {
    let o = finosc(&["gaussian", "--dim", "3", "--family", "g4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,value,prob\n"));
    let r = rows(&text);
    let s6 = 6f64.sqrt();
    let want = [(-1.0, 1.0 / s6, 1.0 / 6.0), (0.0, 2.0 / s6, 2.0 / 3.0), (1.0, 1.0 / s6, 1.0 / 6.0)];
    for (row, (n, v, p)) in r.iter().zip(want) {
        assert_eq!(row[0], n);
        approx::assert_relative_eq!(row[1], v, max_relative = 1e-15);
        approx::assert_relative_eq!(row[2], p, max_relative = 1e-15);
    }
}

#[test]
fn g2_probability_peaks_at_the_edges() {
    let r = rows(&stdout(&finosc(&["gaussian", "--dim", "15", "--family", "g2"])));
    let max = r.iter().map(|x| x[2]).fold(0.0, f64::max);
    let peaks: Vec<f64> = r.iter().filter(|x| x[2] == max).map(|x| x[0]).collect();
    assert_eq!(peaks, vec![-7.0, 7.0]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["gaussian", "--dim", "3", "--family", "g1", "--kappa", "-1"][..],
        &["verify", "--dim", "4"],
        &["verify", "--dim", "1"],
        &["spectrum", "--dim", "5"],
        &["spectrum", "--dim", "5", "--kind", "deformed-fourier"],
        &["spectrum", "--dim", "5", "--kind", "deformed-fourier", "--alpha", "2.5"],
        &["gaussian", "--dim", "5", "--family", "g4", "--kappa", "2"],
        &["wigner", "--dim", "5", "--tol", "0"],
        &["no-such-command"],
        &["gaussian", "--dim", "three"],
    ] {
        let o = finosc(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = finosc(&["verify", "--dim", "4"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension must be odd"));
    assert_eq!(finosc(&["--help"]).status.code(), Some(0));
}

#[test]
fn compute_failures_exit_1() {
    // The g2 Gram-Schmidt moment matrix is too ill-conditioned at d = 15.
    let o = finosc(&["spectrum", "--dim", "15", "--kind", "gramschmidt", "--family", "g2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("condition"));
}

#[test]
fn wigner_examples() {
    let r = rows(&stdout(&finosc(&["wigner", "--dim", "15", "--family", "g1"])));
    assert_eq!(r.len(), 225);
    let origin = r.iter().find(|x| x[0] == 0.0 && x[1] == 0.0).unwrap()[2];
    assert!((origin - 1.0 / 15.0).abs() < 1e-10);
    for x in &r {
        let mirror = r.iter().find(|y| y[0] == -x[0] && y[1] == -x[1]).unwrap();
        assert!((x[2] - mirror[2]).abs() < 1e-15);
    }

    let r = rows(&stdout(&finosc(&["wigner", "--dim", "7", "--state", "delta0"])));
    for x in &r {
        let want = if x[0] == 0.0 { 1.0 / 7.0 } else { 0.0 };
        assert!((x[2] - want).abs() < 1e-16, "{x:?}");
    }
    // Row-major over n, then m.
    assert_eq!((r[0][0], r[0][1], r[1][0], r[1][1]), (-3.0, -3.0, -3.0, -2.0));
}

#[test]
fn spectrum_examples() {
    let ev = |kind: &str| -> Vec<f64> { rows(&stdout(&finosc(&["spectrum", "--dim", "3", "--kind", kind]))).iter().map(|r| r[1]).collect() };
    let r = 1.0 / 3f64.sqrt();
    for (a, b) in ev("fourier").iter().zip([0.5 * (1.0 - r), 0.5 * (1.0 + r), 1.0]) {
        assert!((a - b).abs() < 1e-10);
    }
    for (a, b) in ev("kravchuk").iter().zip([0.5, 1.5, 2.5]) {
        assert!((a - b).abs() < 1e-12);
    }
    // Trace of H_Harper at d = 3 is 6, so the top two levels are scaled by 3.
    for (a, b) in ev("harper").iter().zip([1.5 * (1.0 - r), 1.5 * (1.0 + r), 3.0]) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn eigenvector_output_is_orthonormal() {
    let text = stdout(&finosc(&["spectrum", "--dim", "5", "--kind", "harper", "--eigenvectors"]));
    assert!(text.starts_with("k,n,re,im\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 25);
    for a in 0..5 {
        for b in 0..5 {
            let dot: f64 = (0..5).map(|n| r[a * 5 + n][2] * r[b * 5 + n][2] + r[a * 5 + n][3] * r[b * 5 + n][3]).sum();
            assert!((dot - if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }
}

#[test]
fn verify_passes_at_3_and_15() {
    for d in ["3", "15"] {
        let o = finosc(&["verify", "--dim", d]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains(", 0 failed"));
    }
}

#[test]
fn revival_examples() {
    let text = stdout(&finosc(&["revival", "--dim", "9", "--kind", "kravchuk"]));
    let (head, trace) = text.split_once("\n\n").unwrap();
    let prog = rows(head);
    assert_eq!(prog.len(), 1);
    assert_eq!((prog[0][0], prog[0][1]), (0.0, 9.0));
    assert!((prog[0][2] - 1.0).abs() < 1e-12 && (prog[0][3] - 2.0 * std::f64::consts::PI).abs() < 1e-10);
    let trace = rows(trace);
    let at_period = trace.iter().min_by(|a, b| (a[0] - 2.0 * std::f64::consts::PI).abs().total_cmp(&(b[0] - 2.0 * std::f64::consts::PI).abs())).unwrap();
    assert!((at_period[1] - 1.0).abs() < 1e-8);

    let text = stdout(&finosc(&["revival", "--dim", "9", "--kind", "gramschmidt", "--family", "g1"]));
    let prog = rows(text.split_once("\n\n").unwrap().0);
    assert_eq!(prog.len(), 1);
    assert_eq!(prog[0][1], 9.0);

    let text = stdout(&finosc(&["revival", "--dim", "3", "--kind", "fourier", "--min-len", "3"]));
    assert!(text.starts_with("start,length,gap,period,max_deviation\n\n"));
}

#[test]
fn kravchuk_table_and_frame_check() {
    let r = rows(&stdout(&finosc(&["kravchuk-table", "--dim", "3"])));
    assert_eq!(r.len(), 9);
    let k = |m: f64, n: f64| r.iter().find(|x| x[0] == m && x[1] == n).unwrap().clone();
    assert_eq!(k(-1.0, -1.0)[2], 1.0);
    assert!((k(-1.0, 0.0)[3] - 1.0 / 2f64.sqrt()).abs() < 1e-15);

    let o = finosc(&["frame-check", "--dim", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 6);
    for l in &lines[1..] {
        let cols: Vec<f64> = l.split(',').skip(1).map(|x| x.parse().unwrap()).collect();
        assert!(cols[1] < 1e-10 && (cols[2] - cols[3]).abs() < 1e-10 && cols[5] < 1e-10, "{l}");
    }
}

#[test]
fn csv_is_bit_stable_and_round_trips() {
    let args = ["spectrum", "--dim", "11", "--kind", "harper", "--eigenvectors"];
    let a = stdout(&finosc(&args));
    let b = stdout(&finosc(&args));
    assert_eq!(a, b);
    for field in a.lines().skip(1).flat_map(|l| l.split(',').skip(2)) {
        let x: f64 = field.parse().unwrap();
        assert_eq!(format!("{x:.16e}"), field);
    }
}

fn out_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    v.sort();
    v
}

#[test]
fn output_destination_precedence() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_finosc"))
            .args(["gaussian", "--dim", "5", "--family", "g1"])
            .args(extra)
            .env("FINOSC_OUT_DIR", env_dir.path())
            .output()
            .unwrap()
    };
    let o = run(&[]);
    assert!(o.stdout.is_empty());
    assert_eq!(out_files(env_dir.path()), vec!["gaussian-g1-d5.csv"]);

    let target = flag_dir.path().join("nested/g.svg");
    let o = run(&["--out", target.to_str().unwrap(), "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&target).unwrap().starts_with("<svg"));
    assert_eq!(out_files(env_dir.path()), vec!["gaussian-g1-d5.csv"]);
}

#[test]
fn tolerance_flag_overrides_environment() {
    let revival = |env_tol: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_finosc"));
        cmd.args(["revival", "--dim", "5", "--kind", "harper", "--samples", "2"]).env_remove("FINOSC_OUT_DIR");
        if let Some(t) = env_tol {
            cmd.env("FINOSC_TOL", t);
        }
        if let Some(t) = flag {
            cmd.args(["--tol", t]);
        }
        let text = String::from_utf8(cmd.output().unwrap().stdout).unwrap();
        rows(text.split_once("\n\n").unwrap().0).len()
    };
    // Harper levels are not equidistant: nothing at the default tolerance,
    // one run once the tolerance exceeds the gap spread.
    assert_eq!(revival(None, None), 0);
    assert_eq!(revival(Some("0.9"), None), 1);
    assert_eq!(revival(Some("0.9"), Some("1e-10")), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_finosc")).args(["verify", "--dim", "3"]).env("FINOSC_TOL", "-1").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
