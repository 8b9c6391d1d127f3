use std::process::{Command, Output};

fn fzwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fzwave")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a single-block CSV as (header, rows).
fn parse(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(fzwave(&["kernel", "--alpha", "abc"]).status.code(), Some(2));
    assert_eq!(fzwave(&["kernel", "--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(fzwave(&["dispersion", "--omega-min", "-1"]).status.code(), Some(2));
    assert_eq!(fzwave(&["sls", "--alpha", "0.5"]).status.code(), Some(2));
    assert_eq!(fzwave(&["cauchy", "--input", "/nonexistent/data.csv"]).status.code(), Some(3));
}

#[test]
fn alpha_one_is_redirected() {
    let o = fzwave(&["dispersion", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sls"));
}

#[test]
fn header_records_parameters() {
    let o = fzwave(&["kernel", "--points", "4", "--tau", "0.25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# fzwave"));
    assert!(lines.next().unwrap().contains("tau=0.25"));
}

#[test]
fn kernel_has_positive_real_part() {
    let o = fzwave(&["kernel", "--points", "9", "--arg-fracs", "-0.99,-0.3,0,0.3,0.99"]);
    assert!(o.status.success());
    let (h, rows) = parse(&stdout(&o));
    assert_eq!(rows.len(), 45);
    assert!(column(&h, &rows, "re").iter().all(|&v| v > 0.0));
    let args = column(&h, &rows, "s_argument");
    let im = column(&h, &rows, "im");
    for (a, b) in args.iter().zip(&im) {
        assert!(a * b <= 0.0);
    }
}

#[test]
fn fig1_vanishes_beyond_the_front() {
    let o = fzwave(&["figures", "fig1", "--points", "46"]);
    assert!(o.status.success());
    let (h, rows) = parse(&stdout(&o));
    let x = column(&h, &rows, "x");
    let front = 2f64.sqrt();
    for (k, name) in ["K_t1", "K_t2", "K_t3"].iter().enumerate() {
        let t = (k + 1) as f64;
        for (xi, v) in x.iter().zip(column(&h, &rows, name)) {
            assert!(v >= -1e-9, "{name} at {xi}: {v}");
            if *xi > front * t {
                assert_eq!(v, 0.0);
            }
        }
    }
}

#[test]
fn fig3_is_positive() {
    let o = fzwave(&["figures", "fig3", "--points", "31"]);
    let (h, rows) = parse(&stdout(&o));
    assert!(column(&h, &rows, "k_inf").iter().all(|&v| v > 0.0));
}

#[test]
fn phase_velocity_is_monotone() {
    let o = fzwave(&["dispersion", "--points", "20"]);
    let (h, rows) = parse(&stdout(&o));
    let v = column(&h, &rows, "V");
    assert!(v.windows(2).all(|w| w[1] > w[0]));
    assert!(rows.iter().all(|r| r.last().unwrap() == "ok"));
}

#[test]
fn sls_probe_measures_the_jump() {
    let o = fzwave(&["sls", "--mode", "probe", "--x-min", "1", "--x-max", "1", "--points", "1"]);
    assert!(o.status.success());
    let (h, rows) = parse(&stdout(&o));
    let measured = column(&h, &rows, "measured_jump")[0];
    let jump = column(&h, &rows, "jump")[0];
    assert!((measured - 0.248266).abs() < 1e-3);
    assert!((measured - jump).abs() < 1e-5);
}

#[test]
fn svg_output_and_file_target() {
    let dir = std::env::temp_dir().join(format!("fzwave-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig3.svg");
    let o = fzwave(&["figures", "fig3", "--points", "16", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cauchy_solve_from_file() {
    let dir = std::env::temp_dir().join(format!("fzwave-cli-input-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("data.csv");
    let rows: String = (0..=20).map(|i| {
        let x = -1.0 + 0.1 * i as f64;
        format!("{x},{}\n", (1.0 - x * x).max(0.0))
    }).collect();
    std::fs::write(&path, format!("x,u0\n{rows}")).unwrap();
    let o = fzwave(&["cauchy", "--mode", "solve", "--t", "3", "--input", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = parse(&stdout(&o));
    let u = column(&h, &rows, "u");
    assert!(u.iter().any(|&v| v > 0.0));
    assert_eq!(*u.first().unwrap(), 0.0);
    std::fs::remove_dir_all(&dir).unwrap();
}
