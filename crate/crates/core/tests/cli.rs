use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mixsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixsum-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn parse_pair(s: &str) -> (f64, f64) {
    let v: Vec<f64> = s.split_whitespace().map(|x| x.parse().unwrap()).collect();
    (v[0], v[1])
}

#[test]
fn eval_orthogonality_and_gauss_sum() {
    let o = mixsum(&["eval", "--p", "5", "--legendre", "--alpha", "0", "--beta", "1", "--theta", "0"]);
    assert!(o.status.success());
    let (re, im) = parse_pair(&stdout(&o));
    assert!(re.abs() < 1e-12 && im.abs() < 1e-12);

    let o = mixsum(&["eval", "--p", "5", "--legendre", "--alpha", "0", "--beta", "1", "--theta", "0.2"]);
    let (re, im) = parse_pair(&stdout(&o));
    assert!((re - 5f64.sqrt()).abs() < 1e-8 && im.abs() < 1e-8);
}

#[test]
fn eval_at_k_and_t_matches_theta() {
    let a = mixsum(&["eval", "--p", "101", "--char", "7", "--alpha", "0.1", "--beta", "0.9", "--k", "13", "--t", "0.4"]);
    let b = mixsum(&["eval", "--p", "101", "--char", "7", "--alpha", "0.1", "--beta", "0.9", "--theta", &(13.4f64 / 101.0).to_string()]);
    assert!(a.status.success() && b.status.success());
    let (ar, ai) = parse_pair(&stdout(&a));
    let (br, bi) = parse_pair(&stdout(&b));
    assert!((ar - br).abs() < 1e-7 && (ai - bi).abs() < 1e-7);
}

#[test]
fn eval_validation_exits_2() {
    let o = mixsum(&["eval", "--p", "5", "--legendre", "--alpha", "1", "--beta", "0.5", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta > alpha"));
    let o = mixsum(&["eval", "--p", "9", "--legendre", "--alpha", "0", "--beta", "1", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mixsum(&["eval", "--p", "5", "--char", "0", "--alpha", "0", "--beta", "1", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mixsum(&["eval", "--p", "5", "--alpha", "0", "--beta", "1", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn max_rows_and_columns() {
    let o = mixsum(&["max", "--p", "499", "--chars", "legendre"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# mixsum max"));
    assert_eq!(lines[1], "p,c,d,lo,hi,argmax,lo_lnln,hi_ln");
    assert_eq!(lines.len(), 3);
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..3], &["499", "249", "2"]);
    let lo: f64 = cells[3].parse().unwrap();
    let hi: f64 = cells[4].parse().unwrap();
    let ratio: f64 = cells[7].parse().unwrap();
    assert!(lo <= hi && ratio.is_finite() && ratio > 0.0);
    // nine significant digits
    assert!(cells[3..].iter().all(|c| c.split('e').next().unwrap().trim_start_matches('-').len() == 10));
}

#[test]
fn max_requires_one_interval() {
    let o = mixsum(&["max", "--p", "499", "--intervals", "0:1,0:0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_records_row_errors_and_continues() {
    let o = mixsum(&["witness", "--primes", "13,499", "--chars", "legendre"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("13,") && !rows[0].ends_with(",ok"));
    assert!(rows[1].starts_with("499,") && rows[1].ends_with(",ok"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = scratch_dir("config");
    let cfg = dir.join("sweep.cfg");
    fs::write(&cfg, format!("primes = 499\nchars = order-3\nintervals = 0:1\nout = {}\n", dir.display())).unwrap();
    let o = mixsum(&["max", "--config", cfg.to_str().unwrap(), "--chars", "legendre"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.join("max.csv")).unwrap();
    let row = csv.lines().nth(2).unwrap();
    assert!(row.starts_with("499,249,2,"));

    fs::write(&cfg, "primes = 499\nunknown = 1\n").unwrap();
    let o = mixsum(&["max", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rerun_is_byte_identical() {
    let args = ["witness", "--primes", "499,1009", "--chars", "sample-3", "--seed", "42", "--intervals", "0:1,0.25:1"];
    let a = mixsum(&args);
    let b = mixsum(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_single_coefficient_rows_are_one() {
    let o = mixsum(&["random", "--kind", "rmf-rademacher", "--n", "1", "--trials", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let c: Vec<&str> = r.split(',').collect();
        for v in &c[3..] {
            assert_eq!(v.parse::<f64>().unwrap(), 1.0);
        }
    }
    let o = mixsum(&["random", "--kind", "gaussian", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn plot_writes_svg() {
    let dir = scratch_dir("plot");
    let o = mixsum(&["max", "--primes", "499,1009", "--chars", "order-2,3", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = dir.join("hi.svg");
    let o = mixsum(&[
        "plot", "--csv", dir.join("max.csv").to_str().unwrap(), "--x", "p", "--y", "hi_ln",
        "--out", svg.to_str().unwrap(), "--log-x",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<circle").count(), 4);
}

#[test]
fn plot_errors() {
    let dir = scratch_dir("plot-errors");
    let empty = dir.join("empty.csv");
    fs::write(&empty, "# nothing\np,hi_ln\n").unwrap();
    let out = dir.join("x.svg");
    let o = mixsum(&["plot", "--csv", empty.to_str().unwrap(), "--x", "p", "--y", "hi_ln", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(!out.exists());

    let full = dir.join("full.csv");
    fs::write(&full, "p,hi_ln\n499,0.4\n").unwrap();
    let o = mixsum(&["plot", "--csv", full.to_str().unwrap(), "--x", "p", "--y", "nope", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}
