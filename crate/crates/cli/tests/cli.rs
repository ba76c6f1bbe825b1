use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use biso::coefficients::eta_kl_biso;
use biso::io::parse_channel;
use biso::orders::less_noisy_criterion_biso;
use biso::BisoChannel;
use tempfile::TempDir;

fn biso_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biso"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Value printed after `key` in a `key value` report.
fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .trim()
}

fn eta_pair_files(dir: &TempDir) -> (PathBuf, PathBuf) {
    let t = 17.0 / 997.0;
    (
        write(dir, "f.txt", "biso 0.01 0.48 0.32 0.19\n"),
        write(dir, "g.txt", &format!("biso {:.17} {:.17} 0 0.7\n", 0.3 - t, t)),
    )
}

fn alpha_pair_files(dir: &TempDir) -> (PathBuf, PathBuf) {
    (
        write(dir, "f.txt", "biso 0.415 0.345 0.05 0.19\n"),
        write(dir, "g.txt", "biso 0.245 0.515 0.221 0.019\n"),
    )
}

#[test]
fn analyze_reports_coefficients() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "# four outputs\nbiso 0.01 0.48 0.32 0.19\n");
    let o = biso_cmd(&["analyze", s(&f)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "eta_kl"), "0.194");
    assert_eq!(field(&text, "eta_tv"), "0.34");
    assert_eq!(field(&text, "doeblin_alpha"), "0.66");
    assert_eq!(field(&text, "biso"), "yes");

    let bsc = write(&dir, "bsc.txt", "2\n0.9 0.1\n0.1 0.9\n");
    let text = stdout(&biso_cmd(&["analyze", s(&bsc)]));
    assert_eq!(field(&text, "eta_kl"), "0.64");
    assert_eq!(field(&text, "doeblin_alpha"), "0.2");
    assert_eq!(field(&text, "capacity_bits"), "0.531004406411");
}

#[test]
fn bad_files_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad_rows = write(&dir, "rows.txt", "2\n0.5 0.5\n0.6 0.5\n");
    let o = biso_cmd(&["analyze", s(&bad_rows)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("rows.txt"));

    let garbage = write(&dir, "junk.txt", "2\n0.5 half\n0.5 0.5\n");
    assert_eq!(biso_cmd(&["analyze", s(&garbage)]).status.code(), Some(2));

    let missing = dir.path().join("missing.txt");
    assert_eq!(biso_cmd(&["analyze", s(&missing)]).status.code(), Some(2));
    assert_eq!(biso_cmd(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn compare_less_noisy_fails_both_ways_for_equal_eta_pair() {
    let dir = TempDir::new().unwrap();
    let (f, g) = eta_pair_files(&dir);
    let o = biso_cmd(&["compare", s(&f), s(&g), "--order", "ln"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("ln A >= B: fails"), "{text}");
    assert!(text.contains("ln B >= A: fails"), "{text}");
}

#[test]
fn compare_degradation_fails_with_guessing_witness_for_equal_alpha_pair() {
    let dir = TempDir::new().unwrap();
    let (f, g) = alpha_pair_files(&dir);
    let text = stdout(&biso_cmd(&["compare", s(&f), s(&g), "--order", "deg"]));
    assert!(text.contains("deg A >= B: fails"), "{text}");
    assert!(text.contains("deg B >= A: fails"), "{text}");
    assert!(text.contains("guessing witness"), "{text}");
}

#[test]
fn compare_finds_map_for_degraded_pair() {
    let dir = TempDir::new().unwrap();
    let bsc1 = write(&dir, "a.txt", "2\n0.9 0.1\n0.1 0.9\n");
    let bsc2 = write(&dir, "b.txt", "2\n0.8 0.2\n0.2 0.8\n");
    let text = stdout(&biso_cmd(&["compare", s(&bsc1), s(&bsc2), "--order", "deg"]));
    assert!(text.contains("deg A >= B: holds"), "{text}");
    assert!(text.contains("map:"), "{text}");
    assert!(text.contains("deg B >= A: fails"), "{text}");
}

#[test]
fn less_noisy_needs_biso_inputs() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.txt", "2\n1 0\n0.3 0.7\n");
    let bsc = write(&dir, "bsc.txt", "2\n0.8 0.2\n0.2 0.8\n");
    let o = biso_cmd(&["compare", s(&z), s(&bsc), "--order", "ln"]);
    assert_eq!(o.status.code(), Some(4));

    let o = biso_cmd(&["compare", s(&z), s(&bsc)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ln: skipped"));
}

#[test]
fn extremal_alpha_writes_loadable_channels() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "biso 0.01 0.48 0.32 0.19\n");
    let out = dir.path().join("out");
    let o = biso_cmd(&["extremal", s(&f), "--kind", "alpha", "--out", s(&out)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "bsc_p"), "0.33");
    assert_eq!(field(&text, "bec_eps"), "0.66");
    assert!(text.contains("indicator map"));

    let bsc = parse_channel(&fs::read_to_string(out.join("bsc.txt")).unwrap()).unwrap();
    let bec = parse_channel(&fs::read_to_string(out.join("bec.txt")).unwrap()).unwrap();
    assert!(bsc.max_abs_diff(&biso::Channel::bsc(0.33).unwrap()).unwrap() < 1e-12);
    assert_eq!(bec.outputs(), 3);
}

#[test]
fn extremal_eta_and_capacity() {
    let dir = TempDir::new().unwrap();
    let bsc = write(&dir, "bsc.txt", "2\n0.8 0.2\n0.2 0.8\n");
    let text = stdout(&biso_cmd(&["extremal", s(&bsc), "--kind", "eta"]));
    assert_eq!(field(&text, "value"), "0.36");
    assert_eq!(field(&text, "bsc_p"), "0.2");
    assert_eq!(field(&text, "bec_eps"), "0.64");

    let bec = write(&dir, "bec.txt", "3\n0.7 0.3 0\n0 0.3 0.7\n");
    let text = stdout(&biso_cmd(&["extremal", s(&bec), "--kind", "capacity"]));
    assert_eq!(field(&text, "bec_eps"), "0.3");
    assert_eq!(field(&text, "bsc_p"), "0.0532390407768");

    let z = write(&dir, "z.txt", "2\n1 0\n0.3 0.7\n");
    assert_eq!(
        biso_cmd(&["extremal", s(&z), "--kind", "capacity"]).status.code(),
        Some(4)
    );
    let text = stdout(&biso_cmd(&["extremal", s(&z), "--kind", "alpha"]));
    assert!(text.contains("dominated binary channel"), "{text}");
}

#[test]
fn check_listing_and_selection() {
    let o = biso_cmd(&["paper-check", "--list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 13);

    let o = biso_cmd(&["paper-check", "--only", "eta-counterexample"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS eta-counterexample"));

    let o = biso_cmd(&["paper-check", "--only", "z-channel"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(biso_cmd(&["paper-check", "--only", "nope"]).status.code(), Some(2));
}

fn read_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn criterion_sweep_changes_sign_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let (f, g) = eta_pair_files(&dir);
    let text = stdout(&biso_cmd(&["sweep", "criterion", s(&f), s(&g)]));
    let (header, rows) = read_csv(&text);
    assert_eq!(header, ["q", "criterion"]);
    assert_eq!(rows.len(), 999);
    assert!(rows.iter().any(|r| r[1] < 0.0));
    assert!(rows.iter().any(|r| r[1] > 0.0));

    let w = BisoChannel::new(vec![(0.32, 0.48), (0.19, 0.01)]).unwrap();
    let t = 17.0 / 997.0;
    let v = BisoChannel::new(vec![(0.0, t), (0.7, 0.3 - t)]).unwrap();
    for r in rows.iter().step_by(97) {
        let exact = less_noisy_criterion_biso(&w, &v, r[0]).unwrap();
        assert!((exact - r[1]).abs() <= 1e-10 * exact.abs().max(1.0), "{r:?} vs {exact}");
    }
}

#[test]
fn fi_bounds_sweep_is_bracketed_and_saturates() {
    let dir = TempDir::new().unwrap();
    let bsc = write(&dir, "bsc.txt", "2\n0.8 0.2\n0.2 0.8\n");
    let text = stdout(&biso_cmd(&[
        "sweep",
        "fi-bounds",
        s(&bsc),
        "--steps",
        "12",
        "--t-max",
        "1.2",
    ]));
    let (header, rows) = read_csv(&text);
    assert_eq!(header, ["t", "lower", "upper"]);
    assert_eq!(rows.len(), 13);
    let eta = eta_kl_biso(&BisoChannel::bsc(0.2).unwrap());
    for r in &rows {
        assert!(r[1] <= r[2] + 1e-12, "{r:?}");
        assert!(r[2] <= eta * r[0] + 1e-12, "{r:?}");
    }
    assert!((rows[12][2] - rows[10][2]).abs() < 1e-12);
}

#[test]
fn sweeps_are_deterministic() {
    let a = biso_cmd(&["sweep", "mi-diff", "--z-matched", "0.3", "--grid", "50"]);
    let b = biso_cmd(&["sweep", "mi-diff", "--z-matched", "0.3", "--grid", "50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let (header, rows) = read_csv(&stdout(&a));
    assert_eq!(header, ["x", "mi_difference"]);
    assert_eq!(rows.len(), 50);
}
