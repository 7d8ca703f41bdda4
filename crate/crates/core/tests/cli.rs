use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conv_energy::netmodel::CostBreakdown;
use conv_energy::paperdata::{CheckStatus, Reproduction, TABLE2};
use conv_energy::predictor::parse_counters;
use conv_energy::tracelab::EnergyReport;

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conv-energy"))
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

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A dir holding the exported counters and all three models fitted on the training nets.
fn fitted_models() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let train = dir.path().join("train.csv");
    let all = dir.path().join("all.csv");
    std::fs::write(&train, ok(&["report", "--export-counters", "training"])).unwrap();
    std::fs::write(&all, ok(&["report", "--export-counters", "all"])).unwrap();
    for (x, y, file) in [
        ("mac", "simd", "simd_from_mac.json"),
        ("simd", "bus_access", "bus_from_simd.json"),
    ] {
        let out = dir.path().join(file);
        ok(&[
            "fit",
            path(&train),
            "--model",
            "origin1",
            "--x",
            x,
            "--y",
            y,
            "--out",
            path(&out),
        ]);
    }
    let energy = dir.path().join("energy.json");
    ok(&[
        "fit",
        path(&train),
        "--model",
        "energy2",
        "--out",
        path(&energy),
    ]);
    dir
}

fn summary_line<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no `{prefix}` in\n{text}"))
}

#[test]
fn cost_totals() {
    let unit = ok(&["cost", path(&data("networks/unit.json"))]);
    assert!(unit.contains("total_conv_mac: 1\n"), "{unit}");
    assert!(unit.contains("total_storage_bytes: 12\n"), "{unit}");
    let alex = ok(&["cost", path(&data("networks/alexnet.json"))]);
    assert!(alex.contains("total_conv_mac: 665784864\n"), "{alex}");
    let mobile = ok(&["cost", path(&data("networks/mobilenet-224.json"))]);
    assert!(mobile.contains("total_conv_mac: 567716352\n"), "{mobile}");
}

#[test]
fn cost_csv_parses_back() {
    let csv = ok(&[
        "--format",
        "csv",
        "cost",
        path(&data("networks/alexnet.json")),
    ]);
    let costs = CostBreakdown::from_csv(&csv).unwrap();
    assert_eq!(costs.total_conv_mac, 665784864);
    assert_eq!(costs.to_csv(), csv);
}

#[test]
fn cost_warns_on_inconsistent_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("odd.json");
    std::fs::write(
        &net,
        r#"{"name":"odd","batch":1,"layers":[
            {"name":"a","kind":"conv","in":[8,8,3],"kernel":[3,3],"out":[6,6,4],"stride":1,"pad":0},
            {"name":"b","kind":"conv","in":[6,6,4],"kernel":[3,3],"out":[5,5,2],"stride":1,"pad":0}]}"#,
    )
    .unwrap();
    let o = run(&["cost", path(&net)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let warnings = stderr(&o);
    assert!(
        warnings.contains("warning") && warnings.contains('b') && !warnings.contains("`a`"),
        "{warnings}"
    );
}

#[test]
fn cost_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("bad.json");
    std::fs::write(&net, "{not json").unwrap();
    assert_eq!(run(&["cost", path(&net)]).status.code(), Some(1));
    assert_eq!(
        run(&["cost", path(&dir.path().join("absent.json"))])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cost_overflow_is_a_compute_error_and_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("huge.json");
    let big = u32::MAX;
    std::fs::write(
        &net,
        format!(r#"{{"name":"huge","batch":1,"layers":[{{"name":"a","kind":"conv","in":[{big},{big},{big}],"kernel":[{big},{big}],"out":[{big},{big},{big}]}}]}}"#),
    )
    .unwrap();
    let out = dir.path().join("costs.csv");
    let o = run(&["--out", path(&out), "cost", path(&net)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(!out.exists());
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn energy_of_constant_trace() {
    let text = ok(&["energy", path(&data("fixtures/constant.csv"))]);
    let total = summary_line(&text, "total");
    assert!(total.contains("1000.000000"), "{text}");
}

#[test]
fn energy_per_marker() {
    let csv = ok(&[
        "--format",
        "csv",
        "energy",
        path(&data("fixtures/ramp.csv")),
        "--markers",
        path(&data("fixtures/ramp_markers.csv")),
        "--channel",
        "VDD_GPU",
    ]);
    let report = EnergyReport::from_csv(&csv).unwrap();
    let energies: Vec<f64> = report.rows.iter().map(|r| r.energy_mj).collect();
    assert_eq!(energies.len(), 2);
    for e in energies {
        assert!((e - 750.0).abs() < 1e-9, "{csv}");
    }
}

#[test]
fn energy_reports_baseline_beside_gross() {
    let csv = ok(&[
        "--format",
        "csv",
        "energy",
        path(&data("fixtures/constant.csv")),
        "--baseline-window",
        "0:0.5",
    ]);
    let report = EnergyReport::from_csv(&csv).unwrap();
    assert!((report.total_energy_mj() - 1000.0).abs() < 1e-9);
    assert!((report.total_baseline_mj() - 1000.0).abs() < 1e-9);
}

#[test]
fn energy_marker_beyond_trace() {
    let o = run(&[
        "energy",
        path(&data("fixtures/ramp.csv")),
        "--markers",
        path(&data("fixtures/beyond_markers.csv")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("marker outside trace span"),
        "{}",
        stderr(&o)
    );
    assert!(stdout(&o).is_empty());
}

#[test]
fn energy_unknown_channel() {
    let o = run(&[
        "energy",
        path(&data("fixtures/constant.csv")),
        "--channel",
        "VDD_DDR",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fit_exact_plane() {
    let dir = tempfile::tempdir().unwrap();
    let counters = dir.path().join("plane.csv");
    let mut text = String::from("net,mac,simd,bus_access,energy_mj,time_s\n");
    for (i, (bus, simd)) in [(1u64, 2u64), (3, 1), (2, 5), (7, 4)]
        .into_iter()
        .enumerate()
    {
        text += &format!("n{i},,{simd},{bus},{},\n", 2 * bus + 3 * simd);
    }
    std::fs::write(&counters, text).unwrap();
    let model = dir.path().join("energy.json");
    ok(&[
        "fit",
        path(&counters),
        "--model",
        "energy2",
        "--out",
        path(&model),
    ]);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&model).unwrap()).unwrap();
    assert!((json["x1"].as_f64().unwrap() - 2.0).abs() < 1e-9, "{json}");
    assert!((json["x2"].as_f64().unwrap() - 3.0).abs() < 1e-9, "{json}");
    let cv = ok(&["fit", path(&counters), "--model", "energy2", "--loocv"]);
    let line = summary_line(&cv, "test error over folds");
    assert!(line.contains("0.00 ± 0.00"), "{cv}");
}

#[test]
fn fit_training_folds() {
    let dir = fitted_models();
    let train = dir.path().join("train.csv");
    let cv = ok(&["fit", path(&train), "--model", "energy2", "--loocv"]);
    for row in &TABLE2 {
        let (net, err) = (row.net, row.test_error);
        let line = summary_line(&cv, &format!("{net} "));
        let got: f64 = line.split_whitespace().last().unwrap().parse().unwrap();
        assert!((got - err).abs() <= 0.3, "{net}: {got} vs {err}");
    }
    let slope = ok(&[
        "fit",
        path(&train),
        "--model",
        "origin1",
        "--x",
        "mac",
        "--y",
        "simd",
    ]);
    assert!(
        summary_line(&slope, "c = ").starts_with("c = 0.245"),
        "{slope}"
    );
}

#[test]
fn fit_singular_plane() {
    let dir = tempfile::tempdir().unwrap();
    let counters = dir.path().join("sing.csv");
    std::fs::write(
        &counters,
        "net,mac,simd,bus_access,energy_mj,time_s\na,1,1,1,1,\nb,2,2,2,2,\n",
    )
    .unwrap();
    let o = run(&["fit", path(&counters), "--model", "energy2"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn predict_zero_mac() {
    let dir = fitted_models();
    let csv = ok(&[
        "--format",
        "csv",
        "predict",
        "--mac",
        "0",
        "--models",
        path(dir.path()),
    ]);
    let row = csv.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    for cell in &cells[2..5] {
        assert_eq!(cell.parse::<f64>().unwrap(), 0.0, "{row}");
    }
}

#[test]
fn predict_unseen_net() {
    let dir = fitted_models();
    let text = ok(&[
        "predict",
        "--net",
        path(&data("networks/googlenet.json")),
        "--models",
        path(dir.path()),
    ]);
    let row = summary_line(&text, "googleNet");
    let energy: f64 = row.split_whitespace().nth(4).unwrap().parse().unwrap();
    assert!((energy - 2093.9).abs() / 2093.9 < 0.01, "{text}");
}

#[test]
fn predict_counters_summary() {
    let dir = fitted_models();
    let all = dir.path().join("all.csv");
    let text = ok(&[
        "predict",
        "--counters",
        path(&all),
        "--models",
        path(dir.path()),
        "--exclude",
        "MobileNet-224",
    ]);
    assert!(
        summary_line(&text, "relative error, all rows").contains("12.25 ± 17.33"),
        "{text}"
    );
    assert!(
        summary_line(&text, "relative error, excluding").contains("7.08 ± 6.09"),
        "{text}"
    );
}

#[test]
fn predict_missing_model() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["predict", "--mac", "1", "--models", path(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing model"), "{}", stderr(&o));
}

#[test]
fn report_single_table() {
    let text = ok(&["report", "--tables", "3"]);
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn report_aggregates_flags_transposition() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("agg.csv");
    let o = run(&["report", "--tables", "aggregates", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let report = Reproduction::from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let flagged: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::Discrepancy)
        .collect();
    assert!(
        flagged
            .iter()
            .any(|c| c.cell.contains("table5") && c.cell.contains("with MobileNet")),
        "{flagged:?}"
    );
    assert!(stderr(&o).contains("outside tolerance"));
}

#[test]
fn report_unknown_table() {
    let o = run(&["report", "--tables", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown table"));
}

#[test]
fn exported_counters_parse() {
    let all = parse_counters(&ok(&["report", "--export-counters", "all"])).unwrap();
    assert_eq!(all.len(), 10);
    let training = parse_counters(&ok(&["report", "--export-counters", "training"])).unwrap();
    assert_eq!(training.len(), 6);
    assert_eq!(
        run(&["report", "--export-counters", "some"]).status.code(),
        Some(1)
    );
}

#[test]
fn correlate_columns() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("xy.csv");
    std::fs::write(&file, "a,b\n1,1\n2,2\n3,4\n").unwrap();
    let csv = ok(&[
        "--format",
        "csv",
        "correlate",
        path(&file),
        "--x",
        "a",
        "--y",
        "b",
    ]);
    let r: f64 = csv
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((r - 0.98198).abs() < 1e-5, "{csv}");
    std::fs::write(&file, "a,b\n1,1\n").unwrap();
    assert_eq!(
        run(&["correlate", path(&file), "--x", "a", "--y", "b"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn outputs_are_deterministic() {
    let alex = data("networks/alexnet.json");
    let trace = data("fixtures/ramp.csv");
    let markers = data("fixtures/ramp_markers.csv");
    let cases: [&[&str]; 3] = [
        &["cost", path(&alex)],
        &["energy", path(&trace), "--markers", path(&markers)],
        &["--format", "csv", "report"],
    ];
    for args in cases {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["predict", "--models", "."]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
