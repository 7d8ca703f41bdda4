//! The `conv-energy` command line.
//!
//! [`run`] executes one invocation and returns its [`Outcome`]; the binary
//! only prints it. Exit status is 0 on success, 1 for invalid input and 2
//! for computations that cannot be carried out (singular fits, windows
//! outside the trace, reproduction cells outside tolerance).

mod args;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::Parser;

pub use args::{Cli, Command, Format, ModelKind};

use crate::netmodel::{network_costs, parse_network, CostBreakdown, NetError};
use crate::paperdata::{dataset, parse_tables, reproduce_all, CounterSet, PaperDataError};
use crate::predictor::{
    chain_predict, fit_origin_1d, fit_origin_2d, load_model, loocv, parse_counters, relative_error,
    save_model, summarize_errors, write_counters, CounterColumn, CounterRecord, EnergyModel,
    FitError, ModelDocument, OriginModel,
};
use crate::tracelab::{
    baseline_power, interval_energy, parse_markers, parse_trace, pearson, Channel, MarkerSet,
    TraceError,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_COMPUTE: u8 = 2;

/// File names `predict --models DIR` looks for.
pub const SIMD_MODEL_FILE: &str = "simd_from_mac.json";
pub const BUS_MODEL_FILE: &str = "bus_from_simd.json";
pub const ENERGY_MODEL_FILE: &str = "energy.json";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn compute(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_COMPUTE,
            message: message.into(),
        }
    }
}

impl From<NetError> for Failure {
    fn from(e: NetError) -> Self {
        match e {
            NetError::Overflow(_) => Failure::compute(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<TraceError> for Failure {
    fn from(e: TraceError) -> Self {
        if e.is_out_of_span() || e == TraceError::ZeroVariance {
            Failure::compute(e.to_string())
        } else {
            Failure::input(e.to_string())
        }
    }
}

impl From<FitError> for Failure {
    fn from(e: FitError) -> Self {
        if e.is_numerical() {
            Failure::compute(e.to_string())
        } else {
            Failure::input(e.to_string())
        }
    }
}

impl From<PaperDataError> for Failure {
    fn from(e: PaperDataError) -> Self {
        Failure::input(e.to_string())
    }
}

/// What a command produced before anything is written.
struct Done {
    stdout: String,
    /// Machine-readable content for `--out`.
    file: String,
    warnings: Vec<String>,
    /// Nonzero when the command completed but its result is a failure.
    code: u8,
    failure_note: Option<String>,
}

impl Done {
    fn new(stdout: String, file: String) -> Self {
        Self {
            stdout,
            file,
            warnings: Vec::new(),
            code: EXIT_OK,
            failure_note: None,
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Cost { netfile } => cost(netfile, cli.format),
        Command::Energy {
            tracefile,
            markers,
            channel,
            baseline_window,
            window,
        } => energy(
            tracefile,
            markers.as_deref(),
            channel.as_deref(),
            baseline_window.as_deref(),
            window.as_deref(),
            cli.format,
        ),
        Command::Fit {
            counters,
            model,
            x,
            y,
            x2,
            loocv,
        } => fit(
            counters,
            *model,
            x.as_deref(),
            y.as_deref(),
            x2.as_deref(),
            *loocv,
            cli.format,
        ),
        Command::Predict {
            net,
            mac,
            counters,
            models,
            exclude,
        } => predict(
            net.as_deref(),
            *mac,
            counters.as_deref(),
            models,
            exclude,
            cli.format,
        ),
        Command::Report {
            tables,
            export_counters,
        } => report(tables, export_counters.as_deref(), cli.format),
        Command::Correlate { file, x, y } => correlate(file, x, y, cli.format),
    };
    let done = match result {
        Ok(d) => d,
        Err(f) => {
            return Outcome {
                code: f.code,
                stdout: String::new(),
                stderr: format!("error: {}\n", f.message),
            }
        }
    };
    let mut stderr: String = done
        .warnings
        .iter()
        .map(|w| format!("warning: {w}\n"))
        .collect();
    if let Some(path) = &cli.out {
        if let Err(e) = write_atomically(path, &done.file) {
            stderr.push_str(&format!("error: cannot write `{}`: {e}\n", path.display()));
            return Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr,
            };
        }
    }
    if let Some(note) = &done.failure_note {
        stderr.push_str(&format!("error: {note}\n"));
    }
    Outcome {
        code: done.code,
        stdout: done.stdout,
        stderr,
    }
}

/// Writes through a temporary file in the target directory, so the target
/// either keeps its old content or receives the complete new content.
fn write_atomically(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read `{}`: {e}", path.display())))
}

fn pick(format: Format, text: String, csv: &str) -> String {
    match format {
        Format::Text => text,
        Format::Csv => csv.to_string(),
    }
}

fn cost(netfile: &Path, format: Format) -> Result<Done, Failure> {
    let net = parse_network(&read(netfile)?)?;
    let costs = network_costs(&net)?;
    let csv = costs.to_csv();
    let mut done = Done::new(
        pick(format, cost_text(&net.name, net.batch, &costs), &csv),
        csv,
    );
    done.warnings = net.shape_warnings().iter().map(|w| w.to_string()).collect();
    Ok(done)
}

fn cost_text(name: &str, batch: u64, costs: &CostBreakdown) -> String {
    let mut s = format!("network: {name} (batch {batch})\n");
    let _ = writeln!(
        s,
        "{:<32} {:<6} {:>16} {:>16}",
        "layer", "kind", "mac", "storage_bytes"
    );
    for r in &costs.rows {
        let _ = writeln!(
            s,
            "{:<32} {:<6} {:>16} {:>16}",
            r.layer, r.kind, r.mac, r.storage_bytes
        );
    }
    let _ = writeln!(s, "total_conv_mac: {}", costs.total_conv_mac);
    let _ = writeln!(s, "total_storage_bytes: {}", costs.total_storage_bytes);
    s
}

fn parse_window(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::input(format!("window `{s}` must be `t0:t1` in seconds"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let t0: f64 = a.trim().parse().map_err(|_| bad())?;
    let t1: f64 = b.trim().parse().map_err(|_| bad())?;
    if !t0.is_finite() || !t1.is_finite() {
        return Err(bad());
    }
    if t1 <= t0 {
        return Err(TraceError::EmptyWindow { t0, t1 }.into());
    }
    Ok((t0, t1))
}

fn energy(
    tracefile: &Path,
    markers: Option<&Path>,
    channel: Option<&str>,
    baseline_window: Option<&str>,
    window: Option<&str>,
    format: Format,
) -> Result<Done, Failure> {
    let trace = parse_trace(&read(tracefile)?)?;
    let channel = match channel {
        Some(c) => c.parse::<Channel>()?,
        None => trace.default_channel(),
    };
    trace.power(channel)?;
    let markers = match (markers, window) {
        (Some(p), _) => parse_markers(&read(p)?)?,
        (None, Some(w)) => {
            let (t0, t1) = parse_window(w)?;
            MarkerSet::whole("window", t0, t1)?
        }
        (None, None) => MarkerSet::whole("trace", trace.start(), trace.end())?,
    };
    let baseline = match baseline_window {
        Some(w) => {
            let (t0, t1) = parse_window(w)?;
            Some(baseline_power(&trace, channel, t0, t1)?)
        }
        None => None,
    };
    let report = interval_energy(&trace, &markers, channel, baseline)?;
    let csv = report.to_csv();
    let text = format!("channel: {channel}\n{}", report.to_text());
    Ok(Done::new(pick(format, text, &csv), csv))
}

fn column(name: &str) -> Result<CounterColumn, Failure> {
    Ok(name.parse::<CounterColumn>()?)
}

#[allow(clippy::too_many_arguments)]
fn fit(
    counters: &Path,
    model: ModelKind,
    x: Option<&str>,
    y: Option<&str>,
    x2: Option<&str>,
    with_loocv: bool,
    format: Format,
) -> Result<Done, Failure> {
    let records = parse_counters(&read(counters)?)?;
    let nets: Vec<String> = records.iter().map(|r| r.net.clone()).collect();
    match model {
        ModelKind::Origin1 => {
            if with_loocv {
                return Err(Failure::input("--loocv requires --model energy2"));
            }
            if x2.is_some() {
                return Err(Failure::input("--x2 applies to --model energy2 only"));
            }
            let (Some(x), Some(y)) = (x, y) else {
                return Err(Failure::input("--model origin1 needs --x and --y"));
            };
            let (xc, yc) = (column(x)?, column(y)?);
            let pairs = records
                .iter()
                .map(|r| Ok((r.require(xc)?, r.require(yc)?)))
                .collect::<Result<Vec<_>, FitError>>()?;
            let m = fit_origin_1d(&pairs)?.with_trained_on(nets.clone());
            let rows: Vec<(String, f64, f64)> = nets
                .iter()
                .zip(&pairs)
                .map(|(n, &(xv, yv))| (n.clone(), yv, m.predict(xv)))
                .collect();
            let mut text = format!("model: origin1 ({y} = c * {x})\nc = {}\n", m.slope);
            let table = error_table(&rows)?;
            text.push_str(&table.0);
            Ok(Done::new(
                pick(format, text, &table.1),
                save_model(&ModelDocument::Origin(m)),
            ))
        }
        ModelKind::Energy2 => {
            let x = x.unwrap_or("bus_access");
            let x2 = x2.unwrap_or("simd");
            let y = y.unwrap_or("energy_mj");
            let (xc, x2c, yc) = (column(x)?, column(x2)?, column(y)?);
            if with_loocv {
                let defaults = (
                    CounterColumn::BusAccess,
                    CounterColumn::Simd,
                    CounterColumn::EnergyMj,
                );
                if (xc, x2c, yc) != defaults {
                    return Err(Failure::input(
                        "--loocv uses --x bus_access --x2 simd --y energy_mj",
                    ));
                }
                return fit_loocv(&records, format);
            }
            let rows3 = records
                .iter()
                .map(|r| Ok((r.require(xc)?, r.require(x2c)?, r.require(yc)?)))
                .collect::<Result<Vec<_>, FitError>>()?;
            let m = fit_origin_2d(&rows3)?.with_trained_on(nets.clone());
            let rows: Vec<(String, f64, f64)> = nets
                .iter()
                .zip(&rows3)
                .map(|(n, &(a, b, yv))| (n.clone(), yv, m.predict(a, b)))
                .collect();
            let mut text = format!(
                "model: energy2 ({y} = x1 * {x} + x2 * {x2})\nx1 = {:e}\nx2 = {:e}\n",
                m.bus_coef, m.simd_coef
            );
            let table = error_table(&rows)?;
            text.push_str(&table.0);
            Ok(Done::new(
                pick(format, text, &table.1),
                save_model(&ModelDocument::Energy(m)),
            ))
        }
    }
}

/// Text and CSV tables of `(net, actual, predicted)` with relative errors and their summary.
fn error_table(rows: &[(String, f64, f64)]) -> Result<(String, String), Failure> {
    let mut text = format!(
        "{:<20} {:>18} {:>18} {:>10}\n",
        "net", "actual", "predicted", "error_%"
    );
    let mut csv = String::from("net,actual,predicted,relative_error_pct\n");
    let mut errs = Vec::with_capacity(rows.len());
    for (n, actual, predicted) in rows {
        let e = relative_error(*predicted, *actual)?;
        errs.push(e);
        let _ = writeln!(text, "{n:<20} {actual:>18.4} {predicted:>18.4} {e:>10.4}");
        let _ = writeln!(csv, "{n},{actual},{predicted},{e}");
    }
    let _ = writeln!(text, "train error: {}", summarize_errors(&errs)?);
    Ok((text, csv))
}

fn fit_loocv(records: &[CounterRecord], format: Format) -> Result<Done, Failure> {
    let r = loocv(records)?;
    let mut text =
        String::from("model: energy2 (energy_mj = x1 * bus_access + x2 * simd), leave-one-out\n");
    let _ = writeln!(
        text,
        "{:<20} {:>12} {:>12} {:>14} {:>14} {:>18} {:>10}",
        "excluded", "x1", "x2", "predicted_mj", "measured_mj", "train_error_%", "test_%"
    );
    let mut csv = String::from(
        "excluded,x1,x2,predicted_energy_mj,measured_energy_mj,train_error_mean,train_error_stddev,test_error\n",
    );
    for f in &r.folds {
        let rec = records
            .iter()
            .find(|x| x.net == f.excluded)
            .expect("fold net is in the pool");
        let predicted = f.model.predict(
            rec.require(CounterColumn::BusAccess)?,
            rec.require(CounterColumn::Simd)?,
        );
        let measured = rec.require(CounterColumn::EnergyMj)?;
        let t = f.train_summary();
        let _ = writeln!(
            text,
            "{:<20} {:>12.4e} {:>12.4e} {:>14.2} {:>14.2} {:>18} {:>10.2}",
            f.excluded,
            f.model.bus_coef,
            f.model.simd_coef,
            predicted,
            measured,
            format!("{:.2} ± {:.2}", t.mean, t.stddev),
            f.test_error
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            f.excluded,
            f.model.bus_coef,
            f.model.simd_coef,
            predicted,
            measured,
            t.mean,
            t.stddev,
            f.test_error
        );
    }
    let all = r.all_train_summary();
    let _ = writeln!(
        text,
        "{:<20} {:>12.4e} {:>12.4e} {:>14} {:>14} {:>18}",
        "allNets",
        r.all_nets.bus_coef,
        r.all_nets.simd_coef,
        "",
        "",
        format!("{:.2} ± {:.2}", all.mean, all.stddev)
    );
    let _ = writeln!(text, "test error over folds: {}", r.test_summary());
    Ok(Done::new(
        pick(format, text, &csv),
        save_model(&ModelDocument::Energy(r.all_nets)),
    ))
}

fn load(dir: &Path, file: &str) -> Result<ModelDocument, Failure> {
    let path = dir.join(file);
    if !path.is_file() {
        return Err(Failure::input(format!(
            "missing model `{}`",
            path.display()
        )));
    }
    load_model(&read(&path)?).map_err(|e| Failure::input(format!("`{}`: {e}", path.display())))
}

fn load_models(dir: &Path) -> Result<(OriginModel, OriginModel, EnergyModel), Failure> {
    let kind = |file: &str, e: FitError| Failure::input(format!("`{file}`: {e}"));
    Ok((
        load(dir, SIMD_MODEL_FILE)?
            .into_origin()
            .map_err(|e| kind(SIMD_MODEL_FILE, e))?,
        load(dir, BUS_MODEL_FILE)?
            .into_origin()
            .map_err(|e| kind(BUS_MODEL_FILE, e))?,
        load(dir, ENERGY_MODEL_FILE)?
            .into_energy()
            .map_err(|e| kind(ENERGY_MODEL_FILE, e))?,
    ))
}

fn predict(
    net: Option<&Path>,
    mac: Option<u64>,
    counters: Option<&Path>,
    models: &Path,
    exclude: &[String],
    format: Format,
) -> Result<Done, Failure> {
    let (c1, c2, energy) = load_models(models)?;
    let inputs: Vec<(String, u64, Option<f64>)> = match (net, mac, counters) {
        (Some(p), _, _) => {
            let spec = parse_network(&read(p)?)?;
            let total = network_costs(&spec)?.total_conv_mac;
            vec![(spec.name, total, None)]
        }
        (_, Some(m), _) => vec![("mac".to_string(), m, None)],
        (_, _, Some(p)) => parse_counters(&read(p)?)?
            .into_iter()
            .map(|r| {
                Ok((
                    r.net.clone(),
                    r.mac.ok_or(FitError::MissingField {
                        net: r.net,
                        field: "mac",
                    })?,
                    r.energy_mj,
                ))
            })
            .collect::<Result<_, FitError>>()?,
        (None, None, None) => {
            return Err(Failure::input(
                "one of --net, --mac or --counters is required",
            ))
        }
    };
    for name in exclude {
        if !inputs.iter().any(|(n, _, _)| n == name) {
            return Err(Failure::input(format!(
                "--exclude `{name}` matches no input row"
            )));
        }
    }
    let mut text = format!(
        "{:<20} {:>16} {:>16} {:>16} {:>14} {:>14} {:>10}\n",
        "net", "mac", "simd_hat", "bus_hat", "energy_hat_mj", "measured_mj", "error_%"
    );
    let mut csv = String::from(
        "net,mac,simd_hat,bus_hat,energy_hat_mj,measured_energy_mj,relative_error_pct\n",
    );
    let (mut all, mut kept) = (Vec::new(), Vec::new());
    for (name, m, measured) in &inputs {
        let p = chain_predict(*m, &c1, &c2, &energy);
        let err = measured
            .map(|a| relative_error(p.energy_mj, a))
            .transpose()?;
        if let Some(e) = err {
            all.push(e);
            if !exclude.contains(name) {
                kept.push(e);
            }
        }
        let opt = |v: Option<f64>, prec: usize| v.map_or(String::new(), |v| format!("{v:.prec$}"));
        let _ = writeln!(
            text,
            "{:<20} {:>16} {:>16.1} {:>16.1} {:>14.2} {:>14} {:>10}",
            name,
            m,
            p.simd,
            p.bus,
            p.energy_mj,
            opt(*measured, 2),
            opt(err, 2)
        );
        let cell = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            name,
            m,
            p.simd,
            p.bus,
            p.energy_mj,
            cell(*measured),
            cell(err)
        );
    }
    if !all.is_empty() {
        let _ = writeln!(
            text,
            "relative error, all rows: {}",
            summarize_errors(&all)?
        );
        if !exclude.is_empty() && !kept.is_empty() {
            let _ = writeln!(
                text,
                "relative error, excluding {}: {}",
                exclude.join(", "),
                summarize_errors(&kept)?
            );
        }
    }
    Ok(Done::new(pick(format, text, &csv), csv))
}

fn report(tables: &str, export: Option<&str>, format: Format) -> Result<Done, Failure> {
    if let Some(set) = export {
        let set: CounterSet = set.parse()?;
        let csv = write_counters(&dataset().counters(set));
        return Ok(Done::new(csv.clone(), csv));
    }
    let tables = parse_tables(tables)?;
    let rep = reproduce_all(&tables);
    let csv = rep.to_csv();
    let mut done = Done::new(pick(format, rep.to_text(), &csv), csv);
    if !rep.passed() {
        let failed: Vec<&str> = rep
            .checks
            .iter()
            .filter(|c| c.status == crate::paperdata::CheckStatus::Fail)
            .map(|c| c.cell.as_str())
            .collect();
        done.code = EXIT_COMPUTE;
        done.failure_note = Some(format!(
            "{} cell(s) outside tolerance: {}",
            failed.len(),
            failed.join("; ")
        ));
    }
    Ok(done)
}

fn correlate(file: &Path, x: &str, y: &str, format: Format) -> Result<Done, Failure> {
    let text = read(file)?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| Failure::input(format!("`{}`: {e}", file.display())))?
        .clone();
    let index = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Failure::input(format!("column `{name}` not found in `{}`", file.display()))
        })
    };
    let (ix, iy) = (index(x)?, index(y)?);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Failure::input(format!("`{}`: {e}", file.display())))?;
        let line = rec.position().map_or(0, |p| p.line());
        let num = |i: usize| {
            rec.get(i)
                .and_then(|v| v.parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    Failure::input(format!(
                        "line {line}: `{}` is not a number",
                        rec.get(i).unwrap_or("")
                    ))
                })
        };
        xs.push(num(ix)?);
        ys.push(num(iy)?);
    }
    let r = pearson(&xs, &ys).map_err(|e| match e {
        TraceError::TooFewPoints(_) => Failure::input(e.to_string()),
        other => Failure::from(other),
    })?;
    let csv = format!("x,y,n,pearson_r\n{x},{y},{},{r}\n", xs.len());
    let text = format!("pearson r({x}, {y}) = {r:.6} (n = {})\n", xs.len());
    Ok(Done::new(pick(format, text, &csv), csv))
}
