use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "conv-energy",
    version,
    about = "Energy profiling and prediction for ConvNet inference"
)]
pub struct Cli {
    /// Write the machine-readable result to FILE (CSV, or JSON for `fit`).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Format of the report printed on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// `y = c * x`.
    Origin1,
    /// `y = x1 * a + x2 * b`.
    Energy2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-layer MAC and storage costs of a network description.
    Cost {
        /// Network description (JSON).
        netfile: PathBuf,
    },
    /// Energy of a power trace, whole or per marker interval.
    Energy {
        /// Trace CSV: `t_s` followed by channel columns in mW.
        tracefile: PathBuf,
        /// Marker CSV: `label,start_s,end_s`.
        #[arg(long)]
        markers: Option<PathBuf>,
        /// Rail to integrate (VDD_IN, VDD_CPU, VDD_GPU); defaults to VDD_IN when present.
        #[arg(long)]
        channel: Option<String>,
        /// Idle window `t0:t1` whose average power is reported as the baseline.
        #[arg(long, value_name = "T0:T1")]
        baseline_window: Option<String>,
        /// Single window `t0:t1` to integrate when no markers are given.
        #[arg(long, value_name = "T0:T1", conflicts_with = "markers")]
        window: Option<String>,
    },
    /// Fit a through-origin regression on a counters CSV.
    Fit {
        /// Counters CSV: `net,mac,simd,bus_access,energy_mj,time_s`.
        counters: PathBuf,
        #[arg(long, value_enum)]
        model: ModelKind,
        /// Regressor column (energy2 default: bus_access).
        #[arg(long)]
        x: Option<String>,
        /// Response column (energy2 default: energy_mj).
        #[arg(long)]
        y: Option<String>,
        /// Second regressor column, energy2 only (default: simd).
        #[arg(long)]
        x2: Option<String>,
        /// Leave-one-out cross-validation over the rows (energy2 only).
        #[arg(long)]
        loocv: bool,
    },
    /// Predict SIMD count, bus accesses and energy from MAC counts.
    #[command(group = ArgGroup::new("input").required(true).multiple(false))]
    Predict {
        /// Network description; its total conv MAC count is used.
        #[arg(long, group = "input")]
        net: Option<PathBuf>,
        /// A MAC count.
        #[arg(long, group = "input")]
        mac: Option<u64>,
        /// Counters CSV; rows with energy_mj also get relative errors.
        #[arg(long, group = "input")]
        counters: Option<PathBuf>,
        /// Directory holding simd_from_mac.json, bus_from_simd.json and energy.json.
        #[arg(long)]
        models: PathBuf,
        /// Net left out of the error summary (repeatable).
        #[arg(long)]
        exclude: Vec<String>,
    },
    /// Recompute the published tables and compare cell by cell.
    Report {
        /// Comma-separated list from 2, 3, 4, 5, aggregates.
        #[arg(long, default_value = "2,3,4,5,aggregates")]
        tables: String,
        /// Print the embedded counters (training or all) instead of a report.
        #[arg(long, value_name = "SET")]
        export_counters: Option<String>,
    },
    /// Pearson correlation between two numeric CSV columns.
    Correlate {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}
