//! The published measurement tables, embedded read-only, and a reproduction
//! engine that recomputes every derivable cell with the [`crate::predictor`]
//! operations.
//!
//! Values are stored per table exactly as printed. Where two tables print the
//! same quantity with different rounding (e.g. googleNet energy 2072.48 and
//! 2072.49) both are kept. Known misprints keep the printed value next to the
//! correction; see [`DISCREPANCIES`].

mod networks;
mod reproduce;
#[rustfmt::skip]
mod tables;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::predictor::CounterRecord;

pub use networks::{bundled_network, BUNDLED_NETWORKS};
pub use reproduce::{
    parse_tables, reproduce, reproduce_all, CellCheck, CellKind, CheckStatus, ReportTable,
    Reproduction, Tolerance,
};
pub use tables::{
    AllNetsRow, BusRow, ChainRow, CorrelationRow, FoldRow, PaperNet, SimdRow, BASELINE_POWER_MW,
    BUS_SLOPE_TEXT, CORRELATION, DISCREPANCIES, SIMD_SLOPE_TEXT, TABLE1, TABLE2, TABLE2_ALL_NETS,
    TABLE2_TEST_AGGREGATE, TABLE3, TABLE3_ALL_AGGREGATE, TABLE3_TEST_AGGREGATE, TABLE4,
    TABLE4_WITHOUT_MOBILENET, TABLE4_WITH_MOBILENET, TABLE5, TABLE5_WITHOUT_MOBILENET,
    TABLE5_WITH_MOBILENET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaperDataError {
    #[error("unknown table `{0}` (expected 2, 3, 4, 5 or aggregates)")]
    UnknownTable(String),
    #[error("unknown counter set `{0}` (expected training or all)")]
    UnknownCounterSet(String),
    #[error("bad reproduction report: {0}")]
    Report(String),
}

/// The table a stored value was transcribed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    /// Model zoo summary.
    Table1,
    /// Energy regression, leave-one-out folds.
    Table2,
    /// SIMD prediction.
    Table3,
    /// Bus access prediction.
    Table4,
    /// Chained energy prediction.
    Table5,
    /// Time/energy correlation.
    Correlation,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::Table1 => "table1",
            TableId::Table2 => "table2",
            TableId::Table3 => "table3",
            TableId::Table4 => "table4",
            TableId::Table5 => "table5",
            TableId::Correlation => "correlation",
        })
    }
}

/// A value together with the table it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tagged<T> {
    pub value: T,
    pub table: TableId,
}

fn tag<T>(table: TableId, value: T) -> Tagged<T> {
    Tagged { value, table }
}

/// A printed "mean ± stddev" row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub table: TableId,
    pub label: &'static str,
    pub mean: f64,
    pub stddev: f64,
}

impl Aggregate {
    pub const fn new(table: TableId, label: &'static str, mean: f64, stddev: f64) -> Self {
        Self {
            table,
            label,
            mean,
            stddev,
        }
    }
}

/// A printed value that disagrees with the cells it is derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub table: TableId,
    /// `None` for column- or table-level issues.
    pub net: Option<&'static str>,
    pub field: &'static str,
    /// NaN when the issue is not a single number.
    pub published: f64,
    pub corrected: Option<f64>,
    pub note: &'static str,
}

/// Canonical network keys and the other spellings used across the tables.
pub const NETS: [(&str, &[&str]); 11] = [
    ("alexNet", &["AlexNet"]),
    ("resNet-50", &["resNet50", "ResNet50", "Residual Net"]),
    ("squeezeNet", &["SqueezeNet"]),
    ("googleNet", &["GoogleNet", "GoogLeNet"]),
    ("squeezenetRes", &["squeezeNetRes"]),
    ("vgg-small", &["vggNet-small", "VGG"]),
    (
        "MobileNet-224",
        &["MobileNet", "mobileNet", "MobileNet-v1-224"],
    ),
    ("Places-CNDS-8s", &["Places-CDNS-8s"]),
    ("ALL-CNN-C", &[]),
    ("Inception-BN", &[]),
    ("sqCompressed", &["SqueezeNet with Deep Compression"]),
];

/// The six networks the regressions are trained on.
pub const TRAINING_NETS: [&str; 6] = [
    "alexNet",
    "resNet-50",
    "squeezeNet",
    "googleNet",
    "squeezenetRes",
    "vgg-small",
];

/// The held-out networks of the SIMD and chained experiments.
pub const TEST_NETS: [&str; 4] = [
    "MobileNet-224",
    "Places-CNDS-8s",
    "ALL-CNN-C",
    "Inception-BN",
];

fn normalise(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Resolves any known spelling to the canonical key.
pub fn canonical_net(name: &str) -> Option<&'static str> {
    let n = normalise(name);
    NETS.iter()
        .find(|(key, aliases)| normalise(key) == n || aliases.iter().any(|a| normalise(a) == n))
        .map(|(key, _)| *key)
}

/// Everything stored under one name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub key: &'static str,
    pub table1: Option<&'static PaperNet>,
    pub table2: Option<&'static FoldRow>,
    pub table3: Option<&'static SimdRow>,
    pub table4: Option<&'static BusRow>,
    pub table5: Option<&'static ChainRow>,
    pub correlation: Option<&'static CorrelationRow>,
}

impl Entry {
    pub fn mac(&self) -> Option<Tagged<u64>> {
        self.table3.map(|r| tag(SimdRow::TABLE, r.mac))
    }

    pub fn simd(&self) -> Option<Tagged<u64>> {
        self.table3.map(|r| tag(SimdRow::TABLE, r.measured_simd))
    }

    pub fn bus_access(&self) -> Option<Tagged<u64>> {
        self.table4.map(|r| tag(BusRow::TABLE, r.measured_bus))
    }

    /// Measured energy from every table that prints it, in table order.
    pub fn energy_mj(&self) -> Vec<Tagged<f64>> {
        let mut v = Vec::new();
        if let Some(r) = self.table2 {
            v.push(tag(FoldRow::TABLE, r.measured_energy_mj));
        }
        if let Some(r) = self.table5 {
            v.push(tag(ChainRow::TABLE, r.measured_energy_mj));
        }
        v
    }

    pub fn time_s(&self) -> Vec<Tagged<f64>> {
        let mut v = Vec::new();
        if let Some(r) = self.table2 {
            v.push(tag(FoldRow::TABLE, r.time_s));
        }
        if let Some(r) = self.table5 {
            v.push(tag(ChainRow::TABLE, r.time_s));
        }
        v
    }

    pub fn simd_hat(&self) -> Option<Tagged<u64>> {
        self.table3.map(|r| tag(SimdRow::TABLE, r.predicted_simd))
    }

    /// Printed value, with the correction where one is known.
    pub fn bus_hat(&self) -> Option<(Tagged<u64>, Option<u64>)> {
        self.table4.map(|r| {
            (
                tag(BusRow::TABLE, r.predicted_bus),
                r.predicted_bus_corrected,
            )
        })
    }

    pub fn energy_hat_mj(&self) -> Vec<Tagged<f64>> {
        let mut v = Vec::new();
        if let Some(r) = self.table2 {
            v.push(tag(FoldRow::TABLE, r.predicted_energy_mj));
        }
        if let Some(r) = self.table5 {
            v.push(tag(ChainRow::TABLE, r.predicted_energy_mj));
        }
        v
    }

    pub fn pearson_r(&self) -> Option<Tagged<f64>> {
        self.correlation
            .map(|r| tag(CorrelationRow::TABLE, r.pearson_r))
    }
}

/// The embedded record set.
#[derive(Debug)]
pub struct Dataset {
    pub table1: &'static [PaperNet],
    pub table2: &'static [FoldRow],
    pub table2_all_nets: AllNetsRow,
    pub table3: &'static [SimdRow],
    pub table4: &'static [BusRow],
    pub table5: &'static [ChainRow],
    pub correlation: &'static [CorrelationRow],
    pub aggregates: &'static [Aggregate],
    pub discrepancies: &'static [Discrepancy],
}

static DATASET: Dataset = Dataset {
    table1: &TABLE1,
    table2: &TABLE2,
    table2_all_nets: TABLE2_ALL_NETS,
    table3: &TABLE3,
    table4: &TABLE4,
    table5: &TABLE5,
    correlation: &CORRELATION,
    aggregates: &[
        TABLE2_TEST_AGGREGATE,
        TABLE3_ALL_AGGREGATE,
        TABLE3_TEST_AGGREGATE,
        TABLE4_WITHOUT_MOBILENET,
        TABLE4_WITH_MOBILENET,
        TABLE5_WITHOUT_MOBILENET,
        TABLE5_WITH_MOBILENET,
    ],
    discrepancies: &DISCREPANCIES,
};

pub fn dataset() -> &'static Dataset {
    &DATASET
}

impl Dataset {
    /// Looks up a network (any spelling) or a correlation configuration label.
    pub fn lookup(&self, name: &str) -> Option<Entry> {
        if let Some(key) = canonical_net(name) {
            return Some(Entry {
                key,
                table1: self.table1.iter().find(|r| r.name == key),
                table2: self.table2.iter().find(|r| r.net == key),
                table3: self.table3.iter().find(|r| r.net == key),
                table4: self.table4.iter().find(|r| r.net == key),
                table5: self.table5.iter().find(|r| r.net == key),
                correlation: None,
            });
        }
        let n = normalise(name);
        self.correlation
            .iter()
            .find(|r| normalise(r.config) == n)
            .map(|r| Entry {
                key: r.config,
                table1: None,
                table2: None,
                table3: None,
                table4: None,
                table5: None,
                correlation: Some(r),
            })
    }

    pub fn discrepancy(
        &self,
        table: TableId,
        net: Option<&str>,
        field: &str,
    ) -> Option<&'static Discrepancy> {
        self.discrepancies
            .iter()
            .find(|d| d.table == table && d.net == net && d.field == field)
    }

    /// Counter records for export, in the order of the SIMD table.
    pub fn counters(&self, set: CounterSet) -> Vec<CounterRecord> {
        self.table3
            .iter()
            .filter(|r| set == CounterSet::All || r.training)
            .map(|r| {
                let e = self.lookup(r.net).expect("every SIMD-table net is known");
                let (energy, time) = match set {
                    CounterSet::Training => {
                        let f = e.table2.expect("training nets have fold rows");
                        (f.measured_energy_mj, f.time_s)
                    }
                    CounterSet::All => {
                        let c = e.table5.expect("every net has a chained row");
                        (c.measured_energy_mj, c.time_s)
                    }
                };
                CounterRecord {
                    net: r.net.to_string(),
                    mac: Some(r.mac),
                    simd: Some(r.measured_simd),
                    bus_access: e.bus_access().map(|t| t.value),
                    energy_mj: Some(energy),
                    time_s: Some(time),
                }
            })
            .collect()
    }
}

/// Which networks, and which table's energy and time, an export uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterSet {
    /// The six training nets, with energy and time from the fold table.
    Training,
    /// All ten nets, with energy and time from the chained-prediction table.
    All,
}

impl FromStr for CounterSet {
    type Err = PaperDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "training" => Ok(CounterSet::Training),
            "all" => Ok(CounterSet::All),
            other => Err(PaperDataError::UnknownCounterSet(other.to_string())),
        }
    }
}
