use std::fmt;
use std::str::FromStr;

use super::{dataset, Aggregate, CounterSet, Discrepancy, PaperDataError, TableId};
use crate::predictor::{
    chain_predict, fit_origin_1d, loocv, predict_energy, relative_error, summarize_errors,
    EnergyModel, LoocvReport, OriginModel,
};

/// A unit of reproduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReportTable {
    Table2,
    Table3,
    Table4,
    Table5,
    Aggregates,
}

impl ReportTable {
    pub const ALL: [ReportTable; 5] = [
        ReportTable::Table2,
        ReportTable::Table3,
        ReportTable::Table4,
        ReportTable::Table5,
        ReportTable::Aggregates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReportTable::Table2 => "2",
            ReportTable::Table3 => "3",
            ReportTable::Table4 => "4",
            ReportTable::Table5 => "5",
            ReportTable::Aggregates => "aggregates",
        }
    }
}

impl fmt::Display for ReportTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReportTable {
    type Err = PaperDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReportTable::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| PaperDataError::UnknownTable(s.trim().to_string()))
    }
}

/// Parses a comma-separated list; duplicates collapse, order is kept.
pub fn parse_tables(list: &str) -> Result<Vec<ReportTable>, PaperDataError> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let t: ReportTable = part.parse()?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

/// How a recomputed value is compared to the printed one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// `|r - p| / |p| <= limit`.
    Relative(f64),
    /// `|r - p| <= limit`.
    Absolute(f64),
    /// The recomputed value truncated to `decimals` equals the printed one.
    Truncated(u32),
}

impl Tolerance {
    pub fn deviation(self, published: f64, recomputed: f64) -> f64 {
        match self {
            Tolerance::Relative(_) => (recomputed - published).abs() / published.abs(),
            Tolerance::Absolute(_) => (recomputed - published).abs(),
            Tolerance::Truncated(d) => {
                let s = 10f64.powi(d as i32);
                ((recomputed * s).trunc() / s - published).abs()
            }
        }
    }

    pub fn admits(self, deviation: f64) -> bool {
        match self {
            Tolerance::Relative(l) | Tolerance::Absolute(l) => deviation <= l,
            Tolerance::Truncated(_) => deviation <= 1e-9,
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Relative(l) => write!(f, "rel {}%", l * 100.0),
            Tolerance::Absolute(l) => write!(f, "abs {l}"),
            Tolerance::Truncated(d) => write!(f, "trunc {d}dp"),
        }
    }
}

/// The kinds of derivable cell. Each has exactly one tolerance, listed in
/// [`CellKind::tolerance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    FoldCoefficient,
    AllNetsCoefficient,
    FoldPredictedEnergy,
    FoldTestError,
    TrainErrorMean,
    TrainErrorStddev,
    SimdSlope,
    PredictedSimd,
    BusSlope,
    PredictedBus,
    ChainedEnergy,
    RowRelativeError,
    AggregateMeanFine,
    AggregateMean,
    AggregateStddev,
}

impl CellKind {
    pub const ALL: [CellKind; 15] = [
        CellKind::FoldCoefficient,
        CellKind::AllNetsCoefficient,
        CellKind::FoldPredictedEnergy,
        CellKind::FoldTestError,
        CellKind::TrainErrorMean,
        CellKind::TrainErrorStddev,
        CellKind::SimdSlope,
        CellKind::PredictedSimd,
        CellKind::BusSlope,
        CellKind::PredictedBus,
        CellKind::ChainedEnergy,
        CellKind::RowRelativeError,
        CellKind::AggregateMeanFine,
        CellKind::AggregateMean,
        CellKind::AggregateStddev,
    ];

    /// The tolerance table. Coefficients print to three significant figures
    /// and errors to two decimals; the limits sit just above that rounding
    /// except where refitting legitimately moves a value.
    pub const fn tolerance(self) -> Tolerance {
        match self {
            // refit coefficients of one fold
            CellKind::FoldCoefficient => Tolerance::Relative(0.01),
            // refit coefficients of the whole pool
            CellKind::AllNetsCoefficient => Tolerance::Relative(0.10),
            // printed coefficients applied to measured counters
            CellKind::FoldPredictedEnergy => Tolerance::Relative(0.005),
            // percentage points
            CellKind::FoldTestError => Tolerance::Absolute(0.3),
            CellKind::TrainErrorMean => Tolerance::Absolute(0.7),
            CellKind::TrainErrorStddev => Tolerance::Absolute(0.7),
            // the slope is printed as 0.24
            CellKind::SimdSlope => Tolerance::Truncated(2),
            CellKind::PredictedSimd => Tolerance::Relative(0.005),
            CellKind::BusSlope => Tolerance::Relative(0.01),
            CellKind::PredictedBus => Tolerance::Relative(0.01),
            CellKind::ChainedEnergy => Tolerance::Relative(0.01),
            // percentage points; printed errors are cut, not rounded, to two decimals
            CellKind::RowRelativeError => Tolerance::Absolute(0.02),
            CellKind::AggregateMeanFine => Tolerance::Absolute(0.02),
            CellKind::AggregateMean => Tolerance::Absolute(0.05),
            CellKind::AggregateStddev => Tolerance::Absolute(0.05),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CellKind::FoldCoefficient => "fold_coefficient",
            CellKind::AllNetsCoefficient => "all_nets_coefficient",
            CellKind::FoldPredictedEnergy => "fold_predicted_energy",
            CellKind::FoldTestError => "fold_test_error",
            CellKind::TrainErrorMean => "train_error_mean",
            CellKind::TrainErrorStddev => "train_error_stddev",
            CellKind::SimdSlope => "simd_slope",
            CellKind::PredictedSimd => "predicted_simd",
            CellKind::BusSlope => "bus_slope",
            CellKind::PredictedBus => "predicted_bus",
            CellKind::ChainedEnergy => "chained_energy",
            CellKind::RowRelativeError => "row_relative_error",
            CellKind::AggregateMeanFine => "aggregate_mean_fine",
            CellKind::AggregateMean => "aggregate_mean",
            CellKind::AggregateStddev => "aggregate_stddev",
        }
    }
}

impl FromStr for CellKind {
    type Err = PaperDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CellKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| PaperDataError::Report(format!("unknown cell kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Outside tolerance, and the printed value is a documented misprint.
    Discrepancy,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Discrepancy => "discrepancy",
        }
    }
}

impl FromStr for CheckStatus {
    type Err = PaperDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pass" => Ok(CheckStatus::Pass),
            "FAIL" => Ok(CheckStatus::Fail),
            "discrepancy" => Ok(CheckStatus::Discrepancy),
            other => Err(PaperDataError::Report(format!("unknown status `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    pub table: ReportTable,
    pub cell: String,
    pub kind: CellKind,
    pub published: f64,
    pub recomputed: f64,
    /// In the units of the kind's tolerance.
    pub deviation: f64,
    pub status: CheckStatus,
    pub note: Option<String>,
}

impl CellCheck {
    fn new(
        table: ReportTable,
        cell: String,
        kind: CellKind,
        published: f64,
        recomputed: f64,
    ) -> Self {
        let tol = kind.tolerance();
        let deviation = tol.deviation(published, recomputed);
        let status = if tol.admits(deviation) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            table,
            cell,
            kind,
            published,
            recomputed,
            deviation,
            status,
            note: None,
        }
    }

    /// A failure against a documented misprint becomes a discrepancy.
    fn known(mut self, d: Option<&Discrepancy>) -> Self {
        if let Some(d) = d {
            if self.status == CheckStatus::Fail {
                self.status = CheckStatus::Discrepancy;
            }
            self.note = Some(d.note.to_string());
        }
        self
    }

    fn noted(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Reproduction {
    pub checks: Vec<CellCheck>,
    /// Table-level remarks that are not single cells.
    pub notes: Vec<String>,
}

const CSV_HEADER: [&str; 9] = [
    "table",
    "cell",
    "kind",
    "published",
    "recomputed",
    "deviation",
    "tolerance",
    "status",
    "note",
];

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn find(&self, cell: &str) -> Option<&CellCheck> {
        self.checks.iter().find(|c| c.cell == cell)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut current = None;
        for c in &self.checks {
            if current != Some(c.table) {
                current = Some(c.table);
                s.push_str(&format!("== table {} ==\n", c.table));
            }
            s.push_str(&format!(
                "{:<11} {:<58} published {:>14}  recomputed {:>14}  deviation {:>10}  ({})\n",
                c.status.name(),
                c.cell,
                num(c.published),
                num(c.recomputed),
                num(c.deviation),
                c.kind.tolerance()
            ));
            if let Some(n) = &c.note {
                s.push_str(&format!("            note: {n}\n"));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s.push_str(&format!(
            "{} pass, {} fail, {} documented discrepancies\n",
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::Discrepancy)
        ));
        s
    }

    /// Full-precision CSV of the cell checks; notes are not included.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                c.table.name().to_string(),
                c.cell.clone(),
                c.kind.name().to_string(),
                c.published.to_string(),
                c.recomputed.to_string(),
                c.deviation.to_string(),
                c.kind.tolerance().to_string(),
                c.status.name().to_string(),
                c.note.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn from_csv(text: &str) -> Result<Self, PaperDataError> {
        let bad = |e: &dyn fmt::Display| PaperDataError::Report(e.to_string());
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        if rdr.headers().map_err(|e| bad(&e))?.iter().ne(CSV_HEADER) {
            return Err(PaperDataError::Report("unexpected header".into()));
        }
        let mut checks = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| bad(&e))?;
            let f = |i: usize| rec[i].parse::<f64>().map_err(|e| bad(&e));
            let kind: CellKind = rec[2].parse()?;
            if rec[6] != kind.tolerance().to_string() {
                return Err(PaperDataError::Report(format!(
                    "tolerance `{}` does not match kind",
                    &rec[6]
                )));
            }
            checks.push(CellCheck {
                table: rec[0].parse()?,
                cell: rec[1].to_string(),
                kind,
                published: f(3)?,
                recomputed: f(4)?,
                deviation: f(5)?,
                status: rec[7].parse()?,
                note: (!rec[8].is_empty()).then(|| rec[8].to_string()),
            });
        }
        Ok(Reproduction {
            checks,
            notes: Vec::new(),
        })
    }
}

fn num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() < 1e-3 {
        format!("{v:.4e}")
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        format!("{v:.4}")
    }
}

/// The models refitted from the embedded training counters.
struct Refit {
    simd_from_mac: OriginModel,
    bus_from_simd: OriginModel,
    energy: LoocvReport,
}

fn refit() -> Refit {
    let train = dataset().counters(CounterSet::Training);
    let pairs = |f: &dyn Fn(&crate::predictor::CounterRecord) -> (f64, f64)| -> Vec<(f64, f64)> {
        train.iter().map(f).collect()
    };
    let mac_simd = pairs(&|r| (r.mac.unwrap() as f64, r.simd.unwrap() as f64));
    let simd_bus = pairs(&|r| (r.simd.unwrap() as f64, r.bus_access.unwrap() as f64));
    Refit {
        simd_from_mac: fit_origin_1d(&mac_simd).expect("embedded training pairs fit"),
        bus_from_simd: fit_origin_1d(&simd_bus).expect("embedded training pairs fit"),
        energy: loocv(&train).expect("embedded training pool fits"),
    }
}

fn rel(predicted: f64, actual: f64) -> f64 {
    relative_error(predicted, actual).expect("printed measurements are positive")
}

/// Recomputes every derivable cell of `table`.
pub fn reproduce(table: ReportTable) -> Reproduction {
    let fit = refit();
    match table {
        ReportTable::Table2 => table2(&fit),
        ReportTable::Table3 => table3(&fit),
        ReportTable::Table4 => table4(&fit),
        ReportTable::Table5 => table5(&fit),
        ReportTable::Aggregates => aggregates(),
    }
}

pub fn reproduce_all(tables: &[ReportTable]) -> Reproduction {
    let mut out = Reproduction::default();
    for &t in tables {
        let r = reproduce(t);
        out.checks.extend(r.checks);
        out.notes.extend(r.notes);
    }
    out
}

fn table2(fit: &Refit) -> Reproduction {
    let d = dataset();
    let t = ReportTable::Table2;
    let mut checks = Vec::new();
    for row in d.table2 {
        let fold = fit
            .energy
            .folds
            .iter()
            .find(|f| f.excluded == row.net)
            .expect("one fold per training net");
        let e = d.lookup(row.net).expect("known net");
        let (bus, simd) = (
            e.bus_access().unwrap().value as f64,
            e.simd().unwrap().value as f64,
        );
        let train = fold.train_summary();
        let n = row.net;
        checks.extend([
            CellCheck::new(
                t,
                format!("{n}: x1"),
                CellKind::FoldCoefficient,
                row.bus_coef,
                fold.model.bus_coef,
            ),
            CellCheck::new(
                t,
                format!("{n}: x2"),
                CellKind::FoldCoefficient,
                row.simd_coef,
                fold.model.simd_coef,
            ),
            CellCheck::new(
                t,
                format!("{n}: predicted energy"),
                CellKind::FoldPredictedEnergy,
                row.predicted_energy_mj,
                predict_energy(bus, simd, &EnergyModel::new(row.bus_coef, row.simd_coef)),
            ),
            CellCheck::new(
                t,
                format!("{n}: train error mean"),
                CellKind::TrainErrorMean,
                row.train_error.0,
                train.mean,
            ),
            CellCheck::new(
                t,
                format!("{n}: train error stddev"),
                CellKind::TrainErrorStddev,
                row.train_error.1,
                train.stddev,
            ),
            CellCheck::new(
                t,
                format!("{n}: test error"),
                CellKind::FoldTestError,
                row.test_error,
                fold.test_error,
            ),
        ]);
    }
    let all = &d.table2_all_nets;
    let summary = fit.energy.all_train_summary();
    checks.extend([
        CellCheck::new(
            t,
            "allNets: x1".into(),
            CellKind::AllNetsCoefficient,
            all.bus_coef,
            fit.energy.all_nets.bus_coef,
        ),
        CellCheck::new(
            t,
            "allNets: x2".into(),
            CellKind::AllNetsCoefficient,
            all.simd_coef,
            fit.energy.all_nets.simd_coef,
        ),
        CellCheck::new(
            t,
            "allNets: train error mean".into(),
            CellKind::TrainErrorMean,
            all.train_error.0,
            summary.mean,
        ),
        CellCheck::new(
            t,
            "allNets: train error stddev".into(),
            CellKind::TrainErrorStddev,
            all.train_error.1,
            summary.stddev,
        ),
    ]);
    Reproduction {
        checks,
        notes: Vec::new(),
    }
}

fn table3(fit: &Refit) -> Reproduction {
    let d = dataset();
    let t = ReportTable::Table3;
    let mut checks = vec![CellCheck::new(
        t,
        "slope c1".into(),
        CellKind::SimdSlope,
        super::SIMD_SLOPE_TEXT,
        fit.simd_from_mac.slope,
    )];
    for row in d.table3 {
        let n = row.net;
        checks.push(CellCheck::new(
            t,
            format!("{n}: predicted SIMD"),
            CellKind::PredictedSimd,
            row.predicted_simd as f64,
            fit.simd_from_mac.predict(row.mac as f64),
        ));
        checks.push(
            CellCheck::new(
                t,
                format!("{n}: relative error"),
                CellKind::RowRelativeError,
                row.relative_error,
                rel(row.predicted_simd as f64, row.measured_simd as f64),
            )
            .known(d.discrepancy(TableId::Table3, Some(n), "relative_error")),
        );
    }
    Reproduction {
        checks,
        notes: Vec::new(),
    }
}

fn table4(fit: &Refit) -> Reproduction {
    let d = dataset();
    let t = ReportTable::Table4;
    let mut checks = vec![CellCheck::new(
        t,
        "slope c2".into(),
        CellKind::BusSlope,
        super::BUS_SLOPE_TEXT,
        fit.bus_from_simd.slope,
    )];
    for row in d.table4 {
        let n = row.net;
        let simd_hat = d
            .lookup(n)
            .and_then(|e| e.simd_hat())
            .expect("SIMD row")
            .value as f64;
        let bus_hat = fit.bus_from_simd.predict(simd_hat);
        let typo = d.discrepancy(TableId::Table4, Some(n), "predicted_bus");
        checks.push(
            CellCheck::new(
                t,
                format!("{n}: predicted bus"),
                CellKind::PredictedBus,
                row.predicted_bus as f64,
                bus_hat,
            )
            .known(typo),
        );
        if let Some(c) = row.predicted_bus_corrected {
            checks.push(
                CellCheck::new(
                    t,
                    format!("{n}: predicted bus (corrected)"),
                    CellKind::PredictedBus,
                    c as f64,
                    bus_hat,
                )
                .noted("compared against the corrected value"),
            );
        }
        checks.push(CellCheck::new(
            t,
            format!("{n}: relative error"),
            CellKind::RowRelativeError,
            row.relative_error,
            rel(row.predicted_bus_value() as f64, row.measured_bus as f64),
        ));
    }
    let notes = d
        .discrepancies
        .iter()
        .filter(|x| x.table == TableId::Table4 && x.net.is_none())
        .map(|x| x.note.to_string())
        .collect();
    Reproduction { checks, notes }
}

fn table5(fit: &Refit) -> Reproduction {
    let d = dataset();
    let t = ReportTable::Table5;
    let all = &d.table2_all_nets;
    let energy = EnergyModel::new(all.bus_coef, all.simd_coef);
    let mut checks = Vec::new();
    for row in d.table5 {
        let n = row.net;
        let mac = d.lookup(n).and_then(|e| e.mac()).expect("MAC row").value;
        let p = chain_predict(mac, &fit.simd_from_mac, &fit.bus_from_simd, &energy);
        checks.push(CellCheck::new(
            t,
            format!("{n}: predicted energy"),
            CellKind::ChainedEnergy,
            row.predicted_energy_mj,
            p.energy_mj,
        ));
        checks.push(CellCheck::new(
            t,
            format!("{n}: relative error"),
            CellKind::RowRelativeError,
            row.relative_error,
            rel(row.predicted_energy_mj, row.measured_energy_mj),
        ));
    }
    Reproduction {
        checks,
        notes: vec![format!(
            "chained predictions use the printed whole-pool coefficients x1 = {:e}, x2 = {:e}",
            all.bus_coef, all.simd_coef
        )],
    }
}

fn aggregates() -> Reproduction {
    let d = dataset();
    let t = ReportTable::Aggregates;
    let mobile = |n: &str| n == "MobileNet-224";
    let groups: [(Aggregate, Vec<f64>, CellKind); 7] = [
        (
            super::TABLE2_TEST_AGGREGATE,
            d.table2.iter().map(|r| r.test_error).collect(),
            CellKind::AggregateMeanFine,
        ),
        (
            super::TABLE3_ALL_AGGREGATE,
            d.table3.iter().map(|r| r.relative_error).collect(),
            CellKind::AggregateMeanFine,
        ),
        (
            super::TABLE3_TEST_AGGREGATE,
            d.table3
                .iter()
                .filter(|r| !r.training)
                .map(|r| r.relative_error)
                .collect(),
            CellKind::AggregateMeanFine,
        ),
        (
            super::TABLE4_WITHOUT_MOBILENET,
            d.table4
                .iter()
                .filter(|r| !mobile(r.net))
                .map(|r| r.relative_error)
                .collect(),
            CellKind::AggregateMean,
        ),
        (
            super::TABLE4_WITH_MOBILENET,
            d.table4.iter().map(|r| r.relative_error).collect(),
            CellKind::AggregateMean,
        ),
        (
            super::TABLE5_WITHOUT_MOBILENET,
            d.table5
                .iter()
                .filter(|r| !mobile(r.net))
                .map(|r| r.relative_error)
                .collect(),
            CellKind::AggregateMean,
        ),
        (
            super::TABLE5_WITH_MOBILENET,
            d.table5.iter().map(|r| r.relative_error).collect(),
            CellKind::AggregateMean,
        ),
    ];
    let mut checks = Vec::new();
    for (agg, errors, mean_kind) in groups {
        let s = summarize_errors(&errors).expect("non-empty group");
        let label = format!("{}: {}", agg.table, agg.label);
        let known = d
            .discrepancy(agg.table, None, "aggregate_with_mobilenet")
            .filter(|_| agg.label == super::TABLE5_WITH_MOBILENET.label);
        checks.push(
            CellCheck::new(t, format!("{label} mean"), mean_kind, agg.mean, s.mean).known(known),
        );
        checks.push(
            CellCheck::new(
                t,
                format!("{label} stddev"),
                CellKind::AggregateStddev,
                agg.stddev,
                s.stddev,
            )
            .known(known),
        );
        if let Some(k) = known {
            let corrected_mean = k.corrected.expect("transposition carries a correction");
            checks.push(
                CellCheck::new(
                    t,
                    format!("{label} mean (corrected)"),
                    mean_kind,
                    corrected_mean,
                    s.mean,
                )
                .noted("printed stddev read as the mean"),
            );
            checks.push(
                CellCheck::new(
                    t,
                    format!("{label} stddev (corrected)"),
                    CellKind::AggregateStddev,
                    agg.mean,
                    s.stddev,
                )
                .noted("printed mean read as the stddev"),
            );
        }
    }
    Reproduction {
        checks,
        notes: vec![
            "aggregates are recomputed from the printed per-row errors with the sample stddev"
                .into(),
        ],
    }
}
