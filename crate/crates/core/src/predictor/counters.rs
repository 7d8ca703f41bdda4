use std::fmt;
use std::str::FromStr;

use super::FitError;

/// Per-network Conv-layer totals. Fields not needed by an operation may be absent.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CounterRecord {
    pub net: String,
    pub mac: Option<u64>,
    pub simd: Option<u64>,
    pub bus_access: Option<u64>,
    pub energy_mj: Option<f64>,
    pub time_s: Option<f64>,
}

/// Numeric columns of the counters CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterColumn {
    Mac,
    Simd,
    BusAccess,
    EnergyMj,
    TimeS,
}

impl CounterColumn {
    pub const ALL: [CounterColumn; 5] = [
        CounterColumn::Mac,
        CounterColumn::Simd,
        CounterColumn::BusAccess,
        CounterColumn::EnergyMj,
        CounterColumn::TimeS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CounterColumn::Mac => "mac",
            CounterColumn::Simd => "simd",
            CounterColumn::BusAccess => "bus_access",
            CounterColumn::EnergyMj => "energy_mj",
            CounterColumn::TimeS => "time_s",
        }
    }
}

impl fmt::Display for CounterColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CounterColumn {
    type Err = FitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CounterColumn::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| FitError::UnknownColumn(s.to_string()))
    }
}

impl CounterRecord {
    pub fn get(&self, column: CounterColumn) -> Option<f64> {
        match column {
            CounterColumn::Mac => self.mac.map(|v| v as f64),
            CounterColumn::Simd => self.simd.map(|v| v as f64),
            CounterColumn::BusAccess => self.bus_access.map(|v| v as f64),
            CounterColumn::EnergyMj => self.energy_mj,
            CounterColumn::TimeS => self.time_s,
        }
    }

    /// Like [`CounterRecord::get`] but absent values are an error.
    pub fn require(&self, column: CounterColumn) -> Result<f64, FitError> {
        self.get(column).ok_or_else(|| FitError::MissingField {
            net: self.net.clone(),
            field: column.name(),
        })
    }
}

const HEADER: [&str; 6] = ["net", "mac", "simd", "bus_access", "energy_mj", "time_s"];

/// Parses `net,mac,simd,bus_access,energy_mj,time_s`; empty cells are absent values.
pub fn parse_counters(text: &str) -> Result<Vec<CounterRecord>, FitError> {
    let bad = |e: csv::Error| FitError::Counters(e.to_string());
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = rdr.headers().map_err(bad)?.clone();
    if header.iter().ne(HEADER) {
        return Err(FitError::Counters(format!(
            "header must be `{}`, got `{}`",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(bad)?;
        let line = rec.position().map_or(0, |p| p.line());
        let err = |col: &str, v: &str| FitError::Counters(format!("line {line}: bad {col} `{v}`"));
        let count = |i: usize| -> Result<Option<u64>, FitError> {
            match &rec[i] {
                "" => Ok(None),
                v => v.parse().map(Some).map_err(|_| err(HEADER[i], v)),
            }
        };
        let positive = |i: usize| -> Result<Option<f64>, FitError> {
            match &rec[i] {
                "" => Ok(None),
                v => match v.parse::<f64>() {
                    Ok(x) if x > 0.0 && x.is_finite() => Ok(Some(x)),
                    _ => Err(err(HEADER[i], v)),
                },
            }
        };
        if rec[0].is_empty() {
            return Err(FitError::Counters(format!("line {line}: empty net name")));
        }
        out.push(CounterRecord {
            net: rec[0].to_string(),
            mac: count(1)?,
            simd: count(2)?,
            bus_access: count(3)?,
            energy_mj: positive(4)?,
            time_s: positive(5)?,
        });
    }
    Ok(out)
}

pub fn write_counters(records: &[CounterRecord]) -> String {
    fn cell<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.net.clone(),
            cell(r.mac),
            cell(r.simd),
            cell(r.bus_access),
            cell(r.energy_mj),
            cell(r.time_s),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}
