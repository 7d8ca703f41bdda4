//! Power traces, annotation markers and the energy computed from them.
//!
//! Units are fixed throughout: seconds, milliwatts, millijoules
//! (mW x s = mJ).

mod correlation;
mod energy;
mod markers;
#[cfg(test)]
mod properties;
mod runs;
mod trace;

pub use correlation::pearson;
pub use energy::{baseline_power, integrate, interval_energy, EnergyReport, EnergyRow};
pub use markers::{parse_markers, Marker, MarkerSet};
pub use runs::{select_run, Run, RunSummary};
pub use trace::{parse_trace, Channel, PowerTrace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraceError {
    #[error("csv error: {0}")]
    Csv(String),
    #[error("header must start with `t_s` followed by channel columns, got {0:?}")]
    Header(Vec<String>),
    #[error("unknown channel column `{0}`")]
    UnknownChannel(String),
    #[error("duplicate channel column `{0}`")]
    DuplicateChannel(String),
    #[error("line {line}: missing value for `{column}`")]
    MissingValue { line: u64, column: String },
    #[error("line {line}: `{value}` is not a number")]
    NotANumber { line: u64, value: String },
    #[error("line {line}: negative power {value} mW")]
    NegativePower { line: u64, value: f64 },
    #[error("line {line}: negative timestamp {value}")]
    NegativeTime { line: u64, value: f64 },
    #[error("line {line}: non-increasing timestamp {value} (previous {previous})")]
    NonIncreasingTimestamp {
        line: u64,
        previous: f64,
        value: f64,
    },
    #[error("trace needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("channel {0} is not present in the trace")]
    ChannelNotInTrace(Channel),
    #[error("window [{t0}, {t1}] is empty or reversed")]
    EmptyWindow { t0: f64, t1: f64 },
    #[error("window [{t0}, {t1}] lies outside trace span [{start}, {end}]")]
    WindowOutsideSpan {
        t0: f64,
        t1: f64,
        start: f64,
        end: f64,
    },
    #[error("marker outside trace span: `{label}` [{start}, {end}] vs [{span_start}, {span_end}]")]
    MarkerOutsideSpan {
        label: String,
        start: f64,
        end: f64,
        span_start: f64,
        span_end: f64,
    },
    #[error("marker `{label}`: start {start} must be before end {end}")]
    MarkerOrder { label: String, start: f64, end: f64 },
    #[error("run list is empty")]
    NoRuns,
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least 2 points for a correlation, got {0}")]
    TooFewPoints(usize),
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("malformed energy report: {0}")]
    Report(String),
}

impl TraceError {
    /// True for errors caused by a well-formed request that cannot be
    /// evaluated on this trace (as opposed to malformed input).
    pub fn is_out_of_span(&self) -> bool {
        matches!(
            self,
            TraceError::WindowOutsideSpan { .. } | TraceError::MarkerOutsideSpan { .. }
        )
    }
}

impl From<csv::Error> for TraceError {
    fn from(e: csv::Error) -> Self {
        TraceError::Csv(e.to_string())
    }
}
