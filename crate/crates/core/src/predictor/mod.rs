//! Through-origin regression models for Conv-layer energy.
//!
//! Three models are chained to predict energy from MAC counts alone:
//! SIMD instructions from MACs, bus accesses from SIMD instructions, and
//! energy from both counters. None of them has an intercept.

mod counters;
mod document;
mod errors;
mod fit;
mod loocv;
#[cfg(test)]
mod properties;

pub use counters::{parse_counters, write_counters, CounterColumn, CounterRecord};
pub use document::{load_model, save_model, ModelDocument};
pub use errors::{relative_error, summarize_errors, ErrorSummary};
pub use fit::{
    chain_predict, fit_origin_1d, fit_origin_2d, predict_energy, ChainPrediction, EnergyModel,
    OriginModel, SINGULARITY_THRESHOLD,
};
pub use loocv::{loocv, FoldResult, LoocvReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("no data points")]
    Empty,
    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("all regressor values are zero")]
    ZeroRegressor,
    #[error("normal equations are singular or ill-conditioned (1 - rho^2 = {0:e})")]
    Singular(f64),
    #[error("non-finite value in input")]
    NonFinite,
    #[error("actual value must be positive, got {0}")]
    NonPositiveActual(f64),
    #[error("`{net}`: missing {field}")]
    MissingField { net: String, field: &'static str },
    #[error("fold excluding `{net}`: {source}")]
    Fold {
        net: String,
        #[source]
        source: Box<FitError>,
    },
    #[error("counters csv: {0}")]
    Counters(String),
    #[error("unknown counter column `{0}`")]
    UnknownColumn(String),
    #[error("model document: {0}")]
    Document(String),
}

impl FitError {
    /// True for numerical failures (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        match self {
            FitError::Singular(_) | FitError::ZeroRegressor => true,
            FitError::Fold { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
