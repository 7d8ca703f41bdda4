use serde::{Deserialize, Serialize};

use super::FitError;

/// Fits with `1 - rho^2` at or below this value are rejected, where rho is
/// the cosine between the two regressor columns. This is the determinant of
/// the column-normalised normal matrix.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// `y = slope * x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OriginModel {
    #[serde(rename = "c")]
    pub slope: f64,
    #[serde(default)]
    pub trained_on: Vec<String>,
}

impl OriginModel {
    pub fn new(slope: f64) -> Self {
        Self {
            slope,
            trained_on: Vec::new(),
        }
    }

    pub fn with_trained_on(mut self, nets: Vec<String>) -> Self {
        self.trained_on = nets;
        self
    }

    pub fn predict(&self, x: f64) -> f64 {
        self.slope * x
    }
}

/// `energy_mj = bus_coef * bus_accesses + simd_coef * simd_instructions`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyModel {
    /// mJ per bus access.
    #[serde(rename = "x1")]
    pub bus_coef: f64,
    /// mJ per SIMD instruction.
    #[serde(rename = "x2")]
    pub simd_coef: f64,
    #[serde(default)]
    pub trained_on: Vec<String>,
}

impl EnergyModel {
    pub fn new(bus_coef: f64, simd_coef: f64) -> Self {
        Self {
            bus_coef,
            simd_coef,
            trained_on: Vec::new(),
        }
    }

    pub fn with_trained_on(mut self, nets: Vec<String>) -> Self {
        self.trained_on = nets;
        self
    }

    pub fn predict(&self, bus: f64, simd: f64) -> f64 {
        self.bus_coef * bus + self.simd_coef * simd
    }
}

/// Least squares through the origin: `c = sum(x*y) / sum(x^2)`.
pub fn fit_origin_1d(pairs: &[(f64, f64)]) -> Result<OriginModel, FitError> {
    if pairs.is_empty() {
        return Err(FitError::Empty);
    }
    if pairs.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(FitError::NonFinite);
    }
    let sxx: f64 = pairs.iter().map(|(x, _)| x * x).sum();
    if sxx == 0.0 {
        return Err(FitError::ZeroRegressor);
    }
    let sxy: f64 = pairs.iter().map(|(x, y)| x * y).sum();
    let slope = sxy / sxx;
    if !slope.is_finite() {
        return Err(FitError::NonFinite);
    }
    Ok(OriginModel::new(slope))
}

/// Two-regressor least squares without intercept over rows `(bus, simd, energy)`.
///
/// Columns are scaled to unit norm before solving the 2x2 normal equations,
/// which keeps the problem well scaled when bus counts and SIMD counts differ
/// by orders of magnitude.
pub fn fit_origin_2d(rows: &[(f64, f64, f64)]) -> Result<EnergyModel, FitError> {
    if rows.len() < 2 {
        return Err(FitError::TooFewRows {
            needed: 2,
            got: rows.len(),
        });
    }
    if rows
        .iter()
        .any(|(a, b, y)| !a.is_finite() || !b.is_finite() || !y.is_finite())
    {
        return Err(FitError::NonFinite);
    }
    let norm_a = rows.iter().map(|r| r.0 * r.0).sum::<f64>().sqrt();
    let norm_b = rows.iter().map(|r| r.1 * r.1).sum::<f64>().sqrt();
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(FitError::ZeroRegressor);
    }
    let rho: f64 = rows.iter().map(|r| (r.0 / norm_a) * (r.1 / norm_b)).sum();
    let det = 1.0 - rho * rho;
    if !(det > SINGULARITY_THRESHOLD) {
        return Err(FitError::Singular(det));
    }
    let solve = |target: &dyn Fn(&(f64, f64, f64)) -> f64| {
        let (mut ua, mut ub) = (0.0, 0.0);
        for r in rows {
            let y = target(r);
            ua += r.0 / norm_a * y;
            ub += r.1 / norm_b * y;
        }
        (
            (ua - rho * ub) / det / norm_a,
            (ub - rho * ua) / det / norm_b,
        )
    };
    let (bus, simd) = solve(&|r| r.2);
    // one refinement step on the residuals
    let (d_bus, d_simd) = solve(&|r| r.2 - bus * r.0 - simd * r.1);
    let model = EnergyModel::new(bus + d_bus, simd + d_simd);
    if !model.bus_coef.is_finite() || !model.simd_coef.is_finite() {
        return Err(FitError::NonFinite);
    }
    Ok(model)
}

pub fn predict_energy(bus: f64, simd: f64, model: &EnergyModel) -> f64 {
    model.predict(bus, simd)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainPrediction {
    pub simd: f64,
    pub bus: f64,
    pub energy_mj: f64,
}

/// MAC count to SIMD count to bus accesses, then both counts to energy.
pub fn chain_predict(
    mac: u64,
    simd_from_mac: &OriginModel,
    bus_from_simd: &OriginModel,
    energy: &EnergyModel,
) -> ChainPrediction {
    let simd = simd_from_mac.predict(mac as f64);
    let bus = bus_from_simd.predict(simd);
    ChainPrediction {
        simd,
        bus,
        energy_mj: energy.predict(bus, simd),
    }
}
