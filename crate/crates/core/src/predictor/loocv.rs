use super::{
    fit_origin_2d, relative_error, summarize_errors, CounterRecord, EnergyModel, ErrorSummary,
    FitError,
};

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub excluded: String,
    pub model: EnergyModel,
    /// Relative error (%) of every training net under this fold's model.
    pub train_errors: Vec<(String, f64)>,
    /// Relative error (%) on the excluded net.
    pub test_error: f64,
}

impl FoldResult {
    pub fn train_summary(&self) -> ErrorSummary {
        summarize(&self.train_errors)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoocvReport {
    pub folds: Vec<FoldResult>,
    /// Fit over the whole pool.
    pub all_nets: EnergyModel,
    pub all_train_errors: Vec<(String, f64)>,
}

impl LoocvReport {
    pub fn all_train_summary(&self) -> ErrorSummary {
        summarize(&self.all_train_errors)
    }

    /// Mean and spread of the held-out errors over all folds.
    pub fn test_summary(&self) -> ErrorSummary {
        let errs: Vec<f64> = self.folds.iter().map(|f| f.test_error).collect();
        summarize_errors(&errs).expect("at least three folds")
    }
}

fn summarize(errors: &[(String, f64)]) -> ErrorSummary {
    let v: Vec<f64> = errors.iter().map(|(_, e)| *e).collect();
    summarize_errors(&v).expect("non-empty training set")
}

struct Sample<'a> {
    net: &'a str,
    bus: f64,
    simd: f64,
    energy: f64,
}

fn sample(r: &CounterRecord) -> Result<Sample<'_>, FitError> {
    let missing = |field| FitError::MissingField {
        net: r.net.clone(),
        field,
    };
    Ok(Sample {
        net: &r.net,
        bus: r.bus_access.ok_or_else(|| missing("bus_access"))? as f64,
        simd: r.simd.ok_or_else(|| missing("simd"))? as f64,
        energy: r.energy_mj.ok_or_else(|| missing("energy_mj"))?,
    })
}

fn fit(samples: &[&Sample]) -> Result<EnergyModel, FitError> {
    let rows: Vec<_> = samples.iter().map(|s| (s.bus, s.simd, s.energy)).collect();
    Ok(fit_origin_2d(&rows)?.with_trained_on(samples.iter().map(|s| s.net.to_string()).collect()))
}

fn errors_on(model: &EnergyModel, samples: &[&Sample]) -> Result<Vec<(String, f64)>, FitError> {
    samples
        .iter()
        .map(|s| {
            Ok((
                s.net.to_string(),
                relative_error(model.predict(s.bus, s.simd), s.energy)?,
            ))
        })
        .collect()
}

/// Leave-one-out cross-validation of the energy model over `pool`, plus a
/// fit on the whole pool. Every record needs bus accesses, SIMD count and
/// energy.
pub fn loocv(pool: &[CounterRecord]) -> Result<LoocvReport, FitError> {
    if pool.len() < 3 {
        return Err(FitError::TooFewRows {
            needed: 3,
            got: pool.len(),
        });
    }
    let samples = pool.iter().map(sample).collect::<Result<Vec<_>, _>>()?;
    let all: Vec<&Sample> = samples.iter().collect();

    let mut folds = Vec::with_capacity(samples.len());
    for (k, held_out) in samples.iter().enumerate() {
        let train: Vec<&Sample> = all
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, s)| *s)
            .collect();
        let model = fit(&train).map_err(|e| FitError::Fold {
            net: held_out.net.to_string(),
            source: Box::new(e),
        })?;
        let train_errors = errors_on(&model, &train)?;
        let test_error =
            relative_error(model.predict(held_out.bus, held_out.simd), held_out.energy)?;
        folds.push(FoldResult {
            excluded: held_out.net.to_string(),
            model,
            train_errors,
            test_error,
        });
    }

    let all_nets = fit(&all)?;
    let all_train_errors = errors_on(&all_nets, &all)?;
    Ok(LoocvReport {
        folds,
        all_nets,
        all_train_errors,
    })
}
