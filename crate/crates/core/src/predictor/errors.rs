use super::FitError;

/// `|predicted - actual| / actual * 100`.
pub fn relative_error(predicted: f64, actual: f64) -> Result<f64, FitError> {
    if !(actual > 0.0) {
        return Err(FitError::NonPositiveActual(actual));
    }
    Ok((predicted - actual).abs() / actual * 100.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary {
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 when n = 1.
    pub stddev: f64,
    pub n: usize,
}

impl std::fmt::Display for ErrorSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:.2} ± {:.2} % (n = {})",
            self.mean, self.stddev, self.n
        )
    }
}

pub fn summarize_errors(errors: &[f64]) -> Result<ErrorSummary, FitError> {
    if errors.is_empty() {
        return Err(FitError::Empty);
    }
    let n = errors.len();
    let mean = errors.iter().sum::<f64>() / n as f64;
    let stddev = if n == 1 {
        0.0
    } else {
        let ss: f64 = errors.iter().map(|e| (e - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    };
    Ok(ErrorSummary { mean, stddev, n })
}
