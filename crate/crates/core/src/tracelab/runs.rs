use super::TraceError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Run {
    pub duration: f64,
    pub energy_mj: f64,
}

impl Run {
    pub fn new(duration: f64, energy_mj: f64) -> Self {
        Self {
            duration,
            energy_mj,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub runs: Vec<Run>,
    /// Index into `runs` of the fastest run.
    pub selected: usize,
    pub energy_min: f64,
    pub energy_max: f64,
}

impl RunSummary {
    pub fn selected_run(&self) -> Run {
        self.runs[self.selected]
    }
}

/// Picks the run with the shortest duration (first one on ties) and records
/// the energy spread over all runs. The fastest run is not necessarily the
/// one with least energy.
pub fn select_run(runs: &[Run]) -> Result<RunSummary, TraceError> {
    let first = runs.first().ok_or(TraceError::NoRuns)?;
    let mut selected = 0;
    let (mut lo, mut hi) = (first.energy_mj, first.energy_mj);
    for (i, r) in runs.iter().enumerate().skip(1) {
        if r.duration < runs[selected].duration {
            selected = i;
        }
        lo = lo.min(r.energy_mj);
        hi = hi.max(r.energy_mj);
    }
    Ok(RunSummary {
        runs: runs.to_vec(),
        selected,
        energy_min: lo,
        energy_max: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_run() {
        let s = select_run(&[Run::new(1.0, 900.0)]).unwrap();
        assert_eq!((s.selected, s.energy_min, s.energy_max), (0, 900.0, 900.0));
    }

    #[test]
    fn fastest_run_is_not_cheapest() {
        let s = select_run(&[
            Run::new(1.2, 950.0),
            Run::new(1.0, 980.0),
            Run::new(1.1, 940.0),
        ])
        .unwrap();
        assert_eq!(s.selected, 1);
        assert_eq!(s.selected_run().energy_mj, 980.0);
        assert_eq!((s.energy_min, s.energy_max), (940.0, 980.0));
    }

    #[test]
    fn ties_pick_first() {
        let s = select_run(&[Run::new(1.0, 10.0), Run::new(1.0, 5.0)]).unwrap();
        assert_eq!(s.selected, 0);
    }

    #[test]
    fn empty_is_error() {
        assert_eq!(select_run(&[]), Err(TraceError::NoRuns));
    }
}
