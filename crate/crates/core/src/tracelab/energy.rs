use std::fmt::Write as _;

use super::{Channel, MarkerSet, PowerTrace, TraceError};

fn check_window(trace: &PowerTrace, t0: f64, t1: f64) -> Result<(), TraceError> {
    // also rejects NaN bounds
    if !(t0 < t1) {
        return Err(TraceError::EmptyWindow { t0, t1 });
    }
    if t0 < trace.start() || t1 > trace.end() {
        return Err(TraceError::WindowOutsideSpan {
            t0,
            t1,
            start: trace.start(),
            end: trace.end(),
        });
    }
    Ok(())
}

/// Energy in mJ over `[t0, t1]` by the right-endpoint rectangle rule:
/// each sample interval `(t_i, t_{i+1}]` contributes `P_{i+1} * dt`.
///
/// Intervals cut by the window contribute their clipped width at the
/// interval's right-endpoint power; nothing is interpolated.
pub fn integrate(
    trace: &PowerTrace,
    channel: Channel,
    t0: f64,
    t1: f64,
) -> Result<f64, TraceError> {
    let power = trace.power(channel)?;
    check_window(trace, t0, t1)?;
    let times = trace.times();
    // first interval whose right endpoint lies after t0
    let first = times.partition_point(|&t| t <= t0).max(1);
    let mut energy = 0.0;
    for i in first..times.len() {
        let lo = times[i - 1].max(t0);
        let hi = times[i].min(t1);
        if hi > lo {
            energy += power[i] * (hi - lo);
        }
        if times[i] >= t1 {
            break;
        }
    }
    Ok(energy)
}

/// Time-weighted mean power in mW over an idle window.
pub fn baseline_power(
    trace: &PowerTrace,
    channel: Channel,
    t0: f64,
    t1: f64,
) -> Result<f64, TraceError> {
    Ok(integrate(trace, channel, t0, t1)? / (t1 - t0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyRow {
    pub label: String,
    pub t_start: f64,
    pub t_end: f64,
    pub duration: f64,
    /// Gross energy, mJ.
    pub energy_mj: f64,
    /// Baseline power times duration; 0 when no baseline was given.
    pub baseline_mj: f64,
}

impl EnergyRow {
    pub fn net_mj(&self) -> f64 {
        self.energy_mj - self.baseline_mj
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub rows: Vec<EnergyRow>,
    pub baseline_power_mw: Option<f64>,
}

const REPORT_HEADER: [&str; 6] = [
    "label",
    "t_start_s",
    "t_end_s",
    "duration_s",
    "energy_mj",
    "baseline_mj",
];

impl EnergyReport {
    pub fn total_energy_mj(&self) -> f64 {
        self.rows.iter().map(|r| r.energy_mj).sum()
    }

    pub fn total_baseline_mj(&self) -> f64 {
        self.rows.iter().map(|r| r.baseline_mj).sum()
    }

    pub fn total_duration(&self) -> f64 {
        self.rows.iter().map(|r| r.duration).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(REPORT_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.label.clone(),
                r.t_start.to_string(),
                r.t_end.to_string(),
                r.duration.to_string(),
                r.energy_mj.to_string(),
                r.baseline_mj.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    /// Parses the CSV produced by [`EnergyReport::to_csv`]. The baseline
    /// power is not part of the CSV and comes back as `None`.
    pub fn from_csv(text: &str) -> Result<Self, TraceError> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        if rdr.headers()?.iter().ne(REPORT_HEADER) {
            return Err(TraceError::Report("unexpected header".into()));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let num = |i: usize| {
                rec[i]
                    .parse::<f64>()
                    .map_err(|_| TraceError::Report(format!("`{}` is not a number", &rec[i])))
            };
            let row = EnergyRow {
                label: rec[0].to_string(),
                t_start: num(1)?,
                t_end: num(2)?,
                duration: num(3)?,
                energy_mj: num(4)?,
                baseline_mj: num(5)?,
            };
            if !(row.duration > 0.0) || row.energy_mj < 0.0 {
                return Err(TraceError::Report(format!(
                    "row `{}` is invalid",
                    row.label
                )));
            }
            rows.push(row);
        }
        Ok(Self {
            rows,
            baseline_power_mw: None,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(b) = self.baseline_power_mw {
            let _ = writeln!(s, "baseline power: {b:.6} mW");
        }
        let _ = writeln!(
            s,
            "{:<24} {:>12} {:>12} {:>12} {:>14} {:>14} {:>14}",
            "label", "start_s", "end_s", "duration_s", "energy_mj", "baseline_mj", "net_mj"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<24} {:>12.6} {:>12.6} {:>12.6} {:>14.6} {:>14.6} {:>14.6}",
                r.label,
                r.t_start,
                r.t_end,
                r.duration,
                r.energy_mj,
                r.baseline_mj,
                r.net_mj()
            );
        }
        let _ = writeln!(
            s,
            "{:<24} {:>12} {:>12} {:>12.6} {:>14.6} {:>14.6} {:>14.6}",
            "total",
            "",
            "",
            self.total_duration(),
            self.total_energy_mj(),
            self.total_baseline_mj(),
            self.total_energy_mj() - self.total_baseline_mj()
        );
        s
    }
}

/// One report row per marker interval.
///
/// Intervals are attributed closed-open, so abutting markers never share a
/// sample interval. Baseline energy is reported beside the gross value and
/// never subtracted from it.
pub fn interval_energy(
    trace: &PowerTrace,
    markers: &MarkerSet,
    channel: Channel,
    baseline_mw: Option<f64>,
) -> Result<EnergyReport, TraceError> {
    trace.power(channel)?;
    let mut rows = Vec::with_capacity(markers.len());
    for m in markers.iter() {
        if m.start < trace.start() || m.end > trace.end() {
            return Err(TraceError::MarkerOutsideSpan {
                label: m.label.clone(),
                start: m.start,
                end: m.end,
                span_start: trace.start(),
                span_end: trace.end(),
            });
        }
        let duration = m.end - m.start;
        rows.push(EnergyRow {
            label: m.label.clone(),
            t_start: m.start,
            t_end: m.end,
            duration,
            energy_mj: integrate(trace, channel, m.start, m.end)?,
            baseline_mj: baseline_mw.map_or(0.0, |b| b * duration),
        });
    }
    Ok(EnergyReport {
        rows,
        baseline_power_mw: baseline_mw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracelab::{parse_trace, Marker};

    fn ramp() -> PowerTrace {
        PowerTrace::new(
            vec![0.0, 0.5, 1.0],
            vec![(Channel::VddGpu, vec![500.0, 1000.0, 2000.0])],
        )
        .unwrap()
    }

    fn constant(mw: f64, times: Vec<f64>) -> PowerTrace {
        let n = times.len();
        PowerTrace::new(times, vec![(Channel::VddIn, vec![mw; n])]).unwrap()
    }

    #[test]
    fn constant_power_over_one_second() {
        for grid in [
            vec![0.0, 1.0],
            vec![0.0, 0.1, 0.35, 0.9, 1.0],
            vec![0.0, 0.25, 0.5, 0.75, 1.0],
        ] {
            let t = constant(1000.0, grid);
            assert!((integrate(&t, Channel::VddIn, 0.0, 1.0).unwrap() - 1000.0).abs() < 1e-9);
        }
    }

    #[test]
    fn ramp_uses_right_endpoints() {
        let t = ramp();
        assert_eq!(integrate(&t, Channel::VddGpu, 0.0, 1.0).unwrap(), 1500.0);
        let a = integrate(&t, Channel::VddGpu, 0.0, 0.5).unwrap();
        let b = integrate(&t, Channel::VddGpu, 0.5, 1.0).unwrap();
        assert_eq!((a, b), (500.0, 1000.0));
        assert_eq!(a + b, 1500.0);
    }

    #[test]
    fn clipped_window() {
        assert_eq!(
            integrate(&ramp(), Channel::VddGpu, 0.25, 0.75).unwrap(),
            750.0
        );
    }

    #[test]
    fn window_errors() {
        let t = ramp();
        assert!(matches!(
            integrate(&t, Channel::VddGpu, -0.1, 0.5),
            Err(TraceError::WindowOutsideSpan { .. })
        ));
        assert!(matches!(
            integrate(&t, Channel::VddGpu, 0.5, 0.5),
            Err(TraceError::EmptyWindow { .. })
        ));
        assert!(matches!(
            integrate(&t, Channel::VddCpu, 0.0, 0.5),
            Err(TraceError::ChannelNotInTrace(Channel::VddCpu))
        ));
    }

    #[test]
    fn baseline_power_values() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
        let t = constant(60.0, grid.clone());
        assert!((baseline_power(&t, Channel::VddIn, 0.0, 10.0).unwrap() - 60.0).abs() < 1e-9);

        let alt: Vec<f64> = (0..grid.len())
            .map(|i| if i % 2 == 0 { 40.0 } else { 80.0 })
            .collect();
        let t = PowerTrace::new(grid, vec![(Channel::VddIn, alt)]).unwrap();
        assert!((baseline_power(&t, Channel::VddIn, 0.0, 10.0).unwrap() - 60.0).abs() < 1e-9);
    }

    #[test]
    fn idle_fixtures_average_sixty_milliwatts() {
        // Ten 10 s idle windows at 1 kHz whose means are spread 60 +/- 20 mW.
        let levels = [40.0, 80.0, 50.0, 70.0, 45.0, 75.0, 60.0, 60.0, 55.0, 65.0];
        let grid: Vec<f64> = (0..=10_000).map(|i| i as f64 / 1000.0).collect();
        let means: Vec<f64> = levels
            .iter()
            .map(|&mw| {
                let wobble: Vec<f64> = (0..grid.len())
                    .map(|i| mw + if i % 2 == 0 { 5.0 } else { -5.0 })
                    .collect();
                let t = PowerTrace::new(grid.clone(), vec![(Channel::VddGpu, wobble)]).unwrap();
                baseline_power(&t, Channel::VddGpu, 0.0, 10.0).unwrap()
            })
            .collect();
        let mean = means.iter().sum::<f64>() / means.len() as f64;
        assert!((mean - 60.0).abs() < 1e-6, "{mean}");
    }

    #[test]
    fn marker_rows() {
        let t = constant(1000.0, vec![0.0, 0.5, 1.0]);
        let m = MarkerSet::new(vec![Marker::new("all", 0.0, 1.0)]).unwrap();
        let r = interval_energy(&t, &m, Channel::VddIn, None).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].energy_mj, 1000.0);
        assert_eq!(r.rows[0].baseline_mj, 0.0);

        let m = MarkerSet::new(vec![Marker::new("mid", 0.25, 0.75)]).unwrap();
        let r = interval_energy(&ramp(), &m, Channel::VddGpu, None).unwrap();
        assert_eq!(r.rows[0].energy_mj, 750.0);
    }

    #[test]
    fn baseline_is_reported_not_subtracted() {
        let t = constant(1060.0, vec![0.0, 1.0]);
        let m = MarkerSet::new(vec![Marker::new("layer", 0.0, 1.0)]).unwrap();
        let r = interval_energy(&t, &m, Channel::VddIn, Some(60.0)).unwrap();
        let row = &r.rows[0];
        assert_eq!(
            (row.energy_mj, row.baseline_mj, row.net_mj()),
            (1060.0, 60.0, 1000.0)
        );
    }

    #[test]
    fn marker_beyond_trace_is_out_of_span() {
        let m = MarkerSet::new(vec![Marker::new("late", 0.5, 1.5)]).unwrap();
        let err = interval_energy(&ramp(), &m, Channel::VddGpu, None).unwrap_err();
        assert!(err.is_out_of_span());
        assert!(err.to_string().contains("outside trace span"));
    }

    #[test]
    fn report_csv_round_trips() {
        let t = parse_trace("t_s,vdd_in_mw\n0,10\n0.3,20\n0.7,15.5\n1.1,3\n").unwrap();
        let m = MarkerSet::new(vec![
            Marker::new("a", 0.0, 0.4),
            Marker::new("b,c", 0.4, 1.1),
        ])
        .unwrap();
        let r = interval_energy(&t, &m, Channel::VddIn, Some(1.25)).unwrap();
        let back = EnergyReport::from_csv(&r.to_csv()).unwrap();
        assert_eq!(back.rows, r.rows);
    }
}
