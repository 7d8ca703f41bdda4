use std::fmt;
use std::str::FromStr;

use super::TraceError;

/// Power-monitor rails: system input, CPU and GPU.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    VddIn,
    VddCpu,
    VddGpu,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::VddIn, Channel::VddCpu, Channel::VddGpu];

    /// Column name in trace CSV files.
    pub fn column(self) -> &'static str {
        match self {
            Channel::VddIn => "vdd_in_mw",
            Channel::VddCpu => "vdd_cpu_mw",
            Channel::VddGpu => "vdd_gpu_mw",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Channel::VddIn => "VDD_IN",
            Channel::VddCpu => "VDD_CPU",
            Channel::VddGpu => "VDD_GPU",
        }
    }

    pub fn from_column(col: &str) -> Option<Self> {
        Channel::ALL.into_iter().find(|c| c.column() == col)
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = TraceError;

    /// Accepts `VDD_GPU`, `vdd_gpu`, `gpu` or the column name `vdd_gpu_mw`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase();
        Channel::ALL
            .into_iter()
            .find(|c| {
                let short = &c.column()[4..c.column().len() - 3];
                key == c.column() || key == c.name().to_ascii_lowercase() || key == short
            })
            .ok_or_else(|| TraceError::UnknownChannel(s.to_string()))
    }
}

/// Timestamped power samples on one or more channels.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerTrace {
    times: Vec<f64>,
    channels: Vec<Channel>,
    // power[c][i] is the sample of channels[c] at times[i]
    power: Vec<Vec<f64>>,
}

impl PowerTrace {
    /// Builds a trace from columns, enforcing strictly increasing
    /// non-negative timestamps, non-negative power and at least two samples.
    pub fn new(times: Vec<f64>, channels: Vec<(Channel, Vec<f64>)>) -> Result<Self, TraceError> {
        if times.len() < 2 {
            return Err(TraceError::TooFewSamples(times.len()));
        }
        if channels.is_empty() {
            return Err(TraceError::Header(vec!["t_s".into()]));
        }
        for (i, &t) in times.iter().enumerate() {
            let line = i as u64 + 2;
            if !t.is_finite() || t < 0.0 {
                return Err(TraceError::NegativeTime { line, value: t });
            }
            if i > 0 && t <= times[i - 1] {
                return Err(TraceError::NonIncreasingTimestamp {
                    line,
                    previous: times[i - 1],
                    value: t,
                });
            }
        }
        let mut names = Vec::with_capacity(channels.len());
        let mut power = Vec::with_capacity(channels.len());
        for (ch, values) in channels {
            if names.contains(&ch) {
                return Err(TraceError::DuplicateChannel(ch.column().into()));
            }
            if values.len() != times.len() {
                return Err(TraceError::MissingValue {
                    line: values.len().min(times.len()) as u64 + 2,
                    column: ch.column().into(),
                });
            }
            if let Some((i, &p)) = values
                .iter()
                .enumerate()
                .find(|(_, p)| !p.is_finite() || **p < 0.0)
            {
                return Err(TraceError::NegativePower {
                    line: i as u64 + 2,
                    value: p,
                });
            }
            names.push(ch);
            power.push(values);
        }
        Ok(Self {
            times,
            channels: names,
            power,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.times[0]
    }

    pub fn end(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// Samples of one channel, aligned with [`PowerTrace::times`].
    pub fn power(&self, channel: Channel) -> Result<&[f64], TraceError> {
        self.channels
            .iter()
            .position(|&c| c == channel)
            .map(|i| self.power[i].as_slice())
            .ok_or(TraceError::ChannelNotInTrace(channel))
    }

    /// The channel used when none is requested: VDD_IN if present, else the first column.
    pub fn default_channel(&self) -> Channel {
        if self.channels.contains(&Channel::VddIn) {
            Channel::VddIn
        } else {
            self.channels[0]
        }
    }
}

/// Parses a trace CSV with header `t_s,<channel columns...>`.
pub fn parse_trace(text: &str) -> Result<PowerTrace, TraceError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.len() < 2 || header[0] != "t_s" {
        return Err(TraceError::Header(header));
    }
    let mut channels = Vec::new();
    for col in &header[1..] {
        let ch =
            Channel::from_column(col).ok_or_else(|| TraceError::UnknownChannel(col.clone()))?;
        if channels.contains(&ch) {
            return Err(TraceError::DuplicateChannel(col.clone()));
        }
        channels.push(ch);
    }

    let mut times = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); channels.len()];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64, TraceError> {
            let raw = rec.get(i).unwrap_or("");
            if raw.is_empty() {
                return Err(TraceError::MissingValue {
                    line,
                    column: header[i].clone(),
                });
            }
            raw.parse::<f64>().map_err(|_| TraceError::NotANumber {
                line,
                value: raw.to_string(),
            })
        };
        let t = field(0)?;
        if t < 0.0 {
            return Err(TraceError::NegativeTime { line, value: t });
        }
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(TraceError::NonIncreasingTimestamp {
                    line,
                    previous: prev,
                    value: t,
                });
            }
        }
        times.push(t);
        for (c, col) in columns.iter_mut().enumerate() {
            let p = field(c + 1)?;
            if p < 0.0 {
                return Err(TraceError::NegativePower { line, value: p });
            }
            col.push(p);
        }
        if rec.len() > header.len() {
            return Err(TraceError::Csv(format!(
                "line {line}: {} fields, header has {}",
                rec.len(),
                header.len()
            )));
        }
    }
    PowerTrace::new(times, channels.into_iter().zip(columns).collect())
}
