use super::TraceError;

/// A labelled time interval, `[start, end)` in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub label: String,
    pub start: f64,
    pub end: f64,
}

impl Marker {
    pub fn new(label: &str, start: f64, end: f64) -> Self {
        Self {
            label: label.to_string(),
            start,
            end,
        }
    }
}

/// Marker intervals in file order. Labels may repeat.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MarkerSet {
    intervals: Vec<Marker>,
}

impl MarkerSet {
    pub fn new(intervals: Vec<Marker>) -> Result<Self, TraceError> {
        for m in &intervals {
            if !(m.start < m.end) {
                return Err(TraceError::MarkerOrder {
                    label: m.label.clone(),
                    start: m.start,
                    end: m.end,
                });
            }
        }
        Ok(Self { intervals })
    }

    /// A single marker covering a whole trace.
    pub fn whole(label: &str, start: f64, end: f64) -> Result<Self, TraceError> {
        Self::new(vec![Marker::new(label, start, end)])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Marker> {
        self.intervals.iter()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Parses a marker CSV with header `label,start_s,end_s`.
pub fn parse_markers(text: &str) -> Result<MarkerSet, TraceError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != ["label", "start_s", "end_s"] {
        return Err(TraceError::Header(header));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let num = |i: usize| {
            rec[i].parse::<f64>().map_err(|_| TraceError::NotANumber {
                line,
                value: rec[i].to_string(),
            })
        };
        out.push(Marker::new(&rec[0], num(1)?, num(2)?));
    }
    MarkerSet::new(out)
}
