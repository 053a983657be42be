//! JSON reports. Field order is fixed by declaration order so reports diff
//! cleanly.

use hybridseg::{ChannelThreshold, SegmentationOutput, StageTimings, ValueAssignment};
use serde::{Serialize, Serializer};

pub fn mode_name(mode: ValueAssignment) -> &'static str {
    match mode {
        ValueAssignment::Binary => "binary",
        ValueAssignment::ClassMeans => "means",
    }
}

/// A threshold, or the string `"degenerate"` for a single-level plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdField(pub ChannelThreshold);

impl Serialize for ThresholdField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ChannelThreshold::Threshold(t) => s.serialize_u8(t),
            ChannelThreshold::Degenerate => s.serialize_str("degenerate"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Thresholds {
    pub r: ThresholdField,
    pub g: ThresholdField,
    pub b: ThresholdField,
}

impl Thresholds {
    pub fn of(out: &SegmentationOutput) -> Self {
        Self {
            r: ThresholdField(out.t_r),
            g: ThresholdField(out.t_g),
            b: ThresholdField(out.t_b),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TimingsMs {
    pub otsu: f64,
    pub merge: f64,
    pub median: f64,
}

impl From<StageTimings> for TimingsMs {
    fn from(t: StageTimings) -> Self {
        let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
        Self {
            otsu: ms(t.otsu),
            merge: ms(t.merge),
            median: ms(t.median),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub input: String,
    pub output: String,
    pub width: usize,
    pub height: usize,
    pub thresholds: Thresholds,
    pub mode: &'static str,
    pub window: usize,
    pub median: bool,
    pub distinct_colors: usize,
    pub timings_ms: TimingsMs,
}

#[derive(Debug, Serialize)]
pub struct Panel {
    pub file: &'static str,
    /// `None` for the Otsu-only panel.
    pub window: Option<usize>,
    pub distinct_colors: usize,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub input: String,
    pub width: usize,
    pub height: usize,
    pub mode: &'static str,
    pub thresholds: Thresholds,
    pub panels: Vec<Panel>,
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub k: usize,
    pub naive_ms: f64,
    pub fast_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub input: String,
    pub width: usize,
    pub height: usize,
    pub channel: &'static str,
    pub repeat: usize,
    pub threads: usize,
    pub rows: Vec<BenchRow>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
