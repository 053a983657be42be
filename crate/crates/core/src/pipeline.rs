//! End-to-end segmentation: split → per-channel Otsu → value assignment →
//! merge → median smoothing.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::Error;
use crate::histogram::compute_histogram;
use crate::image_model::{merge_channels, split_channels, ColorImage, GrayChannel};
use crate::median_filter::{median_filter_color, WindowSize};
use crate::otsu::{apply_threshold, otsu_threshold, ValueAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentationConfig {
    pub window: WindowSize,
    pub mode: ValueAssignment,
    /// When off, the output is the merged thresholded image.
    pub apply_median: bool,
}

impl Default for SegmentationConfig {
    fn default() -> Self {
        Self {
            window: WindowSize::default(),
            mode: ValueAssignment::default(),
            apply_median: true,
        }
    }
}

impl SegmentationConfig {
    pub fn otsu_only(mode: ValueAssignment) -> Self {
        Self {
            mode,
            apply_median: false,
            ..Self::default()
        }
    }

    pub fn with_window(mode: ValueAssignment, window: WindowSize) -> Self {
        Self {
            window,
            mode,
            apply_median: true,
        }
    }
}

/// Otsu outcome for one color plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelThreshold {
    Threshold(u8),
    /// The plane holds a single level; it was passed through unchanged.
    Degenerate,
}

impl ChannelThreshold {
    pub fn value(self) -> Option<u8> {
        match self {
            Self::Threshold(t) => Some(t),
            Self::Degenerate => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationOutput {
    pub image: ColorImage,
    pub t_r: ChannelThreshold,
    pub t_g: ChannelThreshold,
    pub t_b: ChannelThreshold,
    pub config: SegmentationConfig,
}

impl SegmentationOutput {
    pub fn thresholds(&self) -> [ChannelThreshold; 3] {
        [self.t_r, self.t_g, self.t_b]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub otsu: Duration,
    pub merge: Duration,
    pub median: Duration,
}

fn threshold_channel(ch: GrayChannel, mode: ValueAssignment) -> (GrayChannel, ChannelThreshold) {
    match otsu_threshold(&compute_histogram(&ch)) {
        Ok(res) => {
            let t = res.threshold;
            let out = apply_threshold(&ch, t as usize, mode).expect("otsu threshold is in range");
            (out, ChannelThreshold::Threshold(t))
        }
        Err(Error::DegenerateHistogram { .. }) => (ch, ChannelThreshold::Degenerate),
        Err(e) => unreachable!("histogram of a valid channel: {e}"),
    }
}

struct Thresholded {
    image: ColorImage,
    thresholds: [ChannelThreshold; 3],
    otsu: Duration,
    merge: Duration,
}

fn threshold_and_merge(img: &ColorImage, mode: ValueAssignment) -> Thresholded {
    let start = Instant::now();
    let (r, g, b) = split_channels(img);
    let (((r, t_r), (g, t_g)), (b, t_b)) = rayon::join(
        || rayon::join(|| threshold_channel(r, mode), || threshold_channel(g, mode)),
        || threshold_channel(b, mode),
    );
    let otsu = start.elapsed();

    let start = Instant::now();
    let image = merge_channels(&r, &g, &b).expect("planes share dimensions");
    Thresholded {
        image,
        thresholds: [t_r, t_g, t_b],
        otsu,
        merge: start.elapsed(),
    }
}

fn finish(stage: &Thresholded, config: SegmentationConfig) -> (SegmentationOutput, Duration) {
    let start = Instant::now();
    let image = if config.apply_median {
        median_filter_color(&stage.image, config.window)
    } else {
        stage.image.clone()
    };
    let elapsed = start.elapsed();
    let [t_r, t_g, t_b] = stage.thresholds;
    let out = SegmentationOutput {
        image,
        t_r,
        t_g,
        t_b,
        config,
    };
    (out, elapsed)
}

/// Segments `img` and reports wall-clock time per stage.
pub fn segment_with_timings(
    img: &ColorImage,
    cfg: &SegmentationConfig,
) -> (SegmentationOutput, StageTimings) {
    let stage = threshold_and_merge(img, cfg.mode);
    let (out, median) = finish(&stage, *cfg);
    let timings = StageTimings {
        otsu: stage.otsu,
        merge: stage.merge,
        median: if cfg.apply_median {
            median
        } else {
            Duration::ZERO
        },
    };
    (out, timings)
}

pub fn segment(img: &ColorImage, cfg: &SegmentationConfig) -> SegmentationOutput {
    segment_with_timings(img, cfg).0
}

/// Runs the thresholding once and then every window of
/// [`WindowSize::SWEEP`]. The first output has the median stage disabled;
/// the rest follow in ascending window order.
pub fn sweep(img: &ColorImage, mode: ValueAssignment) -> Vec<SegmentationOutput> {
    let stage = threshold_and_merge(img, mode);
    let configs: Vec<_> = std::iter::once(SegmentationConfig::otsu_only(mode))
        .chain(WindowSize::sweep().map(|w| SegmentationConfig::with_window(mode, w)))
        .collect();
    configs
        .into_par_iter()
        .map(|cfg| finish(&stage, cfg).0)
        .collect()
}
