//! Color image segmentation by per-channel Otsu thresholding followed by
//! k×k median smoothing.
//!
//! The red, green and blue planes are each thresholded with Otsu's method,
//! re-merged into a color image carrying at most eight colors, and then
//! smoothed with a median filter whose window grows the segmented regions.
//!
//! ```
//! use hybridseg::{segment, ColorImage, SegmentationConfig, WindowSize};
//!
//! let img = ColorImage::from_fn(16, 16, |x, y| {
//!     if x < 8 { [20, 40, 60] } else { [200, 180, (y * 10) as u8] }
//! });
//! let cfg = SegmentationConfig { window: WindowSize::new(3).unwrap(), ..Default::default() };
//! let out = segment(&img, &cfg);
//! assert_eq!(out.image.width(), 16);
//! assert!(out.image.distinct_colors() <= 8);
//! ```

mod error;
pub mod histogram;
pub mod image_model;
pub mod median_filter;
pub mod otsu;
pub mod pipeline;
pub mod ppm_io;

pub use error::{Error, Result};
pub use histogram::{compute_histogram, to_probabilities, Histogram, ProbDist, LEVELS};
pub use image_model::{merge_channels, split_channels, ColorImage, GrayChannel};
pub use median_filter::{median_filter_color, median_filter_fast, median_filter_naive, WindowSize};
pub use otsu::{
    apply_threshold, between_class_variance, class_stats, otsu_threshold, ClassStats, OtsuResult,
    ValueAssignment,
};
pub use pipeline::{
    segment, segment_with_timings, sweep, ChannelThreshold, SegmentationConfig, SegmentationOutput,
    StageTimings,
};
pub use ppm_io::{read_pgm, read_ppm, write_pgm, write_ppm, PnmError};
