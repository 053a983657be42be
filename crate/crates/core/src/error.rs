use thiserror::Error;

use crate::ppm_io::PnmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("buffer holds {actual} samples, {width}x{height} needs {expected}")]
    BufferLength {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("channel dimensions differ: {0:?}")]
    DimensionMismatch(Vec<(usize, usize)>),

    #[error("histogram holds no pixels")]
    EmptyHistogram,

    #[error("window size {0} is invalid: must be odd and within 3..=255")]
    InvalidWindow(usize),

    #[error("threshold {0} is outside 0..=254")]
    ThresholdOutOfRange(usize),

    #[error("all pixels share gray level {level}; no threshold separates two classes")]
    DegenerateHistogram { level: u8 },

    #[error(transparent)]
    Pnm(#[from] PnmError),
}
