//! Gray-level counts and the normalized level distribution.

use crate::error::{Error, Result};
use crate::image_model::GrayChannel;

/// Number of gray levels for 8-bit data.
pub const LEVELS: usize = 256;

/// Per-level pixel counts `f_i` together with the pixel total `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; LEVELS],
    total: u64,
}

impl Histogram {
    /// Builds a histogram from raw counts. The total is their sum and must be
    /// non-zero.
    pub fn from_counts(counts: [u64; LEVELS]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::EmptyHistogram);
        }
        Ok(Self { counts, total })
    }

    pub fn counts(&self) -> &[u64; LEVELS] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Levels with at least one pixel, in ascending order.
    pub fn occupied_levels(&self) -> impl Iterator<Item = u8> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i as u8)
    }
}

/// Level probabilities `p_i = f_i / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    p: [f64; LEVELS],
}

impl ProbDist {
    pub fn as_slice(&self) -> &[f64; LEVELS] {
        &self.p
    }

    pub fn get(&self, level: usize) -> f64 {
        self.p[level]
    }

    /// Overall mean level `Σ i·p_i`.
    pub fn mean(&self) -> f64 {
        self.p.iter().enumerate().map(|(i, &p)| i as f64 * p).sum()
    }
}

pub fn compute_histogram(ch: &GrayChannel) -> Histogram {
    let mut counts = [0u64; LEVELS];
    for &v in ch.values() {
        counts[v as usize] += 1;
    }
    Histogram {
        counts,
        total: ch.values().len() as u64,
    }
}

pub fn to_probabilities(h: &Histogram) -> ProbDist {
    let n = h.total as f64;
    let mut p = [0.0; LEVELS];
    for (pi, &f) in p.iter_mut().zip(h.counts.iter()) {
        *pi = f as f64 / n;
    }
    ProbDist { p }
}
