//! Otsu's automatic threshold selection.
//!
//! A candidate threshold `t` splits the levels into a low class `0..=t` and a
//! high class `t+1..=255`. The selected threshold maximizes the between-class
//! variance `β₁(μ₁−μ_T)² + β₂(μ₂−μ_T)²` over `t ∈ 0..=254`; ties resolve to
//! the smallest `t`.
//!
//! An empty class has mean 0 by convention. Its weight is 0, so it adds
//! nothing to the variance.

use crate::error::{Error, Result};
use crate::histogram::{compute_histogram, to_probabilities, Histogram, ProbDist, LEVELS};
use crate::image_model::GrayChannel;

/// Largest candidate threshold. At 255 the high class is always empty.
pub const MAX_THRESHOLD: usize = LEVELS - 2;

/// Number of candidate thresholds, and the length of [`OtsuResult::curve`].
pub const CANDIDATES: usize = MAX_THRESHOLD + 1;

/// Class statistics induced by a single candidate threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassStats {
    pub t: u8,
    /// Probability mass at or below `t`.
    pub beta1: f64,
    /// Probability mass above `t`.
    pub beta2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu_total: f64,
    pub sigma2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OtsuResult {
    pub threshold: u8,
    pub stats: ClassStats,
    /// `curve[t]` is the between-class variance at candidate `t`.
    pub curve: Vec<f64>,
}

/// How the two classes of a thresholded channel are written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ValueAssignment {
    /// Low class becomes 0, high class becomes 255.
    Binary,
    /// Each class becomes its own rounded mean level.
    #[default]
    ClassMeans,
}

fn check_threshold(t: usize) -> Result<u8> {
    if t > MAX_THRESHOLD {
        return Err(Error::ThresholdOutOfRange(t));
    }
    Ok(t as u8)
}

fn finish(t: u8, beta1: f64, sum1: f64, beta2: f64, sum2: f64, mu_total: f64) -> ClassStats {
    let mu1 = if beta1 > 0.0 { sum1 / beta1 } else { 0.0 };
    let mu2 = if beta2 > 0.0 { sum2 / beta2 } else { 0.0 };
    let mut stats = ClassStats {
        t,
        beta1,
        beta2,
        mu1,
        mu2,
        mu_total,
        sigma2: 0.0,
    };
    stats.sigma2 = between_class_variance(&stats);
    stats
}

/// Class probabilities and means for threshold `t`, summed directly over `p`.
pub fn class_stats(p: &ProbDist, t: usize) -> Result<ClassStats> {
    let t8 = check_threshold(t)?;
    let p = p.as_slice();
    let (mut beta1, mut sum1) = (0.0, 0.0);
    for (i, &pi) in p.iter().enumerate().take(t + 1) {
        beta1 += pi;
        sum1 += i as f64 * pi;
    }
    let (mut beta2, mut sum2) = (0.0, 0.0);
    for (i, &pi) in p.iter().enumerate().skip(t + 1) {
        beta2 += pi;
        sum2 += i as f64 * pi;
    }
    let mu_total = p.iter().enumerate().map(|(i, &pi)| i as f64 * pi).sum();
    Ok(finish(t8, beta1, sum1, beta2, sum2, mu_total))
}

pub fn between_class_variance(s: &ClassStats) -> f64 {
    let d1 = s.mu1 - s.mu_total;
    let d2 = s.mu2 - s.mu_total;
    s.beta1 * d1 * d1 + s.beta2 * d2 * d2
}

/// Selects the threshold maximizing the between-class variance.
///
/// A histogram with a single occupied level has no two-class split and is
/// reported as [`Error::DegenerateHistogram`].
pub fn otsu_threshold(h: &Histogram) -> Result<OtsuResult> {
    let mut occupied = h.occupied_levels();
    let first = occupied.next().ok_or(Error::EmptyHistogram)?;
    if occupied.next().is_none() {
        return Err(Error::DegenerateHistogram { level: first });
    }

    let p = to_probabilities(h);
    let p = p.as_slice();

    // Low-class sums accumulate upward, high-class sums downward, so a run of
    // empty bins yields bit-identical statistics across the run.
    let mut low = [(0.0f64, 0.0f64); CANDIDATES];
    let (mut w, mut m) = (0.0, 0.0);
    for t in 0..CANDIDATES {
        w += p[t];
        m += t as f64 * p[t];
        low[t] = (w, m);
    }
    let mu_total = m + (LEVELS - 1) as f64 * p[LEVELS - 1];

    let mut high = [(0.0f64, 0.0f64); CANDIDATES];
    let (mut w, mut m) = (0.0, 0.0);
    for t in (0..CANDIDATES).rev() {
        w += p[t + 1];
        m += (t + 1) as f64 * p[t + 1];
        high[t] = (w, m);
    }

    let mut curve = Vec::with_capacity(CANDIDATES);
    let mut best: Option<ClassStats> = None;
    for t in 0..CANDIDATES {
        let (beta1, sum1) = low[t];
        let (beta2, sum2) = high[t];
        let stats = finish(t as u8, beta1, sum1, beta2, sum2, mu_total);
        curve.push(stats.sigma2);
        if best.is_none_or(|b| stats.sigma2 > b.sigma2) {
            best = Some(stats);
        }
    }
    let stats = best.expect("at least one candidate");
    Ok(OtsuResult {
        threshold: stats.t,
        stats,
        curve,
    })
}

/// Maps every value of `ch` to one of two outputs according to which side of
/// `t` it falls on.
pub fn apply_threshold(ch: &GrayChannel, t: usize, mode: ValueAssignment) -> Result<GrayChannel> {
    let t8 = check_threshold(t)?;
    let (low, high) = match mode {
        ValueAssignment::Binary => (0u8, 255u8),
        ValueAssignment::ClassMeans => {
            let stats = class_stats(&to_probabilities(&compute_histogram(ch)), t)?;
            (round_level(stats.mu1), round_level(stats.mu2))
        }
    };
    Ok(ch.map(|v| if v <= t8 { low } else { high }))
}

fn round_level(mu: f64) -> u8 {
    mu.round().clamp(0.0, 255.0) as u8
}
