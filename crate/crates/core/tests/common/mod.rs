//! Test-only oracles and random input generators.
//!
//! Nothing here calls into the Otsu or median code under test; each oracle
//! recomputes its answer from first principles.

#![allow(dead_code)]

use hybridseg::{ColorImage, GrayChannel, Histogram, LEVELS};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Between-class variance at `t`, evaluated through the per-class normalized
/// distributions: each class's levels are divided by the class mass, the
/// class mean is the expectation under that distribution, and the variance
/// combines the class deviations from the global mean.
pub fn brute_force_sigma2(p: &[f64], t: usize) -> f64 {
    let w1: f64 = p[..=t].iter().sum();
    let w2: f64 = p[t + 1..].iter().sum();
    let mean_of = |lo: usize, hi: usize, w: f64| -> f64 {
        if w == 0.0 {
            return 0.0;
        }
        (lo..hi).map(|i| i as f64 * (p[i] / w)).sum()
    };
    let m1 = mean_of(0, t + 1, w1);
    let m2 = mean_of(t + 1, p.len(), w2);
    let mt: f64 = (0..p.len()).map(|i| i as f64 * p[i]).sum();
    w1 * (m1 - mt).powi(2) + w2 * (m2 - mt).powi(2)
}

pub fn probabilities(counts: &[u64; LEVELS]) -> Vec<f64> {
    let n: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / n as f64).collect()
}

/// Smallest `t` in `0..=254` maximizing [`brute_force_sigma2`], or `None`
/// when fewer than two levels are occupied.
pub fn brute_force_otsu(counts: &[u64; LEVELS]) -> Option<usize> {
    if counts.iter().filter(|&&c| c > 0).count() < 2 {
        return None;
    }
    let p = probabilities(counts);
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for t in 0..LEVELS - 1 {
        let v = brute_force_sigma2(&p, t);
        if v > best_val {
            best_val = v;
            best = t;
        }
    }
    Some(best)
}

/// Median of the `k×k` clamped window by counting: the smallest level whose
/// number of window samples at or below it reaches the middle rank.
pub fn counting_median(ch: &GrayChannel, k: usize) -> GrayChannel {
    let (w, h) = ch.dimensions();
    let r = (k / 2) as isize;
    let rank = (k * k).div_ceil(2);
    GrayChannel::from_fn(w, h, |x, y| {
        let mut counts = [0usize; LEVELS];
        for dy in -r..=r {
            for dx in -r..=r {
                let sx = (x as isize + dx).clamp(0, w as isize - 1) as usize;
                let sy = (y as isize + dy).clamp(0, h as isize - 1) as usize;
                counts[ch.get(sx, sy) as usize] += 1;
            }
        }
        let mut seen = 0;
        for (level, &c) in counts.iter().enumerate() {
            seen += c;
            if seen >= rank {
                return level as u8;
            }
        }
        unreachable!()
    })
}

#[derive(Debug, Clone, Copy)]
pub enum HistShape {
    Bimodal,
    Uniform,
    HeavyTailed,
    Sparse,
}

pub const SHAPES: [HistShape; 4] = [
    HistShape::Bimodal,
    HistShape::Uniform,
    HistShape::HeavyTailed,
    HistShape::Sparse,
];

/// Random counts with at least two occupied levels.
pub fn random_counts(rng: &mut StdRng, shape: HistShape) -> [u64; LEVELS] {
    loop {
        let mut counts = [0u64; LEVELS];
        match shape {
            HistShape::Bimodal => {
                for _ in 0..2 {
                    let centre = rng.gen_range(0.0..255.0);
                    let spread = rng.gen_range(2.0..40.0);
                    let height = rng.gen_range(10.0..5000.0);
                    for (i, c) in counts.iter_mut().enumerate() {
                        let z = (i as f64 - centre) / spread;
                        *c += (height * (-0.5 * z * z).exp()) as u64;
                    }
                }
                for c in counts.iter_mut() {
                    *c += rng.gen_range(0..3);
                }
            }
            HistShape::Uniform => {
                for c in counts.iter_mut() {
                    *c = rng.gen_range(0..1000);
                }
            }
            HistShape::HeavyTailed => {
                let alpha = rng.gen_range(0.5..2.5);
                for _ in 0..rng.gen_range(100..5000) {
                    let u: f64 = rng.gen_range(1e-6..1.0);
                    let level = (u.powf(-1.0 / alpha) - 1.0).min(255.0) as usize;
                    counts[level] += 1;
                }
                if rng.gen_bool(0.5) {
                    counts.reverse();
                }
            }
            HistShape::Sparse => {
                for _ in 0..rng.gen_range(2..8) {
                    counts[rng.gen_range(0..LEVELS)] += rng.gen_range(1..500);
                }
            }
        }
        if counts.iter().filter(|&&c| c > 0).count() >= 2 {
            return counts;
        }
    }
}

pub fn random_histogram(rng: &mut StdRng, shape: HistShape) -> Histogram {
    Histogram::from_counts(random_counts(rng, shape)).unwrap()
}

pub fn random_channel(rng: &mut StdRng, w: usize, h: usize) -> GrayChannel {
    GrayChannel::new(w, h, (0..w * h).map(|_| rng.gen()).collect()).unwrap()
}

pub fn random_image(rng: &mut StdRng, w: usize, h: usize) -> ColorImage {
    ColorImage::from_raw(w, h, (0..w * h * 3).map(|_| rng.gen()).collect()).unwrap()
}

/// Smooth color blobs over a gradient with a little noise, closer to a
/// photograph than uniform noise.
pub fn synthetic_scene(rng: &mut StdRng, w: usize, h: usize) -> ColorImage {
    let blobs: Vec<(f64, f64, f64, [f64; 3])> = (0..6)
        .map(|_| {
            (
                rng.gen_range(0.0..w as f64),
                rng.gen_range(0.0..h as f64),
                rng.gen_range(0.05..0.3) * w.max(h) as f64,
                [
                    rng.gen_range(0.0..255.0),
                    rng.gen_range(0.0..255.0),
                    rng.gen_range(0.0..255.0),
                ],
            )
        })
        .collect();
    let noise: Vec<i16> = (0..w * h * 3).map(|_| rng.gen_range(-12..=12)).collect();
    ColorImage::from_fn(w, h, |x, y| {
        let mut c = [
            60.0 + 80.0 * x as f64 / w as f64,
            40.0 + 90.0 * y as f64 / h as f64,
            120.0,
        ];
        for &(cx, cy, r, col) in &blobs {
            let d2 = ((x as f64 - cx).powi(2) + (y as f64 - cy).powi(2)) / (r * r);
            let a = (-d2).exp();
            for i in 0..3 {
                c[i] = c[i] * (1.0 - a) + col[i] * a;
            }
        }
        let base = (y * w + x) * 3;
        [0, 1, 2].map(|i| (c[i] + noise[base + i] as f64).round().clamp(0.0, 255.0) as u8)
    })
}
