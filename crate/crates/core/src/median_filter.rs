//! k×k median smoothing with replicate (clamp-to-edge) borders.
//!
//! [`median_filter_naive`] collects and sorts every window and serves as the
//! reference. [`median_filter_fast`] produces identical output from sliding
//! histograms: one 256-bin histogram per image column covers the `k` rows of
//! the current window, and the window histogram moves along a row by
//! subtracting the departing column and adding the arriving one. Both steps
//! cost the same for every `k`, so run time is flat in the window size.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::histogram::LEVELS;
use crate::image_model::{merge_channels, split_channels, ColorImage, GrayChannel};

/// Odd window side `k` in `3..=255`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowSize(usize);

impl WindowSize {
    /// The seven window sides of the reference experiments.
    pub const SWEEP: [usize; 7] = [3, 5, 7, 9, 11, 13, 15];

    pub fn new(k: usize) -> Result<Self> {
        if k.is_multiple_of(2) || !(3..=255).contains(&k) {
            return Err(Error::InvalidWindow(k));
        }
        Ok(Self(k))
    }

    pub fn k(self) -> usize {
        self.0
    }

    pub fn radius(self) -> usize {
        (self.0 - 1) / 2
    }

    /// Number of samples in a window.
    pub fn population(self) -> usize {
        self.0 * self.0
    }

    /// 1-based rank of the median among the sorted window samples.
    pub fn median_rank(self) -> usize {
        self.population().div_ceil(2)
    }

    pub fn sweep() -> impl Iterator<Item = WindowSize> {
        Self::SWEEP.into_iter().map(WindowSize)
    }
}

impl Default for WindowSize {
    fn default() -> Self {
        Self(15)
    }
}

#[inline]
fn clamp(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

pub fn median_filter_naive(ch: &GrayChannel, w: WindowSize) -> GrayChannel {
    let (width, height) = ch.dimensions();
    let r = w.radius() as isize;
    let mid = w.median_rank() - 1;
    let mut window = Vec::with_capacity(w.population());
    GrayChannel::from_fn(width, height, |x, y| {
        window.clear();
        for dy in -r..=r {
            let sy = clamp(y as isize + dy, height);
            for dx in -r..=r {
                window.push(ch.get(clamp(x as isize + dx, width), sy));
            }
        }
        window.sort_unstable();
        window[mid]
    })
}

const COARSE: usize = 16;
const BAND_ROWS: usize = 32;

/// Two-level histogram: 16 coarse buckets of 16 levels each, plus the fine
/// per-level counts. Counts never exceed 255² so `u16` suffices.
#[derive(Clone)]
struct LevelHist {
    coarse: [u16; COARSE],
    fine: [u16; LEVELS],
}

impl LevelHist {
    fn new() -> Self {
        Self {
            coarse: [0; COARSE],
            fine: [0; LEVELS],
        }
    }

    #[inline]
    fn insert(&mut self, v: u8) {
        self.fine[v as usize] += 1;
        self.coarse[v as usize >> 4] += 1;
    }

    #[inline]
    fn remove(&mut self, v: u8) {
        self.fine[v as usize] -= 1;
        self.coarse[v as usize >> 4] -= 1;
    }

    #[inline]
    fn add(&mut self, other: &Self) {
        for (a, b) in self.fine.iter_mut().zip(other.fine.iter()) {
            *a = a.wrapping_add(*b);
        }
        for (a, b) in self.coarse.iter_mut().zip(other.coarse.iter()) {
            *a = a.wrapping_add(*b);
        }
    }

    /// `self += add - sub`, where `sub` is already contained in `self`.
    #[inline]
    fn shift(&mut self, sub: &Self, add: &Self) {
        for ((a, s), n) in self
            .fine
            .iter_mut()
            .zip(sub.fine.iter())
            .zip(add.fine.iter())
        {
            *a = a.wrapping_sub(*s).wrapping_add(*n);
        }
        for ((a, s), n) in self
            .coarse
            .iter_mut()
            .zip(sub.coarse.iter())
            .zip(add.coarse.iter())
        {
            *a = a.wrapping_sub(*s).wrapping_add(*n);
        }
    }

    /// Smallest level whose cumulative count reaches `rank` (1-based).
    #[inline]
    fn level_at_rank(&self, rank: usize) -> u8 {
        let mut seen = 0usize;
        for (bucket, &c) in self.coarse.iter().enumerate() {
            if seen + c as usize >= rank {
                let base = bucket * COARSE;
                for (i, &f) in self.fine[base..base + COARSE].iter().enumerate() {
                    seen += f as usize;
                    if seen >= rank {
                        return (base + i) as u8;
                    }
                }
                unreachable!("coarse and fine counts disagree");
            }
            seen += c as usize;
        }
        unreachable!("rank exceeds window population")
    }
}

/// Filters rows `y0..y0 + out.len() / width` of `src` into `out`.
fn filter_band(src: &[u8], width: usize, height: usize, w: WindowSize, y0: usize, out: &mut [u8]) {
    let r = w.radius() as isize;
    let rank = w.median_rank();
    let rows = out.len() / width;
    let row = |y: isize| &src[clamp(y, height) * width..][..width];

    let mut columns = vec![LevelHist::new(); width];
    for dy in -r..=r {
        for (col, &v) in columns.iter_mut().zip(row(y0 as isize + dy)) {
            col.insert(v);
        }
    }

    let mut kernel = LevelHist::new();
    for (i, y) in (y0..y0 + rows).enumerate() {
        let y = y as isize;
        if i > 0 {
            let (leaving, entering) = (clamp(y - 1 - r, height), clamp(y + r, height));
            if leaving != entering {
                for ((col, &old), &new) in columns
                    .iter_mut()
                    .zip(row(leaving as isize))
                    .zip(row(entering as isize))
                {
                    col.remove(old);
                    col.insert(new);
                }
            }
        }

        kernel.fine.fill(0);
        kernel.coarse.fill(0);
        for dx in -r..=r {
            kernel.add(&columns[clamp(dx, width)]);
        }
        let out_row = &mut out[i * width..(i + 1) * width];
        out_row[0] = kernel.level_at_rank(rank);
        for x in 1..width as isize {
            let (leaving, entering) = (clamp(x - 1 - r, width), clamp(x + r, width));
            if leaving != entering {
                kernel.shift(&columns[leaving], &columns[entering]);
            }
            out_row[x as usize] = kernel.level_at_rank(rank);
        }
    }
}

/// Median filter built on sliding column histograms; output is identical to
/// [`median_filter_naive`].
///
/// Row bands are filtered in parallel on the current rayon pool. Band
/// boundaries do not depend on the pool size.
pub fn median_filter_fast(ch: &GrayChannel, w: WindowSize) -> GrayChannel {
    let (width, height) = ch.dimensions();
    let src = ch.values();
    let mut out = vec![0u8; src.len()];
    out.par_chunks_mut(width * BAND_ROWS)
        .enumerate()
        .for_each(|(band, chunk)| filter_band(src, width, height, w, band * BAND_ROWS, chunk));
    GrayChannel::new(width, height, out).expect("dimensions preserved")
}

/// Filters each color plane independently with [`median_filter_fast`].
pub fn median_filter_color(img: &ColorImage, w: WindowSize) -> ColorImage {
    let (r, g, b) = split_channels(img);
    let ((r, g), b) = rayon::join(
        || rayon::join(|| median_filter_fast(&r, w), || median_filter_fast(&g, w)),
        || median_filter_fast(&b, w),
    );
    merge_channels(&r, &g, &b).expect("planes share dimensions")
}
