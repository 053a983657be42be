//! Pixel grids and lossless conversion between color and per-channel form.
//!
//! Both grids are row-major with `(x, y) = (column, row)` and the origin at
//! the top-left corner. A [`ColorImage`] stores interleaved `r, g, b` bytes,
//! which is exactly the payload layout of a binary pixmap.

use std::collections::HashSet;

use crate::error::{Error, Result};

fn check_dims(width: usize, height: usize, actual: usize, per_pixel: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage { width, height });
    }
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(per_pixel))
        .ok_or(Error::EmptyImage { width, height })?;
    if actual != expected {
        return Err(Error::BufferLength {
            width,
            height,
            expected,
            actual,
        });
    }
    Ok(())
}

/// An 8-bit RGB image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl ColorImage {
    /// Builds an image from interleaved `r, g, b` bytes.
    pub fn from_raw(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len(), 3)?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_pixels(width: usize, height: usize, pixels: &[[u8; 3]]) -> Result<Self> {
        check_dims(width, height, pixels.len(), 1)?;
        Ok(Self {
            width,
            height,
            data: pixels.concat(),
        })
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    ///
    /// Panics if either dimension is zero.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be non-zero");
        let mut data = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn pixels(&self) -> impl ExactSizeIterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    /// Interleaved `r, g, b` bytes in row-major order.
    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    /// Number of distinct RGB triples in the image.
    pub fn distinct_colors(&self) -> usize {
        self.pixels().collect::<HashSet<_>>().len()
    }
}

/// A single 8-bit intensity plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayChannel {
    width: usize,
    height: usize,
    values: Vec<u8>,
}

impl GrayChannel {
    pub fn new(width: usize, height: usize, values: Vec<u8>) -> Result<Self> {
        check_dims(width, height, values.len(), 1)?;
        Ok(Self {
            width,
            height,
            values,
        })
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        assert!(
            width > 0 && height > 0,
            "channel dimensions must be non-zero"
        );
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                values.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            values,
        }
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self::from_fn(width, height, |_, _| value)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.values[y * self.width + x]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    /// Applies `f` to every value, keeping the dimensions.
    pub fn map(&self, f: impl Fn(u8) -> u8) -> Self {
        Self {
            width: self.width,
            height: self.height,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Splits an image into its red, green and blue planes.
pub fn split_channels(img: &ColorImage) -> (GrayChannel, GrayChannel, GrayChannel) {
    let n = img.width * img.height;
    let mut r = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for px in img.data.chunks_exact(3) {
        r.push(px[0]);
        g.push(px[1]);
        b.push(px[2]);
    }
    let plane = |values| GrayChannel {
        width: img.width,
        height: img.height,
        values,
    };
    (plane(r), plane(g), plane(b))
}

/// Interleaves three equally sized planes into a color image.
pub fn merge_channels(r: &GrayChannel, g: &GrayChannel, b: &GrayChannel) -> Result<ColorImage> {
    if r.dimensions() != g.dimensions() || r.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch(vec![
            r.dimensions(),
            g.dimensions(),
            b.dimensions(),
        ]));
    }
    let mut data = Vec::with_capacity(r.values.len() * 3);
    for ((&rv, &gv), &bv) in r.values.iter().zip(&g.values).zip(&b.values) {
        data.extend_from_slice(&[rv, gv, bv]);
    }
    Ok(ColorImage {
        width: r.width,
        height: r.height,
        data,
    })
}
