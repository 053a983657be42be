//! Binary portable pixmap (`P6`) and graymap (`P5`) codecs, 8-bit only.
//!
//! Writes are canonical: `P6\n{w} {h}\n255\n` followed by the raw samples,
//! with no comments, so equal images always encode to equal bytes. Reads
//! accept any whitespace between header tokens and `#` comments running to
//! the end of the line. Exactly one whitespace byte separates the maxval from
//! the payload. Bytes after the payload are ignored.

use thiserror::Error;

use crate::image_model::{ColorImage, GrayChannel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnmError {
    #[error("malformed header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: &'static str },

    #[error("unsupported maxval {maxval} at byte {offset}; only 255 is accepted")]
    UnsupportedMaxval { offset: usize, maxval: u64 },

    #[error("payload truncated at byte {offset}: expected {expected} bytes, found {actual}")]
    TruncatedPayload {
        offset: usize,
        expected: usize,
        actual: usize,
    },
}

pub const PPM_MAGIC: &[u8; 2] = b"P6";
pub const PGM_MAGIC: &[u8; 2] = b"P5";

/// Parsed header fields plus the offset where the payload starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixmapHeader {
    pub magic: [u8; 2],
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub data_offset: usize,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn malformed(&self, reason: &'static str) -> PnmError {
        PnmError::MalformedHeader {
            offset: self.pos,
            reason,
        }
    }

    fn skip_separators(&mut self) -> Result<(), PnmError> {
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.malformed("expected whitespace before header field"));
        }
        Ok(())
    }

    fn number(&mut self) -> Result<u64, PnmError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or(PnmError::MalformedHeader {
                    offset: start,
                    reason: "header field overflows",
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.malformed("expected decimal header field"));
        }
        Ok(value)
    }

    fn dimension(&mut self) -> Result<usize, PnmError> {
        self.skip_separators()?;
        let offset = self.pos;
        let v = self.number()?;
        if v == 0 {
            return Err(PnmError::MalformedHeader {
                offset,
                reason: "image dimensions must be positive",
            });
        }
        usize::try_from(v).map_err(|_| PnmError::MalformedHeader {
            offset,
            reason: "image dimension too large",
        })
    }
}

pub fn read_header(bytes: &[u8], magic: &[u8; 2]) -> Result<PixmapHeader, PnmError> {
    if bytes.len() < 2 || &bytes[..2] != magic {
        return Err(PnmError::MalformedHeader {
            offset: 0,
            reason: if magic == PPM_MAGIC {
                "expected P6 magic"
            } else {
                "expected P5 magic"
            },
        });
    }
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.dimension()?;
    let height = cur.dimension()?;
    cur.skip_separators()?;
    let maxval_offset = cur.pos;
    let maxval = cur.number()?;
    if maxval != 255 {
        return Err(PnmError::UnsupportedMaxval {
            offset: maxval_offset,
            maxval,
        });
    }
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(cur.malformed("expected one whitespace byte after maxval")),
    }
    Ok(PixmapHeader {
        magic: *magic,
        width,
        height,
        maxval: 255,
        data_offset: cur.pos,
    })
}

fn payload<'a>(
    bytes: &'a [u8],
    header: &PixmapHeader,
    channels: usize,
) -> Result<&'a [u8], PnmError> {
    let offset = header.data_offset;
    let available = bytes.len() - offset;
    let expected = header
        .width
        .checked_mul(header.height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or(PnmError::MalformedHeader {
            offset,
            reason: "image dimensions overflow",
        })?;
    if available < expected {
        return Err(PnmError::TruncatedPayload {
            offset: bytes.len(),
            expected,
            actual: available,
        });
    }
    Ok(&bytes[offset..offset + expected])
}

pub fn read_ppm(bytes: &[u8]) -> Result<ColorImage, PnmError> {
    let header = read_header(bytes, PPM_MAGIC)?;
    let data = payload(bytes, &header, 3)?;
    Ok(
        ColorImage::from_raw(header.width, header.height, data.to_vec())
            .expect("payload length checked"),
    )
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayChannel, PnmError> {
    let header = read_header(bytes, PGM_MAGIC)?;
    let data = payload(bytes, &header, 1)?;
    Ok(GrayChannel::new(header.width, header.height, data.to_vec())
        .expect("payload length checked"))
}

fn encode(magic: &[u8; 2], width: usize, height: usize, data: &[u8]) -> Vec<u8> {
    let header = format!(
        "{}\n{width} {height}\n255\n",
        std::str::from_utf8(magic).unwrap()
    );
    let mut out = Vec::with_capacity(header.len() + data.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(data);
    out
}

pub fn write_ppm(img: &ColorImage) -> Vec<u8> {
    encode(PPM_MAGIC, img.width(), img.height(), img.as_raw())
}

pub fn write_pgm(ch: &GrayChannel) -> Vec<u8> {
    encode(PGM_MAGIC, ch.width(), ch.height(), ch.values())
}
