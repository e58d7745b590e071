//! The d-regular rooted tree on words over `{1..d}` and truncated
//! automorphisms of it.
//!
//! Automorphisms act on the right: `(vw)^g = v^g w^{g|_v}`, and products are
//! read left to right, so `p.compose(&q)` means "apply `p`, then `q`".

mod portrait;
mod sample;

pub use portrait::{Portrait, PortraitJson};
pub use sample::uniform_aut_sample;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeShape {
    degree: usize,
}

impl TreeShape {
    pub fn new(degree: usize) -> Result<Self> {
        if !(2..=255).contains(&degree) {
            return Err(Error::InvalidDegree(degree));
        }
        Ok(Self { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of vertices on level `n`.
    pub fn level_size(&self, n: usize) -> usize {
        self.degree.pow(n as u32)
    }

    /// Number of vertices on levels `0..m`, i.e. internal vertices of `T^m`.
    pub fn internal_count(&self, m: usize) -> usize {
        (self.level_size(m) - 1) / (self.degree - 1)
    }

    /// All vertices of level `n` in lexicographic order.
    pub fn level(&self, n: usize) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.level_size(n)).map(move |pos| Vertex::from_position(*self, n, pos))
    }
}

/// A vertex of the tree, i.e. a finite word over the alphabet.
///
/// Stored 0-based; every public constructor and `Display` use 1-based symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    digits: Vec<u8>,
}

impl Vertex {
    pub fn root() -> Self {
        Self { digits: Vec::new() }
    }

    pub fn from_symbols(shape: TreeShape, symbols: &[usize]) -> Result<Self> {
        let d = shape.degree();
        let digits = symbols
            .iter()
            .map(|&s| {
                if s == 0 || s > d {
                    Err(Error::SymbolOutOfRange { symbol: s, degree: d })
                } else {
                    Ok((s - 1) as u8)
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { digits })
    }

    /// Parses `"12"` (single digits, degree ≤ 9) or `"1.12.3"` (dot separated).
    pub fn parse(shape: TreeShape, s: &str) -> Result<Self> {
        let s = s.trim();
        let symbols: Vec<usize> = if s.is_empty() {
            Vec::new()
        } else if s.contains('.') {
            s.split('.')
                .map(|t| t.parse().map_err(|_| Error::Schema(format!("bad vertex `{s}`"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::Schema(format!("bad vertex `{s}`")))
                })
                .collect::<Result<_>>()?
        };
        Self::from_symbols(shape, &symbols)
    }

    pub(crate) fn from_digits(digits: Vec<u8>) -> Self {
        Self { digits }
    }

    /// The vertex at index `pos` of level `n` (lexicographic order).
    pub fn from_position(shape: TreeShape, n: usize, mut pos: usize) -> Self {
        let d = shape.degree();
        let mut digits = vec![0u8; n];
        for slot in digits.iter_mut().rev() {
            *slot = (pos % d) as u8;
            pos /= d;
        }
        Self { digits }
    }

    pub fn level(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn symbols(&self) -> Vec<usize> {
        self.digits.iter().map(|&x| x as usize + 1).collect()
    }

    /// Index of this vertex within its level.
    pub fn position(&self, shape: TreeShape) -> usize {
        let d = shape.degree();
        self.digits.iter().fold(0, |acc, &x| acc * d + x as usize)
    }

    pub fn prefix(&self, k: usize) -> Vertex {
        Vertex {
            digits: self.digits[..k].to_vec(),
        }
    }

    pub fn suffix(&self, k: usize) -> Vertex {
        Vertex {
            digits: self.digits[k..].to_vec(),
        }
    }

    pub fn concat(&self, other: &Vertex) -> Vertex {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Vertex { digits }
    }

    /// `x^n` for the 1-based symbol `x`, as used for the ray `x, xx, xxx, ...`.
    pub fn repeated(digit0: u8, n: usize) -> Vertex {
        Vertex {
            digits: vec![digit0; n],
        }
    }

    pub(crate) fn check(&self, shape: TreeShape) -> Result<()> {
        let d = shape.degree();
        match self.digits.iter().find(|&&x| x as usize >= d) {
            Some(&x) => Err(Error::SymbolOutOfRange {
                symbol: x as usize + 1,
                degree: d,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "∅");
        }
        let wide = self.digits.iter().any(|&x| x >= 9);
        for (i, &x) in self.digits.iter().enumerate() {
            if wide && i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", x as usize + 1)?;
        }
        Ok(())
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
