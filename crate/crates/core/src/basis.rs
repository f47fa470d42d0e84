//! Computational basis states and the bit-ordering convention.
//!
//! A register of `n` sites numbers its sites `1..=n`. Site `s` is stored in
//! bit `n - s` of a basis index, so the bitstring `b1 b2 … bn` read left to
//! right is the binary representation of the index.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 24;

/// Bit mask of 0-based site `i` in an `n`-site register.
#[inline]
pub(crate) fn site_mask(n: usize, i: usize) -> usize {
    1 << (n - 1 - i)
}

#[inline]
pub(crate) fn site_bit(index: usize, n: usize, i: usize) -> bool {
    index & site_mask(n, i) != 0
}

/// A length-`n` bitstring, one entry per site.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    bits: Vec<bool>,
}

impl BasisState {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    /// Decode basis index `index` of an `n`-site register.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self {
            bits: (0..n).map(|i| site_bit(index, n, i)).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Bit at 1-indexed `site`.
    pub fn get(&self, site: usize) -> Result<bool> {
        if site == 0 || site > self.bits.len() {
            return Err(Error::IndexOutOfRange {
                index: site,
                max: self.bits.len(),
            });
        }
        Ok(self.bits[site - 1])
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl FromStr for BasisState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('|')
            .and_then(|r| r.strip_suffix('>').or_else(|| r.strip_suffix('⟩')))
            .unwrap_or(s);
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Domain(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::Domain("empty bitstring".into()));
        }
        Ok(Self { bits })
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}⟩")
    }
}
