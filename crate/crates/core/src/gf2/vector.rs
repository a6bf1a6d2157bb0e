use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed 64 coordinates per word.
///
/// Coordinate `i` lives in bit `i % 64` of word `i / 64`. Bits beyond
/// `len` are always zero, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF2Vector {
    len: usize,
    words: Vec<u64>,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self { len, words: vec![!0; words_for(len)] };
        v.clear_tail();
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// The low `len` bits of `value`, bit `i` becoming coordinate `i`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS, "from_u64 holds at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    /// Packs the coordinates into a single word, if they fit.
    pub fn to_u64(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            l if l <= WORD_BITS => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2). Panics on length mismatch.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors with different lengths");
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Indices of the nonzero coordinates in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Coordinates `start..start + len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self::from_fn(len, |i| self.get(start + i))
    }

    pub fn concat(parts: &[&GF2Vector]) -> Self {
        let len = parts.iter().map(|p| p.len()).sum();
        let mut out = Self::zeros(len);
        let mut at = 0;
        for p in parts {
            for i in p.support() {
                out.set(at + i, true);
            }
            at += p.len();
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Lexicographic order on the bit strings, coordinate 0 first, with `0 < 1`.
/// A proper prefix sorts before its extensions.
impl Ord for GF2Vector {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        for (wi, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let mut diff = a ^ b;
            let start = wi * WORD_BITS;
            if start >= common {
                break;
            }
            if common - start < WORD_BITS {
                diff &= (1u64 << (common - start)) - 1;
            }
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if (a >> bit) & 1 == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for GF2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vector({self})")
    }
}

/// Parses a string of `0`/`1` characters; surrounding whitespace is ignored.
impl FromStr for GF2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse { line: 1, msg: format!("unexpected character {other:?} in bit string") })
                }
            }
        }
        Ok(v)
    }
}
