use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::circuit::BooleanMap;
use crate::error::{Error, Result};
use crate::gf2::vector::{words_for, WORD_BITS};
use crate::gf2::GF2Vector;

/// Default cap on the number of inputs an exhaustive pass may visit.
pub const DEFAULT_ENUM_LIMIT: u64 = 1 << 26;

/// Largest output length for which the range is kept as a bitmap.
pub const BITMAP_MAX_OUTPUTS: usize = 30;

const CHUNK: u64 = 1 << 12;

/// `2^n`, or an error when it exceeds `limit`.
pub fn input_count(n: usize, limit: u64) -> Result<u64> {
    if n >= 63 || (1u64 << n) > limit {
        return Err(Error::LimitExceeded { bits: n, limit });
    }
    Ok(1u64 << n)
}

/// Whether some input maps to `y`. Stops as soon as a preimage is found.
pub fn in_range<C: BooleanMap + ?Sized>(c: &C, y: &GF2Vector, limit: u64) -> Result<bool> {
    Error::check_len(c.output_len(), y.len())?;
    let count = input_count(c.input_len(), limit)?;
    let target = y.words();
    let width = words_for(c.output_len());
    Ok((0..count.div_ceil(CHUNK)).into_par_iter().any(|chunk| {
        let mut out = vec![0u64; width];
        (chunk * CHUNK..((chunk + 1) * CHUNK).min(count)).any(|x| {
            out.fill(0);
            c.eval_packed(x, &mut out);
            out == target
        })
    }))
}

/// Whether `y` is a valid answer: the right length and outside the range.
pub fn check_avoid_solution<C: BooleanMap + ?Sized>(c: &C, y: &GF2Vector, limit: u64) -> Result<bool> {
    Ok(!in_range(c, y, limit)?)
}

/// The full image of a map, computed once by enumerating every input.
#[derive(Clone, Debug)]
pub enum RangeSet {
    /// Bit `v` is set when the output whose packed word is `v` is hit.
    Bitmap { m: usize, bits: Vec<u64> },
    /// Distinct outputs in lexicographic order.
    Sorted { m: usize, points: Vec<GF2Vector> },
}

impl RangeSet {
    pub fn build<C: BooleanMap + ?Sized>(c: &C, limit: u64) -> Result<Self> {
        let m = c.output_len();
        let count = input_count(c.input_len(), limit)?;
        let chunks = count.div_ceil(CHUNK);
        let span = move |chunk: u64| chunk * CHUNK..((chunk + 1) * CHUNK).min(count);
        if m <= BITMAP_MAX_OUTPUTS {
            let bits: Vec<AtomicU64> = (0..words_for(1 << m)).map(|_| AtomicU64::new(0)).collect();
            (0..chunks).into_par_iter().for_each(|chunk| {
                let mut out = [0u64];
                for x in span(chunk) {
                    out[0] = 0;
                    c.eval_packed(x, &mut out);
                    let v = out[0] as usize;
                    bits[v / WORD_BITS].fetch_or(1 << (v % WORD_BITS), Ordering::Relaxed);
                }
            });
            let bits = bits.into_iter().map(AtomicU64::into_inner).collect();
            return Ok(RangeSet::Bitmap { m, bits });
        }
        let width = words_for(m);
        let mut points: Vec<GF2Vector> = (0..chunks)
            .into_par_iter()
            .flat_map_iter(|chunk| {
                span(chunk).map(move |x| {
                    let mut out = vec![0u64; width];
                    c.eval_packed(x, &mut out);
                    GF2Vector::from_words(m, out)
                })
            })
            .collect();
        points.par_sort_unstable();
        points.dedup();
        Ok(RangeSet::Sorted { m, points })
    }

    pub fn output_len(&self) -> usize {
        match self {
            RangeSet::Bitmap { m, .. } | RangeSet::Sorted { m, .. } => *m,
        }
    }

    pub fn contains(&self, y: &GF2Vector) -> Result<bool> {
        Error::check_len(self.output_len(), y.len())?;
        Ok(match self {
            RangeSet::Bitmap { bits, .. } => {
                let v = y.words().first().copied().unwrap_or(0) as usize;
                bits[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
            }
            RangeSet::Sorted { points, .. } => points.binary_search(y).is_ok(),
        })
    }

    /// Number of distinct outputs hit.
    pub fn len(&self) -> u64 {
        match self {
            RangeSet::Bitmap { bits, .. } => bits.iter().map(|w| w.count_ones() as u64).sum(),
            RangeSet::Sorted { points, .. } => points.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The lexicographically least output not hit, bit 0 most significant.
    pub fn least_missing(&self) -> Option<GF2Vector> {
        match self {
            RangeSet::Bitmap { m, bits } => {
                let m = *m;
                (0u64..1 << m).find_map(|rank| {
                    // bit j of the packed word is coordinate j, which carries
                    // weight 2^(m-1-j) in lexicographic rank
                    let v = (rank.reverse_bits() >> (64 - m.max(1))) as usize & ((1usize << m) - 1);
                    let hit = bits[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1;
                    (!hit).then(|| GF2Vector::from_u64(v as u64, m))
                })
            }
            RangeSet::Sorted { m, points } => {
                let mut candidate = GF2Vector::zeros(*m);
                for p in points {
                    if *p != candidate {
                        break;
                    }
                    candidate = lex_successor(&candidate)?;
                }
                Some(candidate)
            }
        }
    }
}

/// Next vector in lexicographic order, `None` after all ones.
fn lex_successor(v: &GF2Vector) -> Option<GF2Vector> {
    let mut next = v.clone();
    for i in (0..v.len()).rev() {
        next.flip(i);
        if next.get(i) {
            return Some(next);
        }
    }
    None
}
