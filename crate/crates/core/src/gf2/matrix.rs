use std::fmt;

use super::vector::{words_for, GF2Vector, WORD_BITS};
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(2), each row packed into `stride` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: &[GF2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            Error::check_len(cols, r.len())?;
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Parses rows of `0`/`1` characters, e.g. `["110", "011"]`.
    pub fn from_str_rows(cols: usize, rows: &[&str]) -> Result<Self> {
        let parsed = rows.iter().map(|r| r.parse::<GF2Vector>()).collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, &parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) outside {}x{}", self.rows, self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) outside {}x{}", self.rows, self.cols);
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> GF2Vector {
        GF2Vector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `row[dst] ^= row[src]`
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Row rank over GF(2), by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Brings the matrix to reduced row-echelon form in place and returns the
    /// pivot columns; the first `pivots.len()` rows are the nonzero ones.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Error::check_len(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row(r).support() {
                let src = other.row_words(k).to_vec();
                for (d, s) in out.row_words_mut(r).iter_mut().zip(&src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &GF2Vector) -> Result<GF2Vector> {
        Error::check_len(self.cols, x.len())?;
        Ok(GF2Vector::from_fn(self.rows, |r| {
            let ones: u32 = self.row_words(r).iter().zip(x.words()).map(|(a, b)| (a & b).count_ones()).sum();
            ones & 1 == 1
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Error::check_len(self.rows, other.rows)?;
        Error::check_len(self.cols, other.cols)?;
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d ^= s;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row-major flattening: entry `(i, j)` becomes coordinate `i * cols + j`.
    pub fn to_flat(&self) -> GF2Vector {
        GF2Vector::from_fn(self.rows * self.cols, |k| self.get(k / self.cols, k % self.cols))
    }

    pub fn from_flat(rows: usize, cols: usize, flat: &GF2Vector) -> Result<Self> {
        Error::check_len(rows * cols, flat.len())?;
        let mut m = Self::zeros(rows, cols);
        for k in flat.support() {
            m.set(k / cols, k % cols, true);
        }
        Ok(m)
    }
}

impl fmt::Display for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        f.write_str("]")
    }
}
