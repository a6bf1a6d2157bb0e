//! Degree-`d` encoder of `s`-sparse vectors.
//!
//! Coordinate `i` of `{0,1}^n` is labelled by the `i`-th lexicographic
//! `d`-subset `e_i` of `[ℓ]`. The input is an `s × ℓ` matrix `X`, and
//! `f_i(X) = Σ_row Π_{v ∈ e_i} X[row][v]`. A vector of weight at most `s`
//! is hit by writing the indicator of one edge per row.

use itertools::Itertools;

use crate::circuit::{Monomial, PolyFunction};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphEncoder {
    n: usize,
    s: usize,
    d: usize,
    ell: usize,
    edges: Vec<Vec<usize>>,
    poly: PolyFunction,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Smallest `ℓ >= d` with `C(ℓ, d) >= n`.
pub fn vertex_count(n: usize, d: usize) -> usize {
    (d..).find(|&l| binomial(l, d) >= n as u128).expect("binomials grow without bound")
}

/// Encoder with `n` outputs, `s` rows and edges of size `d`.
pub fn build_sparse_encoder(n: usize, s: usize, d: usize) -> Result<HypergraphEncoder> {
    if n == 0 || d == 0 {
        return Err(Error::Parameter(format!("sparse encoder needs n >= 1 and d >= 1, got n={n}, d={d}")));
    }
    let ell = vertex_count(n, d);
    let edges: Vec<Vec<usize>> = (0..ell).combinations(d).take(n).collect();
    let outputs = edges
        .iter()
        .map(|e| {
            (0..s).map(|row| Monomial::new(e.iter().map(|&v| row * ell + v).collect())).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = PolyFunction::new(s * ell, d, outputs)?;
    Ok(HypergraphEncoder { n, s, d, ell, edges, poly })
}

impl HypergraphEncoder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sparsity(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of hypergraph vertices `ℓ`.
    pub fn vertices(&self) -> usize {
        self.ell
    }

    /// `e_i` for every output coordinate.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn poly(&self) -> &PolyFunction {
        &self.poly
    }

    /// Whether `s·d < n^(1 - 1/d)`, the regime in which the `s·ℓ` inputs
    /// are far fewer than the `n` outputs.
    pub fn within_hypothesis(&self) -> bool {
        let lhs = (self.s as u128 * self.d as u128).checked_pow(self.d as u32);
        let rhs = (self.n as u128).checked_pow(self.d as u32 - 1);
        match (lhs, rhs) {
            (Some(l), Some(r)) => l < r,
            (None, _) => false,
            (Some(_), None) => true,
        }
    }

    /// Flattened `X` with `f(X) = y`. Requires `wt(y) <= s`.
    pub fn sparse_witness(&self, y: &GF2Vector) -> Result<GF2Vector> {
        Error::check_len(self.n, y.len())?;
        let weight = y.weight();
        if weight > self.s {
            return Err(Error::Sparsity { weight, sparsity: self.s });
        }
        let mut x = GF2Vector::zeros(self.s * self.ell);
        for (row, i) in y.support().enumerate() {
            for &v in &self.edges[i] {
                x.set(row * self.ell + v, true);
            }
        }
        Ok(x)
    }
}
