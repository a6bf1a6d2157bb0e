//! The low-rank-plus-sparse map `g(L, R, X) = L·R + S(X)`.
//!
//! `M` is an `n × n` matrix flattened row-major into `n²` bits, `n` a
//! perfect square. `L` is `n × r`, `R` is `r × n`, and row `i` of `S` is the
//! output of its own copy of the degree-2 sparse encoder of length `n` on
//! `s × ℓ` bits of `X`. Every matrix outside the range of `g` has no
//! decomposition `L·R + S` with row weights of `S` at most `s`.
//!
//! Input layout: `L[i][t]` at `i·r + t`, `R[t][j]` at `n·r + t·n + j`, then
//! the encoder blocks, block `i` starting at `2·n·r + i·s·ℓ`. Output `(i, j)`
//! is bit `i·n + j`.

use crate::circuit::{BooleanMap, Monomial, PolyFunction};
use crate::encoding::sparse::{build_sparse_encoder, HypergraphEncoder};
use crate::error::{Error, Result};
use crate::gf2::{GF2Matrix, GF2Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidInstance {
    n: usize,
    r: usize,
    s: usize,
    encoder: HypergraphEncoder,
    g: PolyFunction,
}

/// `n` must be a perfect square, `1 <= r <= n` and `s <= n`. Whether `g`
/// has fewer inputs than outputs depends on `r` and `s`; see
/// [`RigidInstance::within_hypothesis`].
pub fn build_rigid_instance(n: usize, r: usize, s: usize) -> Result<RigidInstance> {
    let root = (n as f64).sqrt().round() as usize;
    if n == 0 || root * root != n {
        return Err(Error::Parameter(format!("n = {n} is not a positive perfect square")));
    }
    if r == 0 || r > n {
        return Err(Error::Parameter(format!("rank bound r = {r} outside 1..={n}")));
    }
    if s > n {
        return Err(Error::Parameter(format!("sparsity s = {s} exceeds the row length {n}")));
    }
    let encoder = build_sparse_encoder(n, s, 2)?;
    let block = s * encoder.vertices();
    let base = 2 * n * r;
    let mut outputs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut terms =
                (0..r).map(|t| Monomial::new(vec![i * r + t, n * r + t * n + j])).collect::<Result<Vec<_>>>()?;
            for mono in encoder.poly().output(j) {
                terms.push(Monomial::new(mono.vars().iter().map(|&v| base + i * block + v).collect())?);
            }
            outputs.push(terms);
        }
    }
    let g = PolyFunction::new(base + n * block, 2, outputs)?;
    Ok(RigidInstance { n, r, s, encoder, g })
}

impl RigidInstance {
    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `2s < √n`. Rows of weight at most `s` are always reached;
    /// this is the sparsity regime in which the encoder blocks stay small
    /// next to the `n` columns they cover.
    pub fn within_hypothesis(&self) -> bool {
        4 * self.s * self.s < self.n
    }

    pub fn rank_bound(&self) -> usize {
        self.r
    }

    pub fn sparsity(&self) -> usize {
        self.s
    }

    pub fn encoder(&self) -> &HypergraphEncoder {
        &self.encoder
    }

    pub fn poly(&self) -> &PolyFunction {
        &self.g
    }

    /// Reshapes an output of `g` into the `n × n` matrix it denotes.
    pub fn matrix_from_output(&self, y: &GF2Vector) -> Result<GF2Matrix> {
        GF2Matrix::from_flat(self.n, self.n, y)
    }

    /// Input of `g` mapping to `L·R + S`. Needs `L` of shape `n × r`, `R` of
    /// shape `r × n` and every row of `S` of weight at most `s`.
    pub fn rigid_witness(&self, l: &GF2Matrix, r: &GF2Matrix, s: &GF2Matrix) -> Result<GF2Vector> {
        let n = self.n;
        Error::check_len(n, l.rows())?;
        Error::check_len(self.r, l.cols())?;
        Error::check_len(self.r, r.rows())?;
        Error::check_len(n, r.cols())?;
        Error::check_len(n, s.rows())?;
        Error::check_len(n, s.cols())?;
        let blocks = (0..n).map(|i| self.encoder.sparse_witness(&s.row(i))).collect::<Result<Vec<_>>>()?;
        let (lf, rf) = (l.to_flat(), r.to_flat());
        let mut parts = vec![&lf, &rf];
        parts.extend(blocks.iter());
        let x = GF2Vector::concat(&parts);
        debug_assert_eq!(x.len(), self.g.n());
        Ok(x)
    }

    /// `g(x)` as a matrix.
    pub fn evaluate_matrix(&self, x: &GF2Vector) -> Result<GF2Matrix> {
        self.matrix_from_output(&self.g.evaluate(x)?)
    }
}
