//! Exact decision of `(r, s)`-rigidity over GF(2).
//!
//! `M` is non-rigid when `M = L·R + S` with `L` of shape `n × r`, `R` of
//! shape `r × n` and at most `s` ones in each row of `S`. Equivalently some
//! subspace `W` of dimension at most `r` has every row of `M` within Hamming
//! distance `s` of `W`. The primary search enumerates `W` through the
//! reduced row-echelon form of its basis, so each subspace is visited once.
//! The dual search enumerates `S` instead and only suits tiny `n`.

use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{GF2Matrix, GF2Vector};

/// Default cap on rigidity search steps.
pub const DEFAULT_RIGIDITY_BUDGET: u128 = 1 << 34;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The search space was exhausted without a decomposition.
    Rigid,
    /// `M = L·R + S`.
    Decomposition { l: GF2Matrix, r: GF2Matrix, s: GF2Matrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityCertificate {
    pub matrix: GF2Matrix,
    pub r: usize,
    pub s: usize,
    pub verdict: Verdict,
}

/// Number of `d`-dimensional subspaces of GF(2)^n, saturating.
pub fn gaussian_binomial(n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let pow = |e: usize| if e >= 127 { u128::MAX } else { (1u128 << e) - 1 };
    let mut acc: u128 = 1;
    for i in 0..d {
        // acc = [n, i] becomes [n, i + 1]; each quotient is exact
        let Some(next) = acc.checked_mul(pow(n - i)) else {
            return u128::MAX;
        };
        acc = next / pow(i + 1);
    }
    acc
}

/// Steps the primary search takes in the worst case.
pub fn search_cost(n: usize, r: usize) -> u128 {
    (0..=r.min(n))
        .map(|d| gaussian_binomial(n, d).saturating_mul(n as u128).saturating_mul(1u128 << d.min(126)))
        .fold(0u128, u128::saturating_add)
}

fn check_square(m: &GF2Matrix) -> Result<usize> {
    Error::check_len(m.rows(), m.cols())?;
    Ok(m.rows())
}

/// Builds `L`, `R`, `S` from a basis of `W` and each row's chosen
/// combination of it.
fn decomposition(m: &GF2Matrix, basis: &[GF2Vector], coeffs: &[usize], r: usize) -> Result<Verdict> {
    let n = m.rows();
    let mut l = GF2Matrix::zeros(n, r);
    let mut rr = GF2Matrix::zeros(r, m.cols());
    for (t, b) in basis.iter().enumerate() {
        for j in b.support() {
            rr.set(t, j, true);
        }
    }
    for (i, &c) in coeffs.iter().enumerate() {
        for t in 0..basis.len() {
            l.set(i, t, c >> t & 1 == 1);
        }
    }
    let s = m.add(&l.mul(&rr)?)?;
    Ok(Verdict::Decomposition { l, r: rr, s })
}

/// Each row's best combination of `basis`, or `None` if some row stays more
/// than `s` away from the span.
fn fit_rows(m: &GF2Matrix, basis: &[GF2Vector], s: usize) -> Option<Vec<usize>> {
    let span: Vec<GF2Vector> = (0..1usize << basis.len())
        .map(|c| {
            let mut w = GF2Vector::zeros(m.cols());
            for (t, b) in basis.iter().enumerate() {
                if c >> t & 1 == 1 {
                    w.xor_assign(b);
                }
            }
            w
        })
        .collect();
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let (c, dist) = span
                .iter()
                .enumerate()
                .map(|(c, w)| {
                    let mut d = row.clone();
                    d.xor_assign(w);
                    (c, d.weight())
                })
                .min_by_key(|&(c, d)| (d, c))
                .expect("the span contains zero");
            (dist <= s).then_some(c)
        })
        .collect()
}

/// Basis of a `d`-dimensional subspace in reduced row-echelon form with the
/// given pivots; `mask` fills the free entries row by row.
fn rref_basis(cols: usize, pivots: &[usize], mask: u64) -> Vec<GF2Vector> {
    let mut bit = 0;
    pivots
        .iter()
        .map(|&p| {
            let mut v = GF2Vector::zeros(cols);
            v.set(p, true);
            for j in p + 1..cols {
                if !pivots.contains(&j) {
                    v.set(j, mask >> bit & 1 == 1);
                    bit += 1;
                }
            }
            v
        })
        .collect()
}

fn free_entries(cols: usize, pivots: &[usize]) -> usize {
    pivots.iter().enumerate().map(|(t, &p)| cols - p - 1 - (pivots.len() - t - 1)).sum()
}

/// Decides whether `M` is `(r, s)`-rigid. A decomposition of least rank is
/// returned when one exists.
pub fn is_rigid(m: &GF2Matrix, r: usize, s: usize, budget: u128) -> Result<RigidityCertificate> {
    let n = check_square(m)?;
    let needed = search_cost(n, r);
    if needed > budget {
        return Err(Error::RigidityBudget { needed, budget });
    }
    let cert = |verdict| RigidityCertificate { matrix: m.clone(), r, s, verdict };
    for d in 0..=r.min(n) {
        for pivots in (0..n).combinations(d) {
            let free = free_entries(n, &pivots);
            let found = (0..1u64 << free).into_par_iter().find_map_first(|mask| {
                let basis = rref_basis(n, &pivots, mask);
                fit_rows(m, &basis, s).map(|coeffs| (basis, coeffs))
            });
            if let Some((basis, coeffs)) = found {
                return Ok(cert(decomposition(m, &basis, &coeffs, r)?));
            }
        }
    }
    Ok(cert(Verdict::Rigid))
}

/// Decides rigidity by enumerating every row-sparse `S` and testing
/// `rank(M + S) <= r`.
pub fn is_rigid_by_sparse_enumeration(m: &GF2Matrix, r: usize, s: usize, budget: u128) -> Result<RigidityCertificate> {
    let n = check_square(m)?;
    let rows: Vec<GF2Vector> = (0..=s.min(n))
        .flat_map(|w| (0..n).combinations(w))
        .map(|support| {
            let mut v = GF2Vector::zeros(n);
            support.into_iter().for_each(|j| v.set(j, true));
            v
        })
        .collect();
    let needed = (rows.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::RigidityBudget { needed, budget });
    }
    let cert = |verdict| RigidityCertificate { matrix: m.clone(), r, s, verdict };
    let found = (0..n).map(|_| 0..rows.len()).multi_cartesian_product().find_map(|choice| {
        let sparse = GF2Matrix::from_rows(n, &choice.iter().map(|&c| rows[c].clone()).collect::<Vec<_>>()).ok()?;
        let q = m.add(&sparse).ok()?;
        (q.rank() <= r).then_some(q)
    });
    // n = 0 gives one empty choice that multi_cartesian_product skips
    let found = if n == 0 { Some(m.clone()) } else { found };
    let Some(q) = found else {
        return Ok(cert(Verdict::Rigid));
    };
    let mut reduced = q.clone();
    let pivots = reduced.row_reduce();
    let basis: Vec<GF2Vector> = (0..pivots.len()).map(|t| reduced.row(t)).collect();
    let coeffs: Vec<usize> =
        (0..n).map(|i| pivots.iter().enumerate().fold(0, |acc, (t, &p)| acc | (q.get(i, p) as usize) << t)).collect();
    Ok(cert(decomposition(m, &basis, &coeffs, r)?))
}

impl RigidityCertificate {
    pub fn is_rigid(&self) -> bool {
        self.verdict == Verdict::Rigid
    }

    /// Re-checks a decomposition: shapes, `M = L·R + S`, `rank(L·R) <= r`
    /// and the row weights of `S`. A rigid verdict carries nothing to check
    /// and returns `true`.
    pub fn check(&self) -> Result<bool> {
        let Verdict::Decomposition { l, r, s } = &self.verdict else {
            return Ok(true);
        };
        let n = self.matrix.rows();
        let shapes =
            [(l.rows(), n), (l.cols(), self.r), (r.rows(), self.r), (r.cols(), n), (s.rows(), n), (s.cols(), n)];
        if shapes.iter().any(|(a, b)| a != b) {
            return Ok(false);
        }
        let lr = l.mul(r)?;
        Ok(lr.add(s)? == self.matrix && lr.rank() <= self.r && (0..n).all(|i| s.row_weight(i) <= self.s))
    }

    pub fn to_text(&self) -> String {
        let n = self.matrix.rows();
        let tag = if self.is_rigid() { "rigid" } else { "non-rigid" };
        let mut out = format!("verdict {tag} n={n} r={} s={}\nM\n{}", self.r, self.s, self.matrix);
        if let Verdict::Decomposition { l, r, s } = &self.verdict {
            write!(out, "L\n{l}R\n{r}S\n{s}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        let Some(&(hl, header)) = lines.first() else {
            return Err(err(1, "empty certificate"));
        };
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 5 || toks[0] != "verdict" {
            return Err(err(hl, "expected `verdict <rigid|non-rigid> n=<n> r=<r> s=<s>`"));
        }
        let field = |tok: &str, key: &str| -> Result<usize> {
            tok.strip_prefix(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(hl, &format!("expected {key}<number>")))
        };
        let (n, r, s) = (field(toks[2], "n=")?, field(toks[3], "r=")?, field(toks[4], "s=")?);
        let rigid = match toks[1] {
            "rigid" => true,
            "non-rigid" => false,
            _ => return Err(err(hl, "verdict must be rigid or non-rigid")),
        };
        let mut rest = lines[1..].iter().copied().peekable();
        let mut block = |label: &str, rows: usize, cols: usize| -> Result<GF2Matrix> {
            match rest.next() {
                Some((_, l)) if l == label => {}
                Some((line, _)) => return Err(err(line, &format!("expected block {label}"))),
                None => return Err(err(hl, &format!("missing block {label}"))),
            }
            let mut vs = Vec::with_capacity(rows);
            for _ in 0..rows {
                let (line, l) = rest.next().ok_or_else(|| err(hl, &format!("block {label} is short")))?;
                let v: GF2Vector = l.parse().map_err(|_| err(line, "expected a row of 0/1"))?;
                if v.len() != cols {
                    return Err(err(line, &format!("row of block {label} should have {cols} entries")));
                }
                vs.push(v);
            }
            GF2Matrix::from_rows(cols, &vs)
        };
        let matrix = block("M", n, n)?;
        let verdict = if rigid {
            Verdict::Rigid
        } else {
            Verdict::Decomposition { l: block("L", n, r)?, r: block("R", r, n)?, s: block("S", n, n)? }
        };
        if let Some((line, _)) = rest.next() {
            return Err(err(line, "trailing content"));
        }
        Ok(Self { matrix, r, s, verdict })
    }
}
