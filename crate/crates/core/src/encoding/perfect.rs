//! Perfect encoding of degree-`d` maps by circuits of locality `d + 1`.
//!
//! An output `g = T_1 + ... + T_k` (a sum of monomials) becomes a block of
//! `2k` bits over private randomness `r_1..r_k` and `s_1..s_{k-1}`:
//!
//! ```text
//! T_1 + r_1, ..., T_k + r_k,
//! r_1 + s_1, s_1 + r_2 + s_2, ..., s_{k-2} + r_{k-1} + s_{k-1}, s_{k-1} + r_k
//! ```
//!
//! Every `r_j` and `s_j` appears exactly twice, so the block's parity is
//! `g(x)`. Conversely any block with parity `g(x)` is hit by some `(r, s)`:
//! the first `2k - 1` bits determine `r` and `s` one at a time and the last
//! bit is then forced by the parity. Outputs with fewer than `k_max`
//! monomials are padded with identically-zero terms so that all blocks share
//! one stride.

use std::fmt::Write as _;

use crate::circuit::{BooleanMap, LocalCircuit, LocalOutput, Monomial, PolyFunction};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// Where each source output's block and randomness live.
///
/// Inputs are `x` (`n` bits), then every output's `r` block (`k` bits each),
/// then every output's `s` block (`k - 1` bits each). Output `i` owns encoded
/// outputs `2k·i .. 2k·(i + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodingLayout {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl EncodingLayout {
    pub fn encoded_inputs(&self) -> usize {
        self.n + (2 * self.k - 1) * self.m
    }

    pub fn encoded_outputs(&self) -> usize {
        2 * self.k * self.m
    }

    pub fn block_offset(&self, i: usize) -> usize {
        2 * self.k * i
    }

    pub fn r_offset(&self, i: usize) -> usize {
        self.n + self.k * i
    }

    pub fn s_offset(&self, i: usize) -> usize {
        self.n + self.k * self.m + (self.k - 1) * i
    }

    /// Parity of every block.
    pub fn decode(&self, yhat: &GF2Vector) -> Result<GF2Vector> {
        Error::check_len(self.encoded_outputs(), yhat.len())?;
        Ok(GF2Vector::from_fn(self.m, |i| {
            let start = self.block_offset(i);
            (start..start + 2 * self.k).filter(|&b| yhat.get(b)).count() % 2 == 1
        }))
    }

    /// Sidecar text: a header and one line of offsets per source output.
    pub fn to_text(&self) -> String {
        let mut s = format!("layout {} {} {}\n", self.n, self.m, self.k);
        for i in 0..self.m {
            writeln!(s, "{i}: out {} r {} s {}", self.block_offset(i), self.r_offset(i), self.s_offset(i)).unwrap();
        }
        s
    }

    /// Parses the sidecar and checks every recorded offset against the
    /// stride arithmetic.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| err(1, "empty layout file"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let nums = |toks: &[&str], line| -> Result<Vec<usize>> {
            toks.iter().map(|t| t.parse().map_err(|_| err(line, "expected a number"))).collect()
        };
        if toks.len() != 4 || toks[0] != "layout" {
            return Err(err(hl, "expected `layout <n> <m> <k>`"));
        }
        let h = nums(&toks[1..], hl)?;
        let layout = Self { n: h[0], m: h[1], k: h[2] };
        if layout.k == 0 {
            return Err(err(hl, "block size k must be positive"));
        }
        let mut seen = 0;
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks.len() != 7 || toks[1] != "out" || toks[3] != "r" || toks[5] != "s" {
                return Err(err(line, "expected `<i>: out <o> r <r> s <s>`"));
            }
            let i: usize = toks[0].trim_end_matches(':').parse().map_err(|_| err(line, "bad output index"))?;
            let got = nums(&[toks[2], toks[4], toks[6]], line)?;
            if i != seen || got != [layout.block_offset(i), layout.r_offset(i), layout.s_offset(i)] {
                return Err(err(line, "offsets do not match the layout header"));
            }
            seen += 1;
        }
        if seen != layout.m {
            return Err(err(hl, "layout lists the wrong number of outputs"));
        }
        Ok(layout)
    }
}

/// The encoded circuit together with what is needed to decode and to build
/// witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedCircuit {
    fhat: LocalCircuit,
    layout: EncodingLayout,
    source: PolyFunction,
}

/// Builds the block of one output. `terms` has exactly `k` entries, `None`
/// standing for the zero term.
fn encode_block(terms: &[Option<&Monomial>], r: usize, s: usize) -> Result<Vec<LocalOutput>> {
    let k = terms.len();
    let mut block = Vec::with_capacity(2 * k);
    for (j, t) in terms.iter().enumerate() {
        block.push(sum_output(t.map(|m| m.vars()), &[r + j])?);
    }
    if k == 1 {
        block.push(sum_output(None, &[r])?);
        return Ok(block);
    }
    block.push(sum_output(None, &[r, s])?);
    for j in 1..k - 1 {
        block.push(sum_output(None, &[s + j - 1, r + j, s + j])?);
    }
    block.push(sum_output(None, &[s + k - 2, r + k - 1])?);
    Ok(block)
}

/// `Π monomial + Σ singles`, tabulated over the union of the variables.
fn sum_output(monomial: Option<&[usize]>, singles: &[usize]) -> Result<LocalOutput> {
    let mut vars: Vec<usize> = monomial.unwrap_or(&[]).iter().chain(singles).copied().collect();
    vars.sort_unstable();
    vars.dedup();
    let slot = |v: usize| vars.binary_search(&v).expect("variable is in the read set");
    let mono_slots: Option<Vec<usize>> = monomial.map(|m| m.iter().map(|&v| slot(v)).collect());
    let single_slots: Vec<usize> = singles.iter().map(|&v| slot(v)).collect();
    LocalOutput::from_fn(vars.clone(), |local| {
        let t = mono_slots.as_ref().is_some_and(|ms| ms.iter().all(|&p| local[p]));
        single_slots.iter().fold(t, |acc, &p| acc ^ local[p])
    })
}

/// Encodes `p` as a circuit in which every output reads at most
/// `max(d + 1, 3)` inputs (`d + 1` whenever `d >= 2`).
pub fn encode_degree_d(p: &PolyFunction) -> Result<EncodedCircuit> {
    let k = p.max_terms().max(1);
    let layout = EncodingLayout { n: p.n(), m: p.m(), k };
    let mut outputs = Vec::with_capacity(layout.encoded_outputs());
    for (i, terms) in p.outputs().iter().enumerate() {
        let padded: Vec<Option<&Monomial>> = (0..k).map(|j| terms.get(j)).collect();
        outputs.extend(encode_block(&padded, layout.r_offset(i), layout.s_offset(i))?);
    }
    let chain = if k >= 3 { 3 } else { k };
    let locality = (p.d() + 1).max(chain);
    let fhat = LocalCircuit::new(layout.encoded_inputs(), locality, outputs)?;
    Ok(EncodedCircuit { fhat, layout, source: p.clone() })
}

impl EncodedCircuit {
    pub fn circuit(&self) -> &LocalCircuit {
        &self.fhat
    }

    pub fn layout(&self) -> &EncodingLayout {
        &self.layout
    }

    pub fn source(&self) -> &PolyFunction {
        &self.source
    }

    pub fn decode(&self, yhat: &GF2Vector) -> Result<GF2Vector> {
        self.layout.decode(yhat)
    }

    /// Full encoded input `(x, r, s)` with `fhat(x, r, s) = yhat`. Requires
    /// `decode(yhat) = P(x)`.
    pub fn encoding_witness(&self, x: &GF2Vector, yhat: &GF2Vector) -> Result<GF2Vector> {
        let fx = self.source.evaluate(x)?;
        if self.decode(yhat)? != fx {
            return Err(Error::Precondition(format!("decode(yhat) = {} differs from P(x) = {fx}", self.decode(yhat)?)));
        }
        let l = &self.layout;
        let k = l.k;
        let mut input = GF2Vector::zeros(l.encoded_inputs());
        for i in 0..x.len() {
            input.set(i, x.get(i));
        }
        for (i, terms) in self.source.outputs().iter().enumerate() {
            let y = |j: usize| yhat.get(l.block_offset(i) + j);
            let r: Vec<bool> = (0..k).map(|j| terms.get(j).is_some_and(|t| t.eval(x)) ^ y(j)).collect();
            for (j, &b) in r.iter().enumerate() {
                input.set(l.r_offset(i) + j, b);
            }
            let mut prev = false;
            for (j, &rj) in r.iter().enumerate().take(k.saturating_sub(1)) {
                // s_1 = r_1 + y_{k+1}; s_j = s_{j-1} + r_j + y_{k+j}
                let s = prev ^ rj ^ y(k + j);
                input.set(l.s_offset(i) + j, s);
                prev = s;
            }
        }
        Ok(input)
    }
}
