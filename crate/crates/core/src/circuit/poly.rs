use std::cmp::Ordering;
use std::fmt;

use super::BooleanMap;
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// A product of distinct variables; the empty product is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    /// Sorts the variables; repeated variables are rejected.
    pub fn new(mut vars: Vec<usize>) -> Result<Self> {
        vars.sort_unstable();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!("monomial repeats a variable: {vars:?}")));
        }
        Ok(Self(vars))
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, x: &GF2Vector) -> bool {
        self.0.iter().all(|&v| x.get(v))
    }
}

/// Lexicographic on the sorted variable list; the constant sorts first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A map GF(2)^n -> GF(2)^m whose outputs are sums of monomials of degree
/// at most `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFunction {
    n: usize,
    d: usize,
    outputs: Vec<Vec<Monomial>>,
    /// Monomials as input bit masks, present when `n <= 64`.
    masks: Option<Vec<Vec<u64>>>,
}

impl PolyFunction {
    /// Sorts each output's monomials canonically. Duplicate monomials,
    /// out-of-range variables and monomials above degree `d` are rejected.
    pub fn new(n: usize, d: usize, mut outputs: Vec<Vec<Monomial>>) -> Result<Self> {
        for (j, terms) in outputs.iter_mut().enumerate() {
            terms.sort();
            if terms.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invariant(format!("output {j} repeats a monomial")));
            }
            for t in terms.iter() {
                if t.degree() > d {
                    return Err(Error::Invariant(format!("output {j}: monomial {t} exceeds degree {d}")));
                }
                if let Some(&v) = t.0.last() {
                    if v >= n {
                        return Err(Error::Invariant(format!("output {j}: variable x{v} outside 0..{n}")));
                    }
                }
            }
        }
        let masks = (n <= 64).then(|| {
            outputs
                .iter()
                .map(|terms| terms.iter().map(|t| t.0.iter().fold(0u64, |m, &v| m | 1 << v)).collect())
                .collect()
        });
        Ok(Self { n, d, outputs, masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    /// Declared degree bound.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn outputs(&self) -> &[Vec<Monomial>] {
        &self.outputs
    }

    pub fn output(&self, j: usize) -> &[Monomial] {
        &self.outputs[j]
    }

    /// Largest number of monomials in any one output.
    pub fn max_terms(&self) -> usize {
        self.outputs.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl BooleanMap for PolyFunction {
    fn input_len(&self) -> usize {
        self.n
    }

    fn output_len(&self) -> usize {
        self.outputs.len()
    }

    fn evaluate(&self, x: &GF2Vector) -> Result<GF2Vector> {
        Error::check_len(self.n, x.len())?;
        Ok(GF2Vector::from_fn(self.outputs.len(), |j| self.outputs[j].iter().filter(|t| t.eval(x)).count() % 2 == 1))
    }

    fn eval_packed(&self, x: u64, out: &mut [u64]) {
        let masks = self.masks.as_ref().expect("packed evaluation needs n <= 64");
        for (j, terms) in masks.iter().enumerate() {
            let bit = terms.iter().fold(0u64, |acc, &m| acc ^ ((x & m == m) as u64));
            out[j / 64] |= bit << (j % 64);
        }
    }
}
