use super::LocalOutput;
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// A Boolean function of at most two inputs, split by algebraic degree.
///
/// Every such function has a unique algebraic normal form
/// `c0 + ci·x_i + cj·x_j + cij·x_i·x_j`. When `cij = 1` it factors as
/// `(x_i + a1)(x_j + a2) + c`; otherwise it is affine or constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TwoLocalFunction {
    Constant(bool),
    /// `Σ x_v over vars + c`, with one or two variables.
    Affine {
        vars: Vec<usize>,
        c: bool,
    },
    /// `(x_i + a1)(x_j + a2) + c` with `i < j`.
    Quadratic {
        i: usize,
        j: usize,
        a1: bool,
        a2: bool,
        c: bool,
    },
}

impl TwoLocalFunction {
    /// Classifies a truth table over the given inputs (0, 1 or 2 of them).
    pub fn classify(inputs: &[usize], table: &GF2Vector) -> Result<Self> {
        if inputs.len() > 2 || table.len() != 1 << inputs.len() {
            return Err(Error::Invariant(format!(
                "expected a truth table over at most two inputs, got {} entries over {} inputs",
                table.len(),
                inputs.len()
            )));
        }
        let t = |p: usize| table.get(p);
        Ok(match *inputs {
            [] => Self::Constant(t(0)),
            [i] => {
                if t(0) == t(1) {
                    Self::Constant(t(0))
                } else {
                    Self::Affine { vars: vec![i], c: t(0) }
                }
            }
            [i, j] => {
                let c0 = t(0);
                let ci = t(0) ^ t(1);
                let cj = t(0) ^ t(2);
                let cij = t(0) ^ t(1) ^ t(2) ^ t(3);
                if cij {
                    // (x_i + a1)(x_j + a2) = x_i·x_j + a2·x_i + a1·x_j + a1·a2
                    let (a1, a2) = (cj, ci);
                    Self::Quadratic { i, j, a1, a2, c: c0 ^ (a1 & a2) }
                } else {
                    let vars: Vec<usize> = [(i, ci), (j, cj)].iter().filter(|v| v.1).map(|v| v.0).collect();
                    if vars.is_empty() {
                        Self::Constant(c0)
                    } else {
                        Self::Affine { vars, c: c0 }
                    }
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn from_output(o: &LocalOutput) -> Result<Self> {
        Self::classify(o.inputs(), o.table())
    }

    pub fn eval(&self, x: &GF2Vector) -> bool {
        match self {
            Self::Constant(c) => *c,
            Self::Affine { vars, c } => vars.iter().fold(*c, |acc, &v| acc ^ x.get(v)),
            Self::Quadratic { i, j, a1, a2, c } => ((x.get(*i) ^ a1) & (x.get(*j) ^ a2)) ^ c,
        }
    }
}
