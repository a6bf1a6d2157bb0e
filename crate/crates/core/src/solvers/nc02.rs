use num_bigint::BigUint;

use super::{affine_reduce, require_stretch, Move, Solution};
use crate::circuit::{LocalCircuit, PartialAssignment, TwoLocalFunction};
use crate::error::{Error, Result};
use crate::gf2::AffineSubspace;

pub fn check_nc02(c: &LocalCircuit) -> Result<()> {
    if c.max_arity() > 2 {
        return Err(Error::Locality { allowed: 2, found: c.max_arity() });
    }
    require_stretch(c.n(), c.m())
}

/// Fixes outputs in order, each time keeping the smaller side of
/// `affine_reduce`, until the consistent inputs are empty or a single point
/// whose value on the next output is then flipped.
pub fn solve_nc02(c: &LocalCircuit) -> Result<Solution> {
    check_nc02(c)?;
    let n = c.n();
    let mut s = AffineSubspace::full(n);
    let mut y = PartialAssignment::unset(c.m());
    let mut sizes = vec![s.size()];
    let mut moves = Vec::new();
    for j in 0..c.m() {
        match s.dimension() {
            None => break,
            Some(0) => {
                let x = s.any_point().expect("dimension 0 holds one point");
                let bit = !c.output(j).eval(&x);
                y.set(j, bit)?;
                moves.push(Move::Flip { output: j, bit });
                s = AffineSubspace::empty(n);
            }
            Some(_) => {
                let f = TwoLocalFunction::from_output(c.output(j))?;
                let (s0, s1) = affine_reduce(&s, &f)?;
                let bit = s1.dimension() < s0.dimension();
                y.set(j, bit)?;
                moves.push(Move::Reduce { output: j, bit });
                s = if bit { s1 } else { s0 };
            }
        }
        sizes.push(s.size());
    }
    if !s.is_empty() {
        return Err(Error::Internal("consistent inputs remain after fixing every output".into()));
    }
    debug_assert!(sizes.last() == Some(&BigUint::from(0u32)));
    Ok(Solution { y: y.complete(false), iterations: moves.len() as u64, branch_inputs: None, sizes, moves })
}
