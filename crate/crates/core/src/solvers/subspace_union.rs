//! Avoidance for circuits of any locality `k` by branching on a small set of
//! inputs.
//!
//! After fixing the inputs `I` chosen by [`select_dense_sets`], every output
//! in `O` reads at most two free inputs. The solver keeps one affine subspace
//! per fixing of `I`; their disjoint union contains every input consistent
//! with the outputs fixed so far. Each step fixes the next output of `O` to
//! the bit whose reduced union is smaller, which shrinks the union by a
//! factor of at least 4/3.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::dense::{select_dense_sets, DenseSelection};
use super::{affine_reduce, require_stretch, Limits, Move, Solution};
use crate::circuit::{restrict_output, LocalCircuit, LocalOutput, PartialAssignment, TwoLocalFunction};
use crate::error::{Error, Result};
use crate::gf2::AffineSubspace;

const DENSITY: usize = 3;

/// The solver's state, shown to the hook after setup and after every step.
pub struct BranchState<'a> {
    /// Branch inputs; branch `j` fixes `inputs[i]` to bit `i` of `j`.
    pub inputs: &'a [usize],
    pub subspaces: &'a [AffineSubspace],
    pub y: &'a PartialAssignment,
}

/// The padded circuit and its selection, or the trivial selection when every
/// output already reads at most two inputs.
fn prepare(c: &LocalCircuit, limits: &Limits) -> Result<(LocalCircuit, DenseSelection)> {
    require_stretch(c.n(), c.m())?;
    let k = c.k().max(c.max_arity());
    if k <= 2 {
        let all =
            DenseSelection { inputs: Vec::new(), outputs: (0..c.m()).collect(), c: DENSITY, subsets: vec![vec![]] };
        return Ok((c.clone(), all));
    }
    if c.n() < k {
        return Err(Error::Parameter(format!("locality {k} exceeds the {} inputs", c.n())));
    }
    let padded = c.pad_to_arity(k)?;
    let selection = select_dense_sets(&padded, DENSITY)?;
    if selection.inputs.len() > limits.max_branches {
        return Err(Error::BranchBudget { t: selection.inputs.len(), cap: limits.max_branches });
    }
    Ok((padded, selection))
}

/// Checks the preconditions and returns the selection the solver would use.
pub fn check_subspace_union(c: &LocalCircuit, limits: &Limits) -> Result<DenseSelection> {
    prepare(c, limits).map(|(_, sel)| sel)
}

pub fn subspace_union(c: &LocalCircuit, limits: &Limits) -> Result<Solution> {
    subspace_union_with_hook(c, limits, |_| {})
}

/// Total size of a family of disjoint subspaces.
fn union_size(family: &[AffineSubspace]) -> BigUint {
    let mut by_dim = vec![0u64; family.first().map_or(0, |s| s.ambient_dim()) + 1];
    for s in family {
        if let Some(d) = s.dimension() {
            by_dim[d] += 1;
        }
    }
    by_dim.iter().enumerate().map(|(d, &count)| BigUint::from(count) << d).sum()
}

/// The restriction of `o` under each fixing of its branch inputs, indexed by
/// those inputs' bits in the order they appear in `branch_slots`.
fn restricted_tables(o: &LocalOutput, n: usize, branch_slots: &[(usize, usize)]) -> Result<Vec<TwoLocalFunction>> {
    (0..1usize << branch_slots.len())
        .map(|pattern| {
            let mut fixed = vec![None; n];
            for (bit, &(var, _)) in branch_slots.iter().enumerate() {
                fixed[var] = Some(pattern >> bit & 1 == 1);
            }
            TwoLocalFunction::from_output(&restrict_output(o, &fixed)?)
        })
        .collect()
}

/// [`subspace_union`], calling `hook` after setup and after every step.
pub fn subspace_union_with_hook(
    c: &LocalCircuit,
    limits: &Limits,
    mut hook: impl FnMut(&BranchState<'_>),
) -> Result<Solution> {
    let (padded, selection) = prepare(c, limits)?;
    let n = c.n();
    let inputs = &selection.inputs;
    let t = inputs.len();
    let mut branches: Vec<AffineSubspace> = (0..1usize << t)
        .into_par_iter()
        .map(|j| {
            let fixing: Vec<(usize, bool)> = inputs.iter().enumerate().map(|(i, &v)| (v, j >> i & 1 == 1)).collect();
            AffineSubspace::fixing(n, &fixing)
        })
        .collect::<Result<_>>()?;
    let mut y = PartialAssignment::unset(c.m());
    let mut sizes = vec![union_size(&branches)];
    let mut moves = Vec::new();
    hook(&BranchState { inputs, subspaces: &branches, y: &y });

    for &j in selection.outputs.iter().take(3 * n.max(1)) {
        if sizes.last().is_some_and(|s| *s == BigUint::ZERO) {
            break;
        }
        let o = padded.output(j);
        // (variable, position in `inputs`) for each branch input o reads
        let slots: Vec<(usize, usize)> =
            o.inputs().iter().filter_map(|v| inputs.binary_search(v).ok().map(|p| (*v, p))).collect();
        let tables = restricted_tables(o, n, &slots)?;
        let split: Vec<(AffineSubspace, AffineSubspace)> = branches
            .par_iter()
            .enumerate()
            .map(|(branch, u)| {
                let pattern = slots.iter().enumerate().fold(0, |p, (bit, &(_, pos))| p | (branch >> pos & 1) << bit);
                affine_reduce(u, &tables[pattern])
            })
            .collect::<Result<_>>()?;
        let (zeros, ones): (Vec<_>, Vec<_>) = split.into_iter().unzip();
        let (size0, size1) = (union_size(&zeros), union_size(&ones));
        let bit = size1 < size0;
        let chosen = if bit { size1 } else { size0 };
        let before = sizes.last().expect("sizes starts nonempty");
        if BigUint::from(4u32) * &chosen > BigUint::from(3u32) * before {
            return Err(Error::Internal(format!("step on output {j} shrank the union from {before} to only {chosen}")));
        }
        branches = if bit { ones } else { zeros };
        y.set(j, bit)?;
        moves.push(Move::Reduce { output: j, bit });
        sizes.push(chosen);
        hook(&BranchState { inputs, subspaces: &branches, y: &y });
    }
    if sizes.last().is_some_and(|s| *s != BigUint::ZERO) {
        return Err(Error::Internal("the union is still nonempty after every selected output".into()));
    }
    Ok(Solution { y: y.complete(false), iterations: moves.len() as u64, branch_inputs: Some(t), sizes, moves })
}
