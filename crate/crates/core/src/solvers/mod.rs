//! Range-avoidance solvers.
//!
//! Every solver returns the lexicographically smallest choice its own rules
//! produce: bits prefer 0 when both sides tie, subsets and pairs are taken in
//! index order. Output bits a solver never has to fix are set to 0.

mod affine_reduce;
mod brute;
mod degree2;
mod dense;
mod nc02;
mod one_subspace;
mod subspace_union;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::circuit::LocalCircuit;
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::verify::DEFAULT_ENUM_LIMIT;

pub use affine_reduce::affine_reduce;
pub use brute::{brute_force_avoid, check_brute_force};
pub use degree2::{solve_degree2, Degree2Solution};
pub use dense::{select_dense_sets, DenseSelection};
pub use nc02::{check_nc02, solve_nc02};
pub use one_subspace::{check_one_subspace, one_subspace};
pub use subspace_union::{check_subspace_union, subspace_union, subspace_union_with_hook, BranchState};

/// Default cap on the number of inputs `SubspaceUnion` may branch on.
pub const DEFAULT_MAX_BRANCHES: usize = 26;

/// Resource caps shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `2^n` an exhaustive enumeration may visit.
    pub enumeration: u64,
    /// Largest number of inputs `SubspaceUnion` may branch on.
    pub max_branches: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { enumeration: DEFAULT_ENUM_LIMIT, max_branches: DEFAULT_MAX_BRANCHES }
    }
}

impl Limits {
    /// Defaults overridden by `RANGEAVOID_ENUM_LIMIT` and
    /// `RANGEAVOID_MAX_BRANCHES` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        if let Ok(v) = std::env::var("RANGEAVOID_ENUM_LIMIT") {
            limits.enumeration =
                v.trim().parse().map_err(|_| Error::Parameter(format!("RANGEAVOID_ENUM_LIMIT={v} is not a number")))?;
        }
        if let Ok(v) = std::env::var("RANGEAVOID_MAX_BRANCHES") {
            limits.max_branches = v
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("RANGEAVOID_MAX_BRANCHES={v} is not a number")))?;
        }
        Ok(limits)
    }
}

/// Which step of a solver fixed which outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// One output fixed through `affine_reduce`.
    Reduce { output: usize, bit: bool },
    /// Two outputs sharing an input pair fixed together.
    Pair { outputs: (usize, usize), bits: (bool, bool), case: PairCase },
    /// The last output, flipped against the unique remaining input.
    Flip { output: usize, bit: bool },
}

/// How a paired step of `one_subspace` resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCase {
    /// No local pattern produces the chosen pair of bits.
    Unreachable,
    /// Intersected with the hyperplane through the consistent patterns.
    Hyperplane,
    /// Intersected with the hull of a class of at most two patterns.
    SmallClass,
    /// The subspace lies inside one class, so its complement is avoided.
    Escape,
}

/// A solver's answer and a record of how it got there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub y: GF2Vector,
    /// Output-fixing steps taken; for brute force, the inputs enumerated.
    pub iterations: u64,
    /// Number of inputs branched on, where the solver branches.
    pub branch_inputs: Option<usize>,
    /// Number of inputs still consistent with the partial output after each
    /// step, starting with `2^n`.
    pub sizes: Vec<BigUint>,
    pub moves: Vec<Move>,
}

/// The solvers selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Brute,
    Nc02,
    SubspaceUnion,
    OneSubspace,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::Brute, Algorithm::Nc02, Algorithm::SubspaceUnion, Algorithm::OneSubspace];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::Nc02 => "nc02",
            Algorithm::SubspaceUnion => "subspace-union",
            Algorithm::OneSubspace => "one-subspace",
        }
    }

    /// Checks the solver's preconditions without running it.
    pub fn check(self, c: &LocalCircuit, limits: &Limits) -> Result<()> {
        match self {
            Algorithm::Brute => check_brute_force(c, limits.enumeration),
            Algorithm::Nc02 => check_nc02(c),
            Algorithm::SubspaceUnion => check_subspace_union(c, limits).map(|_| ()),
            Algorithm::OneSubspace => check_one_subspace(c),
        }
    }

    pub fn solve(self, c: &LocalCircuit, limits: &Limits) -> Result<Solution> {
        match self {
            Algorithm::Brute => brute_force_avoid(c, limits.enumeration),
            Algorithm::Nc02 => solve_nc02(c),
            Algorithm::SubspaceUnion => subspace_union(c, limits),
            Algorithm::OneSubspace => one_subspace(c),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm `{s}`")))
    }
}

/// The algorithms whose preconditions `c` meets.
pub fn admissible(c: &LocalCircuit, limits: &Limits) -> Vec<Algorithm> {
    Algorithm::ALL.into_iter().filter(|a| a.check(c, limits).is_ok()).collect()
}

fn require_stretch(n: usize, m: usize) -> Result<()> {
    if m <= n {
        return Err(Error::Stretch(format!("need more outputs than inputs, got n={n}, m={m}")));
    }
    Ok(())
}
