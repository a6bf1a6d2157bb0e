//! Avoidance for three-local circuits with `3m >= C(n, 2) + 6n`, keeping a
//! single affine subspace of consistent inputs.
//!
//! Each iteration lowers the subspace's dimension by at least one or empties
//! it. An output reading at most two inputs goes through `affine_reduce`.
//! Otherwise two unassigned outputs share an input pair (there are fewer
//! pairs than three times the unassigned outputs), and the at most four
//! inputs `V` they read together are handled by looking at all local
//! patterns in `{0,1}^V`.

use std::collections::HashMap;

use itertools::Itertools;

use super::{affine_reduce, Move, PairCase, Solution};
use crate::circuit::{LocalCircuit, LocalOutput, PartialAssignment, TwoLocalFunction};
use crate::error::{Error, Result};
use crate::gf2::{AffineSubspace, GF2Vector};

pub fn check_one_subspace(c: &LocalCircuit) -> Result<()> {
    if c.max_arity() > 3 {
        return Err(Error::Locality { allowed: 3, found: c.max_arity() });
    }
    let (n, m) = (c.n() as u128, c.m() as u128);
    let pairs = n * n.saturating_sub(1) / 2;
    if 3 * m < pairs + 6 * n {
        return Err(Error::Stretch(format!("need 3m >= C(n,2) + 6n, got n={n}, m={m}")));
    }
    Ok(())
}

/// Local patterns over `vars`: bit `t` of a pattern is the value of `vars[t]`.
struct Local<'a> {
    vars: &'a [usize],
    n: usize,
}

impl Local<'_> {
    fn size(&self) -> usize {
        1 << self.vars.len()
    }

    fn eval(&self, o: &LocalOutput, pattern: usize) -> bool {
        let pos = o.inputs().iter().enumerate().fold(0, |acc, (i, v)| {
            let t = self.vars.iter().position(|u| u == v).expect("output reads only local variables");
            acc | (pattern >> t & 1) << i
        });
        o.table().get(pos)
    }

    /// Local functionals `(a, c)` with `a != 0` vanishing on `points`, in
    /// lexicographic order of the string `a_0 … a_{v-1} c`.
    fn hyperplanes_through(&self, points: &[usize]) -> Vec<(usize, bool)> {
        let v = self.vars.len();
        (0..1usize << (v + 1))
            .map(|code| {
                let a = (0..v).fold(0, |acc, t| acc | (code >> (v - t) & 1) << t);
                (a, code & 1 == 1)
            })
            .filter(|&(a, c)| a != 0 && points.iter().all(|&p| ((a & p).count_ones() % 2 == 1) == c))
            .collect()
    }

    fn lift(&self, s: &AffineSubspace, (a, c): (usize, bool)) -> Result<AffineSubspace> {
        let row =
            GF2Vector::from_fn(self.n, |x| self.vars.iter().position(|&u| u == x).is_some_and(|t| a >> t & 1 == 1));
        s.intersect_hyperplane(&row, c)
    }

    /// The inputs whose local pattern lies in the affine hull of `points`.
    fn hull(&self, points: &[usize]) -> Result<AffineSubspace> {
        self.hyperplanes_through(points).into_iter().try_fold(AffineSubspace::full(self.n), |acc, h| self.lift(&acc, h))
    }
}

const BIT_PAIRS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

/// The first two unassigned outputs, in index order, that share an input pair.
fn shared_pair(c: &LocalCircuit, y: &PartialAssignment) -> Option<(usize, usize)> {
    let mut first: HashMap<(usize, usize), usize> = HashMap::new();
    for j in y.unset_positions() {
        for pair in c.output(j).inputs().iter().copied().tuple_combinations::<(usize, usize)>() {
            if let Some(&i) = first.get(&pair) {
                return Some((i, j));
            }
            first.insert(pair, j);
        }
    }
    None
}

pub fn one_subspace(c: &LocalCircuit) -> Result<Solution> {
    check_one_subspace(c)?;
    let n = c.n();
    let mut s = AffineSubspace::full(n);
    let mut y = PartialAssignment::unset(c.m());
    let mut sizes = vec![s.size()];
    let mut moves = Vec::new();

    while let Some(dim) = s.dimension() {
        if dim == 0 {
            let x = s.any_point().expect("dimension 0 holds one point");
            let j = y.unset_positions().next().ok_or_else(|| Error::Internal("no output left to flip".into()))?;
            let bit = !c.output(j).eval(&x);
            y.set(j, bit)?;
            moves.push(Move::Flip { output: j, bit });
            s = AffineSubspace::empty(n);
            sizes.push(s.size());
            break;
        }
        let short = y.unset_positions().find(|&j| c.output(j).arity() <= 2);
        if let Some(j) = short {
            let (s0, s1) = affine_reduce(&s, &TwoLocalFunction::from_output(c.output(j))?)?;
            let bit = s1.dimension() < s0.dimension();
            y.set(j, bit)?;
            moves.push(Move::Reduce { output: j, bit });
            s = if bit { s1 } else { s0 };
        } else {
            let (j1, j2) = shared_pair(c, &y)
                .ok_or_else(|| Error::Internal("no two unassigned outputs share an input pair".into()))?;
            let (o1, o2) = (c.output(j1), c.output(j2));
            let vars: Vec<usize> = o1.inputs().iter().chain(o2.inputs()).copied().sorted().dedup().collect();
            let local = Local { vars: &vars, n };
            let class = |bits: (bool, bool), within: &dyn Fn(usize) -> bool| -> Vec<usize> {
                (0..local.size()).filter(|&p| within(p) && (local.eval(o1, p), local.eval(o2, p)) == bits).collect()
            };
            let (bits, a) = BIT_PAIRS
                .into_iter()
                .map(|b| (b, class(b, &|_| true)))
                .min_by_key(|(_, a)| a.len())
                .expect("four candidate pairs");
            let (bits, case, next) = if a.is_empty() {
                (bits, PairCase::Unreachable, AffineSubspace::empty(n))
            } else {
                let h = local.hyperplanes_through(&a)[0];
                let cut = local.lift(&s, h)?;
                if cut != s {
                    (bits, PairCase::Hyperplane, cut)
                } else {
                    let on_h = |p: usize| ((h.0 & p).count_ones() % 2 == 1) == h.1;
                    let classes: Vec<((bool, bool), Vec<usize>)> =
                        BIT_PAIRS.into_iter().map(|b| (b, class(b, &on_h))).collect();
                    if let Some((b, _)) = classes.iter().find(|(_, u)| u.is_empty()) {
                        (*b, PairCase::Unreachable, AffineSubspace::empty(n))
                    } else {
                        let (b, u) = classes
                            .iter()
                            .find(|(_, u)| u.len() <= 2)
                            .ok_or_else(|| Error::Internal("every class on the hyperplane has three points".into()))?;
                        let hull = s.intersect(&local.hull(u)?)?;
                        if hull != s {
                            (*b, PairCase::SmallClass, hull)
                        } else {
                            ((!b.0, b.1), PairCase::Escape, AffineSubspace::empty(n))
                        }
                    }
                }
            };
            y.set(j1, bits.0)?;
            y.set(j2, bits.1)?;
            moves.push(Move::Pair { outputs: (j1, j2), bits, case });
            s = next;
        }
        if s.dimension().is_some_and(|d| d >= dim) {
            return Err(Error::Internal(format!("iteration {} did not lower the dimension {dim}", moves.len())));
        }
        sizes.push(s.size());
    }
    Ok(Solution { y: y.complete(false), iterations: moves.len() as u64, branch_inputs: None, sizes, moves })
}
