//! Local circuits, polynomial maps over GF(2), and their text formats.
//!
//! A [`LocalCircuit`] output reads an explicit sorted list of at most `k`
//! inputs and looks its value up in a truth table. Truth-table position `p`
//! is the assignment whose `i`-th read variable (in sorted index order)
//! equals bit `i` of `p`, least significant first. Every module in the crate
//! uses this convention.

mod format;
mod generate;
mod poly;
mod two_local;

use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

pub use format::{
    parse_instance, parse_nc0, parse_poly, parse_vec, write_nc0, write_nc0_annotated, write_poly, write_poly_annotated,
    write_vec, Instance,
};
pub use generate::{gen_random_nc0, gen_random_poly, GENERATOR_SCHEME};
pub use poly::{Monomial, PolyFunction};
pub use two_local::TwoLocalFunction;

/// Anything that maps `n` bits to `m` bits and can be evaluated pointwise.
///
/// `eval_packed` is the hot path for the exhaustive oracles: the input is
/// packed into one word (bit `i` is `x_i`, so it needs `n <= 64`) and the
/// output is written into `out`, which the caller zeroes and sizes to
/// `ceil(m / 64)` words.
pub trait BooleanMap: Sync {
    fn input_len(&self) -> usize;
    fn output_len(&self) -> usize;
    fn evaluate(&self, x: &GF2Vector) -> Result<GF2Vector>;
    fn eval_packed(&self, x: u64, out: &mut [u64]);
}

/// One output of a [`LocalCircuit`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalOutput {
    inputs: Vec<usize>,
    table: GF2Vector,
}

impl LocalOutput {
    /// Validates that `inputs` is strictly increasing and that `table` has
    /// `2^inputs.len()` entries.
    pub fn new(inputs: Vec<usize>, table: GF2Vector) -> Result<Self> {
        if inputs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant(format!("input list {inputs:?} is not sorted and distinct")));
        }
        if inputs.len() >= 32 || table.len() != 1 << inputs.len() {
            return Err(Error::Invariant(format!(
                "truth table has {} entries, expected 2^{}",
                table.len(),
                inputs.len()
            )));
        }
        Ok(Self { inputs, table })
    }

    pub fn constant(bit: bool) -> Self {
        Self { inputs: Vec::new(), table: GF2Vector::from_bits(&[bit]) }
    }

    /// Tabulates `f` over the given (sorted, distinct) inputs. `f` receives
    /// the local assignment in input order.
    pub fn from_fn(inputs: Vec<usize>, mut f: impl FnMut(&[bool]) -> bool) -> Result<Self> {
        let l = inputs.len();
        if l >= 32 {
            return Err(Error::Invariant(format!("arity {l} too large to tabulate")));
        }
        let mut local = vec![false; l];
        let table = GF2Vector::from_fn(1 << l, |p| {
            for (i, b) in local.iter_mut().enumerate() {
                *b = p >> i & 1 == 1;
            }
            f(&local)
        });
        Self::new(inputs, table)
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn table(&self) -> &GF2Vector {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Table position selected by `x`.
    pub fn position(&self, x: &GF2Vector) -> usize {
        self.inputs.iter().enumerate().fold(0, |p, (i, &v)| p | (x.get(v) as usize) << i)
    }

    pub fn eval(&self, x: &GF2Vector) -> bool {
        self.table.get(self.position(x))
    }

    #[inline]
    fn eval_packed(&self, x: u64) -> bool {
        let p = self.inputs.iter().enumerate().fold(0usize, |p, (i, &v)| p | ((x >> v) as usize & 1) << i);
        self.table.get(p)
    }
}

/// A multi-output circuit where every output depends on at most `k` inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalCircuit {
    n: usize,
    k: usize,
    outputs: Vec<LocalOutput>,
}

impl LocalCircuit {
    pub fn new(n: usize, k: usize, outputs: Vec<LocalOutput>) -> Result<Self> {
        for (j, o) in outputs.iter().enumerate() {
            if let Some(&last) = o.inputs.last() {
                if last >= n {
                    return Err(Error::Invariant(format!("output {j} reads input {last}, but n = {n}")));
                }
            }
            if o.arity() > k {
                return Err(Error::Invariant(format!("output {j} reads {} inputs, locality is {k}", o.arity())));
            }
        }
        Ok(Self { n, k, outputs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    /// Declared locality bound.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest arity actually used by an output.
    pub fn max_arity(&self) -> usize {
        self.outputs.iter().map(LocalOutput::arity).max().unwrap_or(0)
    }

    pub fn outputs(&self) -> &[LocalOutput] {
        &self.outputs
    }

    pub fn output(&self, j: usize) -> &LocalOutput {
        &self.outputs[j]
    }

    /// Makes every output read exactly `k` distinct inputs by adding the
    /// lowest-numbered inputs it does not already read; the added variables
    /// are ignored by the extended truth table.
    pub fn pad_to_arity(&self, k: usize) -> Result<Self> {
        if self.n < k {
            return Err(Error::Parameter(format!("cannot pad to arity {k} with only {} inputs", self.n)));
        }
        if self.max_arity() > k {
            return Err(Error::Locality { allowed: k, found: self.max_arity() });
        }
        let outputs = self
            .outputs
            .iter()
            .map(|o| {
                if o.arity() == k {
                    return Ok(o.clone());
                }
                let mut inputs = o.inputs.clone();
                inputs.extend((0..self.n).filter(|i| !o.inputs.contains(i)).take(k - o.arity()));
                inputs.sort_unstable();
                // Positions of the original inputs inside the padded list.
                let slots: Vec<usize> =
                    o.inputs.iter().map(|v| inputs.binary_search(v).expect("original input kept")).collect();
                LocalOutput::from_fn(inputs, |local| {
                    let p = slots.iter().enumerate().fold(0, |p, (i, &s)| p | (local[s] as usize) << i);
                    o.table.get(p)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, k, outputs)
    }

    /// Substitutes constants for the listed inputs. The input numbering is
    /// unchanged; each output stops reading the fixed variables.
    pub fn restrict_inputs(&self, fixing: &[(usize, bool)]) -> Result<Self> {
        let mut fixed: Vec<Option<bool>> = vec![None; self.n];
        for &(i, b) in fixing {
            if i >= self.n {
                return Err(Error::Parameter(format!("fixed input {i} outside 0..{}", self.n)));
            }
            if fixed[i].is_some_and(|old| old != b) {
                return Err(Error::Parameter(format!("input {i} fixed to both values")));
            }
            fixed[i] = Some(b);
        }
        let outputs = self.outputs.iter().map(|o| restrict_output(o, &fixed)).collect::<Result<Vec<_>>>()?;
        Self::new(self.n, self.k, outputs)
    }
}

/// Restricts one output under a (possibly partial) input fixing.
pub(crate) fn restrict_output(o: &LocalOutput, fixed: &[Option<bool>]) -> Result<LocalOutput> {
    if o.inputs.iter().all(|&v| fixed[v].is_none()) {
        return Ok(o.clone());
    }
    let mut base = 0usize;
    let mut free_slots = Vec::new();
    let mut free_inputs = Vec::new();
    for (slot, &v) in o.inputs.iter().enumerate() {
        match fixed[v] {
            Some(b) => base |= (b as usize) << slot,
            None => {
                free_slots.push(slot);
                free_inputs.push(v);
            }
        }
    }
    LocalOutput::from_fn(free_inputs, |local| {
        let p = free_slots.iter().zip(local).fold(base, |p, (&s, &b)| p | (b as usize) << s);
        o.table.get(p)
    })
}

impl BooleanMap for LocalCircuit {
    fn input_len(&self) -> usize {
        self.n
    }

    fn output_len(&self) -> usize {
        self.outputs.len()
    }

    fn evaluate(&self, x: &GF2Vector) -> Result<GF2Vector> {
        Error::check_len(self.n, x.len())?;
        Ok(GF2Vector::from_fn(self.outputs.len(), |j| self.outputs[j].eval(x)))
    }

    fn eval_packed(&self, x: u64, out: &mut [u64]) {
        for (j, o) in self.outputs.iter().enumerate() {
            out[j / 64] |= (o.eval_packed(x) as u64) << (j % 64);
        }
    }
}

/// A length-`m` output assignment over `{0, 1, unset}`. Set positions are
/// never overwritten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn unset(m: usize) -> Self {
        Self { values: vec![None; m] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<bool> {
        self.values[j]
    }

    pub fn set(&mut self, j: usize, bit: bool) -> Result<()> {
        match self.values[j] {
            Some(_) => Err(Error::Internal(format!("output {j} assigned twice"))),
            None => {
                self.values[j] = Some(bit);
                Ok(())
            }
        }
    }

    pub fn assigned_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn unset_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(j, _)| j)
    }

    /// Whether `y` agrees with every set position.
    pub fn is_consistent_with(&self, y: &GF2Vector) -> bool {
        self.values.iter().enumerate().all(|(j, v)| v.is_none_or(|b| y.get(j) == b))
    }

    /// The full vector with unset positions filled by `fill`.
    pub fn complete(&self, fill: bool) -> GF2Vector {
        GF2Vector::from_fn(self.values.len(), |j| self.values[j].unwrap_or(fill))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn and2() -> LocalCircuit {
        LocalCircuit::new(2, 2, vec![LocalOutput::new(vec![0, 1], v("0001")).unwrap()]).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let c = and2();
        assert_eq!(c.evaluate(&v("11")).unwrap(), v("1"));
        assert_eq!(c.evaluate(&v("10")).unwrap(), v("0"));
        assert!(c.evaluate(&v("1")).is_err());

        let id = LocalOutput::new(vec![0], v("01")).unwrap();
        let dup = LocalCircuit::new(1, 1, vec![id.clone(), id]).unwrap();
        assert_eq!(dup.evaluate(&v("1")).unwrap(), v("11"));
    }

    #[test]
    fn output_validation() {
        assert!(LocalOutput::new(vec![1, 0], v("0001")).is_err());
        assert!(LocalOutput::new(vec![0, 0], v("0001")).is_err());
        assert!(LocalOutput::new(vec![0, 1], v("001")).is_err());
        let o = LocalOutput::new(vec![0, 5], v("0001")).unwrap();
        assert!(LocalCircuit::new(3, 2, vec![o.clone()]).is_err());
        assert!(LocalCircuit::new(6, 1, vec![o]).is_err());
    }

    #[test]
    fn padding_examples() {
        let c = LocalCircuit::new(4, 1, vec![LocalOutput::new(vec![0], v("01")).unwrap()]).unwrap();
        let p = c.pad_to_arity(3).unwrap();
        assert_eq!(p.output(0).inputs(), &[0, 1, 2]);
        assert_eq!(p.output(0).table().len(), 8);
        for x in 0..16 {
            let x = GF2Vector::from_u64(x, 4);
            assert_eq!(p.evaluate(&x).unwrap(), c.evaluate(&x).unwrap());
        }

        let padded_second = LocalCircuit::new(4, 3, vec![LocalOutput::new(vec![2], v("01")).unwrap()])
            .unwrap()
            .pad_to_arity(3)
            .unwrap();
        assert_eq!(padded_second.output(0).inputs(), &[0, 1, 2]);
        assert_eq!(padded_second.output(0).table(), &v("00001111"));

        let k3 = LocalCircuit::new(3, 3, vec![LocalOutput::new(vec![0, 1, 2], v("01101001")).unwrap()]).unwrap();
        assert_eq!(k3.pad_to_arity(3).unwrap(), k3);

        let small = LocalCircuit::new(2, 1, vec![LocalOutput::new(vec![0], v("01")).unwrap()]).unwrap();
        assert!(matches!(small.pad_to_arity(3), Err(Error::Parameter(_))));
    }

    #[test]
    fn restriction_examples() {
        let c = and2();
        let one = c.restrict_inputs(&[(0, true)]).unwrap();
        assert_eq!(one.output(0).inputs(), &[1]);
        assert_eq!(one.output(0).table(), &v("01"));
        let zero = c.restrict_inputs(&[(0, false)]).unwrap();
        assert_eq!(zero.output(0).table(), &v("00"));

        let xor3 = LocalOutput::from_fn(vec![0, 1, 2], |b| b[0] ^ b[1] ^ b[2]).unwrap();
        let c = LocalCircuit::new(3, 3, vec![xor3]).unwrap();
        let r = c.restrict_inputs(&[(0, true)]).unwrap();
        assert_eq!(r.output(0).inputs(), &[1, 2]);
        for p in 0..4usize {
            let x = GF2Vector::from_fn(3, |i| i > 0 && p >> (i - 1) & 1 == 1);
            assert_eq!(r.evaluate(&x).unwrap().get(0), !(x.get(1) ^ x.get(2)));
        }
        assert!(c.restrict_inputs(&[(3, true)]).is_err());
    }

    #[test]
    fn partial_assignment_never_overwrites() {
        let mut y = PartialAssignment::unset(3);
        y.set(1, true).unwrap();
        assert!(y.set(1, false).is_err());
        assert_eq!(y.complete(false), v("010"));
        assert!(y.is_consistent_with(&v("111")));
        assert!(!y.is_consistent_with(&v("101")));
        assert_eq!(y.unset_positions().collect::<Vec<_>>(), vec![0, 2]);
    }

    proptest! {
        #[test]
        fn restriction_commutes_with_evaluation(
            n in 3usize..=10,
            seed in any::<u64>(),
            fix_mask in any::<u16>(),
            fix_bits in any::<u16>(),
        ) {
            let c = gen_random_nc0(n, 6, 3, seed).unwrap();
            let fixing: Vec<(usize, bool)> =
                (0..n).filter(|i| fix_mask >> i & 1 == 1).map(|i| (i, fix_bits >> i & 1 == 1)).collect();
            let r = c.restrict_inputs(&fixing).unwrap();
            for o in r.outputs() {
                prop_assert!(o.inputs().iter().all(|i| !fixing.iter().any(|f| f.0 == *i)));
            }
            for x in 0u64..1 << n {
                let mut x = GF2Vector::from_u64(x, n);
                for &(i, b) in &fixing {
                    x.set(i, b);
                }
                prop_assert_eq!(r.evaluate(&x).unwrap(), c.evaluate(&x).unwrap());
            }
        }

        #[test]
        fn packed_and_vector_evaluation_agree(n in 3usize..=12, seed in any::<u64>(), x in any::<u64>()) {
            let c = gen_random_nc0(n, 70, 3, seed).unwrap();
            let x = x & ((1 << n) - 1);
            let mut out = vec![0u64; 2];
            c.eval_packed(x, &mut out);
            let want = c.evaluate(&GF2Vector::from_u64(x, n)).unwrap();
            prop_assert_eq!(&out[..], want.words());
        }
    }
}
