use std::collections::HashMap;

use itertools::Itertools;

use crate::circuit::LocalCircuit;
use crate::error::{Error, Result};

/// Inputs `I` and outputs `O` such that every output in `O` reads at least
/// `k - 2` inputs from `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSelection {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub c: usize,
    /// The chosen `(k - 2)`-subsets, highest degree first.
    pub subsets: Vec<Vec<usize>>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// `c · n^e`, saturating.
fn scaled_power(c: usize, n: usize, e: usize) -> u128 {
    (0..e).fold(c as u128, |acc, _| acc.saturating_mul(n as u128))
}

/// Number of subsets [`select_dense_sets`] takes:
/// `min(ceil(c·n·C(n, k-2) / m), C(n, k-2))`.
pub(crate) fn subset_count(n: usize, m: usize, k: usize, c: usize) -> u128 {
    let a = binomial(n, k - 2);
    (c as u128).saturating_mul(n as u128).saturating_mul(a).div_ceil(m as u128).min(a)
}

/// Chooses the `(k - 2)`-subsets of inputs contained in the most output read
/// sets. `circuit` must have every output reading exactly `k >= 3` inputs
/// and `m >= c · n^(k-2)`.
pub fn select_dense_sets(circuit: &LocalCircuit, c: usize) -> Result<DenseSelection> {
    let (n, m, k) = (circuit.n(), circuit.m(), circuit.k());
    if k < 3 {
        return Err(Error::Parameter(format!("dense selection needs locality at least 3, got {k}")));
    }
    if let Some(o) = circuit.outputs().iter().position(|o| o.arity() != k) {
        return Err(Error::Parameter(format!(
            "output {o} reads {} inputs, expected exactly {k}",
            circuit.output(o).arity()
        )));
    }
    if (m as u128) < scaled_power(c, n, k - 2) {
        return Err(Error::Stretch(format!("need m >= {c}·n^{}, got n={n}, m={m}", k - 2)));
    }
    let mut degree: HashMap<Vec<usize>, usize> = HashMap::new();
    for o in circuit.outputs() {
        for subset in o.inputs().iter().copied().combinations(k - 2) {
            *degree.entry(subset).or_default() += 1;
        }
    }
    let t = subset_count(n, m, k, c) as usize;
    let mut ranked: Vec<(Vec<usize>, usize)> = degree.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut subsets: Vec<Vec<usize>> = ranked.into_iter().take(t).map(|(s, _)| s).collect();
    if subsets.len() < t {
        // the remaining choices all have degree 0
        let mut taken: Vec<Vec<usize>> = subsets.clone();
        taken.sort_unstable();
        let extra: Vec<Vec<usize>> =
            (0..n).combinations(k - 2).filter(|s| taken.binary_search(s).is_err()).take(t - subsets.len()).collect();
        subsets.extend(extra);
    }
    let mut inputs: Vec<usize> = subsets.iter().flatten().copied().collect();
    inputs.sort_unstable();
    inputs.dedup();
    let outputs: Vec<usize> = (0..m)
        .filter(|&j| {
            let read = circuit.output(j).inputs();
            subsets.iter().any(|s| s.iter().all(|v| read.binary_search(v).is_ok()))
        })
        .collect();
    if (outputs.len() as u128) < (c * n) as u128 {
        return Err(Error::Internal(format!("selected {} outputs, fewer than {c}·{n}", outputs.len())));
    }
    Ok(DenseSelection { inputs, outputs, c, subsets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gen_random_nc0;

    fn padded(n: usize, m: usize, seed: u64) -> LocalCircuit {
        gen_random_nc0(n, m, 3, seed).unwrap().pad_to_arity(3).unwrap()
    }

    #[test]
    fn six_inputs_twenty_seven_outputs() {
        let c = padded(6, 27, 5);
        let sel = select_dense_sets(&c, 3).unwrap();
        assert_eq!(sel.subsets.len(), 4);
        assert!(sel.inputs.len() <= 4);
        assert!(sel.outputs.len() >= 18);
        for &j in &sel.outputs {
            let outside = c.output(j).inputs().iter().filter(|v| !sel.inputs.contains(v)).count();
            assert!(outside <= 2);
        }
    }

    #[test]
    fn four_inputs_take_everything() {
        let c = padded(4, 12, 9);
        let sel = select_dense_sets(&c, 3).unwrap();
        assert_eq!(sel.inputs, [0, 1, 2, 3]);
        assert_eq!(sel.outputs, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn ties_prefer_smaller_subsets() {
        let c = padded(6, 18, 1);
        let sel = select_dense_sets(&c, 3).unwrap();
        for w in sel.subsets.windows(2) {
            let deg = |s: &Vec<usize>| c.outputs().iter().filter(|o| s.iter().all(|v| o.inputs().contains(v))).count();
            assert!(deg(&w[0]) > deg(&w[1]) || (deg(&w[0]) == deg(&w[1]) && w[0] < w[1]));
        }
    }

    #[test]
    fn threshold() {
        assert!(matches!(select_dense_sets(&padded(6, 17, 1), 3), Err(Error::Stretch(_))));
        let k4 = gen_random_nc0(5, 75, 4, 2).unwrap().pad_to_arity(4).unwrap();
        let sel = select_dense_sets(&k4, 3).unwrap();
        assert!(sel.subsets.iter().all(|s| s.len() == 2));
        assert!(sel.outputs.len() >= 15);
    }
}
