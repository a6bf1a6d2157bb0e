//! Seeded instance generators.
//!
//! Output `j` draws from its own ChaCha8 stream (`seed`, stream `j`), so a
//! prefix of outputs does not depend on how many outputs follow it.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LocalCircuit, LocalOutput, Monomial, PolyFunction};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// Identifier written into generated file headers.
pub const GENERATOR_SCHEME: &str = "chacha8-stream-v1";

fn output_rng(seed: u64, j: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(j as u64);
    rng
}

/// Every output reads `k` distinct inputs chosen uniformly and has a uniform
/// truth table.
pub fn gen_random_nc0(n: usize, m: usize, k: usize, seed: u64) -> Result<LocalCircuit> {
    if n < k || m == 0 || k > 16 {
        return Err(Error::Parameter(format!("need n >= k, m >= 1 and k <= 16 (n={n}, m={m}, k={k})")));
    }
    let outputs = (0..m)
        .map(|j| {
            let mut rng = output_rng(seed, j);
            let mut inputs = sample(&mut rng, n, k).into_vec();
            inputs.sort_unstable();
            let table = GF2Vector::from_fn(1 << k, |_| rng.gen());
            LocalOutput::new(inputs, table)
        })
        .collect::<Result<Vec<_>>>()?;
    LocalCircuit::new(n, k, outputs)
}

/// Each monomial of degree at most `d` (the constant included) appears in
/// each output independently with probability `density`.
pub fn gen_random_poly(n: usize, m: usize, d: usize, density: f64, seed: u64) -> Result<PolyFunction> {
    if m == 0 || !(0.0..=1.0).contains(&density) {
        return Err(Error::Parameter(format!("need m >= 1 and density in [0, 1] (m={m}, density={density})")));
    }
    let all: Vec<Monomial> =
        (0..=d.min(n)).flat_map(|deg| (0..n).combinations(deg)).map(|vars| Monomial::new(vars).unwrap()).collect();
    let outputs = (0..m)
        .map(|j| {
            let mut rng = output_rng(seed, j);
            all.iter().filter(|_| rng.gen_bool(density)).cloned().collect()
        })
        .collect();
    PolyFunction::new(n, d, outputs)
}
