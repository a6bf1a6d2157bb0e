use crate::circuit::BooleanMap;
use crate::encoding::{build_rigid_instance, RigidInstance};
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::solvers::{brute_force_avoid, solve_degree2, Algorithm, Limits};
use crate::verify::{is_rigid, RigidityCertificate};

/// How the pipeline avoids the range of the low-rank-plus-sparse map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PipelineSolver {
    /// Exhaustive search over the inputs of the degree-2 map itself.
    Direct,
    /// Encode as a three-local circuit and run the given algorithm on it.
    Encoded(Algorithm),
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub instance: RigidInstance,
    pub matrix: GF2Matrix,
    pub certificate: RigidityCertificate,
}

/// Finds an `(r, s)`-rigid `n × n` matrix as a point outside the range of
/// `L·R + S`, then certifies it by exhaustive search.
pub fn rigid_pipeline(
    n: usize,
    r: usize,
    s: usize,
    solver: PipelineSolver,
    limits: &Limits,
    budget: u128,
) -> Result<PipelineOutcome> {
    let instance = build_rigid_instance(n, r, s)?;
    let g = instance.poly();
    if g.input_len() >= g.output_len() {
        return Err(Error::Stretch(format!(
            "the map L·R + S has {} inputs for {} outputs, so its range may be everything",
            g.input_len(),
            g.output_len()
        )));
    }
    let y = match solver {
        PipelineSolver::Direct => brute_force_avoid(g, limits.enumeration)?.y,
        PipelineSolver::Encoded(a) => solve_degree2(g, a, limits)?.y,
    };
    let matrix = instance.matrix_from_output(&y)?;
    let certificate = is_rigid(&matrix, r, s, budget)?;
    if !certificate.is_rigid() {
        return Err(Error::Internal(format!("avoided matrix is not ({r}, {s})-rigid:\n{}", certificate.to_text())));
    }
    Ok(PipelineOutcome { instance, matrix, certificate })
}
