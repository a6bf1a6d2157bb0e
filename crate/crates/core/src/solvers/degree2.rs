use super::{admissible, require_stretch, Algorithm, Limits, Solution};
use crate::circuit::{BooleanMap, PolyFunction};
use crate::encoding::{encode_degree_d, EncodedCircuit};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// An avoided point of a degree-2 map together with the avoided point of
/// its encoding that it decodes from.
#[derive(Clone, Debug)]
pub struct Degree2Solution {
    pub y: GF2Vector,
    pub encoded: EncodedCircuit,
    pub inner: Solution,
    /// Algorithms whose preconditions the encoded circuit meets.
    pub admissible: Vec<Algorithm>,
}

/// Encodes `p` as a three-local circuit, avoids its range with `algorithm`
/// and decodes. Any point outside the encoding's range decodes to a point
/// outside the range of `p`.
pub fn solve_degree2(p: &PolyFunction, algorithm: Algorithm, limits: &Limits) -> Result<Degree2Solution> {
    if p.d() > 2 {
        return Err(Error::Parameter(format!("expected degree at most 2, got {}", p.d())));
    }
    require_stretch(p.input_len(), p.output_len())?;
    let encoded = encode_degree_d(p)?;
    let fhat = encoded.circuit();
    let admissible = admissible(fhat, limits);
    if let Err(e) = algorithm.check(fhat, limits) {
        let names: Vec<&str> = admissible.iter().map(|a| a.name()).collect();
        let context = format!(
            "{algorithm} on the encoded circuit (n={}, m={}); admissible: [{}]",
            fhat.n(),
            fhat.m(),
            names.join(", ")
        );
        return Err(match e {
            Error::Stretch(msg) => Error::Stretch(format!("{msg}; {context}")),
            Error::Locality { .. } | Error::LimitExceeded { .. } | Error::BranchBudget { .. } => e,
            other => Error::Precondition(format!("{other}; {context}")),
        });
    }
    let inner = algorithm.solve(fhat, limits)?;
    let y = encoded.decode(&inner.y)?;
    Ok(Degree2Solution { y, encoded, inner, admissible })
}
