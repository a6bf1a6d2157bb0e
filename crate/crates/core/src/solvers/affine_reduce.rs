use crate::circuit::TwoLocalFunction;
use crate::error::{Error, Result};
use crate::gf2::{AffineSubspace, GF2Vector};

/// Splits `s` into `(s0, s1)` with `s_b ⊆ s`, every `x ∈ s` with `f(x) = b`
/// in `s_b`, and `|s0| + |s1| <= 3|s|/2`. One side is always empty or of
/// strictly smaller dimension than `s`.
pub fn affine_reduce(s: &AffineSubspace, f: &TwoLocalFunction) -> Result<(AffineSubspace, AffineSubspace)> {
    let n = s.ambient_dim();
    let vars: &[usize] = match f {
        TwoLocalFunction::Constant(_) => &[],
        TwoLocalFunction::Affine { vars, .. } => vars,
        TwoLocalFunction::Quadratic { i, j, .. } => &[*i, *j],
    };
    if let Some(&v) = vars.iter().find(|&&v| v >= n) {
        return Err(Error::Parameter(format!("function reads x{v} outside the ambient dimension {n}")));
    }
    if s.is_empty() {
        return Ok((s.clone(), s.clone()));
    }
    let unit = |v: usize| {
        let mut a = GF2Vector::zeros(n);
        a.set(v, true);
        a
    };
    let ordered = |b: bool, on: AffineSubspace, off: AffineSubspace| if b { (off, on) } else { (on, off) };
    Ok(match f {
        TwoLocalFunction::Constant(c) => ordered(*c, s.clone(), AffineSubspace::empty(n)),
        TwoLocalFunction::Affine { vars, c } => {
            let a = GF2Vector::from_fn(n, |v| vars.contains(&v));
            // a·x + c = b  <=>  a·x = b + c
            (s.intersect_hyperplane(&a, *c)?, s.intersect_hyperplane(&a, !*c)?)
        }
        TwoLocalFunction::Quadratic { i, j, a1, a2, c } => {
            let hit = s.intersect_hyperplane(&unit(*i), !*a1)?.intersect_hyperplane(&unit(*j), !*a2)?;
            let other = if hit.dimension() < s.dimension() { s.clone() } else { AffineSubspace::empty(n) };
            // `hit` carries the value 1 + c
            ordered(!*c, hit, other)
        }
    })
}
