use num_bigint::BigUint;

use super::{require_stretch, Solution};
use crate::circuit::BooleanMap;
use crate::error::{Error, Result};
use crate::verify::{input_count, RangeSet};

/// Checks `m > n` and `2^n <= limit`.
pub fn check_brute_force<C: BooleanMap + ?Sized>(c: &C, limit: u64) -> Result<()> {
    require_stretch(c.input_len(), c.output_len())?;
    input_count(c.input_len(), limit).map(|_| ())
}

/// The lexicographically least point outside the range, found by evaluating
/// every input.
pub fn brute_force_avoid<C: BooleanMap + ?Sized>(c: &C, limit: u64) -> Result<Solution> {
    check_brute_force(c, limit)?;
    let range = RangeSet::build(c, limit)?;
    let y = range.least_missing().ok_or_else(|| Error::Internal("a map with m > n covered every output".into()))?;
    let count = input_count(c.input_len(), limit)?;
    Ok(Solution { y, iterations: count, branch_inputs: None, sizes: vec![BigUint::from(count)], moves: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{gen_random_nc0, parse_nc0, parse_poly};
    use crate::verify::in_range;

    #[test]
    fn examples() {
        let dup = parse_nc0("nc0 1 2 1\n0: 0: 01\n1: 0: 01\n").unwrap();
        assert_eq!(brute_force_avoid(&dup, 16).unwrap().y.to_string(), "01");

        let zeros = parse_nc0("nc0 2 3 1\n0: : 0\n1: : 0\n2: : 0\n").unwrap();
        assert_eq!(brute_force_avoid(&zeros, 16).unwrap().y.to_string(), "001");

        let c = gen_random_nc0(10, 11, 3, 7).unwrap();
        let y = brute_force_avoid(&c, 1 << 12).unwrap().y;
        assert!(!in_range(&c, &y, 1 << 12).unwrap());

        let p = parse_poly("poly 1 2 1\n0: x0\n1: x0\n").unwrap();
        assert_eq!(brute_force_avoid(&p, 16).unwrap().y.to_string(), "01");
    }

    #[test]
    fn preconditions() {
        let square = parse_nc0("nc0 1 1 1\n0: 0: 01\n").unwrap();
        assert!(matches!(brute_force_avoid(&square, 16), Err(Error::Stretch(_))));
        let c = gen_random_nc0(10, 11, 3, 7).unwrap();
        assert!(matches!(brute_force_avoid(&c, 1000), Err(Error::LimitExceeded { .. })));
    }
}
