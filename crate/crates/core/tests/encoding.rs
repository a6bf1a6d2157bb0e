use std::collections::HashSet;

use itertools::Itertools;
use rangeavoid::circuit::{BooleanMap, Monomial, PolyFunction};
use rangeavoid::encoding::{build_sparse_encoder, encode_degree_d};
use rangeavoid::GF2Vector;

fn bits(v: u64, len: usize) -> GF2Vector {
    GF2Vector::from_u64(v, len)
}

/// Every polynomial map with `n` inputs, `m` outputs and at most two
/// monomials per output.
fn tiny_polys(n: usize, m: usize) -> Vec<PolyFunction> {
    let monomials: Vec<Monomial> =
        (0..=n).flat_map(|d| (0..n).combinations(d)).map(|vars| Monomial::new(vars).unwrap()).collect();
    let outputs: Vec<Vec<Monomial>> = (0..=2).flat_map(|k| monomials.iter().cloned().combinations(k)).collect();
    (0..m)
        .map(|_| outputs.iter().cloned())
        .multi_cartesian_product()
        .map(|outs| PolyFunction::new(n, n, outs).unwrap())
        .collect()
}

fn image<C: BooleanMap + ?Sized>(c: &C) -> HashSet<GF2Vector> {
    (0..1u64 << c.input_len()).map(|x| c.evaluate(&bits(x, c.input_len())).unwrap()).collect()
}

#[test]
fn perfect_encoding_exhaustively() {
    let mut checked = 0;
    for n in 1..=3 {
        for m in 1..=2 {
            for p in tiny_polys(n, m) {
                let e = encode_degree_d(&p).unwrap();
                let fhat = e.circuit();
                assert!(fhat.outputs().iter().all(|o| o.arity() <= (p.d() + 1).max(3)));
                let k = e.layout().k;
                assert_eq!(fhat.n(), n + (2 * k - 1) * m);
                assert_eq!(fhat.m(), 2 * k * m);

                // soundness: decode(fhat(x, r, s)) = P(x)
                let mut fhat_range = HashSet::new();
                for w in 0..1u64 << fhat.n() {
                    let w = bits(w, fhat.n());
                    let yhat = fhat.evaluate(&w).unwrap();
                    assert_eq!(e.decode(&yhat).unwrap(), p.evaluate(&w.slice(0, n)).unwrap());
                    fhat_range.insert(yhat);
                }

                // completeness: every yhat decoding to P(x) has a witness over x
                for x in 0..1u64 << n {
                    let x = bits(x, n);
                    let px = p.evaluate(&x).unwrap();
                    for yhat in 0..1u64 << fhat.m() {
                        let yhat = bits(yhat, fhat.m());
                        if e.decode(&yhat).unwrap() == px {
                            let w = e.encoding_witness(&x, &yhat).unwrap();
                            assert_eq!(w.slice(0, n), x);
                            assert_eq!(fhat.evaluate(&w).unwrap(), yhat);
                        } else {
                            assert!(e.encoding_witness(&x, &yhat).is_err());
                        }
                    }
                }

                // avoid transfer
                let p_range = image(&p);
                for yhat in 0..1u64 << fhat.m() {
                    let yhat = bits(yhat, fhat.m());
                    if !fhat_range.contains(&yhat) {
                        assert!(!p_range.contains(&e.decode(&yhat).unwrap()));
                    }
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn sparse_encoder_covers_sparse_vectors() {
    for n in [4, 9] {
        for s in [1, 2] {
            let enc = build_sparse_encoder(n, s, 2).unwrap();
            let f = enc.poly();
            assert!(f.outputs().iter().flatten().all(|t| t.degree() <= 2));
            let distinct: HashSet<&Vec<usize>> = enc.edges().iter().collect();
            assert_eq!(distinct.len(), n);
            let range = image(f);
            for y in 0..1u64 << n {
                let y = bits(y, n);
                if y.weight() <= s {
                    let x = enc.sparse_witness(&y).unwrap();
                    assert_eq!(f.evaluate(&x).unwrap(), y);
                    assert!(range.contains(&y));
                } else {
                    assert!(enc.sparse_witness(&y).is_err());
                }
            }
        }
    }
}

#[test]
fn sparse_encoder_zero_input() {
    let enc = build_sparse_encoder(4, 1, 2).unwrap();
    assert!(enc.poly().evaluate(&GF2Vector::zeros(4)).unwrap().is_zero());
    assert!(enc.sparse_witness(&GF2Vector::zeros(4)).unwrap().is_zero());
    let e1 = enc.sparse_witness(&"1000".parse().unwrap()).unwrap();
    assert_eq!(e1.to_string(), "1100");
}
