use std::collections::HashSet;

use proptest::prelude::*;
use rangeavoid::circuit::{gen_random_nc0, gen_random_poly, BooleanMap, LocalCircuit, TwoLocalFunction};
use rangeavoid::solvers::{
    affine_reduce, brute_force_avoid, one_subspace, select_dense_sets, solve_degree2, solve_nc02, subspace_union,
    subspace_union_with_hook, Algorithm, Limits, Move,
};
use rangeavoid::{AffineSubspace, GF2Matrix, GF2Vector};

/// Range by direct evaluation, independent of the crate's range oracle.
fn image<C: BooleanMap + ?Sized>(c: &C) -> HashSet<GF2Vector> {
    let n = c.input_len();
    (0..1u64 << n).map(|x| c.evaluate(&GF2Vector::from_u64(x, n)).unwrap()).collect()
}

fn subspace(n: usize) -> impl Strategy<Value = AffineSubspace> {
    (0..=n)
        .prop_flat_map(move |rows| {
            (proptest::collection::vec(any::<bool>(), rows * n), proptest::collection::vec(any::<bool>(), rows))
        })
        .prop_map(move |(a, b)| {
            let rows = b.len();
            let a = GF2Matrix::from_flat(rows, n, &GF2Vector::from_bits(&a)).unwrap();
            AffineSubspace::from_constraints(&a, &GF2Vector::from_bits(&b)).unwrap()
        })
}

proptest! {
    #[test]
    fn affine_reduce_is_sound_and_shrinks(
        (n, s) in (2usize..=8).prop_flat_map(|n| (Just(n), subspace(n))),
        table in 0u8..16,
        vars in (0usize..8, 0usize..8),
    ) {
        let (i, j) = (vars.0 % n, vars.1 % n);
        prop_assume!(i != j);
        let (i, j) = (i.min(j), i.max(j));
        let table = GF2Vector::from_u64(table as u64, 4);
        let f = TwoLocalFunction::classify(&[i, j], &table).unwrap();
        let (s0, s1) = affine_reduce(&s, &f).unwrap();
        for x in s.enumerate_points(1 << 10).unwrap() {
            let pos = x.get(i) as usize | (x.get(j) as usize) << 1;
            let side = if table.get(pos) { &s1 } else { &s0 };
            prop_assert!(side.contains(&x).unwrap());
        }
        prop_assert!(s0.is_subset_of(&s).unwrap() && s1.is_subset_of(&s).unwrap());
        prop_assert!((s0.size() + s1.size()) * 2u32 <= s.size() * 3u32);
    }
}

#[test]
fn every_solver_avoids_the_range() {
    let limits = Limits::default();
    for seed in 0..20 {
        let c = gen_random_nc0(6, 7, 2, seed).unwrap();
        let range = image(&c);
        let y = solve_nc02(&c).unwrap().y;
        assert!(!range.contains(&y));
        assert!(!range.contains(&brute_force_avoid(&c, 1 << 10).unwrap().y));

        let c = gen_random_nc0(8, 24, 3, seed).unwrap();
        let range = image(&c);
        assert!(!range.contains(&subspace_union(&c, &limits).unwrap().y));
        let c6 = gen_random_nc0(6, 17, 3, seed).unwrap();
        let sol = one_subspace(&c6).unwrap();
        assert!(!image(&c6).contains(&sol.y));
        assert!(sol.iterations <= 7);

        let c4 = gen_random_nc0(6, 108, 4, seed).unwrap();
        let sol = subspace_union(&c4, &limits).unwrap();
        assert!(!image(&c4).contains(&sol.y));
    }
}

#[test]
fn brute_force_is_least_missing() {
    for seed in 0..10 {
        let c = gen_random_nc0(7, 8, 3, seed).unwrap();
        let range = image(&c);
        let y = brute_force_avoid(&c, 1 << 10).unwrap().y;
        let below: Vec<GF2Vector> =
            (0..256u64).map(|v| GF2Vector::from_fn(8, |i| v >> (7 - i) & 1 == 1)).take_while(|v| *v != y).collect();
        assert!(below.iter().all(|v| range.contains(v)));
        assert!(!range.contains(&y));
    }
}

#[test]
fn union_invariant_and_shrinkage() {
    for seed in 0..10 {
        let c: LocalCircuit = gen_random_nc0(9, 27, 3, 100 + seed).unwrap();
        let images: Vec<(GF2Vector, GF2Vector)> = (0..512u64)
            .map(|x| {
                let x = GF2Vector::from_u64(x, 9);
                let y = c.evaluate(&x).unwrap();
                (x, y)
            })
            .collect();
        let mut steps = 0;
        let sol = subspace_union_with_hook(&c, &Limits::default(), |state| {
            steps += 1;
            for (x, y) in &images {
                if state.y.is_consistent_with(y) {
                    assert!(state.subspaces.iter().any(|s| s.contains(x).unwrap()));
                }
            }
            for (a, b) in state.subspaces.iter().zip(state.subspaces.iter().skip(1)) {
                assert!(a.intersect(b).unwrap().is_empty());
            }
        })
        .unwrap();
        assert_eq!(steps as u64, sol.iterations + 1);
        assert!(sol.iterations <= 27);
        for w in sol.sizes.windows(2) {
            assert!(w[1].clone() * 4u32 <= w[0].clone() * 3u32);
        }
        let t = sol.branch_inputs.unwrap();
        assert!(t <= (3 * 81usize).div_ceil(27));
    }
}

#[test]
fn one_subspace_dimension_strictly_drops() {
    for seed in 0..30 {
        let c = gen_random_nc0(7, 21, 3, seed).unwrap();
        let sol = one_subspace(&c).unwrap();
        for w in sol.sizes.windows(2) {
            assert!(w[1] < w[0]);
            assert!(w[1] == 0u32.into() || w[1].clone() * 2u32 <= w[0]);
        }
        assert!(sol.moves.iter().filter(|m| !matches!(m, Move::Flip { .. })).count() <= 7);
        assert!(!image(&c).contains(&sol.y));
    }
}

#[test]
fn dense_selection_bounds() {
    for seed in 0..20 {
        let c = gen_random_nc0(10, 40, 3, seed).unwrap();
        let sel = select_dense_sets(&c, 3).unwrap();
        assert!(sel.inputs.len() <= (3 * 100usize).div_ceil(40));
        assert!(sel.outputs.len() >= 30);
        for &j in &sel.outputs {
            let free = c.output(j).inputs().iter().filter(|v| !sel.inputs.contains(v)).count();
            assert!(free <= 2);
        }
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let c = gen_random_nc0(12, 36, 3, 42).unwrap();
    let p = gen_random_poly(2, 3, 2, 0.4, 42).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let su = subspace_union(&c, &Limits::default()).unwrap();
            let bf = brute_force_avoid(&c, 1 << 12).unwrap();
            let d2 = solve_degree2(&p, Algorithm::Brute, &Limits::default()).unwrap();
            (su, bf, d2.y)
        })
    };
    let one = run(1);
    for threads in [2, 4, 8] {
        assert_eq!(run(threads), one);
    }
}

#[test]
fn degree2_through_the_encoding() {
    for seed in 0..10 {
        let p = gen_random_poly(2, 3, 2, 0.4, seed).unwrap();
        let range = image(&p);
        let sol = solve_degree2(&p, Algorithm::Brute, &Limits::default()).unwrap();
        assert!(!range.contains(&sol.y), "seed {seed}");
        assert!(!image(sol.encoded.circuit()).contains(&sol.inner.y));
        // an encoding has fewer than three times as many outputs as inputs
        assert!(!sol.admissible.contains(&Algorithm::SubspaceUnion));
        let err = solve_degree2(&p, Algorithm::SubspaceUnion, &Limits::default()).unwrap_err();
        assert!(matches!(err, rangeavoid::Error::Stretch(_)), "{err}");
    }
}
