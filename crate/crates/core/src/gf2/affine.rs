use num_bigint::BigUint;

use super::{GF2Matrix, GF2Vector};
use crate::error::{Error, Result};

/// An affine subspace of GF(2)^n held as the solution set of `A·x = b`.
///
/// The constraint rows are kept in fully reduced row-echelon form: each row's
/// leading one is its pivot, no other row has a one in a pivot column, and
/// rows are sorted by pivot. That form is unique for a given point set, so
/// structural equality is set equality. An inconsistent system collapses to
/// the distinguished empty value with no rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineSubspace {
    ambient_dim: usize,
    rows: Vec<GF2Vector>,
    rhs: Vec<bool>,
    pivots: Vec<usize>,
    empty: bool,
}

impl AffineSubspace {
    /// All of GF(2)^n.
    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, rows: Vec::new(), rhs: Vec::new(), pivots: Vec::new(), empty: false }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self { empty: true, ..Self::full(ambient_dim) }
    }

    /// `{x : A·x = b}` in canonical form.
    pub fn from_constraints(a: &GF2Matrix, b: &GF2Vector) -> Result<Self> {
        Error::check_len(a.rows(), b.len())?;
        let mut s = Self::full(a.cols());
        for r in 0..a.rows() {
            s.add_constraint(a.row(r), b.get(r));
            if s.empty {
                break;
            }
        }
        Ok(s)
    }

    /// The subspace fixing the listed coordinates, e.g. `x_3 = 1, x_5 = 0`.
    pub fn fixing(ambient_dim: usize, assignment: &[(usize, bool)]) -> Result<Self> {
        let mut s = Self::full(ambient_dim);
        for &(i, bit) in assignment {
            if i >= ambient_dim {
                return Err(Error::Parameter(format!("coordinate {i} outside dimension {ambient_dim}")));
            }
            let mut a = GF2Vector::zeros(ambient_dim);
            a.set(i, true);
            s.add_constraint(a, bit);
        }
        Ok(s)
    }

    /// `self ∩ {x : a·x = c}`.
    pub fn intersect_hyperplane(&self, a: &GF2Vector, c: bool) -> Result<Self> {
        Error::check_len(self.ambient_dim, a.len())?;
        let mut out = self.clone();
        out.add_constraint(a.clone(), c);
        Ok(out)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Error::check_len(self.ambient_dim, other.ambient_dim)?;
        if other.empty {
            return Ok(Self::empty(self.ambient_dim));
        }
        let mut out = self.clone();
        for (row, &c) in other.rows.iter().zip(&other.rhs) {
            if out.empty {
                break;
            }
            out.add_constraint(row.clone(), c);
        }
        Ok(out)
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        Ok(self.empty || self.intersect(other)? == *self)
    }

    fn add_constraint(&mut self, mut a: GF2Vector, mut c: bool) {
        if self.empty {
            return;
        }
        for (k, &p) in self.pivots.iter().enumerate() {
            if a.get(p) {
                a.xor_assign(&self.rows[k]);
                c ^= self.rhs[k];
            }
        }
        let Some(p) = a.leading_one() else {
            if c {
                *self = Self::empty(self.ambient_dim);
            }
            return;
        };
        for k in 0..self.rows.len() {
            if self.rows[k].get(p) {
                self.rows[k].xor_assign(&a);
                self.rhs[k] ^= c;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, a);
        self.rhs.insert(at, c);
        self.pivots.insert(at, p);
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// `n - rank(A)`, or `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        (!self.empty).then(|| self.ambient_dim - self.rows.len())
    }

    /// Number of points: `2^dimension`, or zero when empty.
    pub fn size(&self) -> BigUint {
        match self.dimension() {
            Some(d) => BigUint::from(1u8) << d,
            None => BigUint::default(),
        }
    }

    /// Canonical constraint matrix (one row per independent constraint).
    pub fn constraints(&self) -> GF2Matrix {
        GF2Matrix::from_rows(self.ambient_dim, &self.rows).expect("rows have ambient length")
    }

    pub fn rhs(&self) -> GF2Vector {
        GF2Vector::from_bits(&self.rhs)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, x: &GF2Vector) -> Result<bool> {
        Error::check_len(self.ambient_dim, x.len())?;
        Ok(!self.empty && self.rows.iter().zip(&self.rhs).all(|(row, &c)| row.dot(x) == c))
    }

    /// Non-pivot coordinates in increasing order.
    pub fn free_variables(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.ambient_dim - self.pivots.len());
        let mut pivots = self.pivots.iter().peekable();
        for i in 0..self.ambient_dim {
            if pivots.peek() == Some(&&i) {
                pivots.next();
            } else {
                free.push(i);
            }
        }
        free
    }

    /// The point whose free coordinates take the bits of `counter`, the first
    /// free variable being the most significant bit.
    fn point_from_counter(&self, free: &[usize], counter: u64) -> GF2Vector {
        let mut x = GF2Vector::zeros(self.ambient_dim);
        let f = free.len();
        for (idx, &v) in free.iter().enumerate() {
            if counter >> (f - 1 - idx) & 1 == 1 {
                x.set(v, true);
            }
        }
        for ((row, &c), &p) in self.rows.iter().zip(&self.rhs).zip(&self.pivots) {
            // x_p is still zero, so the dot product only sees free coordinates.
            let value = c ^ row.dot(&x);
            x.set(p, value);
        }
        x
    }

    /// Some point of the subspace (all free coordinates zero).
    pub fn any_point(&self) -> Option<GF2Vector> {
        (!self.empty).then(|| self.point_from_counter(&self.free_variables(), 0))
    }

    /// Every point, free variables counted up in lexicographic order.
    pub fn enumerate_points(&self, limit: u64) -> Result<Vec<GF2Vector>> {
        if self.empty {
            return Ok(Vec::new());
        }
        let free = self.free_variables();
        let count = 1u64.checked_shl(free.len() as u32).filter(|&c| c <= limit);
        let Some(count) = count else {
            return Err(Error::LimitExceeded { bits: free.len(), limit });
        };
        Ok((0..count).map(|c| self.point_from_counter(&free, c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn all_points(n: usize) -> impl Iterator<Item = GF2Vector> {
        (0u64..1 << n).map(move |x| GF2Vector::from_u64(x, n))
    }

    #[test]
    fn construction_examples() {
        let full = AffineSubspace::from_constraints(&GF2Matrix::zeros(0, 3), &GF2Vector::zeros(0)).unwrap();
        assert_eq!(full.dimension(), Some(3));
        assert_eq!(full, AffineSubspace::full(3));

        let diag = AffineSubspace::from_constraints(&GF2Matrix::from_str_rows(2, &["11"]).unwrap(), &v("0")).unwrap();
        assert_eq!(diag.dimension(), Some(1));
        assert_eq!(diag.enumerate_points(16).unwrap(), vec![v("00"), v("11")]);

        let contra =
            AffineSubspace::from_constraints(&GF2Matrix::from_str_rows(2, &["10", "10"]).unwrap(), &v("01")).unwrap();
        assert!(contra.is_empty());
        assert_eq!(contra.size(), BigUint::default());

        let bad = AffineSubspace::from_constraints(&GF2Matrix::zeros(2, 3), &GF2Vector::zeros(1));
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn hyperplane_examples() {
        let full2 = AffineSubspace::full(2);
        let h = full2.intersect_hyperplane(&v("10"), false).unwrap();
        assert_eq!(h.dimension(), Some(1));

        let diag = full2.intersect_hyperplane(&v("11"), false).unwrap();
        assert_eq!(diag.intersect_hyperplane(&v("11"), false).unwrap(), diag);
        assert!(diag.intersect_hyperplane(&v("11"), true).unwrap().is_empty());
        assert!(full2.intersect_hyperplane(&v("111"), false).is_err());
    }

    #[test]
    fn size_and_membership() {
        let full4 = AffineSubspace::full(4);
        assert_eq!(full4.dimension(), Some(4));
        assert_eq!(full4.size(), BigUint::from(16u32));
        assert!(full4.contains(&v("1011")).unwrap());
        assert!(!AffineSubspace::empty(4).contains(&v("1011")).unwrap());
        let diag = AffineSubspace::full(2).intersect_hyperplane(&v("11"), false).unwrap();
        assert_eq!(diag.size(), BigUint::from(2u32));
        assert!(!diag.contains(&v("01")).unwrap());
        assert!(diag.contains(&v("011")).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(AffineSubspace::empty(3).enumerate_points(8).unwrap(), vec![]);
        assert_eq!(AffineSubspace::full(1).enumerate_points(8).unwrap(), vec![v("0"), v("1")]);
        assert!(matches!(
            AffineSubspace::full(10).enumerate_points(1000),
            Err(Error::LimitExceeded { bits: 10, limit: 1000 })
        ));
    }

    fn arb_system(max_n: usize) -> impl Strategy<Value = (usize, Vec<(GF2Vector, bool)>)> {
        (1..=max_n).prop_flat_map(|n| {
            let row = (proptest::collection::vec(any::<bool>(), n), any::<bool>())
                .prop_map(|(bits, c)| (GF2Vector::from_bits(&bits), c));
            (Just(n), proptest::collection::vec(row, 0..=n + 2))
        })
    }

    fn build(n: usize, rows: &[(GF2Vector, bool)]) -> AffineSubspace {
        let a = GF2Matrix::from_rows(n, &rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>()).unwrap();
        let b = GF2Vector::from_bits(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
        AffineSubspace::from_constraints(&a, &b).unwrap()
    }

    proptest! {
        #[test]
        fn enumeration_matches_definition((n, rows) in arb_system(10)) {
            let s = build(n, &rows);
            let pts = s.enumerate_points(1 << 12).unwrap();
            prop_assert_eq!(BigUint::from(pts.len()), s.size());
            let expected: Vec<_> = all_points(n)
                .filter(|x| rows.iter().all(|(a, c)| a.dot(x) == *c))
                .collect();
            prop_assert_eq!(pts.len(), expected.len());
            for p in &pts {
                prop_assert!(s.contains(p).unwrap());
                prop_assert!(expected.contains(p));
            }
            if !s.is_empty() {
                prop_assert_eq!(s.dimension().unwrap(), n - s.constraints().rank());
            }
        }

        #[test]
        fn hyperplane_intersection_is_exact((n, rows) in arb_system(12), seed in any::<u64>(), c in any::<bool>()) {
            let s = build(n, &rows);
            let a = GF2Vector::from_fn(n, |i| (seed >> (i % 64)) & 1 == 1);
            let t = s.intersect_hyperplane(&a, c).unwrap();
            for x in all_points(n) {
                let want = s.contains(&x).unwrap() && a.dot(&x) == c;
                prop_assert_eq!(t.contains(&x).unwrap(), want);
            }
            match (s.dimension(), t.dimension()) {
                (Some(ds), Some(dt)) => prop_assert!(dt == ds || dt + 1 == ds),
                (None, d) => prop_assert_eq!(d, None),
                _ => {}
            }
        }

        #[test]
        fn canonical_form_ignores_row_operations((n, rows) in arb_system(10), ops in proptest::collection::vec((any::<usize>(), any::<usize>()), 0..12)) {
            let mut mixed = rows.clone();
            for (i, j) in ops {
                if mixed.len() < 2 { break; }
                let (i, j) = (i % mixed.len(), j % mixed.len());
                if i != j {
                    let (src, c) = mixed[i].clone();
                    mixed[j].0.xor_assign(&src);
                    mixed[j].1 ^= c;
                    let k = (i + j) % mixed.len();
                    mixed.swap(i, k);
                }
            }
            prop_assert_eq!(build(n, &rows), build(n, &mixed));
        }
    }
}
