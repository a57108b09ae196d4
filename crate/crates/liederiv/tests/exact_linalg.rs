//! Cross-checks of the rational elimination core against an independent
//! fraction-free oracle, plus randomized algebraic laws for kernels,
//! solves, and canonical subspaces.

mod support;

use proptest::prelude::*;

use liederiv::exact::matrix::combine;
use liederiv::exact::scalar::dot;
use liederiv::{Matrix, Scalar, Subspace};
use support::{bareiss_rank, random_int_matrix, random_known_rank, random_rational_matrix, rng};

#[test]
fn rank_agrees_with_bareiss_oracle() {
    let mut rng = rng(0x5eed_0001);
    for case in 0..150 {
        let rows = 1 + (case % 7);
        let cols = 1 + (case % 9);
        let m = if case % 2 == 0 {
            random_int_matrix(&mut rng, rows, cols, 4)
        } else {
            random_rational_matrix(&mut rng, rows, cols)
        };
        assert_eq!(m.rank(), bareiss_rank(&m), "case {case}: {m:?}");
    }
}

#[test]
fn known_rank_is_recovered_and_rank_nullity_holds() {
    let mut rng = rng(0x5eed_0002);
    for case in 0..60 {
        let cols = 2 + (case % 6);
        let rows = 2 + (case % 5);
        let r = 1 + case % rows.min(cols);
        let m = random_known_rank(&mut rng, rows, cols, r);
        assert_eq!(m.rank(), r, "case {case}");
        assert_eq!(bareiss_rank(&m), r, "case {case}");
        let kernel = m.kernel_basis();
        assert_eq!(kernel.dim(), cols - r, "case {case}");
    }
}

#[test]
fn rref_is_idempotent_with_strictly_increasing_pivots() {
    let mut rng = rng(0x5eed_0003);
    for _ in 0..40 {
        let m = random_rational_matrix(&mut rng, 5, 7);
        let (r, pivots) = m.rref();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        let (rr, pivots2) = r.rref();
        assert_eq!(pivots, pivots2);
        // Fixpoint on the pivot rows: reducing again changes nothing.
        for i in 0..pivots.len() {
            assert_eq!(r.row(i), rr.row(i));
        }
        // Each pivot column is a standard basis column.
        for (i, &p) in pivots.iter().enumerate() {
            for t in 0..pivots.len() {
                let expected = if t == i { Scalar::one() } else { Scalar::zero() };
                assert_eq!(r[(t, p)], expected);
            }
        }
    }
}

#[test]
fn kernel_vectors_annihilate_and_solve_round_trips() {
    let mut rng = rng(0x5eed_0004);
    for case in 0..60 {
        let m = random_int_matrix(&mut rng, 4 + case % 3, 5 + case % 4, 3);
        for v in m.kernel_basis().basis().row_vecs() {
            assert!(m.mul_vec(&v).iter().all(Scalar::is_zero), "case {case}");
        }
        let x0: Vec<Scalar> = (0..m.cols())
            .map(|_| Scalar::ratio(rand::Rng::gen_range(&mut rng, -5..=5), 2))
            .collect();
        let b = m.mul_vec(&x0);
        let x = m
            .solve(&b)
            .expect("well-formed system")
            .expect("constructed to be consistent");
        assert_eq!(m.mul_vec(&x), b, "case {case}");
    }
}

#[test]
fn inconsistent_systems_are_detected() {
    // x = 0 and x = 1 cannot both hold.
    let m = Matrix::from_rows(vec![
        vec![Scalar::one()],
        vec![Scalar::one()],
    ])
    .unwrap();
    let b = vec![Scalar::zero(), Scalar::one()];
    assert_eq!(m.solve(&b).unwrap(), None);
}

#[test]
fn canonical_solves_are_deterministic() {
    let mut rng = rng(0x5eed_0005);
    let m = random_known_rank(&mut rng, 4, 6, 2);
    let x0: Vec<Scalar> = (0..6).map(|i| Scalar::from_int(i as i64 - 3)).collect();
    let b = m.mul_vec(&x0);
    let first = m.solve(&b).unwrap().unwrap();
    for _ in 0..5 {
        assert_eq!(m.solve(&b).unwrap().unwrap(), first);
    }
}

#[test]
fn respanning_leaves_canonical_subspaces_equal() {
    let mut rng = rng(0x5eed_0006);
    for case in 0..40 {
        let basis = random_known_rank(&mut rng, 3, 6, 3);
        let u = Subspace::from_rows(6, &basis);
        // Random invertible-ish recombination: scaled sums of all rows.
        let mut respan = Vec::new();
        for _ in 0..5 {
            let coeffs: Vec<Scalar> = (0..3)
                .map(|_| Scalar::from_int(rand::Rng::gen_range(&mut rng, -3..=3)))
                .collect();
            respan.push(combine(6, &coeffs, &basis));
        }
        let v = Subspace::from_span(6, respan);
        assert!(v.is_contained_in(&u), "case {case}");
        if v.dim() == u.dim() {
            assert_eq!(u, v, "case {case}: equal spaces must compare equal");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_and_intersection_dimension_law(
        a in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..4),
        b in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..4),
    ) {
        let to_scalars = |rows: &Vec<Vec<i64>>| -> Vec<Vec<Scalar>> {
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
        };
        let u = Subspace::from_span(5, to_scalars(&a));
        let v = Subspace::from_span(5, to_scalars(&b));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
        prop_assert!(u.is_contained_in(&s) && v.is_contained_in(&s));
        prop_assert!(i.is_contained_in(&u) && i.is_contained_in(&v));
    }

    #[test]
    fn annihilator_is_an_involution_on_subspaces(
        a in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..4),
    ) {
        let rows: Vec<Vec<Scalar>> =
            a.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        let u = Subspace::from_span(4, rows);
        let ann = u.annihilator();
        prop_assert_eq!(u.dim() + ann.dim(), 4);
        for row in ann.basis().row_vecs() {
            for i in 0..u.dim() {
                prop_assert!(dot(&row, u.basis().row(i)).is_zero());
            }
        }
        prop_assert_eq!(ann.annihilator(), u);
    }

    #[test]
    fn membership_after_combination(
        a in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..4),
        coeffs in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let rows: Vec<Vec<Scalar>> =
            a.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        let u = Subspace::from_span(5, rows.clone());
        let mut v = vec![Scalar::zero(); 5];
        for (row, c) in rows.iter().zip(&coeffs) {
            let c = Scalar::from_int(*c);
            for (dst, x) in v.iter_mut().zip(row) {
                *dst += &(&c * x);
            }
        }
        prop_assert!(u.contains(&v));
        let coords = u.coordinates(&v).unwrap();
        prop_assert_eq!(combine(5, &coords, u.basis()), v);
    }
}
