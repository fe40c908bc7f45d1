//! Property suites over randomized inputs: exact linear algebra
//! invariants, duality involutions, trace idempotence, cohomology-bundle
//! duality, and homotopy-degree vanishing.

mod common;

use proptest::prelude::*;
use tilt::complex::{cohomology, hom_homotopy_to_stalk};
use tilt::decompose::is_isomorphic;
use tilt::field::FieldTag;
use tilt::fixtures;
use tilt::matrix::Matrix;
use tilt::module::{hom_space, image, kernel, trace};
use tilt::rng::Rng;

fn field_strategy() -> impl Strategy<Value = FieldTag> {
    prop_oneof![
        Just(FieldTag::Rational),
        Just(FieldTag::Prime(2)),
        Just(FieldTag::Prime(3)),
        Just(FieldTag::Prime(5)),
    ]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0usize..4, 0usize..4).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(-4i64..5, r * c)
            .prop_map(move |data| Matrix::from_i64(r, c, f, &data))
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let rank = m.rank();
        let null = m.nullspace_basis();
        prop_assert_eq!(rank + null.len(), m.cols);
        for v in &null {
            let image = m.apply(v);
            prop_assert!(image.iter().all(|s| s.is_zero()), "null vector not annihilated");
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (_, r1, p1) = m.rref();
        let (_, r2, p2) = r1.rref();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn solve_finds_solutions(m in matrix_strategy(), xs in proptest::collection::vec(-3i64..4, 0..4)) {
        // build a consistent right-hand side and solve it back
        if xs.len() != m.cols { return Ok(()); }
        let f = m.field;
        let x: Vec<_> = xs.iter().map(|&v| f.from_i64(v)).collect();
        let b = m.apply(&x);
        let solved = m.solve(&b).expect("consistent system must solve");
        prop_assert_eq!(m.apply(&solved), b);
    }

    #[test]
    fn char_poly_constant_term_tracks_determinant(n in 1usize..4, data in proptest::collection::vec(-3i64..4, 9)) {
        let f = FieldTag::Rational;
        let m = Matrix::from_i64(n, n, f, &data[..n * n]);
        let p = m.char_poly();
        // det(tI - M) at t = 0 is (-1)^n det M; invertibility matches
        let c0 = &p[0];
        prop_assert_eq!(c0.is_zero(), !m.is_invertible());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dualize_is_an_involution(seed in 0u64..200) {
        let mut rng = Rng::new(seed);
        let a = fixtures::ex310(FieldTag::Prime(2));
        let op = a.opposite().unwrap();
        for m in common::module_pool(&a, &mut rng, 6) {
            let dd = m.dualize(&op).dualize(&a);
            prop_assert_eq!(&dd.dims, &m.dims);
            prop_assert!(is_isomorphic(&dd, &m, seed));
        }
    }

    #[test]
    fn trace_is_idempotent(seed in 0u64..200) {
        let mut rng = Rng::new(seed);
        let a = fixtures::a2(FieldTag::Prime(3));
        let pool = common::module_pool(&a, &mut rng, 8);
        let t = &pool[rng.below(pool.len() as u64) as usize];
        let x = &pool[rng.below(pool.len() as u64) as usize];
        let seq = trace(t, x);
        let again = trace(t, &seq.tau);
        prop_assert_eq!(again.tau.dims, seq.tau.dims);
        prop_assert!(again.pi.is_zero_module());
    }

    #[test]
    fn exactness_bookkeeping(seed in 0u64..200) {
        let mut rng = Rng::new(seed);
        let a = fixtures::ex310(FieldTag::Prime(2));
        let pool = common::module_pool(&a, &mut rng, 6);
        let m = &pool[rng.below(pool.len() as u64) as usize];
        let n = &pool[rng.below(pool.len() as u64) as usize];
        for f in hom_space(m, n) {
            let (k, _) = kernel(&f);
            let (im, _) = image(&f);
            prop_assert_eq!(k.total_dim() + im.total_dim(), m.total_dim());
        }
    }

    #[test]
    fn stripping_preserves_homotopy_invariants(seed in 0u64..150) {
        // cohomology is a homotopy invariant, so the Gaussian stripping of
        // contractible summands must preserve it; the decomposition into
        // indecomposables must partition it
        let mut rng = Rng::new(seed);
        let a = fixtures::ex310(FieldTag::Prime(2));
        let op = a.opposite().unwrap();
        let p = common::random_complex(&a, 2, &mut rng);
        let before = cohomology(&p, &op);
        let stripped = tilt::complex::strip_contractibles(&p);
        let after = cohomology(&stripped, &op);
        prop_assert_eq!(&before.h0.dims, &after.h0.dims);
        prop_assert_eq!(&before.hminus1.dims, &after.hminus1.dims);
        let parts = tilt::complex::decompose_complex(&p, seed).unwrap();
        let mut h0_sum = vec![0usize; 4];
        let mut h1_sum = vec![0usize; 4];
        for piece in &parts {
            let b = cohomology(piece, &op);
            for v in 0..4 {
                h0_sum[v] += b.h0.dims[v];
                h1_sum[v] += b.hminus1.dims[v];
            }
        }
        prop_assert_eq!(h0_sum, before.h0.dims);
        prop_assert_eq!(h1_sum, before.hminus1.dims);
        // the pieces together are add-equal to the original
        if !parts.is_empty() {
            let mut total = parts[0].clone();
            for piece in &parts[1..] {
                total = total.direct_sum(piece);
            }
            prop_assert!(tilt::complex::add_equal(&p, &total, seed).unwrap());
        }
    }

    #[test]
    fn bundle_duality_and_degree_vanishing(seed in 0u64..300) {
        let mut rng = Rng::new(seed);
        let a = fixtures::ex310(FieldTag::Prime(2));
        let op = a.opposite().unwrap();
        let p = common::random_complex(&a, 2, &mut rng);
        let b = cohomology(&p, &op);
        prop_assert_eq!(b.h1dual.total_dim(), b.hminus1_nu.total_dim());
        let x = &common::module_pool(&a, &mut rng, 5)[rng.below(5) as usize];
        for shift in [-1i32, 2, 3, -2] {
            prop_assert_eq!(hom_homotopy_to_stalk(&p, x, shift).dim, 0);
        }
    }
}
