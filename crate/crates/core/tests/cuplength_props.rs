mod common;

use common::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcrlab::cuplength::{
    cuplength_lower_bound, wedge_product, zero_divisor_subspace, MultiVector, MAX_AMBIENT_DIM,
};
use tcrlab::error::Error;
use tcrlab::linalg::IntegerMatrix;

const N: usize = 6;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Sparse element with a few random blades.
fn multivector() -> impl Strategy<Value = MultiVector> {
    proptest::collection::vec((0u64..(1 << N), -4i64..=4), 0..=5)
        .prop_map(|terms| MultiVector::from_terms(N, terms.into_iter().map(|(b, c)| (b, q(c)))))
}

fn degree_one() -> impl Strategy<Value = MultiVector> {
    proptest::collection::vec(-4i64..=4, N)
        .prop_map(|c| MultiVector::from_degree_one(&c.into_iter().map(q).collect::<Vec<_>>()))
}

fn wedge_all(vs: &[Vec<BigRational>], n: usize) -> MultiVector {
    vs.iter().fold(MultiVector::one(n), |acc, v| {
        wedge_product(&acc, &MultiVector::from_degree_one(v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_bilinear(u in multivector(), v in multivector(), w in multivector(), c in -5i64..=5) {
        let c = q(c);
        prop_assert_eq!(wedge_product(&u.add(&v), &w), wedge_product(&u, &w).add(&wedge_product(&v, &w)));
        prop_assert_eq!(wedge_product(&u, &v.add(&w)), wedge_product(&u, &v).add(&wedge_product(&u, &w)));
        prop_assert_eq!(wedge_product(&u.scale(&c), &v), wedge_product(&u, &v).scale(&c));
    }

    #[test]
    fn wedge_is_associative(u in multivector(), v in multivector(), w in multivector()) {
        prop_assert_eq!(wedge_product(&wedge_product(&u, &v), &w), wedge_product(&u, &wedge_product(&v, &w)));
    }

    #[test]
    fn degree_one_squares_vanish(u in degree_one(), v in degree_one()) {
        prop_assert!(wedge_product(&u, &u).is_zero());
        // Anticommutation of degree-one elements.
        prop_assert_eq!(wedge_product(&u, &v), wedge_product(&v, &u).scale(&q(-1)));
    }

    #[test]
    fn subspace_dimension_is_r_minus_one_times_rank(m in 0usize..=3, n in 0usize..=4, r in 2usize..=4, seed in any::<u64>()) {
        prop_assume!(n * r <= 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, m, n, 3);
        let b = cuplength_lower_bound(&a, r).unwrap();
        prop_assert_eq!(b.value, (r - 1) * integer_rank(&a));
        prop_assert_eq!(b.subspace.dim(), b.value);
    }

    #[test]
    fn certificate_is_a_nonzero_top_wedge(m in 1usize..=3, n in 1usize..=3, r in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, m, n, 3);
        let b = cuplength_lower_bound(&a, r).unwrap();
        let basis = b.subspace.basis();
        let ambient = n * r;
        prop_assert_eq!(&b.certificate, &wedge_all(basis, ambient));
        prop_assert!(!b.certificate.is_zero());
        prop_assert_eq!(b.certificate.degree(), Some(b.value));
        // Every class of W is a zero-divisor: its r blocks sum to zero.
        for v in basis {
            for i in 0..n {
                let s = (0..r).fold(BigRational::zero(), |acc, k| acc + &v[k * n + i]);
                prop_assert!(s.is_zero());
            }
            // Appending any further class of W kills the product.
            prop_assert!(wedge_product(&b.certificate, &MultiVector::from_degree_one(v)).is_zero());
        }
    }

    #[test]
    fn bound_grows_with_r(m in 0usize..=3, n in 0usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, m, n, 3);
        let mut prev = 0;
        for r in 2..=4 {
            let v = cuplength_lower_bound(&a, r).unwrap().value;
            prop_assert!(v >= prev);
            prev = v;
        }
    }
}

#[test]
fn sign_conventions() {
    let e = |i| MultiVector::generator(2, i);
    let e12 = MultiVector::from_terms(2, [(0b11, q(1))]);
    assert_eq!(wedge_product(&e(0), &e(1)), e12);
    assert_eq!(wedge_product(&e(1), &e(0)), e12.scale(&q(-1)));
    assert!(wedge_product(&e(0), &e(0)).is_zero());
}

#[test]
fn documented_examples() {
    let id1 = IntegerMatrix::identity(1);
    let w = zero_divisor_subspace(&id1, 2).unwrap();
    assert_eq!(w.dim(), 1);
    let v = &w.basis()[0];
    assert!(v[0] == -v[1].clone() && !v[0].is_zero());
    assert_eq!(
        zero_divisor_subspace(&IntegerMatrix::identity(2), 3)
            .unwrap()
            .dim(),
        4
    );
    assert_eq!(
        zero_divisor_subspace(&IntegerMatrix::zeros(2, 3), 3)
            .unwrap()
            .dim(),
        0
    );
    let sum = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
    assert_eq!(cuplength_lower_bound(&sum, 2).unwrap().value, 1);
}

#[test]
fn large_ambient_dimension_is_refused() {
    let a = IntegerMatrix::identity(5);
    assert!(cuplength_lower_bound(&a, 4).is_ok());
    let err = cuplength_lower_bound(&a, 5).unwrap_err();
    assert!(matches!(err, Error::OracleTooLarge { dim: 25, limit } if limit == MAX_AMBIENT_DIM));
}
