mod common;

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcrlab::linalg::{
    cokernel_invariants, integer_kernel, lattice_contains, rank, smith_normal_form, IntegerMatrix,
};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntegerMatrix::from_i64(r, c, &e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_reconstructs_with_unimodular_transforms(a in matrix(6, 6, 50)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(determinant(&s.u).abs() == BigInt::from(1));
        prop_assert!(determinant(&s.v).abs() == BigInt::from(1));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[0].is_positive() && w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn invariant_factors_match_minor_gcds(a in matrix(4, 4, 9)) {
        // d_1 · … · d_k is the gcd of the k × k minors.
        let s = smith_normal_form(&a);
        let mut product = BigInt::from(1);
        for (k, f) in s.invariant_factors.iter().enumerate() {
            product *= f;
            prop_assert_eq!(&product, &minor_gcd(&a, k + 1));
        }
        prop_assert!(minor_gcd(&a, s.rank() + 1).is_zero());
    }

    #[test]
    fn rank_agrees_with_gaussian_elimination(a in matrix(7, 7, 20)) {
        prop_assert_eq!(rank(&a), integer_rank(&a));
        prop_assert_eq!(smith_normal_form(&a).rank(), integer_rank(&a));
    }

    #[test]
    fn cokernel_is_invariant_under_unimodular_change(a in matrix(5, 5, 12), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_unimodular(&mut rng, a.rows(), 8);
        let q = random_unimodular(&mut rng, a.cols(), 8);
        let b = p.mul(&a).unwrap().mul(&q).unwrap();
        prop_assert_eq!(cokernel_invariants(&a), cokernel_invariants(&b));
    }

    #[test]
    fn image_vectors_are_in_the_lattice(a in matrix(5, 5, 20), x in proptest::collection::vec(-30i64..=30, 5)) {
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x).unwrap();
        let witness = lattice_contains(&a, &b).unwrap();
        prop_assert!(witness.is_some());
        prop_assert_eq!(a.mul_vec(&witness.unwrap()).unwrap(), b);
    }

    #[test]
    fn kernel_basis_is_annihilated_and_complete(a in matrix(5, 6, 10)) {
        let k = integer_kernel(&a);
        prop_assert_eq!(k.cols(), a.cols() - integer_rank(&a));
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(integer_rank(&k), k.cols());
    }
}

#[test]
fn vectors_off_the_lattice_are_rejected() {
    let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
    let b = [BigInt::from(1), BigInt::from(3)];
    assert_eq!(lattice_contains(&a, &b).unwrap(), None);
    assert!(lattice_contains(&a, &[BigInt::from(1)]).is_err());
}

#[test]
fn empty_shapes() {
    let a = IntegerMatrix::zeros(3, 0);
    let s = smith_normal_form(&a);
    assert_eq!(s.u, IntegerMatrix::identity(3));
    assert_eq!((s.v.rows(), s.v.cols()), (0, 0));
    assert_eq!(cokernel_invariants(&a).free_rank, 3);
    let b = IntegerMatrix::zeros(0, 2);
    assert_eq!(integer_kernel(&b).cols(), 2);
}
