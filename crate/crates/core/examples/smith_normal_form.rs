//! Smith Normal Form of a small integer matrix, with the unimodular
//! transforms that produce it.

use tcrlab::linalg::{cokernel_invariants, smith_normal_form, IntegerMatrix};

fn main() {
    let a = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let snf = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("D =\n{}", snf.d);
    println!(
        "invariant factors: {:?}",
        snf.invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    let check = snf.u.mul(&a).unwrap().mul(&snf.v).unwrap();
    assert_eq!(check, snf.d);
    println!(
        "U and V unimodular: {} {}",
        snf.u.is_unimodular(),
        snf.v.is_unimodular()
    );

    let coker = cokernel_invariants(&a);
    println!(
        "cokernel: free rank {}, torsion {:?}",
        coker.free_rank, coker.torsion_factors
    );
}
