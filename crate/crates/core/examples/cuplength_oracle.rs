//! Zero-divisor cup-length lower bounds for maps of tori.

use tcrlab::cuplength::{cuplength_lower_bound, zero_divisor_subspace};
use tcrlab::linalg::IntegerMatrix;

fn main() {
    let sum = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
    let id2 = IntegerMatrix::identity(2);
    let zero = IntegerMatrix::zeros(2, 3);
    for (name, a) in [
        ("Z^2 -> Z, (x, y) -> x + y", &sum),
        ("identity of Z^2", &id2),
        ("zero map Z^3 -> Z^2", &zero),
    ] {
        for r in 2..=3 {
            let w = zero_divisor_subspace(a, r).unwrap();
            let bound = cuplength_lower_bound(a, r).unwrap();
            println!(
                "{name}, r = {r}: dim W = {}, TC_r >= {}",
                w.dim(),
                bound.value
            );
            if r == 2 {
                println!("  certificate: {}", bound.certificate);
            }
        }
    }
}
