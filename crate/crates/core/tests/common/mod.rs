//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls the library's own reduction code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcrlab::linalg::IntegerMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    IntegerMatrix::from_i64(rows, cols, &entries).unwrap()
}

pub fn to_rational_rows(a: &IntegerMatrix) -> Vec<Vec<BigRational>> {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn integer_rank(a: &IntegerMatrix) -> usize {
    rational_rank(&to_rational_rows(a))
}

/// Determinant by cofactor expansion. Fine up to 8×8.
pub fn determinant(a: &IntegerMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols());
    let rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let cols: Vec<usize> = (0..a.cols()).collect();
    cofactor(&rows, 0, &cols)
}

fn cofactor(rows: &[Vec<BigInt>], r: usize, cols: &[usize]) -> BigInt {
    if cols.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for (k, &c) in cols.iter().enumerate() {
        let x = &rows[r][c];
        if x.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
        let term = x * cofactor(rows, r + 1, &rest);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k × k` minors; the product of the first `k` invariant
/// factors.
pub fn minor_gcd(a: &IntegerMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            let sub = a.select_rows(&rows).select_columns(&cols);
            g = g.gcd(&determinant(&sub));
        }
    }
    g
}

/// `a : ℤ^cols → ℤ^rows` is onto exactly when its maximal minors are
/// coprime.
pub fn is_surjective_matrix(a: &IntegerMatrix) -> bool {
    a.rows() <= a.cols() && minor_gcd(a, a.rows()).abs().is_one()
}

/// Random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m.set(0, 0, BigInt::from(-1));
        }
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let mut e = IntegerMatrix::identity(n);
        match rng.gen_range(0..3) {
            0 => e.set(i, j, BigInt::from(rng.gen_range(-3..=3))),
            1 => {
                e.set(i, i, BigInt::zero());
                e.set(j, j, BigInt::zero());
                e.set(i, j, BigInt::one());
                e.set(j, i, BigInt::one());
            }
            _ => e.set(i, i, BigInt::from(-1)),
        }
        m = e.mul(&m).unwrap();
    }
    m
}

/// All integer matrices of the given shape with entries in `[-b, b]`.
pub fn all_matrices(rows: usize, cols: usize, b: i64) -> impl Iterator<Item = IntegerMatrix> {
    let width = (2 * b + 1) as u64;
    let count = width.pow((rows * cols) as u32);
    (0..count).map(move |mut code| {
        let entries: Vec<i64> = (0..rows * cols)
            .map(|_| {
                let d = (code % width) as i64 - b;
                code /= width;
                d
            })
            .collect();
        IntegerMatrix::from_i64(rows, cols, &entries).unwrap()
    })
}
