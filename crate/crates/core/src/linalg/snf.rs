use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;
use crate::error::{Error, Result};

/// Smith Normal Form `u · a · v = d` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Nonzero diagonal entries of `d`, in order. Units are kept.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Free rank and torsion of a finitely generated abelian group. Torsion
/// factors are all at least 2 and form a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion_factors: Vec<BigInt>,
}

/// Position of the nonzero entry of least absolute value in the block
/// `d[t.., t..]`, scanning row by row so ties resolve deterministically.
fn min_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                let unit = a.is_one();
                best = Some(((i, j), a));
                if unit {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        while let Some((pi, pj)) = min_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut remainder = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                remainder |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                remainder |= !d.get(t, j).is_zero();
            }
            if remainder {
                continue;
            }

            // Row and column are clear; the pivot must divide the rest.
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_zero() {
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..m.min(n))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SnfDecomposition {
        u,
        d,
        v,
        invariant_factors,
    }
}

pub fn rank(a: &IntegerMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Invariants of `ℤ^g / (column span of relations)`, where `g` is the row
/// count of `relations`.
pub fn cokernel_invariants(relations: &IntegerMatrix) -> AbelianInvariants {
    let snf = smith_normal_form(relations);
    AbelianInvariants {
        free_rank: relations.rows() - snf.rank(),
        torsion_factors: snf
            .invariant_factors
            .into_iter()
            .filter(|f| !f.is_one())
            .collect(),
    }
}

/// Decides whether `b` lies in the integer column span of `a`, returning a
/// witness `x` with `a · x = b` when it does.
pub fn lattice_contains(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, a, b))
}

/// Same as [`lattice_contains`] but reusing a decomposition of `a`.
pub(crate) fn solve_with(
    snf: &SnfDecomposition,
    a: &IntegerMatrix,
    b: &[BigInt],
) -> Option<Vec<BigInt>> {
    // a·x = b  <=>  d·y = u·b  with  x = v·y
    let c = snf.u.mul_vec(b).expect("u is square over the rows of a");
    let k = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < k {
            let (q, r) = ci.div_rem(&snf.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    let x = snf
        .v
        .mul_vec(&y)
        .expect("v is square over the columns of a");
    debug_assert_eq!(a.mul_vec(&x).unwrap(), b);
    Some(x)
}

/// Basis of the integer kernel `{x : a·x = 0}` as the columns of the result.
pub fn integer_kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    let cols: Vec<usize> = (snf.rank()..a.cols()).collect();
    snf.v.select_columns(&cols)
}
