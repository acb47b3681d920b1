//! Zero-divisor cup-length lower bound for homomorphisms of free abelian
//! groups.
//!
//! The classifying spaces are tori, whose rational cohomology is the
//! exterior algebra on degree-one classes. Degree-one classes of `(Tⁿ)^r`
//! that lie in the image of the pullback and vanish on the diagonal span a
//! subspace `W`; a wedge of degree-one classes is nonzero exactly when they
//! are linearly independent, so `dim W` is the longest nonzero product of
//! such classes and bounds `TC_r` from below.

mod multivector;

pub use multivector::{wedge_product, MultiVector};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntegerMatrix, RationalMatrix};

/// Largest ambient dimension `n·r` the oracle accepts.
pub const MAX_AMBIENT_DIM: usize = 24;

/// Subspace of `ℚ^ambient_dim` given by a linearly independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<BigRational>>,
}

impl RationalSubspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<BigRational>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Dimension(format!(
                "basis vectors must have length {ambient_dim}"
            )));
        }
        if RationalMatrix::from_columns(ambient_dim, &basis).rank() != basis.len() {
            return Err(Error::input("basis vectors are linearly dependent"));
        }
        Ok(RationalSubspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut cols = self.basis.clone();
        cols.push(v.to_vec());
        RationalMatrix::from_columns(self.ambient_dim, &cols).rank() == self.basis.len()
    }
}

/// Pullback on first rational cohomology of `φ: ℤⁿ → ℤᵐ` given by the
/// `m × n` matrix `a`: the transpose of `a`.
pub fn pullback_on_h1(a: &IntegerMatrix) -> RationalMatrix {
    RationalMatrix::from(a).transpose()
}

fn check_dims(a: &IntegerMatrix, r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::input(format!("r must be at least 2, got {r}")));
    }
    let dim = a.cols() * r;
    if dim > MAX_AMBIENT_DIM {
        return Err(Error::OracleTooLarge {
            dim,
            limit: MAX_AMBIENT_DIM,
        });
    }
    Ok(())
}

/// Degree-one classes `(α₁,…,α_r)` of `(Tⁿ)^r` with every `αᵢ` pulled back
/// along `a` and `Σ αᵢ = 0`. Coordinates of factor `i` occupy positions
/// `i·n .. (i+1)·n`.
pub fn zero_divisor_subspace(a: &IntegerMatrix, r: usize) -> Result<RationalSubspace> {
    check_dims(a, r)?;
    let pullback = pullback_on_h1(a);
    let (n, m) = (pullback.rows(), pullback.cols());

    // Σ pullback·βᵢ = 0 over (β₁,…,β_r) ∈ (ℚᵐ)^r
    let mut sum = RationalMatrix::zeros(n, m * r);
    for block in 0..r {
        for i in 0..n {
            for j in 0..m {
                sum.set(i, block * m + j, pullback.get(i, j).clone());
            }
        }
    }
    let images: Vec<Vec<BigRational>> = sum
        .kernel()
        .into_iter()
        .map(|beta| {
            beta.chunks(m.max(1))
                .take(r)
                .flat_map(|b| {
                    if m == 0 {
                        vec![BigRational::zero(); n]
                    } else {
                        pullback.mul_vec(b)
                    }
                })
                .collect()
        })
        .collect();
    // Echelon basis scaled to primitive integer vectors: sparse and
    // integral, so the certificate wedge stays cheap.
    let basis = RationalMatrix::from_columns(n * r, &images)
        .transpose()
        .row_space_basis()
        .into_iter()
        .map(primitive)
        .collect();
    Ok(RationalSubspace {
        ambient_dim: n * r,
        basis,
    })
}

/// Positive multiple of `v` with coprime integer entries.
fn primitive(v: Vec<BigRational>) -> Vec<BigRational> {
    let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let nums: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = nums.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    nums.into_iter()
        .map(|x| BigRational::from_integer(x / &g))
        .collect()
}

/// Lower bound with its certificate: the wedge of the basis of `W`, which
/// is a nonzero element of degree `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupLengthBound {
    pub value: usize,
    pub subspace: RationalSubspace,
    pub certificate: MultiVector,
}

pub fn cuplength_lower_bound(a: &IntegerMatrix, r: usize) -> Result<CupLengthBound> {
    let subspace = zero_divisor_subspace(a, r)?;
    let ambient = subspace.ambient_dim();
    let certificate = subspace
        .basis()
        .iter()
        .fold(MultiVector::one(ambient), |acc, v| {
            acc.wedge(&MultiVector::from_degree_one(v))
        });
    debug_assert!(!certificate.is_zero());
    debug_assert_eq!(certificate.degree(), Some(subspace.dim()));
    Ok(CupLengthBound {
        value: subspace.dim(),
        subspace,
        certificate,
    })
}
