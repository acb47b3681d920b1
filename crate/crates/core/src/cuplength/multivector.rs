use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Element of the exterior algebra over ℚ on `generator_count` generators.
///
/// Each term is keyed by the bitmask of the generators in its blade; blades
/// are oriented by ascending generator index. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVector {
    generator_count: usize,
    terms: BTreeMap<u64, BigRational>,
}

impl MultiVector {
    pub const MAX_GENERATORS: usize = 63;

    pub fn zero(generator_count: usize) -> Self {
        assert!(
            generator_count <= Self::MAX_GENERATORS,
            "too many generators"
        );
        MultiVector {
            generator_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(generator_count: usize, c: BigRational) -> Self {
        let mut m = Self::zero(generator_count);
        m.insert(0, c);
        m
    }

    pub fn one(generator_count: usize) -> Self {
        Self::scalar(generator_count, BigRational::one())
    }

    /// The generator `e_i`.
    pub fn generator(generator_count: usize, i: usize) -> Self {
        assert!(i < generator_count, "generator index out of range");
        let mut m = Self::zero(generator_count);
        m.insert(1 << i, BigRational::one());
        m
    }

    /// Degree-one element `Σ cᵢ eᵢ`.
    pub fn from_degree_one(coefficients: &[BigRational]) -> Self {
        let mut m = Self::zero(coefficients.len());
        for (i, c) in coefficients.iter().enumerate() {
            m.insert(1 << i, c.clone());
        }
        m
    }

    /// Builds from raw terms, dropping zeros and summing duplicates.
    pub fn from_terms(
        generator_count: usize,
        terms: impl IntoIterator<Item = (u64, BigRational)>,
    ) -> Self {
        let mut m = Self::zero(generator_count);
        for (mask, c) in terms {
            assert!(mask >> generator_count == 0, "blade outside the generators");
            m.insert(mask, c);
        }
        m
    }

    fn insert(&mut self, mask: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; `None` for zero or mixed-degree elements.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &MultiVector) -> MultiVector {
        assert_eq!(
            self.generator_count, other.generator_count,
            "generator count"
        );
        let mut out = self.clone();
        for (&mask, c) in &other.terms {
            out.insert(mask, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiVector {
        let mut out = Self::zero(self.generator_count);
        for (&mask, x) in &self.terms {
            out.insert(mask, x * c);
        }
        out
    }

    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        assert_eq!(
            self.generator_count, other.generator_count,
            "generator count"
        );
        if let Some(out) = self.wedge_small(other) {
            return out;
        }
        let mut out = Self::zero(self.generator_count);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if let Some(negative) = blade_sign(a, b) {
                    let p = x * y;
                    out.insert(a | b, if negative { -p } else { p });
                }
            }
        }
        out
    }
}

impl MultiVector {
    fn small_integer_terms(&self) -> Option<Vec<(u64, i64)>> {
        self.terms
            .iter()
            .map(|(&m, c)| {
                c.is_integer()
                    .then(|| c.numer().to_i64())
                    .flatten()
                    .map(|c| (m, c))
            })
            .collect()
    }

    /// Same product computed in machine integers; `None` when a
    /// coefficient is not a small integer or an intermediate overflows.
    fn wedge_small(&self, other: &MultiVector) -> Option<MultiVector> {
        let (xs, ys) = (self.small_integer_terms()?, other.small_integer_terms()?);
        let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
        for &(a, x) in &xs {
            for &(b, y) in &ys {
                if let Some(negative) = blade_sign(a, b) {
                    let p = x.checked_mul(y)?;
                    let e = acc.entry(a | b).or_insert(0);
                    *e = if negative {
                        e.checked_sub(p)?
                    } else {
                        e.checked_add(p)?
                    };
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (m, BigRational::from_integer(c.into())))
            .collect();
        Some(MultiVector {
            generator_count: self.generator_count,
            terms,
        })
    }
}

/// Sign of `e_A ∧ e_B` relative to the ascending blade `e_{A∪B}`: `None`
/// when the blades share a generator, otherwise whether the number of
/// inversions (a ∈ A, b ∈ B, a > b) is odd.
fn blade_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        // generators of A strictly above this one
        inversions += (a >> bit).count_ones();
    }
    Some(inversions % 2 == 1)
}

pub fn wedge_product(u: &MultiVector, v: &MultiVector) -> MultiVector {
    u.wedge(v)
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mask, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if *mask == 0 {
                continue;
            }
            write!(f, "e")?;
            let idx: Vec<String> = (0..self.generator_count)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect();
            write!(f, "{}", idx.join("."))?;
        }
        Ok(())
    }
}
