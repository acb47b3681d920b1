use std::fmt;

use num_bigint::BigInt;

use super::stallings::StallingsGraph;
use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;

/// Free group on `rank ≥ 1` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::input("free group rank must be at least 1"));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Freely reduced word. Letter `k > 0` is generator `k` (1-based), `-k` its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    /// Exponent sum of each generator `1..=rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for &l in &self.0 {
            sums[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let g = l.unsigned_abs();
            if g <= 26 {
                write!(f, "{}", (b'a' + (g - 1) as u8) as char)?;
            } else {
                write!(f, "x{g}")?;
            }
            if l < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Homomorphism `F_n → F_m` given by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeHom {
    source: FreeGroup,
    target: FreeGroup,
    images: Vec<Word>,
}

impl FreeHom {
    pub fn new(source: FreeGroup, target: FreeGroup, images: Vec<Vec<i32>>) -> Result<Self> {
        if images.len() != source.rank {
            return Err(Error::Dimension(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank
            )));
        }
        for (i, w) in images.iter().enumerate() {
            for &l in w {
                if l == 0 || l.unsigned_abs() as usize > target.rank {
                    return Err(Error::input(format!(
                        "image {i} uses letter {l}, outside 1..={} (up to sign)",
                        target.rank
                    )));
                }
            }
        }
        Ok(FreeHom {
            source,
            target,
            images: images.into_iter().map(Word::new).collect(),
        })
    }

    pub fn identity(group: FreeGroup) -> Self {
        FreeHom {
            source: group,
            target: group,
            images: (1..=group.rank as i32).map(|g| Word(vec![g])).collect(),
        }
    }

    pub fn source(&self) -> FreeGroup {
        self.source
    }

    pub fn target(&self) -> FreeGroup {
        self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_nonzero(&self) -> bool {
        self.images.iter().any(|w| !w.is_empty())
    }

    /// Induced map `ℤ^n → ℤ^m` on abelianizations.
    pub fn abelianization(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.target.rank, self.source.rank);
        for (j, w) in self.images.iter().enumerate() {
            for (i, s) in w.exponent_sums(self.target.rank).into_iter().enumerate() {
                m.set(i, j, BigInt::from(s));
            }
        }
        m
    }

    /// Folded core graph of the subgroup generated by the images.
    pub fn fold(&self) -> StallingsGraph {
        StallingsGraph::wedge_of_loops(&self.images).fold()
    }

    /// The images generate the target iff the folded graph is the rose with
    /// one petal per target generator.
    pub fn is_surjective(&self) -> bool {
        self.fold().is_rose(self.target.rank)
    }
}

pub fn fold(h: &FreeHom) -> StallingsGraph {
    h.fold()
}

pub fn is_surjective_free(h: &FreeHom) -> bool {
    h.is_surjective()
}
