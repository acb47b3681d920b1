use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    cokernel_invariants, integer_kernel, lattice_contains, smith_normal_form, solve_with,
    AbelianInvariants, IntegerMatrix,
};

/// Finitely generated abelian group `ℤ^free_rank ⊕ ℤ_{n₁} ⊕ … ⊕ ℤ_{n_k}` in
/// invariant-factor normal form.
///
/// Generators are ordered free-first: indices `0..free_rank` are the free
/// generators, the remaining ones the cyclic torsion generators in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion_factors: Vec<BigInt>) -> Result<Self> {
        for (i, f) in torsion_factors.iter().enumerate() {
            if *f < BigInt::from(2) {
                return Err(Error::input(format!(
                    "torsion factor {f} is smaller than 2"
                )));
            }
            if let Some(next) = torsion_factors.get(i + 1) {
                if !next.is_multiple_of(f) {
                    return Err(Error::input(format!(
                        "torsion factors must form a divisibility chain: {f} does not divide {next}"
                    )));
                }
            }
        }
        Ok(FgAbelianGroup {
            free_rank,
            torsion_factors,
        })
    }

    pub fn with_torsion(free_rank: usize, torsion: &[i64]) -> Result<Self> {
        Self::new(
            free_rank,
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion_factors: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_factors(&self) -> &[BigInt] {
        &self.torsion_factors
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion_factors.len()
    }

    /// Number of invariant factors of the torsion subgroup.
    pub fn smith_normal_number(&self) -> usize {
        self.torsion_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_factors.is_empty()
    }

    /// Canonical relation matrix: one column `nᵢ·e_{free_rank+i}` per torsion
    /// generator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let g = self.generator_count();
        let mut m = IntegerMatrix::zeros(g, self.torsion_factors.len());
        for (j, f) in self.torsion_factors.iter().enumerate() {
            m.set(self.free_rank + j, j, f.clone());
        }
        m
    }

    /// Order of generator `i`, `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.free_rank)
            .and_then(|j| self.torsion_factors.get(j))
    }
}

impl From<AbelianInvariants> for FgAbelianGroup {
    fn from(inv: AbelianInvariants) -> Self {
        FgAbelianGroup {
            free_rank: inv.free_rank,
            torsion_factors: inv.torsion_factors,
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion_factors.iter().map(|t| format!("Z_{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn smith_normal_number(g: &FgAbelianGroup) -> usize {
    g.smith_normal_number()
}

/// Normal form of `ℤ^generators / (column span of relations)`.
pub fn normalize_presentation(
    generators: usize,
    relations: &IntegerMatrix,
) -> Result<FgAbelianGroup> {
    if relations.rows() != generators {
        return Err(Error::Dimension(format!(
            "relation matrix has {} rows for {generators} generators",
            relations.rows()
        )));
    }
    Ok(cokernel_invariants(relations).into())
}

/// A presented group together with the change of basis to its normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPresentation {
    pub group: FgAbelianGroup,
    /// `normal generators × presentation generators`: coordinates of a
    /// presentation vector in the normal-form generators.
    pub to_normal: IntegerMatrix,
    /// `presentation generators × normal generators`: each column is a
    /// presentation vector representing one normal-form generator.
    pub from_normal: IntegerMatrix,
}

pub fn normalize_with_basis(
    generators: usize,
    relations: &IntegerMatrix,
) -> Result<NormalizedPresentation> {
    let group = normalize_presentation(generators, relations)?;
    let snf = smith_normal_form(relations);
    let k = snf.rank();
    // SNF coordinates are [factors 0..k | free k..g]; normal form wants
    // free coordinates first and drops unit factors.
    let order: Vec<usize> = (k..generators)
        .chain((0..k).filter(|&i| !snf.invariant_factors[i].is_one()))
        .collect();
    let to_normal = snf.u.select_rows(&order);

    let u = &snf.u;
    let u_snf = smith_normal_form(u);
    let mut inverse = IntegerMatrix::zeros(generators, generators);
    for j in 0..generators {
        let mut e = vec![BigInt::zero(); generators];
        e[j] = BigInt::one();
        let col = solve_with(&u_snf, u, &e).expect("u is unimodular");
        for (i, x) in col.into_iter().enumerate() {
            inverse.set(i, j, x);
        }
    }
    let from_normal = inverse.select_columns(&order);
    Ok(NormalizedPresentation {
        group,
        to_normal,
        from_normal,
    })
}

/// Homomorphism of finitely generated abelian groups, given by its matrix
/// on normal-form generators (`target generators × source generators`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntegerMatrix,
}

impl AbelianHom {
    /// Checks shapes only; use [`AbelianHom::check_well_defined`] for the
    /// relation condition.
    pub fn new(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but the homomorphism {source} -> {target} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        Ok(AbelianHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        let n = group.generator_count();
        AbelianHom {
            source: group.clone(),
            target: group,
            matrix: IntegerMatrix::identity(n),
        }
    }

    /// Builds the homomorphism induced by `matrix` between two presented
    /// groups, re-expressed on normal-form generators.
    pub fn from_presentations(
        source_generators: usize,
        source_relations: &IntegerMatrix,
        target_generators: usize,
        target_relations: &IntegerMatrix,
        matrix: &IntegerMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target_generators || matrix.cols() != source_generators {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} for presentations with {target_generators} and {source_generators} generators",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let src = normalize_with_basis(source_generators, source_relations)?;
        let tgt = normalize_with_basis(target_generators, target_relations)?;
        let m = tgt.to_normal.mul(matrix)?.mul(&src.from_normal)?;
        AbelianHom::new(src.group, tgt.group, m)
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    fn image_vanishes(&self, v: &[BigInt]) -> bool {
        lattice_contains(&self.target.relation_matrix(), v)
            .expect("vector has target length")
            .is_some()
    }

    /// True iff each torsion generator of order `d` is sent to an element
    /// killed by `d`, i.e. `d · column` lies in the target relation lattice.
    pub fn check_well_defined(&self) -> bool {
        (self.source.free_rank..self.source.generator_count()).all(|i| {
            let d = self.source.generator_order(i).expect("torsion generator");
            let v: Vec<BigInt> = self.matrix.column(i).iter().map(|x| x * d).collect();
            self.image_vanishes(&v)
        })
    }

    fn require_well_defined(&self) -> Result<()> {
        if self.check_well_defined() {
            Ok(())
        } else {
            Err(Error::hypothesis(
                "well_defined",
                format!(
                    "matrix {} does not define a homomorphism {} -> {}",
                    self.matrix, self.source, self.target
                ),
            ))
        }
    }

    /// Images of the source generators together with the target relations
    /// generate the whole target lattice.
    pub fn is_epimorphism(&self) -> Result<bool> {
        self.require_well_defined()?;
        let block = self.matrix.hstack(&self.target.relation_matrix())?;
        let coker = cokernel_invariants(&block);
        Ok(coker.free_rank == 0 && coker.torsion_factors.is_empty())
    }

    /// Some torsion generator of the source maps to a nonzero element.
    pub fn torsion_image_is_nonzero(&self) -> bool {
        (self.source.free_rank..self.source.generator_count())
            .any(|i| !self.image_vanishes(&self.matrix.column(i)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.generator_count()).all(|i| self.image_vanishes(&self.matrix.column(i)))
    }

    /// Kernel test: every `x` with `matrix·x` in the target relation lattice
    /// must already lie in the source relation lattice.
    pub fn is_injective(&self) -> Result<bool> {
        self.require_well_defined()?;
        let gs = self.source.generator_count();
        let block = self.matrix.hstack(&self.target.relation_matrix())?;
        let kernel = integer_kernel(&block);
        let src_rel = self.source.relation_matrix();
        for j in 0..kernel.cols() {
            let x: Vec<BigInt> = kernel.column(j).into_iter().take(gs).collect();
            if lattice_contains(&src_rel, &x)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &AbelianHom) -> Result<AbelianHom> {
        if self.target != after.source {
            return Err(Error::Dimension(format!(
                "cannot compose: {} is not {}",
                self.target, after.source
            )));
        }
        AbelianHom::new(
            self.source.clone(),
            after.target.clone(),
            after.matrix.mul(&self.matrix)?,
        )
    }

    /// Restriction `ℤ^n → Λ` to the free part of the source, through which
    /// the homomorphism factors when the torsion image vanishes.
    pub fn restrict_to_free_part(&self) -> AbelianHom {
        let cols: Vec<usize> = (0..self.source.free_rank).collect();
        AbelianHom {
            source: FgAbelianGroup::free(self.source.free_rank),
            target: self.target.clone(),
            matrix: self.matrix.select_columns(&cols),
        }
    }

    /// Block of the matrix between the free parts of source and target.
    pub fn free_block(&self) -> IntegerMatrix {
        let rows: Vec<usize> = (0..self.target.free_rank).collect();
        let cols: Vec<usize> = (0..self.source.free_rank).collect();
        self.matrix.select_rows(&rows).select_columns(&cols)
    }

    /// Canonical projection `ℤ^n ↠ target` sending generator `i` to
    /// generator `i`; needs `n` at least the target generator count.
    pub fn canonical_projection(n: usize, target: FgAbelianGroup) -> Result<Self> {
        let g = target.generator_count();
        if n < g {
            return Err(Error::input(format!(
                "cannot project Z^{n} onto {target} with {g} generators"
            )));
        }
        let mut m = IntegerMatrix::zeros(g, n);
        for i in 0..g {
            m.set(i, i, BigInt::one());
        }
        AbelianHom::new(FgAbelianGroup::free(n), target, m)
    }
}

pub fn check_well_defined(h: &AbelianHom) -> bool {
    h.check_well_defined()
}

pub fn is_epimorphism_abelian(h: &AbelianHom) -> Result<bool> {
    h.is_epimorphism()
}

pub fn torsion_image_is_nonzero(h: &AbelianHom) -> bool {
    h.torsion_image_is_nonzero()
}

/// Reduces each entry of a torsion coordinate modulo its order; useful for
/// comparing matrices of the same homomorphism.
pub fn reduce_matrix(h: &AbelianHom) -> IntegerMatrix {
    let mut m = h.matrix.clone();
    for i in 0..m.rows() {
        if let Some(d) = h.target.generator_order(i) {
            for j in 0..m.cols() {
                let x = m.get(i, j).mod_floor(d);
                m.set(i, j, x);
            }
        }
    }
    m
}
