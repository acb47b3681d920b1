//! Values pinned directly by a theorem, with their hypotheses checked.

use serde::{Deserialize, Serialize};

use super::value::{Bound, InvariantValue};
use crate::error::{Error, Result};
use crate::groups::{AbelianHom, FgAbelianGroup, FreeHom, SurfaceClassification};

pub fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::input(format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

fn require_epi(h: &AbelianHom) -> Result<()> {
    if h.is_epimorphism()? {
        Ok(())
    } else {
        Err(Error::hypothesis(
            "epimorphism",
            format!("{} -> {} is not onto", h.source(), h.target()),
        ))
    }
}

/// `cd` of an epimorphism of finitely generated abelian groups: ∞ when
/// some torsion element survives, else `rank(Λ) + k(T(Λ))`.
pub fn cd_of_abelian_epi(h: &AbelianHom) -> Result<InvariantValue> {
    require_epi(h)?;
    if h.torsion_image_is_nonzero() {
        return Ok(InvariantValue::infinite());
    }
    let t = h.target();
    Ok(InvariantValue::exact(
        (t.free_rank() + t.smith_normal_number()) as u64,
    ))
}

/// `TC_r = (r−1)·cd` for epimorphisms of finitely generated abelian groups.
pub fn tcr_of_abelian_epi(h: &AbelianHom, r: u32) -> Result<InvariantValue> {
    check_r(r)?;
    Ok(cd_of_abelian_epi(h)?.times(u64::from(r - 1)))
}

fn require_free_epi(h: &FreeHom) -> Result<()> {
    if !h.is_nonzero() {
        return Err(Error::hypothesis(
            "nonzero",
            "every generator maps to the identity",
        ));
    }
    if !h.is_surjective() {
        return Err(Error::hypothesis(
            "surjective",
            format!("images do not generate F_{}", h.target().rank()),
        ));
    }
    Ok(())
}

/// `cat = cd = 1` for nonzero epimorphisms of free groups.
pub fn cat_cd_of_free_epi(h: &FreeHom) -> Result<InvariantValue> {
    require_free_epi(h)?;
    Ok(InvariantValue::exact(1))
}

/// `TC_r` of a nonzero free epimorphism: `r − 1` onto ℤ, `r` onto `F_m`,
/// `m > 1`.
pub fn tcr_of_free_epi(h: &FreeHom, r: u32) -> Result<InvariantValue> {
    check_r(r)?;
    require_free_epi(h)?;
    let r = u64::from(r);
    Ok(InvariantValue::exact(if h.target().rank() == 1 {
        r - 1
    } else {
        r
    }))
}

/// `TC_r` of a finitely generated abelian group.
pub fn tcr_of_abelian_group(g: &FgAbelianGroup, r: u32) -> InvariantValue {
    if g.is_torsion_free() {
        InvariantValue::exact(u64::from(r - 1) * g.free_rank() as u64)
    } else {
        InvariantValue::infinite()
    }
}

/// `TC_r` of an injection into an abelian group equals `TC_r` of its
/// source; here the source is finitely generated abelian.
pub fn tcr_injective_into_abelian(source: &FgAbelianGroup, r: u32) -> InvariantValue {
    tcr_of_abelian_group(source, r)
}

/// As [`tcr_injective_into_abelian`], after checking injectivity.
pub fn tcr_of_abelian_injection(h: &AbelianHom, r: u32) -> Result<InvariantValue> {
    check_r(r)?;
    if !h.is_injective()? {
        return Err(Error::hypothesis(
            "injective",
            format!("{} -> {} has a kernel", h.source(), h.target()),
        ));
    }
    Ok(tcr_injective_into_abelian(h.source(), r))
}

/// Invariants of a surface-group epimorphism under a known classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceBounds {
    pub cat: InvariantValue,
    pub cd: InvariantValue,
    pub tc_r: InvariantValue,
}

/// `None` for an unknown classification.
pub fn surface_bounds(classification: SurfaceClassification, r: u32) -> Option<SurfaceBounds> {
    let c = match classification {
        SurfaceClassification::FactorsThroughFree => 1,
        SurfaceClassification::DoesNotFactor => 2,
        SurfaceClassification::Unknown => return None,
    };
    let r = u64::from(r);
    Some(SurfaceBounds {
        cat: InvariantValue::exact(c),
        cd: InvariantValue::exact(c),
        tc_r: interval(c * (r - 1), Bound::Finite(c * r)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NilpotentFlavor {
    /// Epimorphism of finitely generated torsion-free nilpotent groups.
    Nilpotent,
    /// Epimorphism `ℤ ⋉ Γ → ℤ ⋉ Λ` of torsion-free almost nilpotent groups
    /// restricting to the identity on ℤ.
    AlmostNilpotent,
}

/// What the caller asserts about a nilpotent-type epimorphism; `cd_target`
/// is `cd(Λ)` of the nilpotent part of the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NilpotentFacts {
    pub cd_target: u64,
    pub flavor: NilpotentFlavor,
}

impl NilpotentFacts {
    /// `cat = cd` of the homomorphism.
    pub fn cat_cd(&self) -> u64 {
        match self.flavor {
            NilpotentFlavor::Nilpotent => self.cd_target,
            NilpotentFlavor::AlmostNilpotent => self.cd_target.saturating_add(1),
        }
    }
}

pub fn nilpotent_tcr_bounds(facts: &NilpotentFacts, r: u32) -> Result<InvariantValue> {
    check_r(r)?;
    let c = Bound::Finite(facts.cat_cd());
    Ok(interval_b(c.times(u64::from(r - 1)), c.times(u64::from(r))))
}

fn interval(lo: u64, hi: Bound) -> InvariantValue {
    interval_b(Bound::Finite(lo), hi)
}

fn interval_b(lo: Bound, hi: Bound) -> InvariantValue {
    InvariantValue::between(lo, hi).expect("lo <= hi by construction")
}
