use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Every inference the engine may record. Propagation rules carry ids
/// `R1`–`R14` and `EG`; closed forms are results that pin a value directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Invariant of a group or of the trivial map, taken as known.
    Base,
    User,
    /// `cat(f) ≤ cat(f^k)`, `cat(f^{r-1}) ≤ TC_r(f) ≤ cat(f^r)`.
    R1,
    /// `TC_r(f) ≤ min{TC_r(X), TC_r(Y)}`.
    R2,
    /// `TC_r(g∘h) ≤ TC_r(h)`.
    R3,
    /// `cd ≤ cat`.
    R4,
    /// `cd(f^k) = k·cd(f)`.
    R5,
    /// `cat(f) ≤ min{cat(X), cat(Y)}`.
    R6,
    /// `cat(f^k) ≤ k·cat(f)`.
    R7,
    /// `TC_r(f) = cat(f^{r-1})` when the source is a topological group.
    R8,
    /// `cat(g∘h) ≤ cat(h)`.
    R9,
    /// A nonzero epimorphism from a nontrivial group has `cd ≥ 1`.
    R10,
    /// Nonzero image of torsion forces `cd = ∞`.
    R11,
    /// Retraction onto the free part preserves `TC_r` and `cd`.
    R12,
    /// `TC_r` of an injection into an abelian group.
    R13,
    /// Zero-divisor cup-length lower bound.
    R14,
    /// `cat(f^k) = cd(f^k)` for abelian homomorphisms.
    EilenbergGanea,
    AbelianCd,
    AbelianTc,
    FreeCatCd,
    FreeTc,
    SurfaceCatCd,
    SurfaceTc,
    NilpotentCatCd,
    NilpotentTc,
    AlmostNilpotentCatCd,
    AlmostNilpotentTc,
    /// Hull of the branches of a case split.
    Hull,
    /// No rule bounds the fact.
    Unconstrained,
}

impl Rule {
    pub const ALL: [Rule; 29] = {
        use Rule::*;
        [
            Base,
            User,
            R1,
            R2,
            R3,
            R4,
            R5,
            R6,
            R7,
            R8,
            R9,
            R10,
            R11,
            R12,
            R13,
            R14,
            EilenbergGanea,
            AbelianCd,
            AbelianTc,
            FreeCatCd,
            FreeTc,
            SurfaceCatCd,
            SurfaceTc,
            NilpotentCatCd,
            NilpotentTc,
            AlmostNilpotentCatCd,
            AlmostNilpotentTc,
            Hull,
            Unconstrained,
        ]
    };

    pub fn from_id(id: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id() == id)
    }

    pub fn id(self) -> &'static str {
        use Rule::*;
        match self {
            Base => "BASE",
            User => "USER",
            R1 => "R1",
            R2 => "R2",
            R3 => "R3",
            R4 => "R4",
            R5 => "R5",
            R6 => "R6",
            R7 => "R7",
            R8 => "R8",
            R9 => "R9",
            R10 => "R10",
            R11 => "R11",
            R12 => "R12",
            R13 => "R13",
            R14 => "R14",
            EilenbergGanea => "EG",
            AbelianCd => "CF_ABELIAN_CD",
            AbelianTc => "CF_ABELIAN_TC",
            FreeCatCd => "CF_FREE_CAT_CD",
            FreeTc => "CF_FREE_TC",
            SurfaceCatCd => "CF_SURFACE_CAT_CD",
            SurfaceTc => "CF_SURFACE_TC",
            NilpotentCatCd => "CF_NILPOTENT_CAT_CD",
            NilpotentTc => "CF_NILPOTENT_TC",
            AlmostNilpotentCatCd => "CF_ALMOST_NILPOTENT_CAT_CD",
            AlmostNilpotentTc => "CF_ALMOST_NILPOTENT_TC",
            Hull => "HULL",
            Unconstrained => "NONE",
        }
    }

    /// Default citation. Base values override it with the specific source.
    pub fn citation(self) -> &'static str {
        use Rule::*;
        match self {
            Base => "standard value",
            User => "plumbing: user-supplied fact",
            R1 => "Proposition 3.3(2)",
            R2 => "Proposition 3.3(1)",
            R3 => "Proposition 3.6",
            R4 => "Section 4: cd(f) <= cat(f)",
            R5 => "Corollary 4.8",
            R6 => "Corollary 4.3 (proof): cat(f) <= min{cat(X), cat(Y)}",
            R7 => "Theorem 6.11 (proof): cat(f^k) <= k cat(f)",
            R8 => "Theorem 3.4",
            R9 => "Theorem 4.4 (proof): cat(g h) <= cat(h)",
            R10 => "Proposition 4.2",
            R11 => "Theorem 6.5 (proof): nonzero torsion image gives cd = infinity",
            R12 => "Corollary 3.7",
            R13 => "Theorem 6.1",
            R14 => "Theorem 3.5",
            EilenbergGanea => "Theorem 6.5 (proof): cat(f^k) = cd(f^k)",
            AbelianCd => "Theorem 6.5 (proof): cd(f) = rank + torsion generators",
            AbelianTc => "Theorem 6.5",
            FreeCatCd => "Corollary 4.3",
            FreeTc => "Theorem 6.7",
            SurfaceCatCd => "Theorem 4.4",
            SurfaceTc => "Theorem 6.9",
            NilpotentCatCd => "Theorem 6.10 (proof): cat(f) = cd(f) = cd(target)",
            NilpotentTc => "Theorem 6.10",
            AlmostNilpotentCatCd => "Theorem 6.11 (proof): cat(f) = cd(f) = cd(target) + 1",
            AlmostNilpotentTc => "Theorem 6.11",
            Hull => "plumbing: hull of case split",
            Unconstrained => "plumbing: no rule applies",
        }
    }

    /// Position used to order rule applications, following the order in
    /// which the results are cited.
    pub fn rank(self) -> u32 {
        use Rule::*;
        match self {
            Base | User => 0,
            R1 => 10,
            R2 => 11,
            R8 => 12,
            R14 => 13,
            R3 => 14,
            R12 => 15,
            R4 => 20,
            R10 => 21,
            FreeCatCd => 22,
            R6 => 23,
            SurfaceCatCd => 24,
            R9 => 25,
            R5 => 26,
            R13 => 30,
            R11 => 31,
            EilenbergGanea => 32,
            AbelianCd => 33,
            AbelianTc => 34,
            FreeTc => 35,
            SurfaceTc => 36,
            NilpotentCatCd => 37,
            NilpotentTc => 38,
            AlmostNilpotentCatCd => 39,
            AlmostNilpotentTc => 40,
            R7 => 41,
            Hull | Unconstrained => 50,
        }
    }

    pub fn is_closed_form(self) -> bool {
        use Rule::*;
        matches!(
            self,
            R13 | AbelianCd
                | AbelianTc
                | FreeCatCd
                | FreeTc
                | SurfaceCatCd
                | SurfaceTc
                | NilpotentCatCd
                | NilpotentTc
                | AlmostNilpotentCatCd
                | AlmostNilpotentTc
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let id = String::deserialize(d)?;
        Rule::from_id(&id)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown rule id {id:?}")))
    }
}
