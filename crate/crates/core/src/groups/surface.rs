use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether an epimorphism of surface groups factors through a free group.
/// Supplied by the caller; there is no decision procedure here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceClassification {
    FactorsThroughFree,
    DoesNotFactor,
    Unknown,
}

impl fmt::Display for SurfaceClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceClassification::FactorsThroughFree => "factors_through_free",
            SurfaceClassification::DoesNotFactor => "does_not_factor",
            SurfaceClassification::Unknown => "unknown",
        })
    }
}

/// Epimorphism `π₁(M_g) → π₁(M_g')` of closed orientable surface groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceHom {
    source_genus: usize,
    target_genus: usize,
    classification: SurfaceClassification,
}

impl SurfaceHom {
    pub fn new(
        source_genus: usize,
        target_genus: usize,
        classification: SurfaceClassification,
    ) -> Result<Self> {
        if source_genus == 0 || target_genus == 0 {
            return Err(Error::input("surface genera must be at least 1"));
        }
        Ok(SurfaceHom {
            source_genus,
            target_genus,
            classification,
        })
    }

    pub fn source_genus(&self) -> usize {
        self.source_genus
    }

    pub fn target_genus(&self) -> usize {
        self.target_genus
    }

    pub fn classification(&self) -> SurfaceClassification {
        self.classification
    }

    pub fn with_classification(&self, classification: SurfaceClassification) -> Self {
        SurfaceHom {
            classification,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_must_be_positive() {
        assert!(SurfaceHom::new(0, 1, SurfaceClassification::Unknown).is_err());
        let h = SurfaceHom::new(2, 2, SurfaceClassification::DoesNotFactor).unwrap();
        assert_eq!(h.classification().to_string(), "does_not_factor");
    }
}
