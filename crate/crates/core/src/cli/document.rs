use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    AbelianHom, FgAbelianGroup, FreeGroup, FreeHom, SurfaceClassification, SurfaceHom,
};
use crate::invariants::{
    Branch, DerivationStep, HomSpec, HypothesisStatus, InvariantKind, InvariantValue,
    NilpotentFacts, NilpotentFlavor, UserFact,
};
use crate::linalg::IntegerMatrix;

pub const SCHEMA_VERSION: &str = "1.0";

/// Integer accepted as a JSON number or, for values beyond 64 bits, a
/// decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Number(i64),
    Text(String),
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Number(n) => Ok(BigInt::from(*n)),
            JsonInt::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("not an integer: {s:?}"))),
        }
    }
}

fn matrix_from(
    rows: usize,
    cols: usize,
    data: &[Vec<JsonInt>],
    what: &str,
) -> Result<IntegerMatrix> {
    if data.len() != rows {
        return Err(Error::Dimension(format!(
            "{what} has {} rows, expected {rows}",
            data.len()
        )));
    }
    let mut m = IntegerMatrix::zeros(rows, cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Dimension(format!(
                "{what} row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, x) in row.iter().enumerate() {
            m.set(i, j, x.to_bigint()?);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion_factors: Vec<JsonInt>,
}

impl GroupDocument {
    fn to_group(&self) -> Result<FgAbelianGroup> {
        let factors = self
            .torsion_factors
            .iter()
            .map(JsonInt::to_bigint)
            .collect::<Result<Vec<_>>>()?;
        FgAbelianGroup::new(self.free_rank, factors)
    }
}

/// Presentation `ℤ^generators / ⟨columns of relations⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub generators: usize,
    /// `generators × k`, one relation per column; may be omitted when `k = 0`.
    #[serde(default)]
    pub relations: Vec<Vec<JsonInt>>,
}

impl PresentationDocument {
    fn relation_matrix(&self) -> Result<IntegerMatrix> {
        if self.relations.is_empty() {
            return Ok(IntegerMatrix::zeros(self.generators, 0));
        }
        let cols = self.relations[0].len();
        matrix_from(self.generators, cols, &self.relations, "relations")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HomDocument {
    Abelian {
        source: GroupDocument,
        target: GroupDocument,
        matrix: Vec<Vec<JsonInt>>,
    },
    AbelianPresented {
        source: PresentationDocument,
        target: PresentationDocument,
        matrix: Vec<Vec<JsonInt>>,
    },
    Free {
        source_rank: usize,
        target_rank: usize,
        images: Vec<Vec<i32>>,
    },
    Surface {
        source_genus: usize,
        target_genus: usize,
        classification: SurfaceClassification,
    },
    Nilpotent {
        flavor: NilpotentFlavor,
        cd_target: u64,
    },
}

impl HomDocument {
    pub fn to_spec(&self) -> Result<HomSpec> {
        match self {
            HomDocument::Abelian {
                source,
                target,
                matrix,
            } => {
                let (s, t) = (source.to_group()?, target.to_group()?);
                let m = matrix_from(t.generator_count(), s.generator_count(), matrix, "matrix")?;
                Ok(HomSpec::Abelian(AbelianHom::new(s, t, m)?))
            }
            HomDocument::AbelianPresented {
                source,
                target,
                matrix,
            } => {
                let m = matrix_from(target.generators, source.generators, matrix, "matrix")?;
                Ok(HomSpec::Abelian(AbelianHom::from_presentations(
                    source.generators,
                    &source.relation_matrix()?,
                    target.generators,
                    &target.relation_matrix()?,
                    &m,
                )?))
            }
            HomDocument::Free {
                source_rank,
                target_rank,
                images,
            } => Ok(HomSpec::Free(FreeHom::new(
                FreeGroup::new(*source_rank)?,
                FreeGroup::new(*target_rank)?,
                images.clone(),
            )?)),
            HomDocument::Surface {
                source_genus,
                target_genus,
                classification,
            } => Ok(HomSpec::Surface(SurfaceHom::new(
                *source_genus,
                *target_genus,
                *classification,
            )?)),
            HomDocument::Nilpotent { flavor, cd_target } => {
                Ok(HomSpec::Nilpotent(NilpotentFacts {
                    cd_target: *cd_target,
                    flavor: *flavor,
                }))
            }
        }
    }
}

/// One value or a list.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(u32),
    Many(Vec<u32>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<u32> {
        match self {
            OneOrMany::One(r) => vec![*r],
            OneOrMany::Many(rs) => rs.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub disable_closed_forms: bool,
    #[serde(default)]
    pub run_oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDocument {
    pub schema_version: String,
    pub hom: HomDocument,
    #[serde(default)]
    pub r: Option<OneOrMany>,
    #[serde(default)]
    pub invariants: Option<Vec<InvariantKind>>,
    #[serde(default)]
    pub user_facts: Vec<UserFact>,
    #[serde(default)]
    pub options: Options,
}

impl QueryDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: QueryDocument =
            serde_json::from_str(text).map_err(|e| Error::input(e.to_string()))?;
        doc.check_version()?;
        Ok(doc)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let doc: QueryDocument =
            serde_json::from_value(value).map_err(|e| Error::input(e.to_string()))?;
        doc.check_version()?;
        Ok(doc)
    }

    fn check_version(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::input(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub invariant: InvariantKind,
    pub r: u32,
    pub value: InvariantValue,
    pub trace: Vec<DerivationStep>,
    pub hypotheses: BTreeMap<String, HypothesisStatus>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Computed,
    NotApplicable,
    Refused,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBound {
    pub r: u32,
    pub lower_bound: u64,
    /// Number of nonzero terms of the certificate wedge product.
    pub certificate_terms: usize,
    pub certificate_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub name: String,
    pub status: OracleStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<OracleBound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub code: i32,
    pub kind: String,
    pub message: String,
    /// The two steps that disagree, for inconsistencies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conflict: Option<ConflictDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictDocument {
    pub fact: String,
    pub existing: String,
    pub incoming: String,
}

impl From<&Error> for ErrorDocument {
    fn from(e: &Error) -> Self {
        let conflict = match e {
            Error::Inconsistency {
                fact,
                existing,
                incoming,
            } => Some(ConflictDocument {
                fact: fact.clone(),
                existing: existing.clone(),
                incoming: incoming.clone(),
            }),
            _ => None,
        };
        ErrorDocument {
            code: e.exit_code(),
            kind: e.kind().to_string(),
            message: e.to_string(),
            conflict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<String>,
    #[serde(default)]
    pub results: Vec<ResultEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDocument>,
}

impl ReportDocument {
    pub fn failure(hom: Option<String>, e: &Error) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            hom,
            results: Vec::new(),
            oracle: None,
            error: Some(e.into()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.code)
    }
}

/// Short human description of a homomorphism.
pub fn describe(spec: &HomSpec) -> String {
    match spec {
        HomSpec::Abelian(h) => format!("{} -> {}", h.source(), h.target()),
        HomSpec::Free(h) => format!("F_{} -> F_{}", h.source().rank(), h.target().rank()),
        HomSpec::Surface(h) => format!(
            "pi1(M_{}) -> pi1(M_{}) [{}]",
            h.source_genus(),
            h.target_genus(),
            h.classification()
        ),
        HomSpec::Nilpotent(f) => {
            let flavor = match f.flavor {
                NilpotentFlavor::Nilpotent => "nilpotent",
                NilpotentFlavor::AlmostNilpotent => "almost nilpotent",
            };
            format!("{flavor} epimorphism, cd(target) = {}", f.cd_target)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_hom_kind() {
        let docs = [
            r#"{"kind":"abelian","source":{"free_rank":3},"target":{"free_rank":1,"torsion_factors":[2,"4"]},
                "matrix":[[1,0,0],[0,1,0],[0,0,1]]}"#,
            r#"{"kind":"abelian_presented","source":{"generators":2,"relations":[[2],[0]]},
                "target":{"generators":1,"relations":[[2]]},"matrix":[[1,0]]}"#,
            r#"{"kind":"free","source_rank":3,"target_rank":2,"images":[[1],[2],[1,2]]}"#,
            r#"{"kind":"surface","source_genus":2,"target_genus":2,"classification":"unknown"}"#,
            r#"{"kind":"nilpotent","flavor":"almost_nilpotent","cd_target":2}"#,
        ];
        for d in docs {
            let h: HomDocument = serde_json::from_str(d).unwrap();
            h.to_spec().unwrap();
        }
    }

    #[test]
    fn presented_hom_is_normalized() {
        // Z^2/<(2,0)> = Z_2 + Z onto Z_2 sending both generators to the generator
        let h: HomDocument = serde_json::from_str(
            r#"{"kind":"abelian_presented","source":{"generators":2,"relations":[[2],[0]]},
                "target":{"generators":1,"relations":[[2]]},"matrix":[[1,1]]}"#,
        )
        .unwrap();
        let HomSpec::Abelian(a) = h.to_spec().unwrap() else {
            panic!()
        };
        assert_eq!(a.source().to_string(), "Z + Z_2");
        assert_eq!(a.target().to_string(), "Z_2");
        assert!(a.is_epimorphism().unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        let wrong_shape = r#"{"kind":"abelian","source":{"free_rank":2},"target":{"free_rank":1},"matrix":[[1]]}"#;
        let h: HomDocument = serde_json::from_str(wrong_shape).unwrap();
        assert_eq!(h.to_spec().unwrap_err().exit_code(), 1);
        assert!(QueryDocument::parse(r#"{"schema_version":"9","hom":{"kind":"nilpotent","flavor":"nilpotent","cd_target":1}}"#).is_err());
        assert!(QueryDocument::parse(r#"{"schema_version":"1.0"}"#).is_err());
        assert!(serde_json::from_str::<HomDocument>(
            r#"{"kind":"free","source_rank":1,"target_rank":1,"images":[[1]],"extra":1}"#
        )
        .is_err());
        let bad_int: HomDocument = serde_json::from_str(
            r#"{"kind":"abelian","source":{"free_rank":1},"target":{"free_rank":1},"matrix":[["x"]]}"#,
        )
        .unwrap();
        assert!(bad_int.to_spec().is_err());
    }
}
