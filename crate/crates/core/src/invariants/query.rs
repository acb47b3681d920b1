use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::closed_forms::{
    check_r, surface_bounds, tcr_of_abelian_group, NilpotentFacts, NilpotentFlavor,
};
use super::engine::{renumber, Engine};
use super::facts::{DerivationStep, FactKey, Measure, Relation, Subject};
use super::rules::Rule;
use super::value::{Bound, InvariantValue};
use crate::cuplength::{cuplength_lower_bound, MAX_AMBIENT_DIM};
use crate::error::{Error, Result};
use crate::groups::{AbelianHom, FgAbelianGroup, FreeHom, SurfaceClassification, SurfaceHom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    Cat,
    Cd,
    TcR,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 3] = [InvariantKind::Cat, InvariantKind::Cd, InvariantKind::TcR];

    pub fn measure(self) -> Measure {
        match self {
            InvariantKind::Cat => Measure::Cat,
            InvariantKind::Cd => Measure::Cd,
            InvariantKind::TcR => Measure::Tc,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Cat => "cat",
            InvariantKind::Cd => "cd",
            InvariantKind::TcR => "tc_r",
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InvariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cat" => Ok(InvariantKind::Cat),
            "cd" => Ok(InvariantKind::Cd),
            "tc_r" | "tc" => Ok(InvariantKind::TcR),
            other => Err(Error::input(format!("unknown invariant {other:?}"))),
        }
    }
}

/// The homomorphism a query is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomSpec {
    Abelian(AbelianHom),
    Free(FreeHom),
    Surface(SurfaceHom),
    Nilpotent(NilpotentFacts),
}

/// Which object a user-supplied bound is about.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(rename_all = "snake_case")]
pub enum FactSubject {
    #[default]
    Hom,
    Source,
    Target,
}

impl FactSubject {
    fn subject(self) -> Subject {
        match self {
            FactSubject::Hom => Subject::Hom,
            FactSubject::Source => Subject::Source,
            FactSubject::Target => Subject::Target,
        }
    }
}

/// Seed bound supplied by the caller. `r = None` applies at every `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserFact {
    #[serde(default)]
    pub subject: FactSubject,
    pub invariant: InvariantKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub value: InvariantValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub hom: HomSpec,
    pub r: u32,
    pub invariant: InvariantKind,
    pub user_facts: Vec<UserFact>,
    /// Evaluate with the propagation rules only.
    pub disable_closed_forms: bool,
}

impl Query {
    pub fn new(hom: HomSpec, r: u32, invariant: InvariantKind) -> Self {
        Query {
            hom,
            r,
            invariant,
            user_facts: Vec::new(),
            disable_closed_forms: false,
        }
    }

    pub fn with_user_facts(mut self, facts: Vec<UserFact>) -> Self {
        self.user_facts = facts;
        self
    }

    pub fn without_closed_forms(mut self) -> Self {
        self.disable_closed_forms = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Checked,
    Asserted,
    Failed,
}

pub type Hypotheses = BTreeMap<String, HypothesisStatus>;

/// One side of a case split on an undecided hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub assumption: String,
    pub value: InvariantValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub value: InvariantValue,
    pub trace: Vec<DerivationStep>,
    pub hypotheses_verified: Hypotheses,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<Branch>,
}

/// Fully propagated fact store for one `(hom, r)`.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub engine: Engine,
    pub hypotheses: Hypotheses,
}

impl Evaluation {
    pub fn value(&self, invariant: InvariantKind) -> InvariantValue {
        self.engine.value(key(Subject::Hom, invariant.measure()))
    }
}

fn key(subject: Subject, measure: Measure) -> FactKey {
    FactKey::new(subject, measure)
}

fn mark(h: &mut Hypotheses, name: &str, ok: bool) -> bool {
    let status = if ok {
        HypothesisStatus::Checked
    } else {
        HypothesisStatus::Failed
    };
    h.insert(name.to_string(), status);
    ok
}

fn assert_hyp(h: &mut Hypotheses, name: &str) {
    h.insert(name.to_string(), HypothesisStatus::Asserted);
}

#[derive(Debug, Clone, Copy, Default)]
struct Traits {
    /// The source's classifying space is a topological group.
    topological_source: bool,
    /// Both groups are finitely generated abelian.
    abelian: bool,
    /// The source is geometrically finite.
    geometrically_finite: bool,
}

/// Constraints between a homomorphism node and its endpoints.
fn hom_node(e: &mut Engine, node: Subject, source: Subject, target: Subject, t: Traits) {
    let r = e.r();
    let k = |m| key(node, m);
    let mut powers = vec![r - 1, r];
    powers.dedup();
    for &p in &powers {
        e.le(Rule::R1, k(Measure::Cat), k(Measure::CatPower(p)));
        if t.abelian {
            e.eq(
                Rule::EilenbergGanea,
                k(Measure::CatPower(p)),
                k(Measure::CdPower(p)),
            );
        } else {
            e.le(Rule::R4, k(Measure::CdPower(p)), k(Measure::CatPower(p)));
        }
        if t.geometrically_finite {
            e.scaled_eq(Rule::R5, k(Measure::CdPower(p)), k(Measure::Cd), p);
        }
        e.le_scaled(Rule::R7, k(Measure::CatPower(p)), k(Measure::Cat), p);
    }
    if t.topological_source {
        e.eq(Rule::R8, k(Measure::Tc), k(Measure::CatPower(r - 1)));
    } else {
        e.le(Rule::R1, k(Measure::CatPower(r - 1)), k(Measure::Tc));
    }
    e.le(Rule::R1, k(Measure::Tc), k(Measure::CatPower(r)));
    e.le(Rule::R2, k(Measure::Tc), key(source, Measure::Tc));
    e.le(Rule::R2, k(Measure::Tc), key(target, Measure::Tc));
    if t.abelian {
        e.eq(Rule::EilenbergGanea, k(Measure::Cat), k(Measure::Cd));
    } else {
        e.le(Rule::R4, k(Measure::Cd), k(Measure::Cat));
    }
    e.le(Rule::R6, k(Measure::Cat), key(source, Measure::Cat));
    e.le(Rule::R6, k(Measure::Cat), key(target, Measure::Cat));
}

fn seed_group(
    e: &mut Engine,
    subject: Subject,
    cat: InvariantValue,
    cd: InvariantValue,
    tc: InvariantValue,
    citation: &str,
) {
    e.seed_cited(Rule::Base, citation, key(subject, Measure::Cat), cat);
    e.seed_cited(Rule::Base, citation, key(subject, Measure::Cd), cd);
    e.seed_cited(Rule::Base, citation, key(subject, Measure::Tc), tc);
}

fn seed_abelian_group(e: &mut Engine, subject: Subject, g: &FgAbelianGroup) {
    let r = e.r();
    if g.is_torsion_free() {
        let n = g.free_rank() as u64;
        let v = InvariantValue::exact(n);
        seed_group(
            e,
            subject,
            v,
            v,
            tcr_of_abelian_group(g, r),
            "classifying space of Z^n is the n-torus: cat = cd = n, TC_r = (r-1)n",
        );
    } else {
        let inf = InvariantValue::infinite();
        seed_group(
            e,
            subject,
            inf,
            inf,
            inf,
            "groups with torsion have infinite cd, cat and TC_r",
        );
    }
}

fn seed_free_group(e: &mut Engine, subject: Subject, rank: usize) {
    let r = u64::from(e.r());
    let tc = if rank == 1 { r - 1 } else { r };
    let one = InvariantValue::exact(1);
    seed_group(
        e,
        subject,
        one,
        one,
        InvariantValue::exact(tc),
        "free group: cat = cd = 1, TC_r = r (rank > 1) or r-1 (rank 1)",
    );
}

/// User facts go in last, so a contradiction is reported against the
/// derivation that fixed the value.
fn apply_user_facts(e: &mut Engine, q: &Query) -> Result<()> {
    for f in &q.user_facts {
        if f.r.is_none_or(|r| r == q.r) {
            e.cross_check(
                Rule::User,
                key(f.subject.subject(), f.invariant.measure()),
                f.value,
            )?;
        }
    }
    Ok(())
}

/// Facts applied after the first propagation so they are recorded as the
/// latest word on their fact, cross-checking what propagation derived.
type CrossChecks = Vec<(Rule, FactKey, InvariantValue)>;

fn build_abelian(
    e: &mut Engine,
    h: &AbelianHom,
    q: &Query,
    hyps: &mut Hypotheses,
    late: &mut CrossChecks,
) -> Result<()> {
    if !mark(hyps, "well_defined", h.check_well_defined()) {
        return Err(Error::hypothesis(
            "well_defined",
            format!(
                "matrix {} does not define a homomorphism {} -> {}",
                h.matrix(),
                h.source(),
                h.target()
            ),
        ));
    }
    let (src, tgt) = (h.source(), h.target());
    let r = q.r;
    let epi = mark(hyps, "epimorphism", h.is_epimorphism()?);
    let injective = mark(hyps, "injective", h.is_injective()?);
    let nonzero = mark(hyps, "nonzero", !h.is_zero());
    let torsion_zero = mark(hyps, "torsion_image_zero", !h.torsion_image_is_nonzero());

    seed_abelian_group(e, Subject::Source, src);
    seed_abelian_group(e, Subject::Target, tgt);
    hom_node(
        e,
        Subject::Hom,
        Subject::Source,
        Subject::Target,
        Traits {
            topological_source: src.is_torsion_free(),
            abelian: true,
            geometrically_finite: src.is_torsion_free(),
        },
    );
    let cd = key(Subject::Hom, Measure::Cd);
    let tc = key(Subject::Hom, Measure::Tc);

    if !torsion_zero {
        e.seed(Rule::R11, cd, InvariantValue::infinite());
    }
    if src.is_trivial() {
        e.seed(Rule::R10, cd, InvariantValue::exact(0));
    } else if epi && nonzero {
        e.seed(Rule::R10, cd, InvariantValue::at_least(Bound::Finite(1)));
    }
    if torsion_zero && !src.is_torsion_free() {
        let reduced = h.restrict_to_free_part();
        seed_abelian_group(e, Subject::ReducedSource, reduced.source());
        hom_node(
            e,
            Subject::Reduced,
            Subject::ReducedSource,
            Subject::Target,
            Traits {
                topological_source: true,
                abelian: true,
                geometrically_finite: true,
            },
        );
        let rcd = key(Subject::Reduced, Measure::Cd);
        if reduced.source().is_trivial() {
            e.seed(Rule::R10, rcd, InvariantValue::exact(0));
        } else if epi && nonzero {
            e.seed(Rule::R10, rcd, InvariantValue::at_least(Bound::Finite(1)));
        }
        e.eq(Rule::R12, tc, key(Subject::Reduced, Measure::Tc));
        e.eq(Rule::R12, cd, rcd);
    }

    if src.is_torsion_free()
        && tgt.is_torsion_free()
        && src.free_rank() * r as usize <= MAX_AMBIENT_DIM
    {
        let bound = cuplength_lower_bound(h.matrix(), r as usize)?;
        late.push((
            Rule::R14,
            tc,
            InvariantValue::at_least(Bound::Finite(bound.value as u64)),
        ));
    }

    if !q.disable_closed_forms {
        if epi {
            let cd_value = super::closed_forms::cd_of_abelian_epi(h)?;
            e.seed(Rule::AbelianCd, cd, cd_value);
            late.push((Rule::AbelianTc, tc, cd_value.times(u64::from(r - 1))));
        }
        if injective {
            late.push((Rule::R13, tc, tcr_of_abelian_group(src, r)));
        }
    }
    Ok(())
}

fn build_free(
    e: &mut Engine,
    h: &FreeHom,
    q: &Query,
    hyps: &mut Hypotheses,
    late: &mut CrossChecks,
) {
    let (m, n) = (h.source().rank(), h.target().rank());
    let surjective = mark(hyps, "surjective", h.is_surjective());
    let nonzero = mark(hyps, "nonzero", h.is_nonzero());
    seed_free_group(e, Subject::Source, m);
    seed_free_group(e, Subject::Target, n);
    hom_node(
        e,
        Subject::Hom,
        Subject::Source,
        Subject::Target,
        Traits {
            topological_source: m == 1,
            abelian: m == 1 && n == 1,
            geometrically_finite: true,
        },
    );
    if surjective && nonzero {
        e.seed(
            Rule::R10,
            key(Subject::Hom, Measure::Cd),
            InvariantValue::at_least(Bound::Finite(1)),
        );
        if !q.disable_closed_forms {
            let one = InvariantValue::exact(1);
            e.seed(Rule::FreeCatCd, key(Subject::Hom, Measure::Cat), one);
            e.seed(Rule::FreeCatCd, key(Subject::Hom, Measure::Cd), one);
            let r = u64::from(q.r);
            let tc = if n == 1 { r - 1 } else { r };
            late.push((
                Rule::FreeTc,
                key(Subject::Hom, Measure::Tc),
                InvariantValue::exact(tc),
            ));
        }
    }
}

fn seed_surface_group(e: &mut Engine, subject: Subject) {
    let two = InvariantValue::exact(2);
    e.seed_cited(
        Rule::Base,
        "closed surface group: cat = cd = 2",
        key(subject, Measure::Cat),
        two,
    );
    e.seed_cited(
        Rule::Base,
        "closed surface group: cat = cd = 2",
        key(subject, Measure::Cd),
        two,
    );
}

fn build_surface(
    e: &mut Engine,
    h: &SurfaceHom,
    q: &Query,
    hyps: &mut Hypotheses,
    late: &mut CrossChecks,
) {
    assert_hyp(hyps, "epimorphism");
    assert_hyp(hyps, "classification");
    seed_surface_group(e, Subject::Source);
    seed_surface_group(e, Subject::Target);
    let traits = Traits {
        geometrically_finite: true,
        ..Traits::default()
    };
    hom_node(e, Subject::Hom, Subject::Source, Subject::Target, traits);
    e.seed(
        Rule::R10,
        key(Subject::Hom, Measure::Cd),
        InvariantValue::at_least(Bound::Finite(1)),
    );

    let classification = h.classification();
    if classification == SurfaceClassification::FactorsThroughFree {
        let r = u64::from(q.r);
        let one = InvariantValue::exact(1);
        e.seed_cited(
            Rule::Base,
            "free group: cat = cd = 1",
            key(Subject::Middle, Measure::Cat),
            one,
        );
        e.seed_cited(
            Rule::Base,
            "free group: cat = cd = 1",
            key(Subject::Middle, Measure::Cd),
            one,
        );
        e.seed_cited(
            Rule::Base,
            "free group of unknown rank: r-1 <= TC_r <= r",
            key(Subject::Middle, Measure::Tc),
            InvariantValue::interval(r - 1, r).expect("r >= 2"),
        );
        hom_node(e, Subject::Factor, Subject::Source, Subject::Middle, traits);
        e.le(
            Rule::R3,
            key(Subject::Hom, Measure::Tc),
            key(Subject::Factor, Measure::Tc),
        );
        e.le(
            Rule::R9,
            key(Subject::Hom, Measure::Cat),
            key(Subject::Factor, Measure::Cat),
        );
    }
    if !q.disable_closed_forms {
        if let Some(b) = surface_bounds(classification, q.r) {
            e.seed(Rule::SurfaceCatCd, key(Subject::Hom, Measure::Cat), b.cat);
            e.seed(Rule::SurfaceCatCd, key(Subject::Hom, Measure::Cd), b.cd);
            late.push((Rule::SurfaceTc, key(Subject::Hom, Measure::Tc), b.tc_r));
        }
    }
}

fn build_nilpotent(
    e: &mut Engine,
    f: &NilpotentFacts,
    q: &Query,
    hyps: &mut Hypotheses,
    late: &mut CrossChecks,
) -> Result<()> {
    assert_hyp(hyps, "epimorphism");
    assert_hyp(hyps, "cd_target");
    let (cat_cd_rule, tc_rule) = match f.flavor {
        NilpotentFlavor::Nilpotent => {
            assert_hyp(hyps, "finitely_generated_torsion_free_nilpotent");
            (Rule::NilpotentCatCd, Rule::NilpotentTc)
        }
        NilpotentFlavor::AlmostNilpotent => {
            assert_hyp(hyps, "torsion_free_almost_nilpotent");
            assert_hyp(hyps, "identity_on_z");
            (Rule::AlmostNilpotentCatCd, Rule::AlmostNilpotentTc)
        }
    };
    let c = f.cat_cd();
    let v = InvariantValue::exact(c);
    e.seed_cited(
        Rule::User,
        "plumbing: user-supplied cd of the target",
        key(Subject::Target, Measure::Cd),
        v,
    );
    e.seed_cited(
        Rule::Base,
        "Eilenberg-Ganea: cat = cd for groups",
        key(Subject::Target, Measure::Cat),
        v,
    );
    if c == 0 {
        e.seed_cited(
            Rule::Base,
            "trivial group: TC_r = 0",
            key(Subject::Target, Measure::Tc),
            v,
        );
    }
    hom_node(
        e,
        Subject::Hom,
        Subject::Source,
        Subject::Target,
        Traits {
            geometrically_finite: true,
            ..Traits::default()
        },
    );
    if c > 0 {
        e.seed(
            Rule::R10,
            key(Subject::Hom, Measure::Cd),
            InvariantValue::at_least(Bound::Finite(1)),
        );
    }
    if !q.disable_closed_forms {
        e.seed(cat_cd_rule, key(Subject::Hom, Measure::Cat), v);
        e.seed(cat_cd_rule, key(Subject::Hom, Measure::Cd), v);
        late.push((
            tc_rule,
            key(Subject::Hom, Measure::Tc),
            super::closed_forms::nilpotent_tcr_bounds(f, q.r)?,
        ));
    }
    Ok(())
}

/// Builds and propagates the fact store for a query's homomorphism at the
/// query's `r`. Surfaces of unknown classification are not split here.
pub fn evaluate(q: &Query) -> Result<Evaluation> {
    check_r(q.r)?;
    let mut e = Engine::new(q.r);
    let mut hyps = Hypotheses::new();
    let mut late = CrossChecks::new();
    match &q.hom {
        HomSpec::Abelian(h) => build_abelian(&mut e, h, q, &mut hyps, &mut late)?,
        HomSpec::Free(h) => build_free(&mut e, h, q, &mut hyps, &mut late),
        HomSpec::Surface(h) => build_surface(&mut e, h, q, &mut hyps, &mut late),
        HomSpec::Nilpotent(f) => build_nilpotent(&mut e, f, q, &mut hyps, &mut late)?,
    }
    e.propagate()?;
    late.sort_by_key(|(rule, _, _)| rule.rank());
    for (rule, k, v) in late {
        e.cross_check(rule, k, v)?;
    }
    e.propagate()?;
    apply_user_facts(&mut e, q)?;
    e.propagate()?;
    Ok(Evaluation {
        engine: e,
        hypotheses: hyps,
    })
}

fn report_from(ev: &Evaluation, invariant: InvariantKind) -> InvariantReport {
    let k = key(Subject::Hom, invariant.measure());
    let mut engine = ev.engine.clone();
    if engine.current_step(k).is_none() {
        engine
            .cross_check(Rule::Unconstrained, k, InvariantValue::unknown())
            .expect("unknown meets anything");
    }
    InvariantReport {
        value: engine.value(k),
        trace: engine.sub_trace(k),
        hypotheses_verified: ev.hypotheses.clone(),
        branches: Vec::new(),
    }
}

/// Answers a query: verifies hypotheses, applies closed forms where they
/// hold, propagates, and returns the value with the steps it rests on.
pub fn compute(q: &Query) -> Result<InvariantReport> {
    if let HomSpec::Surface(h) = &q.hom {
        if h.classification() == SurfaceClassification::Unknown {
            return compute_split(q, h);
        }
    }
    Ok(report_from(&evaluate(q)?, q.invariant))
}

fn compute_split(q: &Query, h: &SurfaceHom) -> Result<InvariantReport> {
    let cases = [
        SurfaceClassification::FactorsThroughFree,
        SurfaceClassification::DoesNotFactor,
    ];
    let mut trace: Vec<DerivationStep> = Vec::new();
    let mut finals = Vec::new();
    let mut branches = Vec::new();
    let mut hyps = Hypotheses::new();
    for c in cases {
        let sub = Query {
            hom: HomSpec::Surface(h.with_classification(c)),
            ..q.clone()
        };
        let report = report_from(&evaluate(&sub)?, q.invariant);
        let offset = trace.len();
        trace.extend(report.trace.into_iter().map(|mut s| {
            s.premises.iter_mut().for_each(|p| *p += offset);
            s.refines = s.refines.map(|p| p + offset);
            s
        }));
        finals.push(trace.len() - 1);
        branches.push(Branch {
            assumption: c.to_string(),
            value: report.value,
        });
        hyps.extend(report.hypotheses_verified);
    }
    hyps.remove("classification");
    let value = branches
        .iter()
        .map(|b| b.value)
        .reduce(|a, b| a.hull(&b))
        .expect("two branches");
    trace.push(DerivationStep {
        rule: Rule::Hull,
        citation: Rule::Hull.citation().to_string(),
        fact: key(Subject::Hom, q.invariant.measure()),
        relation: Relation::Hull,
        premises: finals,
        refines: None,
        value,
    });
    let keep: BTreeSet<usize> = (0..trace.len()).collect();
    Ok(InvariantReport {
        value,
        trace: renumber(&trace, &keep),
        hypotheses_verified: hyps,
        branches,
    })
}

/// cat, cd and TC_r of a surface-group epimorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub cat: InvariantReport,
    pub cd: InvariantReport,
    pub tc_r: InvariantReport,
}

pub fn surface_invariants(h: &SurfaceHom, r: u32) -> Result<SurfaceInvariants> {
    let run = |inv| compute(&Query::new(HomSpec::Surface(*h), r, inv));
    Ok(SurfaceInvariants {
        cat: run(InvariantKind::Cat)?,
        cd: run(InvariantKind::Cd)?,
        tc_r: run(InvariantKind::TcR)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FreeGroup;
    use crate::invariants::facts::replay;
    use crate::linalg::IntegerMatrix;

    fn g(free: usize, torsion: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::with_torsion(free, torsion).unwrap()
    }

    fn abelian(h: AbelianHom, r: u32, inv: InvariantKind) -> Query {
        Query::new(HomSpec::Abelian(h), r, inv)
    }

    fn run(q: Query) -> InvariantReport {
        let report = compute(&q).unwrap();
        replay(&report.trace).unwrap();
        assert_eq!(report.trace.last().unwrap().value, report.value);
        report
    }

    fn rules(report: &InvariantReport) -> Vec<Rule> {
        report.trace.iter().map(|s| s.rule).collect()
    }

    #[test]
    fn abelian_closed_form_examples() {
        let h = AbelianHom::canonical_projection(3, g(1, &[2, 4])).unwrap();
        let rep = run(abelian(h.clone(), 3, InvariantKind::TcR));
        assert_eq!(rep.value, InvariantValue::exact(6));
        assert_eq!(rep.trace.last().unwrap().citation, "Theorem 6.5");
        assert_eq!(
            run(abelian(h.clone(), 2, InvariantKind::TcR)).value,
            InvariantValue::exact(3)
        );
        assert_eq!(
            run(abelian(h, 2, InvariantKind::Cd)).value,
            InvariantValue::exact(3)
        );
    }

    /// Follows the premises of the R8 step that raised `TC_r` back to the
    /// cd seed: `[R5, EG, R8]` when the proof chain was used.
    pub(crate) fn chain_to_tc(report: &InvariantReport) -> Option<Vec<usize>> {
        let tc = key(Subject::Hom, Measure::Tc);
        let r8 = report.trace.iter().rposition(|s| {
            s.rule == Rule::R8 && s.fact == tc && s.relation == Relation::AtLeast { factor: 1 }
        })?;
        let eg = *report.trace[r8].premises.first()?;
        let r5 = *report.trace[eg].premises.first()?;
        (report.trace[eg].rule == Rule::EilenbergGanea && report.trace[r5].rule == Rule::R5)
            .then(|| vec![r5, eg, r8])
    }

    #[test]
    fn propagation_alone_recovers_abelian_chain() {
        let h = AbelianHom::canonical_projection(2, g(1, &[])).unwrap();
        let rep = run(abelian(h, 2, InvariantKind::TcR).without_closed_forms());
        assert_eq!(rep.value, InvariantValue::exact(1));
        let chain = chain_to_tc(&rep).expect("R5 -> EG -> R8 chain");
        assert!(chain.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn torsion_image_makes_everything_infinite() {
        let h = AbelianHom::new(
            g(0, &[4]),
            g(0, &[2]),
            IntegerMatrix::from_i64(1, 1, &[1]).unwrap(),
        )
        .unwrap();
        for inv in InvariantKind::ALL {
            let rep = run(abelian(h.clone(), 2, inv));
            assert_eq!(rep.value, InvariantValue::infinite());
            assert!(rules(&rep).contains(&Rule::R11));
        }
    }

    #[test]
    fn retraction_handles_dead_torsion() {
        // Z + Z_2 -> Z killing the torsion summand
        let h = AbelianHom::new(
            g(1, &[2]),
            g(1, &[]),
            IntegerMatrix::from_i64(1, 2, &[1, 0]).unwrap(),
        )
        .unwrap();
        for r in 2..5 {
            let rep = run(abelian(h.clone(), r, InvariantKind::TcR).without_closed_forms());
            assert_eq!(rep.value, InvariantValue::exact(u64::from(r - 1)));
            if r > 2 {
                assert!(rules(&rep).contains(&Rule::R12));
            }
        }
    }

    #[test]
    fn trivial_source_has_zero_cd() {
        let h = AbelianHom::identity(FgAbelianGroup::trivial());
        let rep = run(abelian(h, 2, InvariantKind::Cd));
        assert_eq!(rep.value, InvariantValue::exact(0));
        assert!(rep.trace.iter().any(|s| s.citation == "Proposition 4.2"));
    }

    #[test]
    fn injections() {
        let diag = AbelianHom::new(
            g(1, &[]),
            g(2, &[]),
            IntegerMatrix::from_i64(2, 1, &[1, 1]).unwrap(),
        )
        .unwrap();
        let rep = run(abelian(diag, 3, InvariantKind::TcR));
        assert_eq!(rep.value, InvariantValue::exact(2));
        let z2_z4 = AbelianHom::new(
            g(0, &[2]),
            g(0, &[4]),
            IntegerMatrix::from_i64(1, 1, &[2]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            run(abelian(z2_z4, 2, InvariantKind::TcR)).value,
            InvariantValue::infinite()
        );
    }

    #[test]
    fn ill_defined_matrix_is_a_hypothesis_error() {
        let bad = AbelianHom::new(
            g(0, &[2]),
            g(1, &[]),
            IntegerMatrix::from_i64(1, 1, &[1]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            compute(&abelian(bad, 2, InvariantKind::Cd))
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    fn free(m: usize, n: usize, images: Vec<Vec<i32>>) -> FreeHom {
        FreeHom::new(
            FreeGroup::new(m).unwrap(),
            FreeGroup::new(n).unwrap(),
            images,
        )
        .unwrap()
    }

    #[test]
    fn free_examples() {
        let f32 = free(3, 2, vec![vec![1], vec![2], vec![1, 2]]);
        let q = |r, inv| Query::new(HomSpec::Free(f32.clone()), r, inv);
        assert_eq!(
            run(q(2, InvariantKind::TcR).without_closed_forms()).value,
            InvariantValue::interval(1, 2).unwrap()
        );
        for r in 2..5 {
            assert_eq!(
                run(q(r, InvariantKind::TcR)).value,
                InvariantValue::exact(u64::from(r))
            );
        }
        let onto_z = free(3, 1, vec![vec![1], vec![], vec![]]);
        let rep = run(Query::new(HomSpec::Free(onto_z), 2, InvariantKind::Cd));
        assert_eq!(rep.value, InvariantValue::exact(1));
        assert!(rep.trace.iter().any(|s| s.citation == "Corollary 4.3"));
    }

    #[test]
    fn non_surjective_free_hom_falls_back() {
        let h = free(2, 2, vec![vec![1, 1], vec![2]]);
        let rep = run(Query::new(HomSpec::Free(h), 2, InvariantKind::TcR));
        assert_eq!(
            rep.hypotheses_verified["surjective"],
            HypothesisStatus::Failed
        );
        assert!(rep.value.contains(Bound::Finite(2)));
    }

    #[test]
    fn surface_examples() {
        let s = |c| SurfaceHom::new(2, 2, c).unwrap();
        let dn = surface_invariants(&s(SurfaceClassification::DoesNotFactor), 2).unwrap();
        assert_eq!(dn.cat.value, InvariantValue::exact(2));
        assert_eq!(dn.tc_r.value, InvariantValue::interval(2, 4).unwrap());
        let ff = run(Query::new(
            HomSpec::Surface(s(SurfaceClassification::FactorsThroughFree)),
            3,
            InvariantKind::TcR,
        ));
        assert_eq!(ff.value, InvariantValue::interval(2, 3).unwrap());
        let un = run(Query::new(
            HomSpec::Surface(s(SurfaceClassification::Unknown)),
            2,
            InvariantKind::TcR,
        ));
        assert_eq!(un.value, InvariantValue::interval(1, 4).unwrap());
        assert_eq!(un.branches.len(), 2);
        assert_eq!(un.trace.last().unwrap().rule, Rule::Hull);
    }

    #[test]
    fn surface_without_closed_forms_is_sound() {
        for c in [
            SurfaceClassification::FactorsThroughFree,
            SurfaceClassification::DoesNotFactor,
        ] {
            for r in 2..5 {
                let h = SurfaceHom::new(3, 2, c).unwrap();
                let exact = surface_bounds(c, r).unwrap();
                let rep =
                    run(Query::new(HomSpec::Surface(h), r, InvariantKind::TcR)
                        .without_closed_forms());
                assert!(rep.value.encloses(&exact.tc_r), "{c} r={r}: {}", rep.value);
            }
        }
        let h = SurfaceHom::new(2, 2, SurfaceClassification::FactorsThroughFree).unwrap();
        let rep =
            run(Query::new(HomSpec::Surface(h), 3, InvariantKind::TcR).without_closed_forms());
        assert_eq!(rep.value, InvariantValue::interval(2, 3).unwrap());
    }

    #[test]
    fn nilpotent_examples() {
        let q = |c, flavor, r| {
            Query::new(
                HomSpec::Nilpotent(NilpotentFacts {
                    cd_target: c,
                    flavor,
                }),
                r,
                InvariantKind::TcR,
            )
        };
        assert_eq!(
            run(q(3, NilpotentFlavor::Nilpotent, 2)).value,
            InvariantValue::interval(3, 6).unwrap()
        );
        assert_eq!(
            run(q(2, NilpotentFlavor::AlmostNilpotent, 2)).value,
            InvariantValue::interval(3, 6).unwrap()
        );
        assert_eq!(
            run(q(0, NilpotentFlavor::Nilpotent, 4)).value,
            InvariantValue::exact(0)
        );
        assert_eq!(
            run(q(3, NilpotentFlavor::Nilpotent, 3).without_closed_forms()).value,
            InvariantValue::interval(2, 9).unwrap()
        );
    }

    #[test]
    fn contradicting_user_fact_is_inconsistent() {
        let h = AbelianHom::canonical_projection(3, g(1, &[2, 4])).unwrap();
        let fact = UserFact {
            subject: FactSubject::Hom,
            invariant: InvariantKind::TcR,
            r: None,
            value: InvariantValue::exact(5),
        };
        let err =
            compute(&abelian(h, 2, InvariantKind::TcR).with_user_facts(vec![fact])).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let msg = err.to_string();
        assert!(msg.contains("[CF_ABELIAN_TC] Theorem 6.5"), "{msg}");
        assert!(msg.contains("[USER]"), "{msg}");
    }

    #[test]
    fn r_below_two_is_rejected() {
        let h = AbelianHom::identity(g(1, &[]));
        assert_eq!(
            compute(&abelian(h, 1, InvariantKind::TcR))
                .unwrap_err()
                .exit_code(),
            1
        );
    }
}
