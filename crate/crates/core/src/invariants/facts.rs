use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rules::Rule;
use super::value::InvariantValue;

/// Object an invariant is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    /// The homomorphism under study.
    Hom,
    /// Its source and target groups.
    Source,
    Target,
    /// The induced map on the free part of the source.
    Reduced,
    ReducedSource,
    /// First factor `h` of a factorization through a free group, and that
    /// free group.
    Factor,
    Middle,
}

impl Subject {
    pub const ALL: [Subject; 7] = [
        Subject::Hom,
        Subject::Source,
        Subject::Target,
        Subject::Reduced,
        Subject::ReducedSource,
        Subject::Factor,
        Subject::Middle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subject::Hom => "hom",
            Subject::Source => "source",
            Subject::Target => "target",
            Subject::Reduced => "reduced",
            Subject::ReducedSource => "reduced_source",
            Subject::Factor => "factor",
            Subject::Middle => "middle",
        }
    }
}

/// Which invariant of the subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Cat,
    Cd,
    Tc,
    /// `cat(f^k)` for the k-fold product map.
    CatPower(u32),
    CdPower(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactKey {
    pub subject: Subject,
    pub measure: Measure,
}

impl FactKey {
    pub fn new(subject: Subject, measure: Measure) -> Self {
        FactKey { subject, measure }
    }

    /// Renders with the sequential parameter `r`, e.g. `TC_3(hom)`.
    pub fn display(&self, r: u32) -> String {
        let s = self.subject.name();
        match self.measure {
            Measure::Cat => format!("cat({s})"),
            Measure::Cd => format!("cd({s})"),
            Measure::Tc => format!("TC_{r}({s})"),
            Measure::CatPower(k) => format!("cat({s}^{k})"),
            Measure::CdPower(k) => format!("cd({s}^{k})"),
        }
    }
}

impl fmt::Display for FactKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.subject.name();
        match self.measure {
            Measure::Cat => write!(f, "cat({s})"),
            Measure::Cd => write!(f, "cd({s})"),
            Measure::Tc => write!(f, "TC_r({s})"),
            Measure::CatPower(k) => write!(f, "cat({s}^{k})"),
            Measure::CdPower(k) => write!(f, "cd({s}^{k})"),
        }
    }
}

impl std::str::FromStr for FactKey {
    type Err = String;

    /// Parses the `Display` form, e.g. `cat(hom^2)` or `TC_r(source)`.
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("malformed fact {s:?}");
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (name, power) = match inner.split_once('^') {
            Some((n, k)) => (n, Some(k.parse::<u32>().map_err(|_| bad())?)),
            None => (inner, None),
        };
        let subject = Subject::ALL
            .into_iter()
            .find(|x| x.name() == name)
            .ok_or_else(bad)?;
        let measure = match (head, power) {
            ("cat", None) => Measure::Cat,
            ("cd", None) => Measure::Cd,
            ("TC_r", None) => Measure::Tc,
            ("cat", Some(k)) => Measure::CatPower(k),
            ("cd", Some(k)) => Measure::CdPower(k),
            _ => return Err(bad()),
        };
        Ok(FactKey { subject, measure })
    }
}

impl<'de> Deserialize<'de> for FactKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for FactKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// How a step's bound follows from its premises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// The cited result states the bound outright.
    Given { bound: InvariantValue },
    /// `fact ≥ factor · lo(premise)`.
    AtLeast { factor: u64 },
    /// `fact ≤ factor · hi(premise)`.
    AtMost { factor: u64 },
    /// `fact ≥ ⌈lo(premise) / divisor⌉`.
    AtLeastDiv { divisor: u64 },
    /// `fact ≤ ⌊hi(premise) / divisor⌋`.
    AtMostDiv { divisor: u64 },
    /// Hull of all premises.
    Hull,
}

impl Relation {
    /// Bound implied by the premise values.
    pub fn bound(&self, premises: &[InvariantValue]) -> InvariantValue {
        let first = premises
            .first()
            .copied()
            .unwrap_or_else(InvariantValue::unknown);
        match *self {
            Relation::Given { bound } => bound,
            Relation::AtLeast { factor } => InvariantValue::at_least(first.lo().times(factor)),
            Relation::AtMost { factor } => InvariantValue::at_most(first.hi().times(factor)),
            Relation::AtLeastDiv { divisor } => {
                InvariantValue::at_least(first.lo().div_ceil(divisor))
            }
            Relation::AtMostDiv { divisor } => {
                InvariantValue::at_most(first.hi().div_floor(divisor))
            }
            Relation::Hull => premises
                .iter()
                .copied()
                .reduce(|a, b| a.hull(&b))
                .unwrap_or_else(InvariantValue::unknown),
        }
    }

    fn describe(&self) -> String {
        match *self {
            Relation::Given { bound } => format!("given {bound}"),
            Relation::AtLeast { factor: 1 } => ">= premise".into(),
            Relation::AtLeast { factor } => format!(">= {factor} * premise"),
            Relation::AtMost { factor: 1 } => "<= premise".into(),
            Relation::AtMost { factor } => format!("<= {factor} * premise"),
            Relation::AtLeastDiv { divisor } => format!(">= premise / {divisor}"),
            Relation::AtMostDiv { divisor } => format!("<= premise / {divisor}"),
            Relation::Hull => "hull of premises".into(),
        }
    }
}

/// One recorded inference. `value` is the fact's interval after the step:
/// the relation's bound intersected with the value of the step it refines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: Rule,
    pub citation: String,
    pub fact: FactKey,
    pub relation: Relation,
    pub premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refines: Option<usize>,
    pub value: InvariantValue,
}

impl DerivationStep {
    pub fn summary(&self, index: usize, r: u32) -> String {
        let mut s = format!(
            "#{index} [{}] {}: {} {}",
            self.rule,
            self.citation,
            self.fact.display(r),
            self.relation.describe()
        );
        if !self.premises.is_empty() {
            let p: Vec<String> = self.premises.iter().map(|i| format!("#{i}")).collect();
            s.push_str(&format!(" from {}", p.join(", ")));
        }
        s.push_str(&format!(" => {}", self.value));
        s
    }
}

/// Re-checks every step of a trace from its premises alone. Returns the
/// index of the first step that does not reproduce its recorded value.
pub fn replay(trace: &[DerivationStep]) -> std::result::Result<(), usize> {
    for (i, step) in trace.iter().enumerate() {
        let mut deps = step.premises.clone();
        deps.extend(step.refines);
        if deps.iter().any(|&p| p >= i) {
            return Err(i);
        }
        let premises: Vec<InvariantValue> = step.premises.iter().map(|&p| trace[p].value).collect();
        let bound = step.relation.bound(&premises);
        let expected = match step.refines {
            Some(prev) => {
                if trace[prev].fact != step.fact {
                    return Err(i);
                }
                bound.meet(&trace[prev].value)
            }
            None => Some(bound),
        };
        if expected != Some(step.value) {
            return Err(i);
        }
    }
    Ok(())
}
