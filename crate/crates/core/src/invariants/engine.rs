use std::collections::{BTreeMap, BTreeSet};

use super::facts::{DerivationStep, FactKey, Relation};
use super::rules::Rule;
use super::value::InvariantValue;
use crate::error::{Error, Result};

const MAX_PASSES: usize = 1000;

/// One direction of a constraint: tighten `target` from `source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Propagator {
    rule: Rule,
    source: FactKey,
    target: FactKey,
    relation: Relation,
}

#[derive(Debug, Clone)]
struct Seed {
    rule: Rule,
    citation: String,
    key: FactKey,
    bound: InvariantValue,
}

/// Interval constraint store with a full derivation record.
///
/// Facts start at `[0, ∞]`. Seeds and constraints only ever narrow them;
/// each narrowing is appended to the trace, and an empty intersection is
/// reported as [`Error::Inconsistency`].
#[derive(Debug, Clone)]
pub struct Engine {
    r: u32,
    current: BTreeMap<FactKey, usize>,
    trace: Vec<DerivationStep>,
    propagators: Vec<Propagator>,
    seeds: Vec<Seed>,
}

impl Engine {
    pub fn new(r: u32) -> Self {
        Engine {
            r,
            current: BTreeMap::new(),
            trace: Vec::new(),
            propagators: Vec::new(),
            seeds: Vec::new(),
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn trace(&self) -> &[DerivationStep] {
        &self.trace
    }

    pub fn value(&self, key: FactKey) -> InvariantValue {
        self.current
            .get(&key)
            .map_or_else(InvariantValue::unknown, |&i| self.trace[i].value)
    }

    pub fn current_step(&self, key: FactKey) -> Option<usize> {
        self.current.get(&key).copied()
    }

    /// All facts that have been bounded, with their current values.
    pub fn facts(&self) -> BTreeMap<FactKey, InvariantValue> {
        self.current
            .iter()
            .map(|(&k, &i)| (k, self.trace[i].value))
            .collect()
    }

    /// Queues a seed bound with the rule's default citation.
    pub fn seed(&mut self, rule: Rule, key: FactKey, bound: InvariantValue) {
        self.seed_cited(rule, rule.citation(), key, bound);
    }

    pub fn seed_cited(
        &mut self,
        rule: Rule,
        citation: impl Into<String>,
        key: FactKey,
        bound: InvariantValue,
    ) {
        self.seeds.push(Seed {
            rule,
            citation: citation.into(),
            key,
            bound,
        });
    }

    /// Records `bound` on `key` immediately, even if it adds nothing, so
    /// that it shows up as the latest step for the fact.
    pub fn cross_check(&mut self, rule: Rule, key: FactKey, bound: InvariantValue) -> Result<()> {
        self.narrow(
            rule,
            rule.citation().to_string(),
            key,
            Relation::Given { bound },
            None,
            true,
        )?;
        Ok(())
    }

    /// `a ≤ b`.
    pub fn le(&mut self, rule: Rule, a: FactKey, b: FactKey) {
        self.push(rule, a, b, Relation::AtLeast { factor: 1 });
        self.push(rule, b, a, Relation::AtMost { factor: 1 });
    }

    /// `a = b`.
    pub fn eq(&mut self, rule: Rule, a: FactKey, b: FactKey) {
        self.le(rule, a, b);
        self.le(rule, b, a);
    }

    /// `big = k · small`.
    pub fn scaled_eq(&mut self, rule: Rule, big: FactKey, small: FactKey, k: u32) {
        let k = u64::from(k);
        self.push(rule, small, big, Relation::AtLeast { factor: k });
        self.push(rule, small, big, Relation::AtMost { factor: k });
        self.push(rule, big, small, Relation::AtLeastDiv { divisor: k });
        self.push(rule, big, small, Relation::AtMostDiv { divisor: k });
    }

    /// `a ≤ k · b`.
    pub fn le_scaled(&mut self, rule: Rule, a: FactKey, b: FactKey, k: u32) {
        let k = u64::from(k);
        self.push(rule, b, a, Relation::AtMost { factor: k });
        self.push(rule, a, b, Relation::AtLeastDiv { divisor: k });
    }

    fn push(&mut self, rule: Rule, source: FactKey, target: FactKey, relation: Relation) {
        let p = Propagator {
            rule,
            source,
            target,
            relation,
        };
        if !self.propagators.contains(&p) {
            self.propagators.push(p);
        }
    }

    /// Applies queued seeds, then every constraint until nothing changes.
    /// Ties are broken by rule rank, then by insertion order.
    pub fn propagate(&mut self) -> Result<()> {
        let mut seeds = std::mem::take(&mut self.seeds);
        seeds.sort_by_key(|s| s.rule.rank());
        for s in seeds {
            self.narrow(
                s.rule,
                s.citation,
                s.key,
                Relation::Given { bound: s.bound },
                None,
                false,
            )?;
        }
        self.propagators.sort_by_key(|p| p.rule.rank());
        for _ in 0..MAX_PASSES {
            let mut changed = false;
            for i in 0..self.propagators.len() {
                let p = self.propagators[i];
                let Some(src) = self.current_step(p.source) else {
                    continue;
                };
                changed |= self.narrow(
                    p.rule,
                    p.rule.citation().to_string(),
                    p.target,
                    p.relation,
                    Some(src),
                    false,
                )?;
            }
            if !changed {
                return Ok(());
            }
        }
        Err(Error::input("bound propagation did not settle"))
    }

    fn narrow(
        &mut self,
        rule: Rule,
        citation: String,
        key: FactKey,
        relation: Relation,
        premise: Option<usize>,
        force: bool,
    ) -> Result<bool> {
        let premise_values: Vec<InvariantValue> =
            premise.iter().map(|&p| self.trace[p].value).collect();
        let bound = relation.bound(&premise_values);
        let previous = self.current_step(key);
        let old = self.value(key);
        let Some(new) = old.meet(&bound) else {
            let existing = match previous {
                Some(i) => self.trace[i].summary(i, self.r),
                None => "no earlier bound".to_string(),
            };
            let incoming = DerivationStep {
                rule,
                citation,
                fact: key,
                relation,
                premises: premise.into_iter().collect(),
                refines: previous,
                value: bound,
            };
            return Err(Error::Inconsistency {
                fact: key.display(self.r),
                existing,
                incoming: incoming.summary(self.trace.len(), self.r),
            });
        };
        if new == old && !force {
            return Ok(false);
        }
        self.trace.push(DerivationStep {
            rule,
            citation,
            fact: key,
            relation,
            premises: premise.into_iter().collect(),
            refines: previous,
            value: new,
        });
        self.current.insert(key, self.trace.len() - 1);
        Ok(new != old)
    }

    /// The steps the current value of `key` depends on, renumbered in
    /// order. The last step concludes the fact's current value.
    pub fn sub_trace(&self, key: FactKey) -> Vec<DerivationStep> {
        let Some(last) = self.current_step(key) else {
            return Vec::new();
        };
        let mut keep = BTreeSet::new();
        let mut stack = vec![last];
        while let Some(i) = stack.pop() {
            if keep.insert(i) {
                stack.extend(self.trace[i].premises.iter().copied());
                stack.extend(self.trace[i].refines);
            }
        }
        renumber(&self.trace, &keep)
    }
}

pub(crate) fn renumber(trace: &[DerivationStep], keep: &BTreeSet<usize>) -> Vec<DerivationStep> {
    let index: BTreeMap<usize, usize> = keep
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    keep.iter()
        .map(|&i| {
            let mut s = trace[i].clone();
            s.premises = s.premises.iter().map(|p| index[p]).collect();
            s.refines = s.refines.map(|p| index[&p]);
            s
        })
        .collect()
}
