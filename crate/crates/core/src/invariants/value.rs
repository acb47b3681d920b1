use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of ℕ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    pub const ZERO: Bound = Bound::Finite(0);

    pub fn is_infinite(self) -> bool {
        matches!(self, Bound::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Bound::Finite(n) => Some(n),
            Bound::Infinite => None,
        }
    }

    /// `k · self` with `k ≥ 1`; overflow and ∞ saturate to ∞, `0 · ∞ = 0`.
    pub fn times(self, k: u64) -> Bound {
        match self {
            Bound::Finite(n) => n.checked_mul(k).map_or(Bound::Infinite, Bound::Finite),
            Bound::Infinite if k == 0 => Bound::ZERO,
            Bound::Infinite => Bound::Infinite,
        }
    }

    /// `⌈self / k⌉`, with `∞ / k = ∞`.
    pub fn div_ceil(self, k: u64) -> Bound {
        match self {
            Bound::Finite(n) => Bound::Finite(n.div_ceil(k)),
            Bound::Infinite => Bound::Infinite,
        }
    }

    /// `⌊self / k⌋`, with `∞ / k = ∞`.
    pub fn div_floor(self, k: u64) -> Bound {
        match self {
            Bound::Finite(n) => Bound::Finite(n / k),
            Bound::Infinite => Bound::Infinite,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Infinite) => Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Bound {
    fn from(n: u64) -> Self {
        Bound::Finite(n)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Infinite => write!(f, "infinity"),
        }
    }
}

/// Closed interval `[lo, hi]` over ℕ ∪ {∞}. Exact values and ∞ are the
/// degenerate intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantValue {
    lo: Bound,
    hi: Bound,
}

/// Shape of a value as reported to users.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Exact(u64),
    Infinite,
    Interval(u64, Bound),
}

impl InvariantValue {
    pub fn exact(n: u64) -> Self {
        InvariantValue {
            lo: Bound::Finite(n),
            hi: Bound::Finite(n),
        }
    }

    pub fn infinite() -> Self {
        InvariantValue {
            lo: Bound::Infinite,
            hi: Bound::Infinite,
        }
    }

    /// `[0, ∞]`, the value carrying no information.
    pub fn unknown() -> Self {
        InvariantValue {
            lo: Bound::ZERO,
            hi: Bound::Infinite,
        }
    }

    pub fn at_least(lo: Bound) -> Self {
        InvariantValue {
            lo,
            hi: Bound::Infinite,
        }
    }

    pub fn at_most(hi: Bound) -> Self {
        InvariantValue {
            lo: Bound::ZERO,
            hi,
        }
    }

    pub fn between(lo: Bound, hi: Bound) -> Result<Self> {
        if lo > hi {
            return Err(Error::input(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(InvariantValue { lo, hi })
    }

    pub fn interval(lo: u64, hi: u64) -> Result<Self> {
        Self::between(Bound::Finite(lo), Bound::Finite(hi))
    }

    pub fn lo(&self) -> Bound {
        self.lo
    }

    pub fn hi(&self) -> Bound {
        self.hi
    }

    pub fn kind(&self) -> ValueKind {
        match (self.lo, self.hi) {
            (Bound::Infinite, _) => ValueKind::Infinite,
            (Bound::Finite(a), Bound::Finite(b)) if a == b => ValueKind::Exact(a),
            (Bound::Finite(a), hi) => ValueKind::Interval(a, hi),
        }
    }

    pub fn as_exact(&self) -> Option<u64> {
        match self.kind() {
            ValueKind::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: Bound) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Every point of `other` lies in `self`.
    pub fn encloses(&self, other: &InvariantValue) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Intersection, `None` when empty.
    pub fn meet(&self, other: &InvariantValue) -> Option<InvariantValue> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(InvariantValue { lo, hi })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &InvariantValue) -> InvariantValue {
        InvariantValue {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Multiplies both endpoints by `k`.
    pub fn times(&self, k: u64) -> InvariantValue {
        InvariantValue {
            lo: self.lo.times(k),
            hi: self.hi.times(k),
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ValueKind::Exact(n) => write!(f, "{n}"),
            ValueKind::Infinite => write!(f, "infinity"),
            ValueKind::Interval(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

const INFINITY: &str = "infinity";

/// Exact values serialize as numbers, ∞ as `"infinity"`, intervals as
/// two-element arrays whose upper slot may be `"infinity"`.
impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.kind() {
            ValueKind::Exact(n) => s.serialize_u64(n),
            ValueKind::Infinite => s.serialize_str(INFINITY),
            ValueKind::Interval(a, b) => {
                let mut t = s.serialize_tuple(2)?;
                t.serialize_element(&a)?;
                match b {
                    Bound::Finite(n) => t.serialize_element(&n)?,
                    Bound::Infinite => t.serialize_element(INFINITY)?,
                }
                t.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BoundRepr {
    Number(u64),
    Word(String),
}

impl BoundRepr {
    fn into_bound<E: de::Error>(self) -> std::result::Result<Bound, E> {
        match self {
            BoundRepr::Number(n) => Ok(Bound::Finite(n)),
            BoundRepr::Word(w) if w == INFINITY => Ok(Bound::Infinite),
            BoundRepr::Word(w) => Err(E::custom(format!("expected \"{INFINITY}\", got {w:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ValueRepr {
    Single(BoundRepr),
    Pair(BoundRepr, BoundRepr),
}

impl<'de> Deserialize<'de> for InvariantValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ValueRepr::deserialize(d)? {
            ValueRepr::Single(b) => match b.into_bound()? {
                Bound::Finite(n) => Ok(InvariantValue::exact(n)),
                Bound::Infinite => Ok(InvariantValue::infinite()),
            },
            ValueRepr::Pair(lo, hi) => {
                let (lo, hi) = (lo.into_bound()?, hi.into_bound()?);
                InvariantValue::between(lo, hi).map_err(de::Error::custom)
            }
        }
    }
}
