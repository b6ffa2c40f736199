//! Verdicts and property reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::group::GroupElement;
use crate::sets::PointSet;
use crate::systems::shift::PeriodicPoint;

/// Recorded witnesses per report; the total count is always kept.
pub const WITNESS_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Every instance in the bounded domain has a recorded witness.
    HoldsUpToBounds,
    /// Holds only because the definition is satisfied trivially.
    VacuouslyHolds,
    /// Some instance in the bounded domain has no witness within the bounds.
    FailsWithinBounds,
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(
            self,
            Self::Holds | Self::HoldsUpToBounds | Self::VacuouslyHolds
        )
    }

    pub fn is_bounded(self) -> bool {
        matches!(self, Self::HoldsUpToBounds | Self::FailsWithinBounds)
    }

    /// The matching verdict for a positive or negative outcome.
    pub fn from_outcome(holds: bool, bounded: bool) -> Self {
        match (holds, bounded) {
            (true, false) => Self::Holds,
            (false, false) => Self::Fails,
            (true, true) => Self::HoldsUpToBounds,
            (false, true) => Self::FailsWithinBounds,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Holds => "holds",
            Self::Fails => "fails",
            Self::HoldsUpToBounds => "holds-up-to-bounds",
            Self::VacuouslyHolds => "vacuously-holds",
            Self::FailsWithinBounds => "fails-within-bounds",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Transitive,
    WeaklyMixing,
    Mixing,
    DensePeriodicPoints,
    Sdic,
    DevaneyChaotic,
    /// Transitivity of `Γ × Γ` on `X × X`; diagnostic only.
    ProductGroupTransitive,
}

impl Property {
    /// The six properties of the definitions, in report order.
    pub const STANDARD: [Property; 6] = [
        Self::Transitive,
        Self::WeaklyMixing,
        Self::Mixing,
        Self::DensePeriodicPoints,
        Self::Sdic,
        Self::DevaneyChaotic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Transitive => "transitive",
            Self::WeaklyMixing => "weakly-mixing",
            Self::Mixing => "mixing",
            Self::DensePeriodicPoints => "dense-periodic-points",
            Self::Sdic => "sdic",
            Self::DevaneyChaotic => "devaney-chaotic",
            Self::ProductGroupTransitive => "product-group-transitive",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let all = Self::STANDARD
            .into_iter()
            .chain([Self::ProductGroupTransitive]);
        all.into_iter()
            .find(|p| p.as_str() == s.trim())
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// Bounds of a bounded-mode certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Exponents `|n| <= radius` are searched.
    pub radius: u64,
    /// Cylinders of length `1..=cyl_len` anchored at 0 form the domain.
    pub cyl_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            radius: 12,
            cyl_len: 3,
        }
    }
}

/// An open set as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenSet {
    Points(PointSet),
    Cylinder {
        anchor: i64,
        word: Vec<u8>,
    },
    /// Fixed coordinates `[position, symbol]`; empty means the whole space.
    Pattern(Vec<(i64, u8)>),
}

/// A point as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PointRepr {
    Index(usize),
    Periodic(PeriodicPoint),
}

/// One instance of the property's quantifier together with what satisfied it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub us: Vec<OpenSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vs: Vec<OpenSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<GroupElement>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    pub fn new(us: Vec<OpenSet>, vs: Vec<OpenSet>) -> Self {
        Self {
            us,
            vs,
            element: None,
            points: Vec::new(),
            detail: None,
        }
    }

    pub fn element(mut self, g: GroupElement) -> Self {
        self.element = Some(g);
        self
    }

    pub fn points(mut self, points: Vec<PointRepr>) -> Self {
        self.points = points;
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// An instance of the quantifier with no witness, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub us: Vec<OpenSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vs: Vec<OpenSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<GroupElement>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointRepr>,
    pub reason: String,
}

impl Counterexample {
    pub fn new(us: Vec<OpenSet>, vs: Vec<OpenSet>, reason: impl Into<String>) -> Self {
        Self {
            us,
            vs,
            element: None,
            points: Vec::new(),
            reason: reason.into(),
        }
    }

    pub fn element(mut self, g: GroupElement) -> Self {
        self.element = Some(g);
        self
    }

    pub fn points(mut self, points: Vec<PointRepr>) -> Self {
        self.points = points;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    pub witness_count: u64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Sensitivity constant, as an exact rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    /// The finite exclusion set of the mixing definition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<Vec<GroupElement>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orbit_sizes: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Sub-reports, e.g. the two conditions of Devaney chaos.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<PropertyReport>,
}

impl PropertyReport {
    pub fn new(property: Property, verdict: Verdict) -> Self {
        Self {
            property,
            verdict,
            bounds: None,
            witness_count: 0,
            witnesses: Vec::new(),
            counterexample: None,
            delta: None,
            excluded: None,
            orbit_sizes: Vec::new(),
            notes: Vec::new(),
            components: Vec::new(),
        }
    }

    /// Records a witness; only the first [`WITNESS_CAP`] are kept.
    pub fn push_witness(&mut self, w: Witness) {
        self.witness_count += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(w);
        }
    }

    pub fn with_counterexample(mut self, c: Counterexample) -> Self {
        self.counterexample = Some(c);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn component(&self, p: Property) -> Option<&PropertyReport> {
        self.components.iter().find(|c| c.property == p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Property::STANDARD {
            assert_eq!(p.as_str().parse::<Property>(), Ok(p));
            assert_eq!(serde_json::to_value(p).unwrap(), p.as_str());
        }
        for v in [
            Verdict::Holds,
            Verdict::Fails,
            Verdict::HoldsUpToBounds,
            Verdict::VacuouslyHolds,
            Verdict::FailsWithinBounds,
        ] {
            assert_eq!(serde_json::to_value(v).unwrap(), v.as_str());
        }
        assert!("chaos".parse::<Property>().is_err());
    }

    #[test]
    fn witness_cap() {
        let mut r = PropertyReport::new(Property::Transitive, Verdict::Holds);
        for _ in 0..100 {
            r.push_witness(Witness::new(vec![], vec![]));
        }
        assert_eq!(r.witness_count, 100);
        assert_eq!(r.witnesses.len(), WITNESS_CAP);
    }

    #[test]
    fn open_set_shapes() {
        let c = OpenSet::Cylinder {
            anchor: 0,
            word: vec![1, 0],
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"cylinder":{"anchor":0,"word":[1,0]}}"#
        );
        let p = OpenSet::Points([0, 2].into_iter().collect());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"points":[0,2]}"#);
    }
}
