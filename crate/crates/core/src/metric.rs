//! Finite metric spaces with exact rational distances, point-to-set
//! distance and the Hausdorff metric.
//!
//! Distances are stored as ranks into a sorted table of the distinct values
//! that occur. Point-to-set and Hausdorff distances are built from `min` and
//! `max` only, so they always land on an existing level and can be computed
//! on ranks without touching rational arithmetic.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use num_rational::Rational64;
use num_traits::{CheckedAdd, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::sets::PointSet;

pub type Distance = Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance table is malformed: {0}")]
    Malformed(String),
    #[error("metric axioms violated: {}", fmt_violations(.0))]
    Axioms(Vec<AxiomViolation>),
    #[error("set is empty")]
    EmptySet,
    #[error("point {point} is out of range for a space with {points} points")]
    PointOutOfRange { point: usize, points: usize },
}

fn fmt_violations(v: &[AxiomViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A single failed metric axiom together with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    Identity { i: usize },
    Positivity { i: usize, j: usize },
    Symmetry { i: usize, j: usize },
    Triangle { i: usize, j: usize, k: usize },
    Overflow { i: usize, j: usize, k: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity { i } => write!(f, "identity: d({i},{i}) != 0"),
            Self::Positivity { i, j } => write!(f, "positivity: d({i},{j}) <= 0"),
            Self::Symmetry { i, j } => write!(f, "symmetry: d({i},{j}) != d({j},{i})"),
            Self::Triangle { i, j, k } => {
                write!(f, "triangle: d({i},{k}) > d({i},{j}) + d({j},{k})")
            }
            Self::Overflow { i, j, k } => {
                write!(f, "overflow evaluating triangle at ({i},{j},{k})")
            }
        }
    }
}

/// Checks the three metric axioms on a raw distance table.
///
/// A table with the wrong shape is reported as [`MetricError::Malformed`];
/// axiom failures are collected in [`MetricError::Axioms`].
pub fn validate_metric(rows: &[Vec<Distance>]) -> Result<(), MetricError> {
    let n = rows.len();
    if n == 0 {
        return Err(MetricError::Malformed("space has no points".into()));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(MetricError::Malformed(format!(
            "row {i} has {} entries, expected {n}",
            r.len()
        )));
    }
    let violations = axiom_violations(n, |i, j| rows[i][j]);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(MetricError::Axioms(violations))
    }
}

fn axiom_violations(n: usize, d: impl Fn(usize, usize) -> Distance) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    for i in 0..n {
        if !d(i, i).is_zero() {
            out.push(AxiomViolation::Identity { i });
        }
        for j in 0..n {
            if i != j && d(i, j) <= Distance::zero() {
                out.push(AxiomViolation::Positivity { i, j });
            }
            if i < j && d(i, j) != d(j, i) {
                out.push(AxiomViolation::Symmetry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                match d(i, j).checked_add(&d(j, k)) {
                    Some(sum) if d(i, k) > sum => out.push(AxiomViolation::Triangle { i, j, k }),
                    Some(_) => {}
                    None => out.push(AxiomViolation::Overflow { i, j, k }),
                }
            }
        }
    }
    out
}

/// A finite metric space `(X, d)` on the points `0..point_count`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    n: usize,
    levels: Vec<Distance>,
    ranks: Vec<u16>,
}

impl fmt::Debug for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMetricSpace")
            .field("points", &self.n)
            .field("levels", &self.levels)
            .finish()
    }
}

impl FiniteMetricSpace {
    /// Builds a space from a full distance table, validating every axiom.
    pub fn from_rows(rows: Vec<Vec<Distance>>) -> Result<Self, MetricError> {
        validate_metric(&rows)?;
        let n = rows.len();
        let levels: Vec<Distance> = rows
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if levels.len() > usize::from(u16::MAX) {
            return Err(MetricError::Malformed("too many distinct distances".into()));
        }
        let ranks = rows
            .iter()
            .flatten()
            .map(|d| levels.binary_search(d).expect("level present") as u16)
            .collect();
        Ok(Self { n, levels, ranks })
    }

    /// Builds a space from an already ranked table. The caller guarantees
    /// the metric axioms.
    pub(crate) fn from_ranked(n: usize, levels: Vec<Distance>, ranks: Vec<u16>) -> Self {
        debug_assert_eq!(ranks.len(), n * n);
        Self { n, levels, ranks }
    }

    /// Every off-diagonal distance equals one.
    pub fn discrete(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Distance::from_integer(i64::from(i != j)))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("discrete metric is valid")
    }

    /// `d(i, j) = |i - j|`.
    pub fn line(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Distance::from_integer(i.abs_diff(j) as i64))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("line metric is valid")
    }

    /// Graph distance on the n-cycle.
    pub fn cycle(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = i.abs_diff(j);
                        Distance::from_integer(k.min(n - k) as i64)
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("cycle metric is valid")
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> Distance {
        self.levels[usize::from(self.rank(i, j))]
    }

    /// Position of `d(i, j)` in the sorted table of distinct distances.
    pub fn rank(&self, i: usize, j: usize) -> u16 {
        self.ranks[i * self.n + j]
    }

    pub fn level(&self, rank: u16) -> Distance {
        self.levels[usize::from(rank)]
    }

    /// Distinct distance values in increasing order; the first is zero.
    pub fn levels(&self) -> &[Distance] {
        &self.levels
    }

    pub fn rows(&self) -> Vec<Vec<Distance>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.dist(i, j)).collect())
            .collect()
    }

    /// All off-diagonal distances are equal to one.
    pub fn is_discrete(&self) -> bool {
        match self.levels.as_slice() {
            [_] => true,
            [_, one] => *one == Distance::from_integer(1),
            _ => false,
        }
    }

    /// Re-runs the axiom checks on the stored table.
    pub fn violations(&self) -> Vec<AxiomViolation> {
        axiom_violations(self.n, |i, j| self.dist(i, j))
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<(), MetricError> {
        if point < self.n {
            Ok(())
        } else {
            Err(MetricError::PointOutOfRange {
                point,
                points: self.n,
            })
        }
    }

    pub(crate) fn check_set(&self, set: &PointSet) -> Result<(), MetricError> {
        if set.is_empty() {
            return Err(MetricError::EmptySet);
        }
        if set.bound() > self.n {
            return Err(MetricError::PointOutOfRange {
                point: set.bound() - 1,
                points: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn point_set_rank(&self, x: usize, set: &PointSet) -> u16 {
        set.iter()
            .map(|s| self.rank(x, s))
            .min()
            .expect("non-empty set")
    }

    pub(crate) fn directed_rank(&self, from: &PointSet, to: &PointSet) -> u16 {
        from.iter()
            .map(|a| self.point_set_rank(a, to))
            .max()
            .expect("non-empty set")
    }
}

/// A non-empty set of points of a given space: an element of the hyperspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CompactSet(PointSet);

impl CompactSet {
    pub fn new(members: PointSet, point_count: usize) -> Result<Self, MetricError> {
        if members.is_empty() {
            return Err(MetricError::EmptySet);
        }
        if members.bound() > point_count {
            return Err(MetricError::PointOutOfRange {
                point: members.bound() - 1,
                points: point_count,
            });
        }
        Ok(Self(members))
    }

    pub fn members(&self) -> &PointSet {
        &self.0
    }

    pub fn into_members(self) -> PointSet {
        self.0
    }
}

impl Deref for CompactSet {
    type Target = PointSet;

    fn deref(&self) -> &PointSet {
        &self.0
    }
}

/// `d(x, S) = min_{s in S} d(x, s)`.
pub fn point_set_distance(
    space: &FiniteMetricSpace,
    x: usize,
    set: &PointSet,
) -> Result<Distance, MetricError> {
    space.check_point(x)?;
    space.check_set(set)?;
    Ok(space.level(space.point_set_rank(x, set)))
}

/// The Hausdorff distance: the larger of the two directed sup-inf distances.
pub fn hausdorff_distance(
    space: &FiniteMetricSpace,
    a: &PointSet,
    b: &PointSet,
) -> Result<Distance, MetricError> {
    space.check_set(a)?;
    space.check_set(b)?;
    let rank = space.directed_rank(a, b).max(space.directed_rank(b, a));
    Ok(space.level(rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Distance {
        Distance::from_integer(n)
    }

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(
            validate_metric(&[vec![r(0), r(1)], vec![r(1), r(0)]]),
            Ok(())
        );

        let asym = validate_metric(&[vec![r(0), r(1)], vec![r(2), r(0)]]).unwrap_err();
        assert_eq!(
            asym,
            MetricError::Axioms(vec![AxiomViolation::Symmetry { i: 0, j: 1 }])
        );

        let tri = vec![
            vec![r(0), r(1), r(5)],
            vec![r(1), r(0), r(1)],
            vec![r(5), r(1), r(0)],
        ];
        match validate_metric(&tri).unwrap_err() {
            MetricError::Axioms(v) => {
                assert!(v.contains(&AxiomViolation::Triangle { i: 0, j: 1, k: 2 }));
                assert!(v
                    .iter()
                    .all(|x| matches!(x, AxiomViolation::Triangle { .. })));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn malformed_is_not_an_axiom_violation() {
        let e = validate_metric(&[vec![r(0), r(1)], vec![r(1)]]).unwrap_err();
        assert!(matches!(e, MetricError::Malformed(_)));
        assert!(matches!(
            validate_metric(&[]).unwrap_err(),
            MetricError::Malformed(_)
        ));
    }

    #[test]
    fn identity_and_positivity() {
        let e = validate_metric(&[vec![r(1), r(0)], vec![r(0), r(0)]]).unwrap_err();
        let MetricError::Axioms(v) = e else { panic!() };
        assert!(v.contains(&AxiomViolation::Identity { i: 0 }));
        assert!(v.contains(&AxiomViolation::Positivity { i: 0, j: 1 }));
    }

    #[test]
    fn point_set_distance_examples() {
        let line = FiniteMetricSpace::line(3);
        assert_eq!(point_set_distance(&line, 1, &set(&[0, 1])), Ok(r(0)));
        assert_eq!(point_set_distance(&line, 0, &set(&[1, 2])), Ok(r(1)));
        assert_eq!(point_set_distance(&line, 2, &set(&[0])), Ok(r(2)));
        assert_eq!(
            point_set_distance(&line, 0, &PointSet::empty()),
            Err(MetricError::EmptySet)
        );
        assert!(matches!(
            point_set_distance(&line, 3, &set(&[0])),
            Err(MetricError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn hausdorff_examples() {
        let line = FiniteMetricSpace::line(3);
        let h = |a: &[usize], b: &[usize]| hausdorff_distance(&line, &set(a), &set(b)).unwrap();
        assert_eq!(h(&[0], &[2]), r(2));
        assert_eq!(h(&[0, 2], &[1]), r(1));
        assert_eq!(h(&[0], &[0, 2]), r(2));
        assert_eq!(h(&[0, 1, 2], &[0, 1, 2]), r(0));
        assert_eq!(
            hausdorff_distance(&line, &PointSet::empty(), &set(&[0])),
            Err(MetricError::EmptySet)
        );
    }

    #[test]
    fn builtin_metrics() {
        assert!(FiniteMetricSpace::discrete(4).is_discrete());
        assert!(FiniteMetricSpace::discrete(1).is_discrete());
        assert!(!FiniteMetricSpace::line(3).is_discrete());
        assert_eq!(FiniteMetricSpace::cycle(6).dist(0, 5), r(1));
        assert_eq!(FiniteMetricSpace::cycle(6).dist(0, 3), r(3));
        assert!(FiniteMetricSpace::cycle(5).violations().is_empty());
    }

    #[test]
    fn rational_levels() {
        let half = Distance::new(1, 2);
        let s = FiniteMetricSpace::from_rows(vec![
            vec![r(0), half, r(1)],
            vec![half, r(0), half],
            vec![r(1), half, r(0)],
        ])
        .unwrap();
        assert_eq!(s.levels(), &[r(0), half, r(1)]);
        assert_eq!(s.dist(0, 2), r(1));
        assert_eq!(s.rank(0, 1), 1);
    }

    #[test]
    fn compact_set_rejects_empty_and_out_of_range() {
        assert_eq!(
            CompactSet::new(PointSet::empty(), 3),
            Err(MetricError::EmptySet)
        );
        assert!(CompactSet::new(set(&[3]), 3).is_err());
        assert_eq!(CompactSet::new(set(&[2]), 3).unwrap().to_vec(), vec![2]);
    }
}
