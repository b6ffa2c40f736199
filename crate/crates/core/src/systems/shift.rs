//! Cylinder-level machinery for the shift action on an SFT: exact-length
//! reachability, finite position patterns (intersections of cylinders) and
//! periodic points with a finite description.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::sft::{Cylinder, Sft, TransitionMatrix};

/// Powers `M^j` of the transition matrix, `j = 0, 1, …`.
#[derive(Debug, Clone)]
pub struct Reach {
    matrix: TransitionMatrix,
    powers: Vec<TransitionMatrix>,
}

/// Powers precomputed up front; longer gaps are computed on demand.
const PRECOMPUTED_POWERS: usize = 256;

impl Reach {
    pub fn new(matrix: &TransitionMatrix) -> Self {
        let mut powers = vec![TransitionMatrix::identity(matrix.size())];
        for j in 1..=PRECOMPUTED_POWERS {
            let next = powers[j - 1].bool_mul(matrix);
            powers.push(next);
        }
        Self {
            matrix: matrix.clone(),
            powers,
        }
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    /// Whether a path of exactly `len` steps leads from `a` to `b`.
    pub fn reachable(&self, a: usize, b: usize, len: usize) -> bool {
        match self.powers.get(len) {
            Some(p) => p.allowed(a, b),
            None => {
                let mut acc = self.powers[PRECOMPUTED_POWERS].clone();
                let mut rest = len - PRECOMPUTED_POWERS;
                while rest > 0 {
                    let step = rest.min(PRECOMPUTED_POWERS);
                    acc = acc.bool_mul(&self.powers[step]);
                    rest -= step;
                }
                acc.allowed(a, b)
            }
        }
    }

    /// The symbols strictly between `a` and `b` on the least path of exactly
    /// `len` steps, choosing the smallest next symbol at each step.
    pub fn path_between(&self, a: usize, b: usize, len: usize) -> Option<Vec<u8>> {
        if len == 0 || !self.reachable(a, b, len) {
            return None;
        }
        let mut out = Vec::with_capacity(len.saturating_sub(1));
        let mut cur = a;
        for step in (1..len).rev() {
            let next = (0..self.matrix.size())
                .find(|&c| self.matrix.allowed(cur, c) && self.reachable(c, b, step))
                .expect("reachable path continues");
            out.push(next as u8);
            cur = next;
        }
        Some(out)
    }

    /// Least `len >= 1` with a path from `a` to `b`.
    pub fn shortest(&self, a: usize, b: usize) -> Option<usize> {
        (1..=self.matrix.size()).find(|&len| self.reachable(a, b, len))
    }
}

/// Finitely many fixed coordinates `x_p = s`: a cylinder or an intersection
/// of cylinders at arbitrary anchors. The empty pattern is the whole space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pattern {
    cells: Vec<(i64, u8)>,
    /// Two cells disagree at one coordinate.
    contradiction: bool,
}

impl Pattern {
    pub fn whole() -> Self {
        Self {
            cells: Vec::new(),
            contradiction: false,
        }
    }

    pub fn cylinder(word: &[u8], anchor: i64) -> Self {
        Self {
            cells: word
                .iter()
                .enumerate()
                .map(|(i, &s)| (anchor + i as i64, s))
                .collect(),
            contradiction: false,
        }
    }

    pub fn from_cylinder(c: &Cylinder) -> Self {
        Self::cylinder(&c.word, c.anchor)
    }

    pub fn cells(&self) -> &[(i64, u8)] {
        &self.cells
    }

    pub fn is_contradiction(&self) -> bool {
        self.contradiction
    }

    /// `σ^n(P)`, where `(σx)_i = x_{i+1}`: every fixed coordinate moves by `-n`.
    pub fn shifted(&self, n: i64) -> Self {
        Self {
            cells: self.cells.iter().map(|&(p, s)| (p - n, s)).collect(),
            contradiction: self.contradiction,
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + other.cells.len());
        let mut contradiction = self.contradiction || other.contradiction;
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() || j < other.cells.len() {
            let take_left = match (self.cells.get(i), other.cells.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    contradiction |= a.1 != b.1;
                    cells.push(*a);
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(a), Some(b)) => a.0 < b.0,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if take_left {
                cells.push(self.cells[i]);
                i += 1;
            } else {
                cells.push(other.cells[j]);
                j += 1;
            }
        }
        Self {
            cells,
            contradiction,
        }
    }

    /// Exact non-emptiness in the SFT: consecutive fixed coordinates must be
    /// joined by a path of exactly the right length. Every symbol extends
    /// both ways after pruning, so nothing else is needed.
    pub fn is_nonempty(&self, reach: &Reach) -> bool {
        !self.contradiction
            && self
                .cells
                .iter()
                .all(|&(_, s)| (s as usize) < reach.matrix.size())
            && self.cells.windows(2).all(|w| {
                reach.reachable(w[0].1 as usize, w[1].1 as usize, (w[1].0 - w[0].0) as usize)
            })
    }

    pub fn contains(&self, x: &PeriodicPoint) -> bool {
        !self.contradiction && self.cells.iter().all(|&(p, s)| x.at(p) == s)
    }

    /// A contiguous pattern as a cylinder, when it is one.
    pub fn as_cylinder(&self) -> Option<Cylinder> {
        let first = self.cells.first()?;
        let contiguous = self.cells.windows(2).all(|w| w[1].0 == w[0].0 + 1);
        (contiguous && !self.contradiction).then(|| Cylinder {
            anchor: first.0,
            word: self.cells.iter().map(|c| c.1).collect(),
        })
    }

    /// A periodic point inside the pattern: fill the gaps with least paths,
    /// then close a least cycle from the last symbol back to the first.
    pub fn periodic_point(&self, reach: &Reach) -> Option<PeriodicPoint> {
        if !self.is_nonempty(reach) {
            return None;
        }
        let Some(&(start, first)) = self.cells.first() else {
            return least_cycle(reach);
        };
        let mut block = vec![first];
        for w in self.cells.windows(2) {
            let gap = (w[1].0 - w[0].0) as usize;
            block.extend(reach.path_between(w[0].1 as usize, w[1].1 as usize, gap)?);
            block.push(w[1].1);
        }
        let last = *block.last().expect("non-empty") as usize;
        let close = reach.shortest(last, first as usize)?;
        block.extend(reach.path_between(last, first as usize, close)?);
        Some(PeriodicPoint::new(block, start))
    }
}

fn least_cycle(reach: &Reach) -> Option<PeriodicPoint> {
    (0..reach.matrix.size()).find_map(|a| {
        let len = reach.shortest(a, a)?;
        let mut block = vec![a as u8];
        block.extend(reach.path_between(a, a, len)?);
        Some(PeriodicPoint::new(block, 0))
    })
}

/// The point `x_i = block[(i - offset) mod p]`, kept in canonical form:
/// the block is primitive and `0 <= offset < p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PeriodicPoint {
    block: Vec<u8>,
    offset: i64,
}

impl PeriodicPoint {
    pub fn new(block: Vec<u8>, offset: i64) -> Self {
        assert!(!block.is_empty(), "periodic block must be non-empty");
        let p = block.len();
        let period = (1..=p)
            .filter(|d| p % d == 0)
            .find(|&d| (0..p).all(|i| block[i] == block[i % d]))
            .expect("p divides itself");
        let mut block = block;
        block.truncate(period);
        Self {
            offset: offset.rem_euclid(period as i64),
            block,
        }
    }

    pub fn period(&self) -> u64 {
        self.block.len() as u64
    }

    pub fn block(&self) -> &[u8] {
        &self.block
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn at(&self, i: i64) -> u8 {
        self.block[(i - self.offset).rem_euclid(self.block.len() as i64) as usize]
    }

    /// `σ^n(x)`, with `(σ^n x)_i = x_{i+n}`.
    pub fn shifted(&self, n: i64) -> Self {
        Self::new(self.block.clone(), self.offset - n)
    }
}

/// Least common multiple of the periods: the index of the joint stabilizer.
pub fn joint_period(points: &[PeriodicPoint]) -> u64 {
    points.iter().fold(1u64, |acc, p| acc.lcm(&p.period()))
}

/// An SFT bundled with its reachability table.
#[derive(Debug, Clone)]
pub struct ShiftSpace {
    sft: Sft,
    reach: Arc<Reach>,
}

impl ShiftSpace {
    pub fn new(sft: Sft) -> Self {
        let reach = Arc::new(Reach::new(sft.matrix()));
        Self { sft, reach }
    }

    pub fn sft(&self) -> &Sft {
        &self.sft
    }

    pub fn reach(&self) -> &Reach {
        &self.reach
    }

    pub fn name(&self) -> &str {
        self.sft.name()
    }

    /// Candidate exponents within `radius`: `0, 1, -1, 2, -2, …`.
    pub fn exponents(radius: u64) -> Vec<i64> {
        let r = radius as i64;
        std::iter::once(0)
            .chain((1..=r).flat_map(|n| [n, -n]))
            .collect()
    }

    /// `σ^n(U) ∩ V ≠ ∅`.
    pub fn connects(&self, n: i64, u: &Pattern, v: &Pattern) -> bool {
        u.shifted(n).meet(v).is_nonempty(&self.reach)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ShiftSpace {
        ShiftSpace::new(Sft::golden_mean())
    }

    #[test]
    fn reach_and_paths() {
        let g = golden();
        assert!(!g.reach().reachable(1, 1, 1));
        assert!(g.reach().reachable(1, 1, 2));
        assert_eq!(g.reach().path_between(1, 1, 2), Some(vec![0]));
        assert_eq!(g.reach().path_between(1, 1, 1), None);
        assert_eq!(g.reach().shortest(0, 0), Some(1));
        assert!(g.reach().reachable(1, 1, 1000));
    }

    #[test]
    fn pattern_meet_and_emptiness() {
        let g = golden();
        let a = Pattern::cylinder(&[1], 0);
        let b = Pattern::cylinder(&[1], 1);
        assert!(!a.meet(&b).is_nonempty(g.reach()));
        assert!(a.meet(&Pattern::cylinder(&[1], 2)).is_nonempty(g.reach()));
        assert!(a.meet(&Pattern::cylinder(&[0], 0)).is_contradiction());
        assert!(Pattern::whole().is_nonempty(g.reach()));
        assert_eq!(a.shifted(1).cells(), &[(-1, 1)]);
    }

    #[test]
    fn periodic_points_in_cylinders() {
        let g = golden();
        let p = Pattern::cylinder(&[1, 0], 0)
            .periodic_point(g.reach())
            .unwrap();
        assert_eq!(p.block(), &[1, 0]);
        assert!(Pattern::cylinder(&[1, 0], 0).contains(&p));
        let full = ShiftSpace::new(Sft::full_shift(2).unwrap());
        let w = Pattern::cylinder(&[0, 1, 1], 0)
            .periodic_point(full.reach())
            .unwrap();
        assert_eq!(w.block(), &[0, 1, 1]);
        // split shift: no cycle from 0 back through 1
        let split = ShiftSpace::new(Sft::split());
        let p = Pattern::cylinder(&[0], 0).meet(&Pattern::cylinder(&[1], 3));
        assert!(!p.is_nonempty(split.reach()));
    }

    #[test]
    fn periodic_point_canonical_form() {
        let p = PeriodicPoint::new(vec![0, 1, 0, 1], 5);
        assert_eq!(p.block(), &[0, 1]);
        assert_eq!(p.offset(), 1);
        assert_eq!(p.at(1), 0);
        assert_eq!(p.shifted(1).at(0), p.at(1));
        assert_eq!(p.shifted(2), p);
        assert_eq!(joint_period(&[p, PeriodicPoint::new(vec![0, 0, 1], 0)]), 6);
    }

    #[test]
    fn exponent_order() {
        assert_eq!(ShiftSpace::exponents(2), vec![0, 1, -1, 2, -2]);
    }
}
