//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the library's decision procedures: groups are closed
//! from the raw generator permutations, opens are bitmasks, and every
//! quantifier is evaluated directly.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use hyperdyn::checkers::Verdict;
use hyperdyn::group::{ActionSystem, GroupKind, GroupSpec, Permutation};
use hyperdyn::metric::FiniteMetricSpace;
use hyperdyn::systems::families::{
    cyclic_rotation, default_finite_family, diagonal_square, identity, product_group_square,
    symmetric_on_3,
};
use num_rational::Rational64;
use proptest::prelude::*;

/// Every builtin finite system with at most `max_points` points.
pub fn builtin_finite(max_points: usize) -> Vec<ActionSystem> {
    let mut all = default_finite_family();
    all.push(symmetric_on_3());
    all.push(diagonal_square(&cyclic_rotation(2)));
    all.push(product_group_square(&cyclic_rotation(2)));
    all.extend([
        identity(4),
        identity(6),
        cyclic_rotation(7),
        cyclic_rotation(8),
        identity(8),
    ]);
    let mut seen = BTreeSet::new();
    all.retain(|s| s.point_count() <= max_points && seen.insert(s.label().to_string()));
    all
}

/// The full image group, closed by breadth-first search from the raw
/// generators and their inverses.
pub fn close_group(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut step: Vec<Vec<usize>> = Vec::new();
    for g in gens {
        let mut inv = vec![0; n];
        for (i, &j) in g.iter().enumerate() {
            inv[j] = i;
        }
        step.push(g.clone());
        step.push(inv);
    }
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        for s in &step {
            let q: Vec<usize> = p.iter().map(|&x| s[x]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
        out.push(p);
    }
    out
}

pub struct Brute {
    pub n: usize,
    pub dist: Vec<Vec<Rational64>>,
    pub group: Vec<Vec<usize>>,
    /// The acting group is finite, as opposed to `Z^d` with `d >= 1`.
    pub finite_group: bool,
}

impl Brute {
    pub fn new(sys: &ActionSystem) -> Self {
        let n = sys.point_count();
        let gens: Vec<Vec<usize>> = sys
            .group()
            .generators()
            .iter()
            .map(|g| g.forward.images())
            .collect();
        Self {
            n,
            dist: sys.space().rows(),
            group: close_group(n, &gens),
            finite_group: sys.group().kind() == GroupKind::Finite || gens.is_empty(),
        }
    }

    pub fn masks(&self) -> std::ops::Range<u64> {
        1..1u64 << self.n
    }

    pub fn image(&self, g: &[usize], mask: u64) -> u64 {
        (0..self.n)
            .filter(|&x| mask >> x & 1 == 1)
            .fold(0, |m, x| m | 1 << g[x])
    }

    /// `images[g][U]` for every group element and open.
    fn images(&self) -> Vec<Vec<u64>> {
        self.group
            .iter()
            .map(|g| (0..1u64 << self.n).map(|u| self.image(g, u)).collect())
            .collect()
    }

    pub fn transitive(&self) -> Verdict {
        let im = self.images();
        let holds = self.masks().all(|u| {
            self.masks()
                .all(|v| im.iter().any(|row| row[u as usize] & v != 0))
        });
        Verdict::from_outcome(holds, false)
    }

    pub fn weakly_mixing(&self) -> Verdict {
        let im = self.images();
        let holds = self.masks().all(|u1| {
            self.masks().all(|u2| {
                self.masks().all(|v1| {
                    self.masks().all(|v2| {
                        im.iter()
                            .any(|row| row[u1 as usize] & v1 != 0 && row[u2 as usize] & v2 != 0)
                    })
                })
            })
        });
        Verdict::from_outcome(holds, false)
    }

    /// With a finite group `F = Γ` works; for `Z^d` every image element has
    /// an infinite fiber, so each one must connect every pair.
    pub fn mixing(&self) -> Verdict {
        if self.finite_group {
            return Verdict::VacuouslyHolds;
        }
        let im = self.images();
        let holds = self.masks().all(|u| {
            self.masks()
                .all(|v| im.iter().all(|row| row[u as usize] & v != 0))
        });
        Verdict::from_outcome(holds, false)
    }

    /// Every open contains a point with a finite orbit.
    pub fn dense_periodic_points(&self) -> Verdict {
        let orbit_finite = |x: usize| {
            self.group
                .iter()
                .map(|g| g[x])
                .collect::<BTreeSet<_>>()
                .len()
                <= self.n
        };
        let holds = self
            .masks()
            .all(|u| (0..self.n).any(|x| u >> x & 1 == 1 && orbit_finite(x)));
        Verdict::from_outcome(holds, false)
    }

    /// Some `δ` among the positive distances such that every open around
    /// every point holds a `y` separated from `x` by some element.
    pub fn sdic(&self) -> Verdict {
        let deltas: BTreeSet<Rational64> = self
            .dist
            .iter()
            .flatten()
            .copied()
            .filter(|d| *d > Rational64::from_integer(0))
            .collect();
        let holds = deltas.iter().any(|&delta| {
            (0..self.n).all(|x| {
                self.masks().filter(|u| u >> x & 1 == 1).all(|u| {
                    (0..self.n)
                        .filter(|&y| u >> y & 1 == 1)
                        .any(|y| self.group.iter().any(|g| self.dist[g[x]][g[y]] >= delta))
                })
            })
        });
        Verdict::from_outcome(holds, false)
    }

    pub fn devaney(&self) -> Verdict {
        Verdict::from_outcome(
            self.transitive().holds() && self.dense_periodic_points().holds(),
            false,
        )
    }

    pub fn orbit_of_set(&self, mask: u64) -> usize {
        self.group
            .iter()
            .map(|g| self.image(g, mask))
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// `max(max_a min_b d, max_b min_a d)` over bitmasks.
pub fn hausdorff(dist: &[Vec<Rational64>], a: u64, b: u64) -> Rational64 {
    let pts = |m: u64| (0..dist.len()).filter(move |&x| m >> x & 1 == 1);
    let directed = |a: u64, b: u64| {
        pts(a)
            .map(|x| pts(b).map(|y| dist[x][y]).min().unwrap())
            .max()
            .unwrap()
    };
    directed(a, b).max(directed(b, a))
}

/// Shortest-path closure of positive weights: always a metric.
pub fn metric_from_weights(n: usize, weights: &[Rational64]) -> Vec<Vec<Rational64>> {
    let zero = Rational64::from_integer(0);
    let mut d = vec![vec![zero; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            d[i][j] = weights[k % weights.len()];
            d[j][i] = d[i][j];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}

pub fn arb_rational() -> impl Strategy<Value = Rational64> {
    (1i64..=20, 1i64..=6).prop_map(|(p, q)| Rational64::new(p, q))
}

pub fn arb_metric(max_points: usize) -> impl Strategy<Value = Vec<Vec<Rational64>>> {
    (1..=max_points).prop_flat_map(|n| {
        prop::collection::vec(arb_rational(), n * n.saturating_sub(1) / 2 + 1)
            .prop_map(move |w| metric_from_weights(n, &w))
    })
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// Random small systems: `Z` or `Z^2` acting through powers of one
/// permutation, or a finite group generated by two arbitrary permutations.
pub fn arb_system(max_points: usize) -> impl Strategy<Value = ActionSystem> {
    arb_metric(max_points)
        .prop_flat_map(|rows| {
            let n = rows.len();
            (
                Just(rows),
                arb_permutation(n),
                arb_permutation(n),
                0u8..3,
                0i64..4,
            )
        })
        .prop_map(|(rows, p, q, kind, e)| {
            let n = rows.len();
            let space = FiniteMetricSpace::from_rows(rows).expect("closure gives a metric");
            let p = Permutation::new(p).unwrap();
            let (kind, gens, abelian) = match kind {
                0 => (GroupKind::FreeAbelian, vec![p], true),
                1 => (GroupKind::FreeAbelian, vec![p.clone(), p.pow(e)], true),
                _ => {
                    let q = Permutation::new(q).unwrap();
                    let abelian = p.commutes_with(&q).is_none();
                    (GroupKind::Finite, vec![p, q], abelian)
                }
            };
            let group = GroupSpec::new(kind, gens, abelian, n).expect("consistent");
            ActionSystem::new("random", space, group).expect("valid")
        })
}

/// Least `e <= (k-1)^2 + 1` with a positive `m^e`, by repeated boolean
/// products.
pub fn primitive_exponent(m: &[Vec<u8>]) -> Option<usize> {
    let k = m.len();
    let mul = |a: &Vec<Vec<bool>>, b: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).any(|l| a[i][l] && b[l][j])).collect())
            .collect()
    };
    let base: Vec<Vec<bool>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x != 0).collect())
        .collect();
    let mut p = base.clone();
    for e in 1..=(k - 1) * (k - 1) + 1 {
        if p.iter().flatten().all(|&x| x) {
            return Some(e);
        }
        p = mul(&p, &base);
    }
    None
}

/// gcd of the cycle lengths through state 0, for an irreducible matrix.
pub fn period(m: &[Vec<u8>]) -> usize {
    let k = m.len();
    let mut g = 0usize;
    let mut reach = vec![false; k];
    reach[0] = true;
    for len in 1..=2 * k * k {
        let next: Vec<bool> = (0..k)
            .map(|j| (0..k).any(|i| reach[i] && m[i][j] != 0))
            .collect();
        if next[0] {
            g = num_integer::gcd(g, len);
        }
        reach = next;
    }
    g
}
