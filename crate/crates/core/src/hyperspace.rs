//! The hyperspace `(Sub_X, Γ̂)` of a finite system: every non-empty subset
//! with the Hausdorff metric and the induced action `γ̂(A) = γ(A)`.
//!
//! Elements are enumerated in bit order: element `i` is the subset whose
//! bitmask is `i + 1`.

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{ActionSystem, GroupError, GroupSpec, Permutation};
use crate::metric::{CompactSet, FiniteMetricSpace};
use crate::sets::{submasks, PointSet};

pub const DEFAULT_HYPERSPACE_CAP: usize = 12;
/// Hard ceiling: the rank table for 13 points already holds 8191² entries.
pub const MAX_HYPERSPACE_CAP: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperspaceError {
    #[error("base space has {points} points, hyperspace cap is {cap}")]
    CapExceeded { points: usize, cap: usize },
    #[error("hyperspace cap {0} exceeds the supported maximum {MAX_HYPERSPACE_CAP}")]
    InvalidCap(usize),
    #[error("a Vietoris basic open needs at least one open set")]
    EmptyBasic,
    #[error("open set {0} of a Vietoris basic open is empty")]
    EmptyOpen(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A base system together with its induced system on the hyperspace.
#[derive(Debug, Clone)]
pub struct HyperspaceSystem {
    base: ActionSystem,
    system: ActionSystem,
}

impl HyperspaceSystem {
    pub fn base(&self) -> &ActionSystem {
        &self.base
    }

    /// The induced system, a plain [`ActionSystem`] on `2^n - 1` points.
    pub fn system(&self) -> &ActionSystem {
        &self.system
    }

    pub fn element_count(&self) -> usize {
        self.system.point_count()
    }

    pub fn element(&self, index: usize) -> CompactSet {
        CompactSet::new(
            PointSet::from_mask(index as u64 + 1),
            self.base.point_count(),
        )
        .expect("element index in range")
    }

    pub fn index_of(&self, set: &PointSet) -> Option<usize> {
        let mask = set.to_mask()?;
        (mask != 0 && set.bound() <= self.base.point_count()).then(|| mask as usize - 1)
    }

    /// The induced generators `γ̂_i` as bijections of the element list.
    pub fn induced_generators(&self) -> Vec<&Permutation> {
        self.system
            .group()
            .generators()
            .iter()
            .map(|g| &g.forward)
            .collect()
    }
}

/// Builds `(Sub_X, Γ̂)` for a base with at most `cap` points.
pub fn build_hyperspace_system(
    base: &ActionSystem,
    cap: usize,
) -> Result<HyperspaceSystem, HyperspaceError> {
    if cap > MAX_HYPERSPACE_CAP {
        return Err(HyperspaceError::InvalidCap(cap));
    }
    let n = base.point_count();
    if n > cap {
        return Err(HyperspaceError::CapExceeded { points: n, cap });
    }
    let space = hausdorff_table(base.space());
    let induced: Vec<Permutation> = base
        .group()
        .generators()
        .iter()
        .map(|g| induced_permutation(&g.forward, n))
        .collect();
    let group = GroupSpec::new(
        base.group().kind(),
        induced,
        base.group().is_abelian(),
        space.point_count(),
    )?;
    let system = ActionSystem::new(format!("hyperspace({})", base.label()), space, group)?;
    Ok(HyperspaceSystem {
        base: base.clone(),
        system,
    })
}

fn induced_permutation(p: &Permutation, n: usize) -> Permutation {
    let full = 1usize << n;
    let mut image = vec![0usize; full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        image[mask] = image[mask & (mask - 1)] | (1 << p.apply(low));
    }
    Permutation::new(image[1..].iter().map(|m| m - 1).collect())
        .expect("induced map is a bijection")
}

/// Hausdorff distances between all pairs of non-empty subsets, as ranks
/// into the base space's distance levels.
fn hausdorff_table(space: &FiniteMetricSpace) -> FiniteMetricSpace {
    let n = space.point_count();
    let full = 1usize << n;
    let m = full - 1;
    // nearest[x][S] = rank of d(x, S), for every mask S (S = 0 unused).
    let nearest: Vec<Vec<u16>> = (0..n)
        .map(|x| {
            let mut row = vec![u16::MAX; full];
            for mask in 1..full {
                let low = mask.trailing_zeros() as usize;
                row[mask] = row[mask & (mask - 1)].min(space.rank(x, low));
            }
            row
        })
        .collect();
    // directed[A][B] = max_{a in A} d(a, B)
    let mut directed = vec![0u16; m * m];
    directed
        .par_chunks_mut(m)
        .enumerate()
        .for_each(|(ai, row)| {
            let a = ai + 1;
            for x in PointSet::from_mask(a as u64).iter() {
                for (cell, &d) in row.iter_mut().zip(&nearest[x][1..]) {
                    *cell = (*cell).max(d);
                }
            }
        });
    let mut ranks = vec![0u16; m * m];
    ranks.par_chunks_mut(m).enumerate().for_each(|(i, row)| {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = directed[i * m + j].max(directed[j * m + i]);
        }
    });
    FiniteMetricSpace::from_ranked(m, space.levels().to_vec(), ranks)
}

/// The basic open `⟨U_1, …, U_n⟩` of the Vietoris topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VietorisBasic {
    opens: Vec<PointSet>,
}

impl VietorisBasic {
    pub fn new(opens: Vec<PointSet>) -> Result<Self, HyperspaceError> {
        if opens.is_empty() {
            return Err(HyperspaceError::EmptyBasic);
        }
        if let Some(i) = opens.iter().position(PointSet::is_empty) {
            return Err(HyperspaceError::EmptyOpen(i));
        }
        Ok(Self { opens })
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }
}

/// `A ⊆ ⋃ U_i` and `A ∩ U_i ≠ ∅` for every `i`.
pub fn vietoris_contains(basic: &VietorisBasic, set: &PointSet) -> bool {
    let union = basic
        .opens
        .iter()
        .fold(PointSet::empty(), |acc, u| acc.union(u));
    set.is_subset(&union) && basic.opens.iter().all(|u| u.intersects(set))
}

/// Extends the shorter family with copies of its last open set so both have
/// the same number of open sets.
///
/// Copies of the whole space would not do: `⟨{0}⟩ = {{0}}` while
/// `⟨{0}, X⟩` holds every set containing `0`. A repeated entry leaves both
/// the union and the meeting conditions unchanged.
pub fn pad_to_common_length(
    first: &VietorisBasic,
    second: &VietorisBasic,
) -> (VietorisBasic, VietorisBasic) {
    let k = first.len().max(second.len());
    let pad = |v: &VietorisBasic| {
        let mut opens = v.opens.clone();
        let last = opens.last().cloned().expect("basics are non-empty");
        opens.resize(k, last);
        VietorisBasic { opens }
    };
    (pad(first), pad(second))
}

/// `e(U)`: every non-empty subset of `U`, in bit order.
pub fn extension_members(u: &PointSet) -> Vec<CompactSet> {
    let Some(mask) = u.to_mask() else {
        panic!("extension enumeration supports at most 64 points");
    };
    submasks(mask)
        .map(|m| CompactSet::new(PointSet::from_mask(m), 64).expect("non-empty"))
        .collect()
}

/// Membership predicate for `e(U)`.
pub fn in_extension(u: &PointSet, k: &PointSet) -> bool {
    !k.is_empty() && k.is_subset(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupElement, GroupKind};
    use crate::metric::{hausdorff_distance, Distance};

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    fn rotation(n: usize) -> ActionSystem {
        let g = GroupSpec::new(
            GroupKind::FreeAbelian,
            vec![Permutation::rotation(n)],
            true,
            n,
        )
        .unwrap();
        ActionSystem::new(format!("rot{n}"), FiniteMetricSpace::discrete(n), g).unwrap()
    }

    #[test]
    fn single_point_base() {
        let h = build_hyperspace_system(&rotation(1), 12).unwrap();
        assert_eq!(h.element_count(), 1);
    }

    #[test]
    fn two_point_discrete() {
        let h = build_hyperspace_system(&rotation(2), 12).unwrap();
        assert_eq!(h.element_count(), 3);
        assert_eq!(h.element(0).to_vec(), vec![0]);
        assert_eq!(h.element(2).to_vec(), vec![0, 1]);
        assert_eq!(h.system().space().dist(0, 2), Distance::from_integer(1));
        // induced swap exchanges {0} and {1}, fixes {0,1}
        assert_eq!(h.induced_generators()[0].images(), vec![1, 0, 2]);
    }

    #[test]
    fn identity_induces_identity() {
        let g = GroupSpec::new(
            GroupKind::FreeAbelian,
            vec![Permutation::identity(3)],
            true,
            3,
        )
        .unwrap();
        let s = ActionSystem::new("id3", FiniteMetricSpace::discrete(3), g).unwrap();
        let h = build_hyperspace_system(&s, 12).unwrap();
        assert!(h.induced_generators()[0].is_identity());
    }

    #[test]
    fn table_matches_direct_hausdorff() {
        let g = GroupSpec::new(
            GroupKind::FreeAbelian,
            vec![Permutation::identity(4)],
            true,
            4,
        )
        .unwrap();
        let s = ActionSystem::new("line4", FiniteMetricSpace::line(4), g).unwrap();
        let h = build_hyperspace_system(&s, 12).unwrap();
        for i in 0..h.element_count() {
            for j in 0..h.element_count() {
                let direct = hausdorff_distance(s.space(), &h.element(i), &h.element(j)).unwrap();
                assert_eq!(h.system().space().dist(i, j), direct);
            }
        }
        assert!(h.system().space().violations().is_empty());
    }

    #[test]
    fn induced_action_matches_act_on_set() {
        let s = rotation(4);
        let h = build_hyperspace_system(&s, 12).unwrap();
        let g = GroupElement::Exponents(vec![1]);
        for i in 0..h.element_count() {
            let direct = s.act_on_set(&g, &h.element(i)).unwrap();
            let induced = h.system().evaluate(&g, i).unwrap();
            assert_eq!(h.element(induced).members(), &direct);
        }
        assert_eq!(h.index_of(&set(&[0, 1])), Some(2));
        assert_eq!(h.index_of(&PointSet::empty()), None);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            build_hyperspace_system(&rotation(4), 3).unwrap_err(),
            HyperspaceError::CapExceeded { points: 4, cap: 3 }
        );
        assert_eq!(
            build_hyperspace_system(&rotation(2), 20).unwrap_err(),
            HyperspaceError::InvalidCap(20)
        );
    }

    #[test]
    fn vietoris_examples() {
        let x = VietorisBasic::new(vec![PointSet::full(3)]).unwrap();
        for m in 1..8u64 {
            assert!(vietoris_contains(&x, &PointSet::from_mask(m)));
        }
        let v = VietorisBasic::new(vec![set(&[0]), set(&[1])]).unwrap();
        assert!(vietoris_contains(&v, &set(&[0, 1])));
        assert!(!vietoris_contains(&v, &set(&[0])));
        assert!(!vietoris_contains(&v, &set(&[0, 1, 2])));
        assert_eq!(VietorisBasic::new(vec![]), Err(HyperspaceError::EmptyBasic));
        assert_eq!(
            VietorisBasic::new(vec![set(&[1]), PointSet::empty()]),
            Err(HyperspaceError::EmptyOpen(1))
        );
    }

    #[test]
    fn padding_example() {
        let u = VietorisBasic::new(vec![set(&[0])]).unwrap();
        let v = VietorisBasic::new(vec![set(&[1]), set(&[2])]).unwrap();
        let (pu, pv) = pad_to_common_length(&u, &v);
        assert_eq!(pu.opens(), &[set(&[0]), set(&[0])]);
        assert_eq!(pv, v);
        let (a, b) = pad_to_common_length(&v, &v);
        assert_eq!((a, b), (v.clone(), v.clone()));
        // The whole-space padding changes membership.
        let widened = VietorisBasic::new(vec![set(&[0]), PointSet::full(3)]).unwrap();
        assert!(!vietoris_contains(&u, &set(&[0, 1])));
        assert!(vietoris_contains(&widened, &set(&[0, 1])));
    }

    #[test]
    fn padding_preserves_membership() {
        for n in 1..=4usize {
            let opens: Vec<PointSet> = (1..1u64 << n).map(PointSet::from_mask).collect();
            for a in &opens {
                for b in &opens {
                    let u = VietorisBasic::new(vec![a.clone()]).unwrap();
                    let v = VietorisBasic::new(vec![a.clone(), b.clone(), a.clone()]).unwrap();
                    let (pu, pv) = pad_to_common_length(&u, &v);
                    assert_eq!(pu.len(), 3);
                    for m in 1..1u64 << n {
                        let s = PointSet::from_mask(m);
                        assert_eq!(vietoris_contains(&u, &s), vietoris_contains(&pu, &s));
                        assert_eq!(vietoris_contains(&v, &s), vietoris_contains(&pv, &s));
                    }
                }
            }
        }
    }

    #[test]
    fn extension_examples() {
        assert!(extension_members(&PointSet::empty()).is_empty());
        assert_eq!(extension_members(&PointSet::full(4)).len(), 15);
        let u = set(&[1, 3, 4]);
        let e = extension_members(&u);
        assert_eq!(e.len(), 7);
        assert!(e.iter().all(|k| in_extension(&u, k)));
        assert!(!in_extension(&u, &PointSet::empty()));
    }
}
