//! Bounded checkers for shift spaces.
//!
//! The quantifier domain is the set of cylinders of length at most `L`
//! anchored at 0, and the searched group elements are the exponents
//! `|n| <= R` in the order `0, 1, -1, 2, -2, …`. Every positive verdict
//! carries its witnesses; every negative one names the instance that found
//! no witness inside the bounds.

use num_rational::Rational64;
use rayon::prelude::*;

use super::dynamics::{Dynamics, ShiftDynamics};
use super::finite::devaney;
use super::report::{Counterexample, OpenSet, Property, PropertyReport, Verdict, Witness};
use super::CheckError;
use crate::sets::PointSet;
use crate::systems::shift::Pattern;

fn base(d: &ShiftDynamics, property: Property, holds: bool) -> PropertyReport {
    let mut r = PropertyReport::new(property, Verdict::from_outcome(holds, true));
    r.bounds = d.bounds();
    r
}

fn opens(d: &ShiftDynamics, us: &[&Pattern]) -> Vec<OpenSet> {
    us.iter().map(|u| d.describe_open(u)).collect()
}

/// `n_sets[i][j]` = indices of searched exponents `n` with `σ^n(C_i) ∩ C_j ≠ ∅`.
fn return_sets(d: &ShiftDynamics, domain: &[Pattern]) -> Vec<Vec<PointSet>> {
    domain
        .par_iter()
        .map(|u| {
            domain
                .iter()
                .map(|v| {
                    d.elements()
                        .iter()
                        .enumerate()
                        .filter(|(_, n)| d.connects(n, u, v))
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn is_transitive(d: &ShiftDynamics) -> PropertyReport {
    let domain = d.cylinders(d.bounds().expect("bounded").cyl_len);
    let sets = return_sets(d, &domain);
    let mut report = base(d, Property::Transitive, true);
    for (i, u) in domain.iter().enumerate() {
        for (j, v) in domain.iter().enumerate() {
            match sets[i][j].first() {
                Some(k) => report.push_witness(
                    Witness::new(opens(d, &[u]), opens(d, &[v]))
                        .element(d.describe_elem(&d.elements()[k])),
                ),
                None => {
                    return base(d, Property::Transitive, false).with_counterexample(
                        Counterexample::new(
                            opens(d, &[u]),
                            opens(d, &[v]),
                            "no exponent within the radius connects the pair",
                        ),
                    )
                }
            }
        }
    }
    report
}

pub fn is_weakly_mixing(d: &ShiftDynamics) -> PropertyReport {
    let domain = d.cylinders(d.bounds().expect("bounded").cyl_len);
    let sets = return_sets(d, &domain);
    let m = domain.len();
    let mut report = base(d, Property::WeaklyMixing, true);
    for u1 in 0..m {
        for u2 in 0..m {
            for v1 in 0..m {
                for v2 in 0..m {
                    let both = sets[u1][v1].intersection(&sets[u2][v2]);
                    let us = opens(d, &[&domain[u1], &domain[u2]]);
                    let vs = opens(d, &[&domain[v1], &domain[v2]]);
                    match both.first() {
                        Some(k) => {
                            report.witness_count += 1;
                            if report.witnesses.len() < super::report::WITNESS_CAP {
                                report.witnesses.push(
                                    Witness::new(us, vs).element(d.describe_elem(&d.elements()[k])),
                                );
                            }
                        }
                        None => {
                            return base(d, Property::WeaklyMixing, false).with_counterexample(
                                Counterexample::new(
                                    us,
                                    vs,
                                    "no single exponent within the radius connects both pairs",
                                ),
                            )
                        }
                    }
                }
            }
        }
    }
    report
}

/// Failing exponents for one pair, split at the tail threshold.
pub(crate) struct MixingPair {
    pub below: Vec<i64>,
    pub tail: Vec<i64>,
}

pub(crate) fn mixing_pair<D: Dynamics>(
    d: &D,
    u: &D::Open,
    v: &D::Open,
) -> (Vec<D::Elem>, Vec<D::Elem>) {
    let mut below = Vec::new();
    let mut tail = Vec::new();
    for g in d.elements() {
        if !d.connects(g, u, v) {
            if d.in_tail(g) {
                tail.push(g.clone());
            } else {
                below.push(g.clone());
            }
        }
    }
    (below, tail)
}

pub fn is_mixing(d: &ShiftDynamics) -> PropertyReport {
    let bounds = d.bounds().expect("bounded");
    let domain = d.cylinders(bounds.cyl_len);
    if bounds.radius < d.tail() {
        return base(d, Property::Mixing, false)
            .with_counterexample(Counterexample::new(
                vec![],
                vec![],
                format!(
                    "radius {} is below the tail threshold {}",
                    bounds.radius,
                    d.tail()
                ),
            ))
            .note("no exponent lies in the tail, so mixing cannot be certified");
    }
    let pairs: Vec<(usize, usize, MixingPair)> = (0..domain.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let domain = &domain;
            (0..domain.len()).map(move |j| {
                let (below, tail) = mixing_pair(d, &domain[i], &domain[j]);
                (i, j, MixingPair { below, tail })
            })
        })
        .collect();
    let mut report = base(d, Property::Mixing, true);
    let mut excluded: Vec<i64> = Vec::new();
    for (i, j, pair) in &pairs {
        let us = opens(d, &[&domain[*i]]);
        let vs = opens(d, &[&domain[*j]]);
        if let Some(&n) = pair.tail.first() {
            let reason = format!(
                "exponent {n} with |n| >= {} fails to connect the pair; failing exponents beyond the threshold: {:?}",
                d.tail(),
                pair.tail
            );
            return base(d, Property::Mixing, false).with_counterexample(
                Counterexample::new(us, vs, reason).element(d.describe_elem(&n)),
            );
        }
        excluded.extend(&pair.below);
        report.push_witness(Witness::new(us, vs).detail(format!(
            "every |n| in [{}, {}] connects; excluded {:?}",
            d.tail(),
            bounds.radius,
            pair.below
        )));
    }
    let order = d.elements();
    excluded.sort_by_key(|n| order.iter().position(|m| m == n));
    excluded.dedup();
    report.excluded = Some(excluded.iter().map(|n| d.describe_elem(n)).collect());
    report
}

pub fn has_dense_periodic_points(d: &ShiftDynamics) -> PropertyReport {
    let domain = d.cylinders(d.bounds().expect("bounded").cyl_len);
    let mut report = base(d, Property::DensePeriodicPoints, true);
    for u in &domain {
        match d.pick_point(u) {
            Some(x) => {
                report.orbit_sizes.push(x.period());
                report.push_witness(
                    Witness::new(opens(d, &[u]), vec![])
                        .points(vec![d.describe_point(&x)])
                        .detail(format!("period {}", x.period())),
                );
            }
            None => {
                return base(d, Property::DensePeriodicPoints, false).with_counterexample(
                    Counterexample::new(
                        opens(d, &[u]),
                        vec![],
                        "no cycle of the transition graph passes through the cylinder",
                    ),
                )
            }
        }
    }
    report
}

/// Two symbols realizable at coordinate `n` inside `u`, if any.
fn split_at(d: &ShiftDynamics, u: &Pattern, n: i64) -> Option<(u8, u8)> {
    let k = d.space().sft().alphabet_size() as u8;
    let mut found = (0..k).filter(|&s| d.is_nonempty(&u.meet(&Pattern::cylinder(&[s], n))));
    Some((found.next()?, found.next()?))
}

/// Sensitivity at the largest `δ <= 1` in the grid. The shift metric has
/// diameter 1, and two points differing at coordinate `n` are at distance 1
/// after applying `σ^n`; so if two symbols occur at coordinate `n` inside a
/// cylinder, every point of it has a partner separated by `σ^n`.
pub fn is_sdic(d: &ShiftDynamics, delta_grid: &[Rational64]) -> Result<PropertyReport, CheckError> {
    if delta_grid.is_empty() {
        return Err(CheckError::EmptyGrid);
    }
    let one = Rational64::from_integer(1);
    let Some(delta) = delta_grid
        .iter()
        .filter(|&&x| x > Rational64::from_integer(0) && x <= one)
        .max()
    else {
        let mut r = base(d, Property::Sdic, false).with_counterexample(Counterexample::new(
            vec![],
            vec![],
            "every δ in the grid exceeds the diameter 1 of the shift metric",
        ));
        r.delta = delta_grid.iter().min().map(|x| x.to_string());
        return Ok(r);
    };
    let domain = d.cylinders(d.bounds().expect("bounded").cyl_len);
    let mut report = base(d, Property::Sdic, true);
    report.delta = Some(delta.to_string());
    for u in &domain {
        let found = d
            .elements()
            .iter()
            .find_map(|&n| split_at(d, u, n).map(|s| (n, s)));
        match found {
            Some((n, (a, b))) => report.push_witness(
                Witness::new(opens(d, &[u]), vec![])
                    .element(d.describe_elem(&n))
                    .detail(format!("symbols {a} and {b} both occur at coordinate {n}")),
            ),
            None => {
                let mut r =
                    base(d, Property::Sdic, false).with_counterexample(Counterexample::new(
                        opens(d, &[u]),
                        vec![],
                        "every coordinate within the radius is determined inside the cylinder",
                    ));
                r.delta = Some(delta.to_string());
                return Ok(r);
            }
        }
    }
    Ok(report)
}

pub fn is_devaney_chaotic(d: &ShiftDynamics) -> PropertyReport {
    let sdic = is_sdic(d, &[Rational64::from_integer(1)]).expect("non-empty grid");
    devaney(is_transitive(d), has_dense_periodic_points(d), sdic, true)
}

/// On a shift, independent exponents per coordinate reduce the product-group
/// condition to transitivity on each coordinate.
pub fn is_product_group_transitive(d: &ShiftDynamics) -> PropertyReport {
    let mut r = is_transitive(d);
    r.property = Property::ProductGroupTransitive;
    r.notes.push(
        "independent exponents per coordinate: equivalent to transitivity of each factor".into(),
    );
    r
}

pub fn check(d: &ShiftDynamics, property: Property) -> PropertyReport {
    match property {
        Property::Transitive => is_transitive(d),
        Property::WeaklyMixing => is_weakly_mixing(d),
        Property::Mixing => is_mixing(d),
        Property::DensePeriodicPoints => has_dense_periodic_points(d),
        Property::Sdic => is_sdic(d, &[Rational64::from_integer(1)]).expect("non-empty grid"),
        Property::DevaneyChaotic => is_devaney_chaotic(d),
        Property::ProductGroupTransitive => is_product_group_transitive(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::report::Bounds;
    use crate::group::GroupElement;
    use crate::systems::sft::Sft;
    use crate::systems::shift::ShiftSpace;

    fn dyn_of(sft: Sft) -> ShiftDynamics {
        ShiftDynamics::new(ShiftSpace::new(sft), Bounds::default())
    }

    #[test]
    fn full_shift() {
        let d = dyn_of(Sft::full_shift(2).unwrap());
        for p in Property::STANDARD {
            assert_eq!(check(&d, p).verdict, Verdict::HoldsUpToBounds, "{p}");
        }
        assert_eq!(is_weakly_mixing(&d).witness_count, 14u64.pow(4));
    }

    #[test]
    fn swap_and_split() {
        let swap = dyn_of(Sft::swap());
        assert_eq!(is_transitive(&swap).verdict, Verdict::HoldsUpToBounds);
        assert_eq!(is_weakly_mixing(&swap).verdict, Verdict::FailsWithinBounds);
        assert_eq!(is_mixing(&swap).verdict, Verdict::FailsWithinBounds);
        assert_eq!(
            is_sdic(&swap, &[Rational64::from_integer(1)])
                .unwrap()
                .verdict,
            Verdict::FailsWithinBounds
        );
        let split = dyn_of(Sft::split());
        assert_eq!(is_transitive(&split).verdict, Verdict::FailsWithinBounds);
        assert_eq!(
            has_dense_periodic_points(&split).verdict,
            Verdict::HoldsUpToBounds
        );
    }

    #[test]
    fn golden_mean_mixing_excludes_small_exponents() {
        let d = dyn_of(Sft::golden_mean());
        let r = is_mixing(&d);
        assert_eq!(r.verdict, Verdict::HoldsUpToBounds);
        let excluded = r.excluded.unwrap();
        assert!(excluded.contains(&GroupElement::Exponents(vec![1])));
        assert!(excluded.iter().all(|g| g.length() < d.tail()));
    }

    #[test]
    fn sdic_grid() {
        let d = dyn_of(Sft::full_shift(2).unwrap());
        assert!(is_sdic(&d, &[]).is_err());
        let r = is_sdic(&d, &[Rational64::new(1, 2), Rational64::from_integer(1)]).unwrap();
        assert_eq!(r.delta.as_deref(), Some("1"));
        let r = is_sdic(&d, &[Rational64::from_integer(2)]).unwrap();
        assert_eq!(r.verdict, Verdict::FailsWithinBounds);
    }
}
