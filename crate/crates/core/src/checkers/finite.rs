//! Exact checkers for finite systems.
//!
//! A finite metric space is topologically discrete, so every non-empty open
//! set contains a singleton and `γ(U) ∩ V ≠ ∅` holds iff it holds for some
//! pair of singletons inside `U` and `V`. Each quantifier over opens is
//! therefore decided over points, and each quantifier over the group over
//! its finite image, using that every fiber is infinite when the group is.

use num_rational::Rational64;

use super::report::{
    Counterexample, OpenSet, PointRepr, Property, PropertyReport, Verdict, Witness,
};
use crate::group::ActionSystem;
use crate::sets::PointSet;
use crate::systems::families::product_group_square;

fn single(x: usize) -> Vec<OpenSet> {
    vec![OpenSet::Points(PointSet::singleton(x))]
}

/// `table[g][x] = g·x` for every image element.
fn action_table(sys: &ActionSystem) -> Vec<Vec<usize>> {
    sys.image().elements().iter().map(|p| p.images()).collect()
}

pub fn is_transitive(sys: &ActionSystem) -> PropertyReport {
    let n = sys.point_count();
    let table = action_table(sys);
    let orbit = sys.orbit(0);
    if orbit.len() < n {
        let y = (0..n)
            .find(|&y| !orbit.contains(y))
            .expect("orbit is proper");
        let reason = format!(
            "the image group has {} orbits; no element maps 0 into {{{y}}}",
            sys.orbits().len()
        );
        return PropertyReport::new(Property::Transitive, Verdict::Fails)
            .with_counterexample(Counterexample::new(single(0), single(y), reason));
    }
    let mut report = PropertyReport::new(Property::Transitive, Verdict::Holds);
    'outer: for x in 0..n {
        for y in 0..n {
            if report.witnesses.len() == super::report::WITNESS_CAP {
                break 'outer;
            }
            let g = table
                .iter()
                .position(|row| row[x] == y)
                .expect("single orbit");
            report.push_witness(
                Witness::new(single(x), single(y)).element(sys.image().representative(g).clone()),
            );
        }
    }
    report.witness_count = (n * n) as u64;
    report
}

pub fn is_weakly_mixing(sys: &ActionSystem) -> PropertyReport {
    let n = sys.point_count();
    let table = action_table(sys);
    let mut report = PropertyReport::new(Property::WeaklyMixing, Verdict::Holds);
    for x1 in 0..n {
        for x2 in 0..n {
            // first[y1 * n + y2] = least image element with g x1 = y1, g x2 = y2
            let mut first = vec![usize::MAX; n * n];
            for (g, row) in table.iter().enumerate().rev() {
                first[row[x1] * n + row[x2]] = g;
            }
            for y1 in 0..n {
                for y2 in 0..n {
                    let g = first[y1 * n + y2];
                    if g == usize::MAX {
                        let reason = if x1 == x2 && y1 != y2 {
                            format!(
                                "singleton obstruction: γ{{{x1}}} meets {{{y1}}} and {{{y2}}} only if γ{x1} = {y1} = {y2}"
                            )
                        } else {
                            format!("no element maps {x1} to {y1} and {x2} to {y2} at once")
                        };
                        let mut us = single(x1);
                        us.extend(single(x2));
                        let mut vs = single(y1);
                        vs.extend(single(y2));
                        return PropertyReport::new(Property::WeaklyMixing, Verdict::Fails)
                            .with_counterexample(Counterexample::new(us, vs, reason));
                    }
                    if report.witnesses.len() < super::report::WITNESS_CAP {
                        let mut us = single(x1);
                        us.extend(single(x2));
                        let mut vs = single(y1);
                        vs.extend(single(y2));
                        report.push_witness(
                            Witness::new(us, vs).element(sys.image().representative(g).clone()),
                        );
                    }
                }
            }
        }
    }
    report.witness_count = (n as u64).pow(4);
    report
}

pub fn is_mixing(sys: &ActionSystem) -> PropertyReport {
    let image = sys.image();
    if !image.fibers_infinite() {
        let mut report = PropertyReport::new(Property::Mixing, Verdict::VacuouslyHolds)
            .note("the group is finite: F = Γ excludes every element");
        report.excluded = Some(
            (0..image.order())
                .map(|g| image.representative(g).clone())
                .collect(),
        );
        return report;
    }
    let n = sys.point_count();
    let table = action_table(sys);
    for (g, row) in table.iter().enumerate() {
        for x in 0..n {
            for y in 0..n {
                if row[x] != y {
                    let reason = match image.kernel_basis() {
                        Some(basis) => format!(
                            "every element of the coset {} + span{:?} maps {x} to {}, so no finite F excludes them",
                            image.representative(g),
                            basis,
                            row[x]
                        ),
                        None => format!(
                            "the fiber over this image element is infinite and maps {x} to {}",
                            row[x]
                        ),
                    };
                    return PropertyReport::new(Property::Mixing, Verdict::Fails)
                        .with_counterexample(
                            Counterexample::new(single(x), single(y), reason)
                                .element(image.representative(g).clone()),
                        );
                }
            }
        }
    }
    // Only reachable with a single point.
    let mut report = PropertyReport::new(Property::Mixing, Verdict::Holds);
    report.excluded = Some(Vec::new());
    report.push_witness(Witness::new(single(0), single(0)).detail("every group element"));
    report
}

pub fn has_dense_periodic_points(sys: &ActionSystem) -> PropertyReport {
    let mut report = PropertyReport::new(Property::DensePeriodicPoints, Verdict::Holds);
    let orbits = sys.orbits();
    let size_of = |x: usize| {
        orbits
            .iter()
            .find(|o| o.contains(x))
            .expect("partition")
            .len() as u64
    };
    for x in 0..sys.point_count() {
        let size = size_of(x);
        report.orbit_sizes.push(size);
        report.push_witness(
            Witness::new(single(x), vec![])
                .points(vec![PointRepr::Index(x)])
                .detail(format!("orbit size {size}")),
        );
    }
    report
}

/// Every point of a finite space is isolated, which defeats every `δ > 0`.
pub fn is_sdic(sys: &ActionSystem, delta_grid: &[Rational64]) -> PropertyReport {
    let _ = sys;
    let mut report = PropertyReport::new(Property::Sdic, Verdict::Fails).with_counterexample(
        Counterexample::new(
            single(0),
            vec![],
            "isolated-point obstruction: the neighborhood {0} of 0 forces y = 0, so d(γ0, γy) = 0 for every γ and every δ > 0",
        )
        .points(vec![PointRepr::Index(0)]),
    );
    if !delta_grid.is_empty() {
        let grid: Vec<String> = delta_grid.iter().map(|d| d.to_string()).collect();
        report = report.note(format!("fails for every δ in [{}]", grid.join(", ")));
    }
    report
}

pub fn is_devaney_chaotic(sys: &ActionSystem) -> PropertyReport {
    devaney(
        is_transitive(sys),
        has_dense_periodic_points(sys),
        is_sdic(sys, &[]),
        false,
    )
}

/// Transitivity and dense periodic points decide; sensitivity is attached
/// for information only.
pub(crate) fn devaney(
    transitive: PropertyReport,
    periodic: PropertyReport,
    sdic: PropertyReport,
    bounded: bool,
) -> PropertyReport {
    let holds = transitive.verdict.holds() && periodic.verdict.holds();
    let mut report = PropertyReport::new(
        Property::DevaneyChaotic,
        Verdict::from_outcome(holds, bounded),
    );
    report.counterexample = [&transitive, &periodic]
        .into_iter()
        .find(|r| !r.verdict.holds())
        .and_then(|r| r.counterexample.clone());
    report.bounds = transitive.bounds;
    report
        .notes
        .push("sensitivity is attached for information and does not affect the verdict".into());
    report.components = vec![transitive, periodic, sdic];
    report
}

/// Transitivity of `Γ × Γ` on `X × X`: a diagnostic that differs from weak
/// mixing, where a single `γ` acts on both coordinates.
pub fn is_product_group_transitive(sys: &ActionSystem) -> PropertyReport {
    let square = product_group_square(sys);
    let mut report = is_transitive(&square);
    report.property = Property::ProductGroupTransitive;
    report.notes.push(format!(
        "checked on {} with independent elements per coordinate",
        square.label()
    ));
    report
}

pub fn check(sys: &ActionSystem, property: Property) -> PropertyReport {
    match property {
        Property::Transitive => is_transitive(sys),
        Property::WeaklyMixing => is_weakly_mixing(sys),
        Property::Mixing => is_mixing(sys),
        Property::DensePeriodicPoints => has_dense_periodic_points(sys),
        Property::Sdic => is_sdic(sys, &[Rational64::from_integer(1)]),
        Property::DevaneyChaotic => is_devaney_chaotic(sys),
        Property::ProductGroupTransitive => is_product_group_transitive(sys),
    }
}
