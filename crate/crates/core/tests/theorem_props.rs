mod common;

use common::arb_system;
use hyperdyn::systems::families::{cyclic_rotation, SystemHandle};
use hyperdyn::systems::sft::Sft;
use hyperdyn::theorems::suite::{load_suite, parse_suite, run_suite};
use hyperdyn::theorems::{verify_theorem, CaseVerdict, HarnessError, TheoremId, VerifyOptions};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn no_refuted_case(sys in arb_system(4)) {
        let h = SystemHandle::Finite(sys);
        for id in TheoremId::ALL {
            match verify_theorem(id, &h, &VerifyOptions::default()) {
                Ok(case) => {
                    prop_assert_ne!(case.verdict, CaseVerdict::Refuted, "{} {:?}", id, case.notes);
                    prop_assert!(case.witnesses.all_sound);
                    for c in &case.corollaries {
                        prop_assert_ne!(c.outcome, CaseVerdict::Refuted);
                    }
                }
                Err(HarnessError::NonAbelian { .. }) => prop_assert!(id.requires_abelian()),
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}

#[test]
fn corollaries_follow_the_equivalence() {
    let case = verify_theorem(
        TheoremId::T36,
        &SystemHandle::Shift(Sft::golden_mean()),
        &VerifyOptions::default(),
    )
    .unwrap();
    assert_eq!(case.verdict, CaseVerdict::Confirmed);
    let names: Vec<&str> = case.corollaries.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["C37a", "C37b"]);
    assert!(case
        .corollaries
        .iter()
        .all(|c| c.outcome == CaseVerdict::Confirmed));
}

#[test]
fn devaney_composition_and_direct_check() {
    let case = verify_theorem(
        TheoremId::T310,
        &SystemHandle::Finite(cyclic_rotation(3)),
        &VerifyOptions::default(),
    )
    .unwrap();
    let direct = case
        .direct
        .as_ref()
        .expect("finite hyperspace is evaluated directly");
    assert_eq!(
        direct.verdict.holds(),
        case.directions[0].consequent.verdict.holds()
    );
    assert!(case.verdict.is_confirmed());
}

#[test]
fn shift_theorems_confirmed() {
    for sft in [Sft::full_shift(2).unwrap(), Sft::golden_mean()] {
        for id in TheoremId::ALL {
            let case = verify_theorem(
                id,
                &SystemHandle::Shift(sft.clone()),
                &VerifyOptions::default(),
            )
            .unwrap();
            assert_eq!(
                case.verdict,
                CaseVerdict::Confirmed,
                "{id} on {}",
                sft.name()
            );
            assert!(case.bounds.is_some());
        }
    }
}

#[test]
fn default_suite_is_deterministic_and_passes() {
    let suite = load_suite("default").unwrap();
    let options = suite.options(VerifyOptions::default());
    let a = run_suite(&suite, &options);
    let b = run_suite(&suite, &options);
    assert_eq!(a, b);
    assert!(
        a.passed,
        "{:?}",
        a.families.iter().map(|f| &f.failures).collect::<Vec<_>>()
    );
    assert_eq!(a.totals.refuted, 0);
    assert!(a.families.iter().flat_map(|f| &f.coverage).all(|c| c.met));
}

#[test]
fn non_abelian_suite_cases_are_rejected_not_refuted() {
    let text = "name = \"s3\"\n[[family]]\nname = \"f\"\nsystems = [\"symmetric_on_3\"]\ntheorems = [\"P35\", \"T39\"]\n";
    let r = run_suite(&parse_suite(text, None).unwrap(), &VerifyOptions::default());
    assert!(r.passed);
    assert_eq!(r.totals.rejected, 1);
    assert_eq!(r.totals.confirmed, 1);
}
