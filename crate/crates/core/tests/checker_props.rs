mod common;

use common::{arb_system, Brute};
use hyperdyn::checkers::finite;
use hyperdyn::checkers::report::{Property, Verdict};
use hyperdyn::hyperspace::build_hyperspace_system;
use hyperdyn::systems::families::{cyclic_rotation, identity, klein_on_4};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn checkers_match_oracle(sys in arb_system(4)) {
        let b = Brute::new(&sys);
        prop_assert_eq!(finite::check(&sys, Property::Transitive).verdict, b.transitive());
        prop_assert_eq!(finite::check(&sys, Property::WeaklyMixing).verdict, b.weakly_mixing());
        prop_assert_eq!(finite::check(&sys, Property::Mixing).verdict, b.mixing());
        prop_assert_eq!(finite::check(&sys, Property::DensePeriodicPoints).verdict, b.dense_periodic_points());
        prop_assert_eq!(finite::check(&sys, Property::Sdic).verdict, b.sdic());
        prop_assert_eq!(finite::check(&sys, Property::DevaneyChaotic).verdict, b.devaney());
    }

    #[test]
    fn hyperspace_checkers_match_oracle(sys in arb_system(3)) {
        let h = build_hyperspace_system(&sys, 12).unwrap();
        let b = Brute::new(h.system());
        prop_assert_eq!(finite::is_transitive(h.system()).verdict, b.transitive());
        prop_assert_eq!(finite::is_weakly_mixing(h.system()).verdict, b.weakly_mixing());
    }

    #[test]
    fn weak_mixing_implies_transitive(sys in arb_system(5)) {
        if finite::is_weakly_mixing(&sys).verdict.holds() {
            prop_assert!(finite::is_transitive(&sys).verdict.holds());
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(
        finite::is_transitive(&cyclic_rotation(3)).verdict,
        Verdict::Holds
    );
    assert_eq!(finite::is_transitive(&identity(2)).verdict, Verdict::Fails);
    assert_eq!(
        finite::is_mixing(&klein_on_4()).verdict,
        Verdict::VacuouslyHolds
    );
    assert_eq!(
        finite::is_mixing(&cyclic_rotation(3)).verdict,
        Verdict::Fails
    );
    let dev = finite::is_devaney_chaotic(&cyclic_rotation(3));
    assert_eq!(dev.verdict, Verdict::Holds);
    assert!(dev
        .components
        .iter()
        .any(|c| c.property == Property::Sdic && c.verdict == Verdict::Fails));
}
