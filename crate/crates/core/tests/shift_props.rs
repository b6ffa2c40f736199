mod common;

use common::{period, primitive_exponent};
use hyperdyn::checkers::bounded;
use hyperdyn::checkers::dynamics::ShiftDynamics;
use hyperdyn::checkers::report::{Bounds, Property, Verdict};
use hyperdyn::systems::sft::{is_irreducible, primitivity, Primitivity, Sft};
use hyperdyn::systems::shift::ShiftSpace;
use proptest::prelude::*;

fn irreducible(m: &[Vec<u8>]) -> bool {
    let k = m.len();
    (0..k).all(|a| {
        let mut seen = vec![false; k];
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for y in 0..k {
                if m[x][y] != 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<u8>>> {
    (2usize..=3).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(0u8..2, k), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn primitivity_matches_oracle(rows in arb_matrix()) {
        let Ok(sft) = Sft::from_matrix("random", &rows) else { return Ok(()) };
        let m = sft.matrix().to_rows();
        prop_assert_eq!(is_irreducible(sft.matrix()), irreducible(&m));
        let p = primitivity(sft.matrix());
        match primitive_exponent(&m) {
            Some(e) => prop_assert_eq!(p, Primitivity::Primitive { exponent: e }),
            None if irreducible(&m) => prop_assert_eq!(p, Primitivity::Imprimitive { period: Some(period(&m)) }),
            None => prop_assert_eq!(p, Primitivity::Imprimitive { period: None }),
        }
    }

    #[test]
    fn bounded_verdicts_follow_the_matrix(rows in arb_matrix()) {
        let Ok(sft) = Sft::from_matrix("random", &rows) else { return Ok(()) };
        let m = sft.matrix().to_rows();
        prop_assume!(irreducible(&m));
        let d = ShiftDynamics::new(ShiftSpace::new(sft), Bounds::default());
        let primitive = primitive_exponent(&m).is_some();
        prop_assert_eq!(bounded::check(&d, Property::Transitive).verdict, Verdict::HoldsUpToBounds);
        prop_assert_eq!(bounded::check(&d, Property::Mixing).verdict.holds(), primitive);
        prop_assert_eq!(bounded::check(&d, Property::WeaklyMixing).verdict.holds(), primitive);
        prop_assert!(bounded::check(&d, Property::DensePeriodicPoints).verdict.holds());
    }
}

#[test]
fn builtin_shift_verdicts() {
    let d = ShiftDynamics::new(ShiftSpace::new(Sft::swap()), Bounds::default());
    assert_eq!(
        bounded::check(&d, Property::Mixing).verdict,
        Verdict::FailsWithinBounds
    );
    assert_eq!(
        bounded::check(&d, Property::Transitive).verdict,
        Verdict::HoldsUpToBounds
    );
    let d = ShiftDynamics::new(
        ShiftSpace::new(Sft::full_shift(2).unwrap()),
        Bounds::default(),
    );
    assert_eq!(
        bounded::check(&d, Property::Sdic).verdict,
        Verdict::HoldsUpToBounds
    );
    assert_eq!(
        bounded::check(&d, Property::DevaneyChaotic).verdict,
        Verdict::HoldsUpToBounds
    );
}
