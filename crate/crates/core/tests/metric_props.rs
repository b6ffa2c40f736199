mod common;

use common::{arb_metric, hausdorff};
use hyperdyn::metric::{
    hausdorff_distance, point_set_distance, validate_metric, FiniteMetricSpace, MetricError,
};
use hyperdyn::sets::PointSet;
use num_rational::Rational64;
use proptest::prelude::*;

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

proptest! {
    #[test]
    fn hausdorff_matches_oracle(rows in arb_metric(5), a in 1u64..32, b in 1u64..32, c in 1u64..32) {
        let n = rows.len();
        let full = (1u64 << n) - 1;
        let (a, b, c) = (a & full, b & full, c & full);
        prop_assume!(a != 0 && b != 0 && c != 0);
        let space = FiniteMetricSpace::from_rows(rows.clone()).unwrap();
        let h = |x: u64, y: u64| hausdorff_distance(&space, &PointSet::from_mask(x), &PointSet::from_mask(y)).unwrap();
        prop_assert_eq!(h(a, b), hausdorff(&rows, a, b));
        prop_assert_eq!(h(a, b) == r(0), a == b);
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert!(h(a, c) <= h(a, b) + h(b, c));
    }

    #[test]
    fn singletons_recover_the_metric(rows in arb_metric(6)) {
        let space = FiniteMetricSpace::from_rows(rows.clone()).unwrap();
        for (i, row) in rows.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                prop_assert_eq!(hausdorff_distance(&space, &PointSet::singleton(i), &PointSet::singleton(j)).unwrap(), d);
                prop_assert_eq!(point_set_distance(&space, i, &PointSet::singleton(j)).unwrap(), d);
            }
        }
    }

    #[test]
    fn broken_triangle_is_rejected(rows in arb_metric(5)) {
        let n = rows.len();
        prop_assume!(n >= 3);
        let mut bad = rows.clone();
        let long = rows[0][1] + rows[1][2] + r(1);
        bad[0][2] = long;
        bad[2][0] = long;
        prop_assert!(matches!(validate_metric(&bad), Err(MetricError::Axioms(_))));
    }
}

#[test]
fn line_and_discrete() {
    let line = FiniteMetricSpace::line(4);
    let s = |xs: &[usize]| xs.iter().copied().collect::<PointSet>();
    assert_eq!(hausdorff_distance(&line, &s(&[0]), &s(&[3])).unwrap(), r(3));
    assert_eq!(
        hausdorff_distance(&line, &s(&[0, 3]), &s(&[0])).unwrap(),
        r(3)
    );
    assert_eq!(
        hausdorff_distance(&line, &s(&[0, 1]), &s(&[1])).unwrap(),
        r(1)
    );
    let disc = FiniteMetricSpace::discrete(3);
    assert_eq!(
        hausdorff_distance(&disc, &s(&[0, 1]), &s(&[1, 2])).unwrap(),
        r(1)
    );
    assert!(hausdorff_distance(&disc, &PointSet::empty(), &s(&[1])).is_err());
}
