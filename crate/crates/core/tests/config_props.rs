mod common;

use common::arb_system;
use hyperdyn::config::{load_system, parse_config, to_config_text, ConfigError};
use hyperdyn::systems::families::SystemHandle;
use hyperdyn::systems::sft::{sft_from_forbidden_words, Sft};
use proptest::prelude::*;

proptest! {
    #[test]
    fn finite_round_trip(sys in arb_system(6)) {
        let text = to_config_text(&SystemHandle::Finite(sys.clone()));
        match parse_config(&text) {
            Ok(SystemHandle::Finite(back)) => {
                prop_assert_eq!(&back, &sys);
                prop_assert_eq!(back.space().rows(), sys.space().rows());
            }
            other => prop_assert!(false, "{:?}", other.err()),
        }
    }

    #[test]
    fn shift_round_trip(words in prop::collection::vec(prop::collection::vec(0u8..3, 1..4), 0..4)) {
        let Ok(sft) = sft_from_forbidden_words(3, &words) else { return Ok(()) };
        let text = to_config_text(&SystemHandle::Shift(sft.clone()));
        match parse_config(&text) {
            Ok(SystemHandle::Shift(back)) => prop_assert_eq!(back, sft),
            other => prop_assert!(false, "{:?}", other.err()),
        }
    }
}

#[test]
fn error_kinds_are_distinct() {
    let bij = parse_config("[space]\npoints = 2\n[group]\ngenerators = [[0, 0]]\n").unwrap_err();
    assert!(matches!(bij.0[0], ConfigError::NotBijection { .. }));
    let metric = parse_config(
        "[space]\npoints = 2\nrows = [[0, 1], [2, 0]]\n[group]\ngenerators = [[1, 0]]\n",
    )
    .unwrap_err();
    assert!(matches!(metric.0[0], ConfigError::Metric { .. }));
    let syntax = parse_config("[space\npoints = 2\n").unwrap_err();
    assert!(matches!(&syntax.0[0], ConfigError::Parse { at, .. } if at.line == 1));
    let commute = parse_config(
        "[space]\npoints = 3\n[group]\nkind = \"free_abelian\"\ngenerators = [[1, 0, 2], [0, 2, 1]]\n",
    )
    .unwrap_err();
    assert!(matches!(commute.0[0], ConfigError::Group { .. }));
}

#[test]
fn files_and_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("golden.toml");
    std::fs::write(
        &path,
        "label = \"golden\"\n[sft]\nalphabet = 2\nforbidden = [[1, 1]]\n",
    )
    .unwrap();
    match load_system(path.to_str().unwrap()).unwrap() {
        SystemHandle::Shift(s) => {
            assert_eq!(s.matrix(), Sft::golden_mean().matrix());
            assert_eq!(s.name(), "golden");
        }
        SystemHandle::Finite(_) => panic!("expected a shift"),
    }
    assert!(matches!(
        load_system("builtin:klein_on_4").unwrap(),
        SystemHandle::Finite(_)
    ));
    assert!(matches!(
        load_system("/nonexistent/x.toml").unwrap_err().0[0],
        ConfigError::Io { .. }
    ));
}

#[test]
fn fractional_distances_are_exact() {
    let text = "[space]\npoints = 3\nrows = [[0, \"1/3\", 0.5], [\"1/3\", 0, 0.25], [0.5, 0.25, 0]]\n[group]\nkind = \"finite\"\ngenerators = [[0, 1, 2]]\n";
    match parse_config(text).unwrap() {
        SystemHandle::Finite(s) => {
            let rows = s.space().rows();
            assert_eq!(rows[0][1], num_rational::Rational64::new(1, 3));
            assert_eq!(rows[0][2], num_rational::Rational64::new(1, 2));
        }
        SystemHandle::Shift(_) => panic!("expected a finite system"),
    }
}
