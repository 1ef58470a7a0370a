//! Text formats round-trip and report errors by position.

use proptest::prelude::*;

use pit4_core::algebra::QuadExt;
use pit4_core::circuit::generate::{gen_random_circuit, gen_zero_circuit, RandomParams, ZeroParams};
use pit4_core::circuit::{parse_circuit, parse_circuit_with, serialize_circuit};
use pit4_core::incidence::{parse_configuration, random_configuration, serialize_configuration, RandomConfigParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuits_round_trip(seed in 0u64..100_000, zero in any::<bool>(), n in 3usize..=6) {
        let c = if zero {
            gen_zero_circuit(seed, &ZeroParams { nvars: n, ..Default::default() }).circuit
        } else {
            gen_random_circuit(seed, &RandomParams { nvars: n, ..Default::default() })
        };
        let text = serialize_circuit(&c);
        let back = parse_circuit_with(&text, QuadExt::default()).unwrap();
        prop_assert_eq!(serialize_circuit(&back), text);
        prop_assert_eq!(back.terms, c.terms);
    }

    #[test]
    fn configurations_round_trip(seed in 0u64..100_000, sets in 2usize..=4) {
        let params = RandomConfigParams { nvars: 5, sets, max_per_set: 4, coord_bound: 2 };
        if let Some(cfg) = random_configuration(seed, &params) {
            let text = serialize_configuration(&cfg);
            let back = parse_configuration(&text, QuadExt::default()).unwrap();
            prop_assert_eq!(back, cfg);
        }
    }
}

#[test]
fn errors_carry_positions() {
    let e = parse_circuit("circuit vars=2\nterm\nlin: 1, 0, 3\n").unwrap_err();
    assert_eq!(e.line, 3);
    let e = parse_circuit("circuit vars=2\nterm\n  quad: 1, x, 0\n").unwrap_err();
    assert_eq!((e.line, e.col > 1), (3, true));
    assert!(parse_circuit("").is_err());
}
