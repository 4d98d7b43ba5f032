use axkin_core::axioms::{check_axiom, AxiomId, Mode, Outcome};
use axkin_core::constructions::{build_named, MODEL_NAMES};

/// Sampling never refutes what the structural reduction certified.
#[test]
fn exact_holds_survive_ten_thousand_samples() {
    for name in MODEL_NAMES {
        let m = build_named(name, 3, None, None).unwrap().model;
        for a in AxiomId::ALL {
            if check_axiom(&m, a, Mode::Exact).unwrap().outcome != Outcome::Holds {
                continue;
            }
            let v = check_axiom(&m, a, Mode::Sample { n: 10_000, seed: 2024 }).unwrap();
            assert_eq!(v.outcome, Outcome::SampledPass, "{name} {}: {:?}", a.name(), v.witness);
        }
    }
}

/// Sample mode only refutes or passes.
#[test]
fn sampling_has_two_outcomes() {
    for name in MODEL_NAMES {
        let m = build_named(name, 3, None, None).unwrap().model;
        for a in AxiomId::ALL {
            let v = check_axiom(&m, a, Mode::Sample { n: 100, seed: 1 }).unwrap();
            assert!(
                matches!(v.outcome, Outcome::Fails | Outcome::SampledPass),
                "{name} {}",
                a.name()
            );
        }
    }
}
