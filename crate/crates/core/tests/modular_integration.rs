//! Integration tests for the modular pipeline as a whole.

use freegb::engine::EngineOptions;
use freegb::modular::ModularConfig;
use freegb::order::SigBound;
use freegb::problem::parse_problem;

const FIB: &str = "\
vars x y
field Q
order deglex x y
gens
xyx - xy - y
end
";

#[test]
fn modular_matches_direct_on_fibonacci() {
    let p = parse_problem(FIB).unwrap();
    let bound = SigBound::SigDegree(8);
    let direct = p.gb(&bound, EngineOptions::default()).unwrap();
    let config = ModularConfig {
        seed: 1,
        threads: 2,
        ..Default::default()
    };
    let (modular, report, _) = p.gb_modular(&bound, &config).unwrap();
    assert!(report.ok);
    assert_eq!(p.render_basis(&direct), p.render_basis(&modular));
}

#[test]
fn trivial_ideal_finishes_in_one_round() {
    let text = "\
vars x y
field Q
order deglex x y
gens
x + 1
end
";
    let p = parse_problem(text).unwrap();
    let config = ModularConfig {
        seed: 9,
        threads: 1,
        ..Default::default()
    };
    let (basis, report, transcript) = p.gb_modular(&SigBound::SigDegree(6), &config).unwrap();
    assert!(report.ok);
    assert_eq!(basis.elements.len(), 1);
    assert_eq!(p.render_gens(), vec!["x + 1".to_string()]);
    let log = transcript.render();
    assert!(log.contains("result rounds=1"), "{log}");
}

#[test]
fn same_seed_gives_identical_transcripts() {
    let p = parse_problem(FIB).unwrap();
    let bound = SigBound::SigDegree(10);
    let config = ModularConfig {
        seed: 31337,
        threads: 2,
        ..Default::default()
    };
    let (_, _, t1) = p.gb_modular(&bound, &config).unwrap();
    let (_, _, t2) = p.gb_modular(&bound, &config).unwrap();
    assert_eq!(t1.render(), t2.render());
    // and a different seed draws different primes
    let other = ModularConfig {
        seed: 4242,
        ..config
    };
    let (_, _, t3) = p.gb_modular(&bound, &other).unwrap();
    assert_ne!(t1.render(), t3.render());
}

#[test]
fn support_mismatch_is_demoted_and_the_run_recovers() {
    // at sig-degree 10 the mod-5 image of the ideal has the leading data of
    // the rational basis but loses a term whose coefficient is 5/3; the
    // lift demotes 5 and finishes with the remaining primes
    let p = parse_problem(FIB).unwrap();
    let bound = SigBound::SigDegree(10);
    let direct = p.gb(&bound, EngineOptions::default()).unwrap();
    let config = ModularConfig {
        seed: 3,
        threads: 2,
        initial_primes: Some(3),
        force_primes: vec![5],
        ..Default::default()
    };
    let (modular, report, transcript) = p.gb_modular(&bound, &config).unwrap();
    assert!(report.ok);
    assert_eq!(p.render_basis(&direct), p.render_basis(&modular));
    let log = transcript.render();
    assert!(
        log.contains("demote primes=5 reason=support-mismatch"),
        "{log}"
    );
}

#[test]
fn strong_mode_lifts_labels_and_verifies_them() {
    let p = parse_problem(FIB).unwrap();
    let bound = SigBound::SigDegree(8);
    let config = ModularConfig {
        seed: 13,
        threads: 2,
        strong: true,
        ..Default::default()
    };
    let (basis, report, transcript) = p.gb_modular(&bound, &config).unwrap();
    assert!(report.ok);
    assert!(transcript
        .render()
        .contains("verify mode=strong verdict=pass"));
    // lifted labels evaluate back to their polynomials over Q
    for e in &basis.elements {
        let label = e.label.as_ref().expect("strong mode keeps labels");
        let value =
            freegb::bimodule::evaluate_label(&freegb::arith::Rationals, &p.mord, label, &p.gens)
                .unwrap();
        assert_eq!(value, e.poly);
    }
    let labels = basis.syzygy_labels.as_ref().unwrap();
    assert_eq!(labels.len(), basis.syzygies.len());
    for label in labels {
        let value =
            freegb::bimodule::evaluate_label(&freegb::arith::Rationals, &p.mord, label, &p.gens)
                .unwrap();
        assert!(value.is_zero());
    }
    // the polynomial parts agree with the plain pipeline
    let direct = p.gb(&bound, EngineOptions::default()).unwrap();
    assert_eq!(p.render_basis(&direct), p.render_basis(&basis));
}

#[test]
fn round_limit_yields_a_diagnostic_error() {
    let p = parse_problem(FIB).unwrap();
    // 8-bit primes cannot carry the degree-12 coefficients in one round,
    // and a 1-round budget is not enough to enlarge
    let config = ModularConfig {
        seed: 5,
        threads: 1,
        prime_bits: 8,
        max_rounds: 1,
        ..Default::default()
    };
    let err = p.gb_modular(&SigBound::SigDegree(12), &config).unwrap_err();
    match err {
        freegb::Error::MaxRoundsExceeded { rounds, transcript } => {
            assert_eq!(rounds, 1);
            assert!(transcript.contains("lift=fail") || transcript.contains("verify"));
        }
        other => panic!("unexpected error {other:?}"),
    }
}
