use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ring::Letter;

fn l(t: Tag) -> Poly {
    Poly::letter(Letter::new(t, 1))
}

#[test]
fn theorem_c_covers_every_position() {
    let (a, c) = (l(Tag::A), l(Tag::R));
    for n in 3..=5 {
        for r in 1..n {
            for mode in [Mode::Rows, Mode::Cols] {
                for ps in PositionSet::sweep(n, r, mode).unwrap() {
                    let closure = theorem_c_closure(&ps).unwrap();
                    for p in PositionSet::all_positions(n) {
                        let cert = theorem_c_with(&closure, &ps, p, &a, &c).unwrap();
                        assert!(cert.checks.symbolic.pass, "{ps} {p:?}");
                        assert_eq!(cert.checks.symbolic.level_audit_failures, 0);
                        assert!(stray_atoms(&ps, "C", &cert.factor_list().unwrap()).is_empty());
                    }
                }
            }
        }
    }
}

#[test]
fn theorem_c_generator_is_single_atom() {
    let ps = PositionSet::with_mode(3, 2, Mode::Rows, 3).unwrap();
    let cert = theorem_c_decompose(&ps, (1, 3), &l(Tag::A), &l(Tag::R)).unwrap();
    assert_eq!(cert.factors.len(), 1);
    let cert = theorem_c_decompose(&ps, (1, 2), &l(Tag::A), &l(Tag::R)).unwrap();
    let zs: Vec<_> = cert.factors.iter().filter(|f| f.kind == "Z").map(|f| (f.i, f.j)).collect();
    assert_eq!(zs, [(1, 3), (2, 3)]);
}

#[test]
fn theorem4_small_cases() {
    let (a, b) = (l(Tag::A), l(Tag::B));
    let start = Instant::now();
    for (n, r) in [(3, 2), (4, 2)] {
        let base = PositionSet::with_mode(n, r, Mode::Rows, r + 1).unwrap();
        for kind in [ExtraKind::Y, ExtraKind::Z] {
            for extra in base.extras(kind) {
                let ps = base.with_extra(extra).unwrap();
                let closure = theorem4_closure(&ps).unwrap();
                for p in PositionSet::all_positions(n) {
                    let cert = theorem4_with(&closure, &ps, p, &a, &b).unwrap();
                    assert!(cert.checks.symbolic.pass, "{ps} {p:?}");
                    assert_eq!(cert.checks.symbolic.level_audit_failures, 0, "{ps} {p:?}");
                    assert!(stray_atoms(&ps, "4", &cert.factor_list().unwrap()).is_empty());
                }
            }
        }
    }
    eprintln!("elapsed {:?}", start.elapsed());
}

#[test]
fn theorem1_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3, 4] {
        for _ in 0..20 {
            let word = random_mixed_word(&mut rng, n, 5, 3);
            let cert = theorem1_rewrite(n, &word).unwrap();
            assert!(cert.checks.symbolic.pass, "{}", cert.claim.target);
            assert!(commutator_form_violations(&cert.factor_list().unwrap()).is_empty());
        }
    }
}

#[test]
fn theorem5_descriptor() {
    let z = crate::ring::RingAdapter::Int;
    let ideals: Vec<IdealSpec> = [2, 3, 5].iter().map(|&d| IdealSpec::principal(z, d).unwrap()).collect();
    let tree = BracketTree::parse("((1 2) 3)").unwrap();
    let d = theorem5_generators(4, &tree, &ideals, false).unwrap();
    assert_eq!((d.cut_point, d.left_level.as_str(), d.right_level.as_str()), (2, "6", "5"));
    assert!(matches!(theorem5_generators(3, &tree, &ideals, false), Err(GenerateError::QuasiFiniteRequired)));
    assert!(theorem5_generators(3, &tree, &ideals, true).is_ok());
}

#[test]
fn partial_relative_targets() {
    let (a, b) = (l(Tag::A), l(Tag::B));
    let targets =
        [Factor::new(Generator::z(1, 2, a.clone(), b.clone())), Factor::new(Generator::y(1, 2, a.clone(), b.clone()))];
    for cert in partial_relative_generators(3, &targets).unwrap() {
        assert!(cert.checks.symbolic.pass);
        assert_eq!(cert.checks.symbolic.level_audit_failures, 0);
    }
    let bad = [Factor::new(Generator::z(1, 2, b, a))];
    assert!(partial_relative_generators(3, &bad).is_err());
}
