use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relcomm::matgroup::{
    commutator_word, conjugate_word, steinberg_commutator, Generator, GroupWord, Matrix, Transvection,
};
use relcomm::ring::{IntRing, Letter, ModRing, Poly, Ring, Tag, TriangRing};

fn l(t: Tag, k: u32) -> Poly {
    Poly::letter(Letter::new(t, k))
}

/// Evaluate over `ring` with each letter sent to a value from `values`.
fn eval<R: Ring>(ring: &R, w: &GroupWord, values: &BTreeMap<Letter, R::Elem>) -> Matrix<R::Elem> {
    w.eval_with(ring, |p| {
        p.eval(
            ring.zero(),
            |c| ring.of_int(c),
            |l| Ok::<_, ()>(values[l].clone()),
            |x, y| ring.add(x, y),
            |x, y| ring.mul(x, y),
        )
    })
    .unwrap()
}

fn assign<R: Ring>(ring: &R, words: &[&GroupWord], rng: &mut ChaCha8Rng) -> BTreeMap<Letter, R::Elem> {
    let mut v = BTreeMap::new();
    for w in words {
        for t in w.atoms() {
            for letter in t.arg.letters() {
                v.entry(letter).or_insert_with(|| ring.sample(rng));
            }
        }
    }
    v
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    let atoms = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            let x = match rng.gen_range(0..3) {
                0 => Poly::constant(rng.gen_range(-3..=3)),
                1 => l(Tag::R, rng.gen_range(1..=3)),
                _ => l(Tag::R, rng.gen_range(1..=3)) * Poly::constant(-1),
            };
            Transvection::new(i, j, x)
        })
        .collect();
    GroupWord::new(n, atoms).unwrap()
}

fn homomorphism_in<R: Ring>(ring: &R, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        let u = random_word(&mut rng, 3, 6);
        let v = random_word(&mut rng, 3, 6);
        let values = assign(ring, &[&u, &v], &mut rng);
        let uv = eval(ring, &u.concat(&v).unwrap(), &values);
        assert_eq!(uv, eval(ring, &u, &values).mul(ring, &eval(ring, &v, &values)));
    }
}

#[test]
fn eval_is_a_homomorphism() {
    homomorphism_in(&ModRing::new(12).unwrap(), 1);
    homomorphism_in(&TriangRing::new(5).unwrap(), 2);
    homomorphism_in(&IntRing, 3);
}

#[test]
fn empty_word_is_identity() {
    let m = GroupWord::identity(3).eval_free();
    assert_eq!(m, Matrix::identity(&relcomm::ring::FreeRing, 3));
}

#[test]
fn y_generator_matches_direct_multiplication() {
    let w = Generator::y(1, 2, Poly::one(), Poly::one()).to_word(3).unwrap();
    let m = eval(&IntRing, &w, &BTreeMap::new());
    let z = |v: i64| num_bigint::BigInt::from(v);
    // t12(1) t21(1) t12(-1) = [[2,-1],[1,0]], then t21(-1) on the right
    let want = Matrix::from_rows(vec![vec![z(3), z(-1), z(0)], vec![z(1), z(0), z(0)], vec![z(0), z(0), z(1)]]);
    assert_eq!(m, want);
}

#[test]
fn free_reduce_and_inverse_preserve_evaluation() {
    let ring = ModRing::new(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let w = random_word(&mut rng, 3, 8);
        let values = assign(&ring, &[&w], &mut rng);
        let reduced = w.free_reduce();
        assert!(reduced.len() <= w.len());
        assert_eq!(eval(&ring, &reduced, &values), eval(&ring, &w, &values));
        assert_eq!(w.inverse().inverse(), w);
        let id = eval(&ring, &w.concat(&w.inverse()).unwrap(), &values);
        assert_eq!(id, Matrix::identity(&ring, 3));
        // reduced words have no mergeable neighbours
        for pair in reduced.atoms().windows(2) {
            assert!((pair[0].i, pair[0].j) != (pair[1].i, pair[1].j));
        }
        assert!(w.concat(&w.inverse()).unwrap().free_reduce().is_empty());
    }
}

#[test]
fn free_reduce_examples() {
    let x = l(Tag::R, 1);
    let w = GroupWord::new(3, vec![Transvection::new(1, 2, x.clone()), Transvection::new(1, 2, -&x)]).unwrap();
    assert!(w.free_reduce().is_empty());
    let w = GroupWord::new(3, vec![Transvection::new(1, 2, x.clone()), Transvection::new(1, 3, x)]).unwrap();
    assert_eq!(w.free_reduce(), w);
}

#[test]
fn commutator_conventions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let x = random_word(&mut rng, 3, 4);
        let y = random_word(&mut rng, 3, 4);
        let lhs = commutator_word(&x, &y).unwrap().concat(&y).unwrap().concat(&x).unwrap();
        assert_eq!(lhs.eval_free(), x.concat(&y).unwrap().eval_free());
        // [x,y] = (x y x⁻¹) y⁻¹
        let via = conjugate_word(&x, &y).unwrap().concat(&y.inverse()).unwrap();
        assert_eq!(commutator_word(&x, &y).unwrap().eval_free(), via.eval_free());
    }
    let w = random_word(&mut rng, 3, 4);
    assert_eq!(conjugate_word(&GroupWord::identity(3), &w).unwrap(), w);
}

#[test]
fn generator_expansions_match_definitions() {
    let (x, c) = (l(Tag::A, 1), l(Tag::R, 1));
    let word = |ts: Vec<Transvection>| GroupWord::new(3, ts).unwrap();
    for i in 1..=3 {
        for j in (1..=3).filter(|&j| j != i) {
            let z = Generator::z(i, j, x.clone(), c.clone()).to_word(3).unwrap();
            let by_def = conjugate_word(
                &word(vec![Transvection::new(j, i, c.clone())]),
                &word(vec![Transvection::new(i, j, x.clone())]),
            )
            .unwrap();
            assert_eq!(z.eval_free(), by_def.eval_free());
            let y = Generator::y(i, j, x.clone(), c.clone()).to_word(3).unwrap();
            let by_def = commutator_word(
                &word(vec![Transvection::new(i, j, x.clone())]),
                &word(vec![Transvection::new(j, i, c.clone())]),
            )
            .unwrap();
            assert_eq!(y.len(), 4);
            assert_eq!(y.eval_free(), by_def.eval_free());
        }
    }
}

#[test]
fn steinberg_closed_forms_at_n4() {
    let (x, y) = (l(Tag::A, 1), l(Tag::B, 1));
    let n = 4;
    let positions: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut closed = 0;
    for &(i, j) in &positions {
        for &(h, k) in &positions {
            let t1 = Transvection::new(i, j, x.clone());
            let t2 = Transvection::new(h, k, y.clone());
            let direct = commutator_word(
                &GroupWord::new(n, vec![t1.clone()]).unwrap(),
                &GroupWord::new(n, vec![t2.clone()]).unwrap(),
            )
            .unwrap();
            match steinberg_commutator(&t1, &t2) {
                Ok(atoms) => {
                    assert!(atoms.len() <= 1);
                    let w = GroupWord::new(n, atoms).unwrap();
                    assert_eq!(w.eval_free(), direct.eval_free(), "[t{i}{j}, t{h}{k}]");
                    closed += 1;
                }
                Err(_) => assert_eq!((h, k), (j, i)),
            }
        }
    }
    assert_eq!(closed, positions.len() * (positions.len() - 1));
}

#[test]
fn steinberg_example_from_the_relation() {
    let (a, b) = (l(Tag::A, 1), l(Tag::B, 1));
    let out = steinberg_commutator(&Transvection::new(1, 3, a.clone()), &Transvection::new(3, 2, b.clone())).unwrap();
    assert_eq!(out, vec![Transvection::new(1, 2, &a * &b)]);
    let out = steinberg_commutator(&Transvection::new(1, 2, a.clone()), &Transvection::new(3, 4, b.clone())).unwrap();
    assert!(out.is_empty());
    assert!(steinberg_commutator(&Transvection::new(1, 2, a), &Transvection::new(2, 1, b)).is_err());
}

#[test]
fn steinberg_randomized_over_z12() {
    let ring = ModRing::new(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = 4;
        let pick = |rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(1..=n);
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            (i, j)
        };
        let ((i, j), (h, k)) = (pick(&mut rng), pick(&mut rng));
        let t1 = Transvection::new(i, j, l(Tag::R, 1));
        let t2 = Transvection::new(h, k, l(Tag::R, 2));
        let Ok(atoms) = steinberg_commutator(&t1, &t2) else { continue };
        let closed = GroupWord::new(n, atoms).unwrap();
        let direct =
            commutator_word(&GroupWord::new(n, vec![t1]).unwrap(), &GroupWord::new(n, vec![t2]).unwrap()).unwrap();
        let values = assign(&ring, &[&direct], &mut rng);
        assert_eq!(eval(&ring, &closed, &values), eval(&ring, &direct, &values));
    }
}

proptest! {
    /// Words whose arguments all lie in `(4)` evaluate into the congruence
    /// subgroup of level `(4)` in ℤ/12.
    #[test]
    fn congruence_level_necessity(args in prop::collection::vec((1usize..=3, 1usize..=2, 0u64..3), 0..10)) {
        let ring = ModRing::new(12).unwrap();
        let atoms: Vec<Transvection> = args
            .iter()
            .map(|&(i, d, k)| {
                let j = (i + d - 1) % 3 + 1;
                Transvection::new(i, j, Poly::constant(4 * k as i64))
            })
            .collect();
        let w = GroupWord::new(3, atoms).unwrap();
        let m = eval(&ring, &w, &BTreeMap::new());
        prop_assert!(m.congruence_violations(&ring, |e| e % 4 == 0).is_empty());
    }

    #[test]
    fn free_congruence_level(ks in prop::collection::vec((1usize..=3, 1usize..=2, 1u32..=3), 0..8)) {
        let a = relcomm::ring::Ideal::Tag(Tag::A);
        let atoms: Vec<Transvection> = ks
            .iter()
            .map(|&(i, d, k)| Transvection::new(i, (i + d - 1) % 3 + 1, l(Tag::R, k) * l(Tag::A, k)))
            .collect();
        let m = GroupWord::new(3, atoms).unwrap().eval_free();
        let bad = m.congruence_violations(&relcomm::ring::FreeRing, |e| relcomm::ring::free_member(e, &a).unwrap());
        prop_assert!(bad.is_empty());
    }
}

#[test]
fn mismatched_degrees_are_rejected() {
    let u = GroupWord::identity(3);
    let v = GroupWord::identity(4);
    assert!(u.concat(&v).is_err());
    assert!(GroupWord::new(3, vec![Transvection::new(1, 4, Poly::one())]).is_err());
    assert!(GroupWord::new(3, vec![Transvection::new(2, 2, Poly::one())]).is_err());
}
