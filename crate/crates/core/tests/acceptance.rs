//! Acceptance suite. Runs as a plain binary so every criterion prints its
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relcomm::generate::{
    commutator_form_violations, random_mixed_word, stray_atoms, theorem1_rewrite, theorem4_closure, theorem4_with,
    theorem5_generators, theorem_c_closure, theorem_c_with, ExtraKind, GenerateError, Mode, NumericPlan, PositionSet,
};
use relcomm::identities::{instantiate, CATALOGUE};
use relcomm::matgroup::{expand_factors, Factor, Generator};
use relcomm::ring::{
    free_member, ideal_member, sym_product, tree_level, BracketTree, Ideal, IdealSampler, IdealSpec, Letter, ModRing,
    Monomial, Poly, Ring, RingAdapter, RingElement, Tag,
};
use relcomm::syntax::{format_factors, parse_word};
use relcomm::verify::verify_symbolic;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn letter(t: Tag, k: u32) -> Poly {
    Poly::letter(Letter::new(t, k))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=5 {
        for id in CATALOGUE {
            let rep = instantiate(id, n).map_err(err)?.verify(id).map_err(err)?;
            ensure(rep.pass(), || format!("{id} at n={n}: {}", rep.detail.clone().unwrap_or_default()))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}, limit 10s"))?;
    Ok(format!("{checked} identity instances exact, {elapsed:.2?}"))
}

fn level_discipline() -> Outcome {
    let ab = IdealSpec::free_sym(Tag::A, Tag::B);
    let mut claims = 0;
    for n in 3..=5 {
        for id in CATALOGUE {
            let r = instantiate(id, n).map_err(err)?;
            let audit = r.audit(id).map_err(err)?;
            ensure(audit.pass(), || format!("{id} at n={n}: {}", audit.detail.clone().unwrap_or_default()))?;
            if id.starts_with("lemma5") || id.starts_with("thm2") {
                continue;
            }
            // independent recheck of the A∘B claims: each monomial must hold
            // both an A-letter and a B-letter
            for f in &r.factors {
                for (arg, claim) in f.gen.args().into_iter().zip(&f.levels) {
                    if claim.as_ref() == Some(&ab) {
                        claims += 1;
                        let both = arg.terms().all(|(m, _)| m.contains_tag(Tag::A) && m.contains_tag(Tag::B));
                        ensure(both, || format!("{id} at n={n}: {f} claims A∘B"))?;
                    }
                }
            }
        }
    }
    ensure(claims > 0, || "no A∘B claims were audited".into())?;
    Ok(format!("zero audit violations; {claims} A∘B claims hold"))
}

fn theorem_c_coverage() -> Outcome {
    let start = Instant::now();
    let (a, c) = (letter(Tag::A, 1), letter(Tag::R, 1));
    let mut certs = 0;
    let mut configs = 0;
    for n in 3..=5 {
        for r in 1..n {
            for mode in [Mode::Rows, Mode::Cols] {
                for ps in PositionSet::sweep(n, r, mode).map_err(err)? {
                    configs += 1;
                    let closure = theorem_c_closure(&ps).map_err(err)?;
                    for p in PositionSet::all_positions(n) {
                        let cert = theorem_c_with(&closure, &ps, p, &a, &c).map_err(|e| format!("{ps} {p:?}: {e}"))?;
                        let sym = &cert.checks.symbolic;
                        ensure(sym.pass && sym.level_audit_failures == 0, || format!("{ps} {p:?} fails"))?;
                        let stray = stray_atoms(&ps, "C", &cert.factor_list().map_err(err)?);
                        ensure(stray.is_empty(), || format!("{ps} {p:?}: stray atoms {stray:?}"))?;
                        certs += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}, limit 60s"))?;
    Ok(format!("{certs} certificates over {configs} position sets, {elapsed:.2?}"))
}

fn theorem1_rewrite_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut words = 0;
    for n in [3, 4] {
        for w in 0..200 {
            let word = random_mixed_word(&mut rng, n, 5, 3);
            let mut cert = theorem1_rewrite(n, &word).map_err(|e| format!("n={n} word {w}: {e}"))?;
            let bad = commutator_form_violations(&cert.factor_list().map_err(err)?);
            ensure(bad.is_empty(), || format!("n={n} word {w}: non-commutator factors {bad:?}"))?;
            ensure(cert.checks.symbolic.pass, || format!("n={n}: {} fails symbolically", cert.claim.target))?;
            let seed = rng.gen();
            for rep in cert.add_numeric(&NumericPlan::defaults(seed), 1000).map_err(err)? {
                ensure(rep.pass(), || format!("n={n}: {} fails over {}", cert.claim.target, rep.ring))?;
            }
            words += 1;
        }
    }
    Ok(format!("{words} words rewritten; symbolic and 2x1000 numeric trials clean"))
}

fn theorem4_coverage() -> Outcome {
    let (a, b) = (letter(Tag::A, 1), letter(Tag::B, 1));
    let mut certs = 0;
    for (n, r, kinds) in [(3, 2, vec![ExtraKind::Y, ExtraKind::Z]), (4, 2, vec![ExtraKind::Y, ExtraKind::Z])] {
        let base = PositionSet::with_mode(n, r, Mode::Rows, r + 1).map_err(err)?;
        for kind in kinds {
            for extra in base.extras(kind) {
                let ps = base.with_extra(extra).map_err(err)?;
                let closure = theorem4_closure(&ps).map_err(err)?;
                for p in PositionSet::all_positions(n) {
                    let cert = theorem4_with(&closure, &ps, p, &a, &b).map_err(|e| format!("{ps} {p:?}: {e}"))?;
                    let sym = &cert.checks.symbolic;
                    ensure(sym.pass && sym.level_audit_failures == 0, || format!("{ps} {p:?} fails"))?;
                    let stray = stray_atoms(&ps, "4", &cert.factor_list().map_err(err)?);
                    ensure(stray.is_empty(), || format!("{ps} {p:?}: stray atoms {stray:?}"))?;
                    certs += 1;
                }
            }
        }
    }
    Ok(format!("{certs} certificates for y at every position, y- and z-extras, verified"))
}

fn nested_levels() -> Outcome {
    let z = |d: i64| IdealSpec::principal(RingAdapter::Int, d).map_err(err);
    let ideals = vec![z(2)?, z(3)?, z(5)?];
    for shape in ["((1 2) 3)", "(1 (2 3))"] {
        let t = BracketTree::parse(shape).map_err(err)?;
        let level = tree_level(&t, &ideals).map_err(err)?;
        ensure(level == z(30)?, || format!("{shape} gives {level}"))?;
    }
    let free = |k| IdealSpec::free_tag(Tag::I(k));
    let frees = vec![free(1), free(2), free(3)];
    let mono = RingElement::Free(Poly::term(
        1,
        Monomial(vec![Letter::new(Tag::I(1), 1), Letter::new(Tag::I(3), 1), Letter::new(Tag::I(2), 1)]),
    ));
    let right = tree_level(&BracketTree::parse("(1 (2 3))").map_err(err)?, &frees).map_err(err)?;
    let left = tree_level(&BracketTree::parse("((1 2) 3)").map_err(err)?, &frees).map_err(err)?;
    ensure(ideal_member(&mono, &right).map_err(err)?, || "i1 i3 i2 should lie in 1o(2o3)".into())?;
    ensure(!ideal_member(&mono, &left).map_err(err)?, || "i1 i3 i2 should not lie in (1o2)o3".into())?;
    let t = BracketTree::parse("((1 2) 3)").map_err(err)?;
    match theorem5_generators(3, &t, &frees, false) {
        Err(GenerateError::QuasiFiniteRequired) => {}
        other => return Err(format!("n=3 without the flag gave {other:?}")),
    }
    theorem5_generators(3, &t, &frees, true).map_err(err)?;
    Ok("(30) both ways; i1 i3 i2 separates the bracketings; n=3 gate holds".into())
}

/// Spans of single tokens in the word syntax that can be mutated: digit
/// runs (indices, coefficients, letter subscripts) and binary signs.
fn tokens(text: &str) -> Vec<(usize, usize)> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        if b[k].is_ascii_digit() {
            let s = k;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            out.push((s, k));
            continue;
        }
        if (b[k] == b'+' || b[k] == b'-') && k > 0 && b[k - 1] != b'^' {
            out.push((k, k + 1));
        }
        k += 1;
    }
    out
}

fn mutate<G: Rng>(rng: &mut G, text: &str, n: usize) -> Option<String> {
    let toks = tokens(text);
    let &(s, e) = toks.choose(rng)?;
    let tok = &text[s..e];
    let replacement = match tok {
        "+" => "-".to_string(),
        "-" => "+".to_string(),
        _ => {
            let v: usize = tok.parse().ok()?;
            let prev = text[..s].chars().last();
            if prev.is_some_and(|c| c.is_ascii_alphabetic()) {
                // letter subscript: point it at an unused indeterminate
                (v + 7).to_string()
            } else {
                let others: Vec<usize> = (1..=n.max(v + 1)).filter(|&x| x != v).collect();
                others.choose(rng)?.to_string()
            }
        }
    };
    Some(format!("{}{}{}", &text[..s], replacement, &text[e..]))
}

fn mutation_sensitivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let n = 3;
    let mut total = 0;
    for id in CATALOGUE {
        let r = instantiate(id, n).map_err(err)?;
        let text = format_factors(&r.factors);
        let mut done = 0;
        let mut attempts = 0;
        while done < 10 {
            attempts += 1;
            ensure(attempts < 1000, || format!("{id}: too few parseable mutations"))?;
            let Some(m) = mutate(&mut rng, &text, n) else { continue };
            let Ok(word) = parse_word(&m, n) else { continue };
            let rep = verify_symbolic(id, &r.target, &word).map_err(err)?;
            ensure(!rep.pass(), || format!("{id}: mutation `{m}` still verifies"))?;
            done += 1;
        }
        total += done;
    }
    Ok(format!("{total} mutations across {} identities all rejected", CATALOGUE.len()))
}

/// A random generator of `[E(n,A),E(n,B)]` with fresh letters.
fn commutator_generator<G: Rng>(rng: &mut G, n: usize, fresh: &mut u32) -> Factor {
    let mut next = |t: Tag| {
        *fresh += 1;
        letter(t, *fresh)
    };
    let pos = |rng: &mut G| {
        let i = rng.gen_range(1..=n);
        let j = (1..=n).filter(|&j| j != i).collect::<Vec<_>>()[rng.gen_range(0..n - 1)];
        (i, j)
    };
    let (i, j) = pos(rng);
    let f = match rng.gen_range(0..4) {
        0 => Factor::new(Generator::y(i, j, next(Tag::A), next(Tag::B))),
        1 => Factor::new(Generator::z(i, j, next(Tag::A) * next(Tag::B), next(Tag::R))),
        2 => Factor::new(Generator::z(i, j, next(Tag::B) * next(Tag::A), next(Tag::R))),
        _ => {
            let (h, k) = pos(rng);
            Factor::new(Generator::c(i, j, next(Tag::A), h, k, next(Tag::B)))
        }
    };
    if rng.gen_bool(0.3) {
        f.inverted()
    } else {
        f
    }
}

fn congruence_in(m: u64, words: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = RingAdapter::Mod(m);
    let zm = ModRing::new(m).map_err(err)?;
    let a = IdealSpec::principal(ring, 4).map_err(err)?;
    let b = IdealSpec::principal(ring, 6).map_err(err)?;
    let full = IdealSpec::principal(ring, 1).map_err(err)?;
    let level = sym_product(&a, &b).map_err(err)?;
    let n = 3;
    for w in 0..words {
        let mut fresh = 0;
        let len = rng.gen_range(1..=6);
        let factors: Vec<Factor> = (0..len).map(|_| commutator_generator(&mut rng, n, &mut fresh)).collect();
        let word = expand_factors(n, &factors).map_err(err)?;
        let mut values = std::collections::BTreeMap::new();
        for l in word.atoms().iter().flat_map(|t| t.arg.letters()) {
            if values.contains_key(&l) {
                continue;
            }
            let ideal = match l.tag {
                Tag::A => &a,
                Tag::B => &b,
                _ => &full,
            };
            values.insert(l, zm.sample_in(ideal, &mut rng).map_err(err)?);
        }
        let mat = word
            .eval_with(&zm, |p| {
                p.eval(
                    zm.zero(),
                    |c| zm.of_int(c),
                    |l| Ok::<_, String>(values[l]),
                    |x, y| zm.add(x, y),
                    |x, y| zm.mul(x, y),
                )
            })
            .map_err(err)?;
        let bad = mat
            .congruence_violations(&zm, |e| ideal_member(&RingElement::Mod { value: *e, m }, &level).unwrap_or(false));
        ensure(bad.is_empty(), || format!("Z/{m} word {w} ({}): entries {bad:?}", word))?;
    }
    Ok(())
}

fn congruence_necessity() -> Outcome {
    congruence_in(12, 500, 5)?;
    // over Z/12 the level (4)o(6) is zero; Z/144 keeps it proper
    congruence_in(144, 500, 6)?;
    Ok("500 words over Z/12 (and 500 over Z/144) congruent to e mod (4)o(6)".into())
}

fn main() {
    // the free-ring A∘B level used above must be the both-letters ideal
    debug_assert!(free_member(
        &(letter(Tag::A, 1) * letter(Tag::B, 1)),
        &Ideal::sym(Ideal::Tag(Tag::A), Ideal::Tag(Tag::B))
    )
    .unwrap());
    let criteria: [Criterion; 8] = [
        ("identity suite", identity_suite),
        ("level discipline", level_discipline),
        ("relative subgroup coverage", theorem_c_coverage),
        ("mixed word rewrite", theorem1_rewrite_suite),
        ("reduced commutator basis", theorem4_coverage),
        ("nested levels", nested_levels),
        ("mutation sensitivity", mutation_sensitivity),
        ("congruence necessity", congruence_necessity),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("PASS [{}] {name}: {msg} ({t:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {name}: {msg} ({t:.2?})", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
