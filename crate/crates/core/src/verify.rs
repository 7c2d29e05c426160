//! Symbolic and randomized verification of word identities.
//!
//! Symbolic equality is checked in the free ring on fresh letters, which
//! proves the identity for every ring and every choice of ideals. Numeric
//! checks substitute random ideal elements into a concrete adapter.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matgroup::{Factor, GroupWord, MatError, Matrix};
use crate::ring::{
    free_member, IdealSampler, IdealSpec, IntRing, Letter, ModRing, Poly, RingAdapter, RingError, Tag, TriangRing,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("letter tag {0} has no ideal binding")]
    UnboundTag(String),
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("numeric verification needs a concrete ring, got `{0}`")]
    NotConcrete(RingAdapter),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Numeric,
    Audit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub mode: Mode,
    pub n: usize,
    pub ring: String,
    pub trials: u64,
    pub failures: u64,
    /// Highest monomial degree met in the word arguments or the evaluated
    /// matrices (symbolic).
    pub max_degree: usize,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Tag → ideal of the adapter the letters are drawn from.
pub type Bindings = BTreeMap<Tag, IdealSpec>;

/// Standard bindings used across the test suite: `A`, `B`, `C`, `D` bound
/// to the given ideals (C and D reuse A and B), `R` and `I_k` to the ring.
pub fn standard_bindings(ring: RingAdapter, a: IdealSpec, b: IdealSpec) -> Result<Bindings, RingError> {
    let full = match ring {
        RingAdapter::Triang(m) => IdealSpec::named(m, crate::ring::NamedSet::Full),
        _ => IdealSpec::principal(ring, 1)?,
    };
    let mut out = Bindings::new();
    out.insert(Tag::A, a.clone());
    out.insert(Tag::B, b.clone());
    out.insert(Tag::C, a);
    out.insert(Tag::D, b);
    out.insert(Tag::R, full);
    Ok(out)
}

fn max_degree(m: &Matrix<Poly>) -> usize {
    m.entries().map(|(_, p)| p.degree()).max().unwrap_or(0)
}

/// Exact equality of `lhs` and `rhs` over the free ring.
pub fn verify_symbolic(id: &str, lhs: &GroupWord, rhs: &GroupWord) -> Result<VerificationReport, VerifyError> {
    if lhs.n() != rhs.n() {
        return Err(MatError::DegreeMismatch(lhs.n(), rhs.n()).into());
    }
    let start = Instant::now();
    let l = lhs.eval_free();
    let r = rhs.eval_free();
    let diffs = l.differences(&r);
    let detail = diffs.first().map(|&(i, j)| {
        let d = l.get(i, j) - r.get(i, j);
        format!("entry ({i},{j}) differs by {d}")
    });
    Ok(VerificationReport {
        id: id.to_string(),
        mode: Mode::Symbolic,
        n: lhs.n(),
        ring: RingAdapter::Free.to_string(),
        trials: 1,
        failures: diffs.len() as u64,
        max_degree: max_degree(&l).max(max_degree(&r)).max(lhs.max_arg_degree()).max(rhs.max_arg_degree()),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: None,
        detail,
    })
}

fn letters_of(words: &[&GroupWord]) -> BTreeSet<Letter> {
    words.iter().flat_map(|w| w.atoms().iter().flat_map(|t| t.arg.letters())).collect()
}

fn numeric_in<R: IdealSampler>(
    ring: &R,
    lhs: &GroupWord,
    rhs: &GroupWord,
    bindings: &Bindings,
    trials: u64,
    seed: u64,
) -> Result<(u64, Option<String>), VerifyError> {
    let letters = letters_of(&[lhs, rhs]);
    for l in &letters {
        if !bindings.contains_key(&l.tag) {
            return Err(VerifyError::UnboundTag(l.tag.name()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut detail = None;
    for trial in 0..trials {
        let mut values = BTreeMap::new();
        for l in &letters {
            values.insert(*l, ring.sample_in(&bindings[&l.tag], &mut rng)?);
        }
        let eval = |p: &Poly| {
            p.eval(
                ring.zero(),
                |c| ring.of_int(c),
                |l| Ok::<_, VerifyError>(values[l].clone()),
                |x, y| ring.add(x, y),
                |x, y| ring.mul(x, y),
            )
        };
        let a = lhs.eval_with(ring, eval)?;
        let b = rhs.eval_with(ring, eval)?;
        if a != b {
            failures += 1;
            if detail.is_none() {
                detail = Some(format!("trial {trial}: entries {:?} differ", a.differences(&b)));
            }
        }
    }
    Ok((failures, detail))
}

/// Compare `lhs` and `rhs` on random ideal elements of a concrete ring.
pub fn verify_numeric(
    id: &str,
    lhs: &GroupWord,
    rhs: &GroupWord,
    adapter: RingAdapter,
    bindings: &Bindings,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::ZeroTrials);
    }
    if lhs.n() != rhs.n() {
        return Err(MatError::DegreeMismatch(lhs.n(), rhs.n()).into());
    }
    let start = Instant::now();
    let (failures, detail) = match adapter {
        RingAdapter::Int => numeric_in(&IntRing, lhs, rhs, bindings, trials, seed)?,
        RingAdapter::Mod(m) => numeric_in(&ModRing::new(m)?, lhs, rhs, bindings, trials, seed)?,
        RingAdapter::Triang(m) => numeric_in(&TriangRing::new(m)?, lhs, rhs, bindings, trials, seed)?,
        RingAdapter::Free => return Err(VerifyError::NotConcrete(adapter)),
    };
    Ok(VerificationReport {
        id: id.to_string(),
        mode: Mode::Numeric,
        n: lhs.n(),
        ring: adapter.to_string(),
        trials,
        failures,
        max_degree: 0,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: Some(seed),
        detail,
    })
}

/// Check every level claim on `factors`, and that `target` is congruent to
/// the identity modulo `level` (a necessary condition for lying in the
/// corresponding congruence subgroup).
pub fn audit_levels(
    id: &str,
    target: &GroupWord,
    factors: &[Factor],
    level: &IdealSpec,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let mut failures = 0u64;
    let mut notes = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        for (arg, claim) in f.gen.args().into_iter().zip(&f.levels) {
            if let Some(claim) = claim {
                if claim.ring != RingAdapter::Free {
                    return Err(RingError::Mismatch { left: RingAdapter::Free, right: claim.ring }.into());
                }
                if !free_member(arg, &claim.ideal)? {
                    failures += 1;
                    notes.push(format!("factor {k} ({f}): {arg} not in {claim}"));
                }
            }
        }
    }
    let m = target.eval_free();
    let mut err = None;
    let violations = m.congruence_violations(&crate::ring::FreeRing, |e| match free_member(e, &level.ideal) {
        Ok(b) => b,
        Err(e) => {
            err = Some(e);
            false
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    for (i, j) in &violations {
        failures += 1;
        notes.push(format!("target entry ({i},{j}) not congruent mod {level}"));
    }
    Ok(VerificationReport {
        id: id.to_string(),
        mode: Mode::Audit,
        n: target.n(),
        ring: RingAdapter::Free.to_string(),
        trials: factors.len() as u64,
        failures,
        max_degree: max_degree(&m),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: None,
        detail: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// Append reports to a line-delimited JSON run log.
pub fn append_run_log(path: &Path, reports: &[VerificationReport]) -> Result<(), VerifyError> {
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    for r in reports {
        let line = serde_json::to_string(r).map_err(std::io::Error::other)?;
        writeln!(f, "{line}")?;
    }
    Ok(())
}
