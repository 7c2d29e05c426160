//! Explicit factorizations of elementary commutators and conjugates.
//!
//! Each operation returns a target word together with a factor list whose
//! expansion is claimed to equal it. Nothing here is trusted: the symbolic
//! check in [`crate::verify`] is the arbiter, and the unit tests run it on
//! every catalogued identity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matgroup::{
    commutator_word, expand_factors, mirror_poly, Factor, Generator, GroupWord, MatError, Transvection,
};
use crate::ring::{sym_product, IdealSpec, Letter, Poly, RingError, Tag};
use crate::verify::{audit_levels, verify_symbolic, VerificationReport, VerifyError};

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("indices {0:?} are not pairwise distinct")]
    IndexClash(Vec<usize>),
    #[error("position ({k},{l}) against y at ({i},{j}) is not covered by Lemma 4")]
    NotCovered { k: usize, l: usize, i: usize, j: usize },
    #[error("unknown identity `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Ideals the two distinguished arguments are drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roles {
    pub first: IdealSpec,
    pub second: IdealSpec,
}

impl Roles {
    pub fn ab() -> Self {
        Roles { first: IdealSpec::free_tag(Tag::A), second: IdealSpec::free_tag(Tag::B) }
    }

    pub fn ba() -> Self {
        Roles { first: IdealSpec::free_tag(Tag::B), second: IdealSpec::free_tag(Tag::A) }
    }

    pub fn swapped(&self) -> Self {
        Roles { first: self.second.clone(), second: self.first.clone() }
    }

    pub fn sym(&self) -> IdealSpec {
        sym_product(&self.first, &self.second).expect("roles share a ring")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult {
    pub target: GroupWord,
    pub factors: Vec<Factor>,
    /// Level of the plain transvection factors.
    pub residual_class: IdealSpec,
}

impl FactorizationResult {
    pub fn n(&self) -> usize {
        self.target.n()
    }

    pub fn expansion(&self) -> Result<GroupWord, MatError> {
        expand_factors(self.n(), &self.factors)
    }

    pub fn verify(&self, id: &str) -> Result<VerificationReport, VerifyError> {
        verify_symbolic(id, &self.target, &self.expansion()?)
    }

    pub fn audit(&self, id: &str) -> Result<VerificationReport, VerifyError> {
        audit_levels(id, &self.target, &self.factors, &self.residual_class)
    }

    /// The transpose-inverse image: a factorization of the mirrored target.
    pub fn mirror(&self) -> Result<Self, MatError> {
        let atoms = self.target.atoms().iter().map(|t| Transvection::new(t.j, t.i, mirror_poly(&t.arg)));
        Ok(FactorizationResult {
            target: GroupWord::new(self.n(), atoms.collect())?,
            factors: self.factors.iter().map(Factor::mirror).collect(),
            residual_class: self.residual_class.clone(),
        })
    }
}

fn distinct(ix: &[usize]) -> Result<(), IdentityError> {
    for (p, a) in ix.iter().enumerate() {
        if ix[p + 1..].contains(a) {
            return Err(IdentityError::IndexClash(ix.to_vec()));
        }
    }
    Ok(())
}

fn mul(ps: &[&Poly]) -> Poly {
    crate::ring::product(ps.iter().copied())
}

fn t(i: usize, j: usize, x: Poly, level: &IdealSpec) -> Factor {
    Factor::t(i, j, x, Some(level.clone()))
}

fn y(i: usize, j: usize, x: Poly, v: Poly, roles: &Roles) -> Factor {
    Factor::with_levels(Generator::y(i, j, x, v), vec![Some(roles.first.clone()), Some(roles.second.clone())])
}

fn z(i: usize, j: usize, x: Poly, c: Poly, level: &IdealSpec) -> Factor {
    Factor::with_levels(Generator::z(i, j, x, c), vec![Some(level.clone()), None])
}

/// Which of the four touching cases `(k,l)` is relative to `y_ij`, with the
/// third index `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma4Case {
    IH,
    JH,
    HI,
    HJ,
}

impl Lemma4Case {
    pub fn classify(k: usize, l: usize, i: usize, j: usize) -> Result<Option<(Lemma4Case, usize)>, IdentityError> {
        if (k, l) == (i, j) || (k, l) == (j, i) {
            return Err(IdentityError::NotCovered { k, l, i, j });
        }
        Ok(if k == i {
            Some((Lemma4Case::IH, l))
        } else if k == j {
            Some((Lemma4Case::JH, l))
        } else if l == i {
            Some((Lemma4Case::HI, k))
        } else if l == j {
            Some((Lemma4Case::HJ, k))
        } else {
            None
        })
    }
}

/// Closed form of `[t_kl(c), y_ij(a,b)]`.
#[allow(clippy::too_many_arguments)]
pub fn lemma4_conjugation(
    n: usize,
    (k, l): (usize, usize),
    (i, j): (usize, usize),
    a: &Poly,
    b: &Poly,
    c: &Poly,
    roles: &Roles,
) -> Result<FactorizationResult, IdentityError> {
    distinct(&[i, j])?;
    distinct(&[k, l])?;
    let lhs = GroupWord::new(n, vec![Transvection::new(k, l, c.clone())])?;
    let target = commutator_word(&lhs, &Generator::y(i, j, a.clone(), b.clone()).to_word(n)?)?;
    let s = roles.sym();
    let factors = match Lemma4Case::classify(k, l, i, j)? {
        None => vec![],
        Some((case, h)) => match case {
            Lemma4Case::IH => {
                vec![t(i, h, -mul(&[a, b, c]) - mul(&[a, b, a, b, c]), &s), t(j, h, -mul(&[b, a, b, c]), &s)]
            }
            Lemma4Case::JH => vec![t(i, h, mul(&[a, b, a, c]), &s), t(j, h, mul(&[b, a, c]), &s)],
            Lemma4Case::HI => vec![t(h, i, mul(&[c, a, b]), &s), t(h, j, -mul(&[c, a, b, a]), &s)],
            Lemma4Case::HJ => {
                vec![t(h, i, mul(&[c, b, a, b]), &s), t(h, j, -mul(&[c, b, a]) - mul(&[c, b, a, b, a]), &s)]
            }
        },
    };
    Ok(FactorizationResult { target, factors, residual_class: s })
}

/// `t·y·t⁻¹ = correction·y`, with the correction read off Lemma 4.
pub fn conjugate_y_mod_level(
    n: usize,
    tv: &Transvection,
    (i, j): (usize, usize),
    a: &Poly,
    b: &Poly,
    roles: &Roles,
) -> Result<(Generator, GroupWord), IdentityError> {
    let r = lemma4_conjugation(n, (tv.i, tv.j), (i, j), a, b, &tv.arg, roles)?;
    Ok((Generator::y(i, j, a.clone(), b.clone()), r.expansion()?.free_reduce()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Row,
    Column,
}

/// `z_ij(a,c)` through `z_ih`, `z_jh` (row) or `z_hi`, `z_hj` (column) and
/// level-`A` transvections, where `a` lies in `level`.
#[allow(clippy::too_many_arguments)]
pub fn lemma5_z_move(
    n: usize,
    (i, j, h): (usize, usize, usize),
    a: &Poly,
    c: &Poly,
    variant: Variant,
    level: &IdealSpec,
) -> Result<FactorizationResult, IdentityError> {
    distinct(&[i, j, h])?;
    if variant == Variant::Column {
        return Ok(lemma5_z_move(n, (j, i, h), &mirror_poly(a), &mirror_poly(c), Variant::Row, level)?.mirror()?);
    }
    let target = Generator::z(i, j, a.clone(), c.clone()).to_word(n)?;
    let ca = mul(&[c, a]);
    let cac = mul(&[c, a, c]);
    let factors = vec![
        t(j, h, ca.clone(), level),
        t(i, h, a.clone(), level),
        z(i, h, -a, -c, level),
        t(h, j, -&ca, level),
        t(i, j, a.clone(), level),
        t(j, h, -&ca, level),
        t(j, i, -&cac, level),
        t(j, i, cac.clone(), level),
        t(j, h, ca.clone(), level),
        t(h, i, -&cac, level),
        t(j, i, -&cac, level),
        z(j, h, -&ca, Poly::one(), level),
    ];
    Ok(FactorizationResult { target, factors, residual_class: level.clone() })
}

/// `y_ij(a,b)` through `y_ih(a,b)`, `z_jh(ba,·)` and level-`A∘B`
/// transvections (row), or the mirrored column form through `y_hj`, `z_hi`.
pub fn lemma6_roll(
    n: usize,
    (i, j, h): (usize, usize, usize),
    a: &Poly,
    b: &Poly,
    variant: Variant,
    roles: &Roles,
) -> Result<FactorizationResult, IdentityError> {
    distinct(&[i, j, h])?;
    if variant == Variant::Column {
        return Ok(lemma6_roll(n, (j, i, h), &mirror_poly(a), &mirror_poly(b), Variant::Row, roles)?.mirror()?);
    }
    let target = Generator::y(i, j, a.clone(), b.clone()).to_word(n)?;
    let s = roles.sym();
    let ba = mul(&[b, a]);
    let bab = mul(&[b, a, b]);
    let aba = mul(&[a, b, a]);
    let factors = vec![
        // t_ij(a) and the first conjugated commutator
        t(i, h, aba.clone(), &s),
        // the second one, pulled past its A∘B conjugator
        t(i, h, mul(&[a, b, a, b, a]), &s),
        t(i, j, -&aba, &s),
        t(j, h, ba.clone(), &s),
        t(h, j, -&ba, &s),
        t(j, h, -&ba, &s),
        t(j, i, mul(&[b, a, b, a, b]), &s),
        t(j, h, -mul(&[b, a, b, a]) - mul(&[b, a, b, a, b, a]), &s),
        y(i, h, a.clone(), b.clone(), roles),
        t(j, h, ba.clone(), &s),
        z(j, h, -&ba, -Poly::one(), &s),
        t(h, i, -&bab, &s),
        t(j, i, bab, &s),
    ];
    Ok(FactorizationResult { target, factors, residual_class: s })
}

/// `z_ij(ab,c)` as a product of `y_ih`, `y_jh` and level-`A∘B`
/// transvections. With `roles` swapped and the letters exchanged this is the
/// `z_ij(ba,c)` form; the column variant is the mirror image.
#[allow(clippy::too_many_arguments)]
pub fn lemma7_z_from_y(
    n: usize,
    (i, j, h): (usize, usize, usize),
    a: &Poly,
    b: &Poly,
    c: &Poly,
    variant: Variant,
    roles: &Roles,
) -> Result<FactorizationResult, IdentityError> {
    distinct(&[i, j, h])?;
    if variant == Variant::Column {
        let m = mirror_poly;
        // m(ab) = -(m b)(m a), so z_ji(-(m b)·(m a), m c) mirrors to z_ij(ab, c)
        let r = lemma7_z_from_y(n, (j, i, h), &-m(b), &m(a), &m(c), Variant::Row, &roles.swapped())?;
        return Ok(r.mirror()?);
    }
    let target = Generator::z(i, j, mul(&[a, b]), c.clone()).to_word(n)?;
    let s = roles.sym();
    let ca = mul(&[c, a]);
    let bcab = mul(&[b, c, a, b]);
    let factors = vec![
        t(i, j, mul(&[a, b]), &s),
        t(i, h, -mul(&[a, b, c, a]), &s),
        t(i, j, -mul(&[a, b, c, a, b]), &s),
        t(i, h, mul(&[a, b, c, a, b, c, a]), &s),
        y(j, h, ca.clone(), -&bcab, roles),
        t(h, j, -&bcab, &s),
        t(j, i, mul(&[c, a, b, c, a, b, c]), &s),
        t(j, h, mul(&[c, a, b, c, a]) - mul(&[c, a, b, c, a, b, c, a]), &s),
        y(i, h, a.clone(), -mul(&[b, c]), roles),
        y(j, h, ca, b.clone(), roles),
        t(h, i, -mul(&[b, c, a, b, c]), &s),
        t(j, i, -mul(&[c, a, b, c]), &s),
    ];
    Ok(FactorizationResult { target, factors, residual_class: s })
}

/// `y_ij(a,b) = z_ij(a,0)·z_ij(-a,b)`.
pub fn theorem2_y_split(
    n: usize,
    (i, j): (usize, usize),
    a: &Poly,
    b: &Poly,
    roles: &Roles,
) -> Result<FactorizationResult, IdentityError> {
    distinct(&[i, j])?;
    let target = Generator::y(i, j, a.clone(), b.clone()).to_word(n)?;
    let claim = |x: Poly, c: Poly| Factor::with_levels(Generator::z(i, j, x, c), vec![Some(roles.first.clone()), None]);
    let factors = vec![claim(a.clone(), Poly::zero()), claim(-a, b.clone())];
    Ok(FactorizationResult { target, factors, residual_class: roles.sym() })
}

/// Stable identifiers of the catalogued identities.
pub const CATALOGUE: [&str; 11] = [
    "lemma4.ih",
    "lemma4.jh",
    "lemma4.hi",
    "lemma4.hj",
    "lemma5.row",
    "lemma5.col",
    "lemma6.row",
    "lemma6.col",
    "lemma7.ab",
    "lemma7.ba",
    "thm2.split",
];

/// Instantiate a catalogued identity at degree `n` on indices 1, 2, 3 with
/// fresh letters `a1 ∈ A`, `b1 ∈ B`, `r1 ∈ R`.
pub fn instantiate(id: &str, n: usize) -> Result<FactorizationResult, IdentityError> {
    let a = Poly::letter(Letter::new(Tag::A, 1));
    let b = Poly::letter(Letter::new(Tag::B, 1));
    let c = Poly::letter(Letter::new(Tag::R, 1));
    let ab = Roles::ab();
    let level_a = IdealSpec::free_tag(Tag::A);
    let (i, j, h) = (1, 2, 3);
    match id {
        "lemma4.ih" => lemma4_conjugation(n, (i, h), (i, j), &a, &b, &c, &ab),
        "lemma4.jh" => lemma4_conjugation(n, (j, h), (i, j), &a, &b, &c, &ab),
        "lemma4.hi" => lemma4_conjugation(n, (h, i), (i, j), &a, &b, &c, &ab),
        "lemma4.hj" => lemma4_conjugation(n, (h, j), (i, j), &a, &b, &c, &ab),
        "lemma5.row" => lemma5_z_move(n, (i, j, h), &a, &c, Variant::Row, &level_a),
        "lemma5.col" => lemma5_z_move(n, (i, j, h), &a, &c, Variant::Column, &level_a),
        "lemma6.row" => lemma6_roll(n, (i, j, h), &a, &b, Variant::Row, &ab),
        "lemma6.col" => lemma6_roll(n, (i, j, h), &a, &b, Variant::Column, &ab),
        "lemma7.ab" => lemma7_z_from_y(n, (i, j, h), &a, &b, &c, Variant::Row, &ab),
        "lemma7.ba" => lemma7_z_from_y(n, (i, j, h), &b, &a, &c, Variant::Row, &Roles::ba()),
        "thm2.split" => theorem2_y_split(n, (i, j), &a, &b, &ab),
        other => Err(IdentityError::Unknown(other.to_string())),
    }
}

/// One documented discrepancy between a printed formula and the verified one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub identity: String,
    pub location: String,
    pub printed: String,
    pub corrected: String,
    pub propagates_to: Vec<String>,
    pub corrected_factor: String,
    pub evidence: String,
}

pub const ERRATA_JSON: &str = include_str!("../errata.json");

pub fn errata() -> Vec<Erratum> {
    serde_json::from_str(ERRATA_JSON).expect("shipped errata file is valid")
}
