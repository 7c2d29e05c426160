//! Rewriting mixed words into elementary commutators `[t_ij(a), t_hk(b)]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::engine::split_terms;
use super::{Certificate, GenerateError};
use crate::identities::{lemma7_z_from_y, Roles, Variant};
use crate::matgroup::{Factor, Generator};
use crate::ring::{free_member, IdealSpec, Letter, Poly, Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    AB,
    BA,
}

/// One summand `coeff·a·b` (or `coeff·b·a`) of a symmetrised presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTerm {
    pub coeff: i64,
    pub a: Poly,
    pub b: Poly,
    pub order: Order,
}

impl SymTerm {
    pub fn value(&self) -> Poly {
        let p = match self.order {
            Order::AB => &self.a * &self.b,
            Order::BA => &self.b * &self.a,
        };
        p.scale(&self.coeff.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedAtom {
    /// `z_ij(Σ terms, c)`.
    Z { i: usize, j: usize, terms: Vec<SymTerm>, c: Poly, inverse: bool },
    /// `y_ij(a,b)` with `a ∈ A, b ∈ B` or `a ∈ B, b ∈ A`.
    Y { i: usize, j: usize, a: Poly, b: Poly, inverse: bool },
}

impl MixedAtom {
    pub fn factor(&self) -> Factor {
        let ab = IdealSpec::free_sym(Tag::A, Tag::B);
        let f = match self {
            MixedAtom::Z { i, j, terms, c, .. } => {
                let x = terms.iter().map(SymTerm::value).fold(Poly::zero(), |s, t| s + t);
                Factor::with_levels(Generator::z(*i, *j, x, c.clone()), vec![Some(ab), None])
            }
            MixedAtom::Y { i, j, a, b, .. } => Factor::new(Generator::y(*i, *j, a.clone(), b.clone())),
        };
        match self {
            MixedAtom::Z { inverse: true, .. } | MixedAtom::Y { inverse: true, .. } => f.inverted(),
            _ => f,
        }
    }

    /// Recover a presentation from a parsed atom, splitting each term of a
    /// `z` argument as `A·B` when possible and as `B·A` otherwise.
    pub fn from_factor(f: &Factor) -> Result<Self, GenerateError> {
        let inverse = f.inverse;
        match &f.gen {
            Generator::Y { i, j, x, y } => Ok(MixedAtom::Y { i: *i, j: *j, a: x.clone(), b: y.clone(), inverse }),
            Generator::Z { i, j, x, c } => {
                let mut terms = Vec::new();
                for (m, k) in x.terms() {
                    let mono = Poly::term(1, m.clone());
                    let coeff: i64 =
                        k.try_into().map_err(|_| GenerateError::Invalid(format!("coefficient {k} is too large")))?;
                    let (order, (a, b)) = match split_terms(&mono, &Roles::ab()) {
                        Ok(s) => (Order::AB, s[0].clone()),
                        Err(_) => {
                            let s = split_terms(&mono, &Roles::ba())
                                .map_err(|_| GenerateError::Invalid(format!("term {m} of {f} is not in AB + BA")))?;
                            let (bp, ap) = s[0].clone();
                            (Order::BA, (ap, bp))
                        }
                    };
                    terms.push(SymTerm { coeff, a, b, order });
                }
                Ok(MixedAtom::Z { i: *i, j: *j, terms, c: c.clone(), inverse })
            }
            _ => Err(GenerateError::Invalid(format!("{f} is not a z or y atom"))),
        }
    }
}

fn third(n: usize, i: usize, j: usize) -> usize {
    (1..=n).find(|&h| h != i && h != j).expect("n >= 3")
}

fn claims() -> Vec<Option<IdealSpec>> {
    vec![Some(IdealSpec::free_tag(Tag::A)), Some(IdealSpec::free_tag(Tag::B))]
}

/// `t_ij(x)`, `x ∈ A∘B`, as a product of `[t_ih(a), t_hj(b)]`.
fn push_level_transvection(n: usize, i: usize, j: usize, x: &Poly, out: &mut Vec<Factor>) -> Result<(), GenerateError> {
    let h = third(n, i, j);
    for (m, k) in x.terms() {
        let mono = Poly::term(1, m.clone());
        if let Ok(s) = split_terms(&mono, &Roles::ab()) {
            let (u, v) = s[0].clone();
            let u = u.scale(k);
            out.push(Factor::with_levels(Generator::c(i, h, u, h, j, v), claims()));
        } else {
            // t_ij(k·vu) = [t_hj(u), t_ih(-k·v)] with v ∈ B, u ∈ A
            let s = split_terms(&mono, &Roles::ba())?;
            let (v, u) = s[0].clone();
            out.push(Factor::with_levels(Generator::c(h, j, u, i, h, -v.scale(k)), claims()));
        }
    }
    Ok(())
}

fn push_y(i: usize, j: usize, u: &Poly, v: &Poly, out: &mut Vec<Factor>) -> Result<(), GenerateError> {
    let a = IdealSpec::free_tag(Tag::A);
    let b = IdealSpec::free_tag(Tag::B);
    if free_member(u, &a.ideal)? && free_member(v, &b.ideal)? {
        out.push(Factor::with_levels(Generator::y(i, j, u.clone(), v.clone()), claims()));
    } else if free_member(u, &b.ideal)? && free_member(v, &a.ideal)? {
        out.push(Factor::with_levels(Generator::y(j, i, v.clone(), u.clone()), claims()).inverted());
    } else {
        return Err(GenerateError::Invalid(format!("y({i},{j}; {u}; {v}) does not pair A with B")));
    }
    Ok(())
}

fn rewrite_atom(n: usize, atom: &MixedAtom) -> Result<Vec<Factor>, GenerateError> {
    let mut out = Vec::new();
    let inverse = match atom {
        MixedAtom::Y { i, j, a, b, inverse } => {
            push_y(*i, *j, a, b, &mut out)?;
            *inverse
        }
        MixedAtom::Z { i, j, terms, c, inverse } => {
            if terms.is_empty() {
                return Err(GenerateError::Invalid(format!("z({i},{j}) has no symmetrised presentation")));
            }
            let h = third(n, *i, *j);
            for t in terms {
                let k = Poly::constant(t.coeff);
                let (first, second, roles) = match t.order {
                    Order::AB => (&k * &t.a, t.b.clone(), Roles::ab()),
                    Order::BA => (&k * &t.b, t.a.clone(), Roles::ba()),
                };
                let r = lemma7_z_from_y(n, (*i, *j, h), &first, &second, c, Variant::Row, &roles)?;
                for f in r.factors {
                    match &f.gen {
                        Generator::Y { i, j, x, y } => push_y(*i, *j, x, y, &mut out)?,
                        Generator::T { i, j, x } => push_level_transvection(n, *i, *j, x, &mut out)?,
                        _ => unreachable!("Lemma 7 emits y atoms and transvections"),
                    }
                }
            }
            *inverse
        }
    };
    if inverse {
        out = out.into_iter().rev().map(Factor::inverted).collect();
    }
    Ok(out)
}

/// Rewrite a word of `z(ab,c)`, `z(ba,c)` and `y(a,b)` atoms into
/// elementary commutators of an `A`-transvection with a `B`-transvection.
pub fn theorem1_rewrite(n: usize, atoms: &[MixedAtom]) -> Result<Certificate, GenerateError> {
    if n < 3 {
        return Err(GenerateError::Invalid(format!("n = {n} is below 3")));
    }
    let mut factors = Vec::new();
    for atom in atoms {
        factors.extend(rewrite_atom(n, atom)?);
    }
    let target: Vec<Factor> = atoms.iter().map(MixedAtom::factor).collect();
    Certificate::build("1", n, &target, &factors, None, "[E(n,A),E(n,B)]")
}

/// Factors that are not literally `[t(a), t(b)]` with `a ∈ A`, `b ∈ B`
/// (or the inverse of one).
pub fn commutator_form_violations(factors: &[Factor]) -> Vec<String> {
    let a = IdealSpec::free_tag(Tag::A);
    let b = IdealSpec::free_tag(Tag::B);
    factors
        .iter()
        .filter(|f| {
            let args = f.gen.args();
            let shape = matches!(f.gen, Generator::Y { .. } | Generator::C { .. });
            !(shape
                && f.levels == [Some(a.clone()), Some(b.clone())]
                && free_member(args[0], &a.ideal).unwrap_or(false)
                && free_member(args[1], &b.ideal).unwrap_or(false))
        })
        .map(|f| f.to_string())
        .collect()
}

fn random_part<G: Rng>(rng: &mut G, tag: Tag, fresh: u32) -> Poly {
    let core = Poly::letter(Letter::new(tag, rng.gen_range(1..=fresh)));
    match rng.gen_range(0..3) {
        0 => core,
        1 => Poly::letter(Letter::new(Tag::R, rng.gen_range(1..=fresh))) * core,
        _ => core * Poly::letter(Letter::new(Tag::R, rng.gen_range(1..=fresh))),
    }
}

/// A random word of at most `max_len` mixed atoms at degree `n`, with
/// letters drawn from `a1..a{fresh}`, `b1..`, `r1..`.
pub fn random_mixed_word<G: Rng>(rng: &mut G, n: usize, max_len: usize, fresh: u32) -> Vec<MixedAtom> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            let inverse = rng.gen_bool(0.25);
            if rng.gen_bool(0.5) {
                let a = random_part(rng, Tag::A, fresh);
                let b = random_part(rng, Tag::B, fresh);
                if rng.gen_bool(0.5) {
                    MixedAtom::Y { i, j, a, b, inverse }
                } else {
                    MixedAtom::Y { i, j, a: b, b: a, inverse }
                }
            } else {
                let nterms = rng.gen_range(1..=2);
                let terms = (0..nterms)
                    .map(|_| SymTerm {
                        coeff: if rng.gen_bool(0.5) { 1 } else { -1 },
                        a: random_part(rng, Tag::A, fresh),
                        b: random_part(rng, Tag::B, fresh),
                        order: if rng.gen_bool(0.5) { Order::AB } else { Order::BA },
                    })
                    .collect();
                let c = match rng.gen_range(0..3) {
                    0 => Poly::zero(),
                    1 => Poly::letter(Letter::new(Tag::R, rng.gen_range(1..=fresh))),
                    _ => Poly::constant(rng.gen_range(-2..=2)),
                };
                MixedAtom::Z { i, j, terms, c, inverse }
            }
        })
        .collect()
}
