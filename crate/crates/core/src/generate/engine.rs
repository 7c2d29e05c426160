//! Closure of a generator configuration under the lemma rules, and
//! recursive expansion of a target into basis atoms.
//!
//! Facts are "every `y_p(u,v)` (or `z_p(uv,c)`) with arguments of the given
//! orientation lies in the subgroup". A fact derived in round `k` only uses
//! facts from earlier rounds, so expanding along the recorded rules always
//! terminates.

use std::collections::BTreeMap;

use super::positions::Pos;
use super::GenerateError;
use crate::identities::{lemma5_z_move, lemma6_roll, lemma7_z_from_y, Roles, Variant};
use crate::matgroup::{Factor, Generator};
use crate::ring::{term_member, IdealSpec, Poly, Tag};

/// Which ideal the first distinguished argument comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    AB,
    BA,
}

impl Orient {
    pub fn flip(self) -> Self {
        match self {
            Orient::AB => Orient::BA,
            Orient::BA => Orient::AB,
        }
    }

    pub fn roles(self) -> Roles {
        match self {
            Orient::AB => Roles::ab(),
            Orient::BA => Roles::ba(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    Y(Pos, Orient),
    Z(Pos, Orient),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Basis,
    /// `y_p(u,v) = y_pᵀ(v,u)⁻¹`.
    Inverse,
    Lemma5(usize, Variant),
    Lemma6(usize, Variant),
    Lemma7(usize, Variant),
}

/// Which rule families are in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    /// Elementary conjugates of one ideal: Lemma 5 only.
    Conjugates,
    /// Commutators and conjugates of two ideals: Lemmas 5, 6, 7.
    Commutators,
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub n: usize,
    pub system: System,
    facts: BTreeMap<Fact, (u32, Rule)>,
}

fn third_indices(n: usize, i: usize, j: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |&h| h != i && h != j)
}

impl Closure {
    pub fn new(n: usize, system: System, basis: &[Fact]) -> Self {
        let mut facts: BTreeMap<Fact, (u32, Rule)> = basis.iter().map(|f| (*f, (0, Rule::Basis))).collect();
        let mut all = Vec::new();
        for p in super::positions::PositionSet::all_positions(n) {
            for o in [Orient::AB, Orient::BA] {
                if system == System::Commutators {
                    all.push(Fact::Y(p, o));
                    all.push(Fact::Z(p, o));
                } else if o == Orient::AB {
                    all.push(Fact::Z(p, o));
                }
            }
        }
        let mut round = 0;
        loop {
            round += 1;
            let known = facts.clone();
            let has = |f: Fact| known.contains_key(&f);
            let mut added = false;
            for &f in &all {
                if has(f) {
                    continue;
                }
                if let Some(rule) = Self::find_rule(n, system, f, &has) {
                    facts.insert(f, (round, rule));
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
        Closure { n, system, facts }
    }

    fn find_rule(n: usize, system: System, f: Fact, has: &dyn Fn(Fact) -> bool) -> Option<Rule> {
        use Variant::{Column, Row};
        match f {
            Fact::Y((i, j), o) => {
                if has(Fact::Y((j, i), o.flip())) {
                    return Some(Rule::Inverse);
                }
                third_indices(n, i, j).find_map(|h| {
                    if has(Fact::Y((i, h), o)) && has(Fact::Z((j, h), o.flip())) {
                        Some(Rule::Lemma6(h, Row))
                    } else if has(Fact::Y((h, j), o)) && has(Fact::Z((h, i), o)) {
                        Some(Rule::Lemma6(h, Column))
                    } else {
                        None
                    }
                })
            }
            Fact::Z((i, j), o) => third_indices(n, i, j).find_map(|h| {
                let y = system == System::Commutators;
                if y && has(Fact::Y((i, h), o)) && has(Fact::Y((j, h), o)) {
                    Some(Rule::Lemma7(h, Row))
                } else if y && has(Fact::Y((h, i), o.flip())) && has(Fact::Y((h, j), o.flip())) {
                    Some(Rule::Lemma7(h, Column))
                } else if has(Fact::Z((i, h), o)) && has(Fact::Z((j, h), o)) {
                    Some(Rule::Lemma5(h, Row))
                } else if has(Fact::Z((h, i), o)) && has(Fact::Z((h, j), o)) {
                    Some(Rule::Lemma5(h, Column))
                } else {
                    None
                }
            }),
        }
    }

    pub fn rule(&self, f: Fact) -> Option<(u32, Rule)> {
        self.facts.get(&f).copied()
    }

    pub fn contains(&self, f: Fact) -> bool {
        self.facts.contains_key(&f)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn depth(&self) -> u32 {
        self.facts.values().map(|(r, _)| *r).max().unwrap_or(0)
    }

    /// Level of the plain transvections produced while expanding.
    fn level(&self) -> IdealSpec {
        match self.system {
            System::Conjugates => IdealSpec::free_tag(Tag::A),
            System::Commutators => IdealSpec::free_sym(Tag::A, Tag::B),
        }
    }

    fn missing(&self, f: Fact) -> GenerateError {
        GenerateError::NotGenerated(format!("{f:?} is not reachable from the basis"))
    }

    /// Basis atoms and level transvections whose product is `y_p(u,v)`.
    pub fn expand_y(&self, p: Pos, o: Orient, u: &Poly, v: &Poly) -> Result<Vec<Factor>, GenerateError> {
        let mut out = Vec::new();
        self.push_y(p, o, u, v, &mut out)?;
        Ok(simplify(out))
    }

    /// Basis atoms and level transvections whose product is `z_p(x,c)`.
    pub fn expand_z(&self, p: Pos, o: Orient, x: &Poly, c: &Poly) -> Result<Vec<Factor>, GenerateError> {
        let mut out = Vec::new();
        self.push_z(p, o, x, c, &mut out)?;
        Ok(simplify(out))
    }

    fn push_y(&self, p: Pos, o: Orient, u: &Poly, v: &Poly, out: &mut Vec<Factor>) -> Result<(), GenerateError> {
        if u.is_zero() || v.is_zero() {
            return Ok(());
        }
        let f = Fact::Y(p, o);
        let (_, rule) = self.rule(f).ok_or_else(|| self.missing(f))?;
        let roles = o.roles();
        let (i, j) = p;
        match rule {
            Rule::Basis => out.push(Factor::with_levels(
                Generator::y(i, j, u.clone(), v.clone()),
                vec![Some(roles.first), Some(roles.second)],
            )),
            Rule::Inverse => {
                let mut inner = Vec::new();
                self.push_y((j, i), o.flip(), v, u, &mut inner)?;
                out.extend(inner.into_iter().rev().map(invert));
            }
            Rule::Lemma6(h, variant) => {
                let r = lemma6_roll(self.n, (i, j, h), u, v, variant, &roles)?;
                // row: z_jh(-vu,·) has the opposite orientation; column: z_hi(uv,·)
                let z_orient = if variant == Variant::Row { o.flip() } else { o };
                self.push_lemma_factors(r.factors, o, z_orient, out)?;
            }
            _ => unreachable!("y facts are derived by inversion or Lemma 6"),
        }
        Ok(())
    }

    /// Route the atoms of a lemma instance: `Y` atoms carry orientation
    /// `y_orient`; `Z` atoms are re-split term by term.
    fn push_lemma_factors(
        &self,
        factors: Vec<Factor>,
        y_orient: Orient,
        z_orient: Orient,
        out: &mut Vec<Factor>,
    ) -> Result<(), GenerateError> {
        for f in factors {
            debug_assert!(!f.inverse);
            match f.gen {
                Generator::T { .. } => out.push(f),
                Generator::Y { i, j, x, y } => self.push_y((i, j), y_orient, &x, &y, out)?,
                Generator::Z { i, j, x, c } => self.push_z((i, j), z_orient, &x, &c, out)?,
                Generator::C { .. } => unreachable!("lemmas emit no general commutators"),
            }
        }
        Ok(())
    }

    fn push_z(&self, p: Pos, o: Orient, x: &Poly, c: &Poly, out: &mut Vec<Factor>) -> Result<(), GenerateError> {
        if x.is_zero() {
            return Ok(());
        }
        let f = Fact::Z(p, o);
        let (_, rule) = self.rule(f).ok_or_else(|| self.missing(f))?;
        let (i, j) = p;
        let level = self.level();
        match rule {
            Rule::Basis => {
                out.push(Factor::with_levels(Generator::z(i, j, x.clone(), c.clone()), vec![Some(level), None]));
            }
            Rule::Lemma5(h, variant) => {
                let r = lemma5_z_move(self.n, (i, j, h), x, c, variant, &level)?;
                // the orientation of z_·(x,·) is preserved by Lemma 5
                self.push_lemma_factors(r.factors, o, o, out)?;
            }
            Rule::Lemma7(h, variant) => {
                let roles = o.roles();
                let y_orient = if variant == Variant::Row { o } else { o.flip() };
                // z is additive in its first argument: one Lemma 7 per term
                for (u, v) in split_terms(x, &roles)? {
                    let r = lemma7_z_from_y(self.n, (i, j, h), &u, &v, c, variant, &roles)?;
                    self.push_lemma_factors(r.factors, y_orient, o, out)?;
                }
            }
            _ => unreachable!("z facts are derived by Lemma 5 or Lemma 7"),
        }
        Ok(())
    }
}

fn invert(f: Factor) -> Factor {
    match f.gen {
        Generator::T { i, j, x } => Factor::with_levels(Generator::t(i, j, -x), f.levels),
        _ => f.inverted(),
    }
}

/// Write each term of `x` as `u·v` with `u` in the first and `v` in the
/// second ideal of `roles`.
pub fn split_terms(x: &Poly, roles: &Roles) -> Result<Vec<(Poly, Poly)>, GenerateError> {
    let mut out = Vec::new();
    for (m, c) in x.terms() {
        let one = num_bigint::BigInt::from(1);
        let split = m.splits().find(|(l, r)| {
            term_member(&one, l, &roles.first.ideal).unwrap_or(false)
                && term_member(&one, r, &roles.second.ideal).unwrap_or(false)
        });
        let (l, r) = split.ok_or_else(|| {
            GenerateError::Invalid(format!("term {m} has no split into {} times {}", roles.first, roles.second))
        })?;
        out.push((Poly::term(c.clone(), l), Poly::term(1, r)));
    }
    Ok(out)
}

/// Merge neighbouring transvections at the same position.
pub fn simplify(factors: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
    for f in factors {
        if let (Some(last), Generator::T { i, j, x }) = (out.last_mut(), &f.gen) {
            if let Generator::T { i: li, j: lj, x: lx } = &mut last.gen {
                if (*li, *lj) == (*i, *j) && last.levels == f.levels {
                    *lx = &*lx + x;
                    if lx.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
        }
        if matches!(&f.gen, Generator::T { x, .. } if x.is_zero()) {
            continue;
        }
        out.push(f);
    }
    out
}
