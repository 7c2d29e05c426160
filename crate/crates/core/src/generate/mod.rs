//! Rewriting targets into reduced generating sets, with certificates.

mod certificate;
mod engine;
mod positions;
mod theorem1;

use thiserror::Error;

pub use certificate::{Basis, Certificate, Checks, Claim, FactorRecord, NumericCheck, NumericPlan, SymbolicCheck};
pub use engine::{simplify, split_terms, Closure, Fact, Orient, Rule, System};
pub use positions::{Extra, ExtraKind, Mode, Pos, PositionSet};
pub use theorem1::{commutator_form_violations, random_mixed_word, theorem1_rewrite, MixedAtom, Order, SymTerm};

use crate::identities::{theorem2_y_split, IdentityError, Roles};
use crate::matgroup::{Factor, Generator, MatError};
use crate::ring::{free_member, tree_level, BracketTree, IdealSpec, Poly, RingError, Tag};
use crate::syntax::ParseError;
use crate::verify::VerifyError;

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not generated: {0}")]
    NotGenerated(String),
    #[error("n = 3 needs the quasi-finite hypothesis to be asserted explicitly")]
    QuasiFiniteRequired,
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

/// Relative elementary subgroup `E(n,R,A)`: `z_ij(a,c)` through `E(n,A)` and
/// elementary conjugates at the positions of `ps`.
pub fn theorem_c_closure(ps: &PositionSet) -> Result<Closure, GenerateError> {
    ps.validate()?;
    let basis: Vec<Fact> = ps.family().into_iter().map(|p| Fact::Z(p, Orient::AB)).collect();
    Ok(Closure::new(ps.n, System::Conjugates, &basis))
}

pub fn theorem_c_decompose(ps: &PositionSet, (i, j): Pos, a: &Poly, c: &Poly) -> Result<Certificate, GenerateError> {
    let closure = theorem_c_closure(ps)?;
    theorem_c_with(&closure, ps, (i, j), a, c)
}

/// As [`theorem_c_decompose`], reusing a closure computed for `ps`.
pub fn theorem_c_with(
    closure: &Closure,
    ps: &PositionSet,
    (i, j): Pos,
    a: &Poly,
    c: &Poly,
) -> Result<Certificate, GenerateError> {
    let level = IdealSpec::free_tag(Tag::A);
    if !free_member(a, &level.ideal)? {
        return Err(GenerateError::Invalid(format!("{a} is not in A")));
    }
    let factors = closure.expand_z((i, j), Orient::AB, a, c)?;
    let target = Factor::with_levels(Generator::z(i, j, a.clone(), c.clone()), vec![Some(level), None]);
    Certificate::build("C", ps.n, &[target], &factors, Some(*ps), "E(n,R,A)")
}

/// Generators of `[E(n,A),E(n,B)]` per the mixed-commutator reduction: `y`
/// at the interlaced positions (both orientations) and at the extra
/// position, or `z(ab,c)`, `z(ba,c)` at the extra position.
pub fn theorem4_closure(ps: &PositionSet) -> Result<Closure, GenerateError> {
    ps.validate()?;
    let extra = ps
        .extra
        .ok_or_else(|| GenerateError::Invalid("the reduced commutator basis needs an extra position".into()))?;
    let mut basis = Vec::new();
    let mut both = |f: fn(Pos, Orient) -> Fact, p: Pos| {
        basis.push(f(p, Orient::AB));
        basis.push(f(p, Orient::BA));
    };
    for p in ps.family() {
        both(Fact::Y, p);
    }
    match extra.kind {
        ExtraKind::Y => both(Fact::Y, (extra.s, extra.t)),
        ExtraKind::Z => both(Fact::Z, (extra.s, extra.t)),
    }
    Ok(Closure::new(ps.n, System::Commutators, &basis))
}

pub fn theorem4_rewrite(ps: &PositionSet, (i, j): Pos, a: &Poly, b: &Poly) -> Result<Certificate, GenerateError> {
    let closure = theorem4_closure(ps)?;
    theorem4_with(&closure, ps, (i, j), a, b)
}

pub fn theorem4_with(
    closure: &Closure,
    ps: &PositionSet,
    (i, j): Pos,
    a: &Poly,
    b: &Poly,
) -> Result<Certificate, GenerateError> {
    let roles = Roles::ab();
    check_roles(a, b, &roles)?;
    let factors = closure.expand_y((i, j), Orient::AB, a, b)?;
    let target =
        Factor::with_levels(Generator::y(i, j, a.clone(), b.clone()), vec![Some(roles.first), Some(roles.second)]);
    Certificate::build("4", ps.n, &[target], &factors, Some(*ps), "[E(n,A),E(n,B)]")
}

fn check_roles(a: &Poly, b: &Poly, roles: &Roles) -> Result<(), GenerateError> {
    if !free_member(a, &roles.first.ideal)? {
        return Err(GenerateError::Invalid(format!("{a} is not in {}", roles.first)));
    }
    if !free_member(b, &roles.second.ideal)? {
        return Err(GenerateError::Invalid(format!("{b} is not in {}", roles.second)));
    }
    Ok(())
}

/// Positions outside the declared basis that appear in non-transvection
/// factors, for Theorem C and reduced-commutator certificates.
pub fn stray_atoms(ps: &PositionSet, theorem: &str, factors: &[Factor]) -> Vec<String> {
    let family = ps.family();
    let extra = ps.extra.map(|e| (e.kind, (e.s, e.t)));
    factors
        .iter()
        .filter(|f| {
            let p = f.gen.position();
            match (&f.gen, theorem) {
                (Generator::T { .. }, _) => false,
                (Generator::Z { .. }, "C") => !family.contains(&p),
                (Generator::Y { .. }, "4") => !family.contains(&p) && extra != Some((ExtraKind::Y, p)),
                (Generator::Z { .. }, "4") => extra != Some((ExtraKind::Z, p)),
                _ => true,
            }
        })
        .map(|f| f.to_string())
        .collect()
}

/// Generating-set descriptor for a multiple commutator of `E(n, I_k)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MultipleDescriptor {
    pub n: usize,
    pub tree: String,
    pub cut_point: usize,
    pub left_level: String,
    pub right_level: String,
    pub schema: String,
}

pub fn theorem5_generators(
    n: usize,
    tree: &BracketTree,
    ideals: &[IdealSpec],
    assume_quasi_finite: bool,
) -> Result<MultipleDescriptor, GenerateError> {
    if n < 3 {
        return Err(GenerateError::Invalid(format!("n = {n} is below 3")));
    }
    if n == 3 && !assume_quasi_finite {
        return Err(GenerateError::QuasiFiniteRequired);
    }
    tree.validate(ideals.len())?;
    let BracketTree::Node(left, right) = tree else {
        return Err(GenerateError::Invalid("a multiple commutator needs at least two ideals".into()));
    };
    let cut = tree.cut_point().expect("node");
    let sub = |t: &BracketTree, offset: usize| -> Result<IdealSpec, GenerateError> {
        let leaves = t.leaves();
        let picked: Vec<IdealSpec> = leaves.iter().map(|&k| ideals[k - 1].clone()).collect();
        let relabelled = relabel(t, offset);
        Ok(tree_level(&relabelled, &picked)?)
    };
    let left_level = sub(left, 0)?;
    let right_level = sub(right, cut)?;
    Ok(MultipleDescriptor {
        n,
        tree: tree.to_string(),
        cut_point: cut,
        left_level: left_level.to_string(),
        right_level: right_level.to_string(),
        schema: format!("[t_ij(a), t_hk(b)], a in {left_level}, b in {right_level}"),
    })
}

/// Renumber the leaves of a subtree from 1.
fn relabel(t: &BracketTree, offset: usize) -> BracketTree {
    match t {
        BracketTree::Leaf(k) => BracketTree::Leaf(k - offset),
        BracketTree::Node(l, r) => BracketTree::node(relabel(l, offset), relabel(r, offset)),
    }
}

/// Computational halves of `E(n,B,A) = ⟨z_ij(a,b)⟩`: each `y_ij(a,b)` as
/// `z_ij(a,0)·z_ij(-a,b)`, each `z_ij(a,b)` checked against its definition.
pub fn partial_relative_generators(n: usize, targets: &[Factor]) -> Result<Vec<Certificate>, GenerateError> {
    let roles = Roles::ab();
    let mut out = Vec::new();
    for t in targets {
        let args = t.gen.args();
        check_roles(args[0], args[1], &roles)?;
        let (i, j) = t.gen.position();
        let cert = match &t.gen {
            Generator::Y { x, y, .. } => {
                let r = theorem2_y_split(n, (i, j), x, y, &roles)?;
                let target =
                    Factor::with_levels(t.gen.clone(), vec![Some(roles.first.clone()), Some(roles.second.clone())]);
                Certificate::build("2", n, &[target], &r.factors, None, "E(n,B,A)")?
            }
            Generator::Z { x, c, .. } => {
                let target = Factor::with_levels(t.gen.clone(), vec![Some(roles.first.clone()), None]);
                let expansion = vec![
                    Factor::t(j, i, c.clone(), Some(roles.second.clone())),
                    Factor::t(i, j, x.clone(), Some(roles.first.clone())),
                    Factor::t(j, i, -c, Some(roles.second.clone())),
                ];
                Certificate::build("2", n, &[target], &expansion, None, "E(n,B,A)")?
            }
            _ => return Err(GenerateError::Invalid(format!("{t} is neither a y nor a z atom"))),
        };
        out.push(cert);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
