//! Two-sided ideals, symmetrised products and bracket trees.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::adapter::{IntRing, ModRing, Ring, RingAdapter, Triang, TriangRing};
use super::poly::{Monomial, Poly, Tag};
use super::RingError;

/// Named ideals of the triangular test ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSet {
    Zero,
    StrictUpper,
    Full,
}

impl NamedSet {
    pub fn name(&self) -> &'static str {
        match self {
            NamedSet::Zero => "zero",
            NamedSet::StrictUpper => "upper",
            NamedSet::Full => "full",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ideal {
    /// In the free ring: the ideal generated by all letters of a tag.
    Tag(Tag),
    /// `dℤ` (or its image in ℤ/m). `0` is the zero ideal, `1` the ring.
    Principal(BigInt),
    Named(NamedSet),
    /// `left ∘ right = left·right + right·left`.
    Sym(Box<Ideal>, Box<Ideal>),
}

impl Ideal {
    pub fn sym(left: Ideal, right: Ideal) -> Ideal {
        Ideal::Sym(Box::new(left), Box::new(right))
    }

    fn fmt_nested(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Ideal::Tag(t) => write!(f, "{}", t.name()),
            Ideal::Principal(d) => write!(f, "{d}"),
            Ideal::Named(n) => write!(f, "{}", n.name()),
            Ideal::Sym(l, r) => {
                if !top {
                    write!(f, "(")?;
                }
                l.fmt_nested(f, false)?;
                write!(f, "o")?;
                r.fmt_nested(f, false)?;
                if !top {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_nested(f, true)
    }
}

/// An ideal together with the ring it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealSpec {
    pub ring: RingAdapter,
    pub ideal: Ideal,
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

impl IdealSpec {
    pub fn free_tag(tag: Tag) -> Self {
        IdealSpec { ring: RingAdapter::Free, ideal: Ideal::Tag(tag) }
    }

    /// `A∘B` in the free ring.
    pub fn free_sym(left: Tag, right: Tag) -> Self {
        IdealSpec { ring: RingAdapter::Free, ideal: Ideal::sym(Ideal::Tag(left), Ideal::Tag(right)) }
    }

    pub fn principal(ring: RingAdapter, d: impl Into<BigInt>) -> Result<Self, RingError> {
        let d: BigInt = d.into();
        if d.is_negative() {
            return Err(RingError::InvalidIdeal(format!("negative generator {d}")));
        }
        let ideal = match ring {
            RingAdapter::Mod(m) => Ideal::Principal(canonical_mod(&d, m)),
            RingAdapter::Int | RingAdapter::Free => Ideal::Principal(d),
            RingAdapter::Triang(_) => return Err(RingError::InvalidIdeal("principal ideal in triang ring".into())),
        };
        Ok(IdealSpec { ring, ideal })
    }

    pub fn named(m: u64, set: NamedSet) -> Self {
        IdealSpec { ring: RingAdapter::Triang(m), ideal: Ideal::Named(set) }
    }

    /// Parse an ideal description for the given ring.
    ///
    /// Free ring: tags combined with `o`, e.g. `Ao(BoC)`; `o` chains are
    /// read left to right. ℤ and ℤ/m: a non-negative generator. Triangular
    /// ring: `zero`, `upper` or `full`.
    pub fn parse(ring: RingAdapter, s: &str) -> Result<Self, RingError> {
        let s = s.trim();
        let bad = || RingError::InvalidIdeal(s.to_string());
        match ring {
            RingAdapter::Int | RingAdapter::Mod(_) => {
                let d: BigInt = s.parse().map_err(|_| bad())?;
                IdealSpec::principal(ring, d)
            }
            RingAdapter::Triang(m) => {
                let set = match s {
                    "zero" | "0" => NamedSet::Zero,
                    "upper" => NamedSet::StrictUpper,
                    "full" | "1" => NamedSet::Full,
                    _ => return Err(bad()),
                };
                Ok(IdealSpec::named(m, set))
            }
            RingAdapter::Free => {
                let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
                let mut pos = 0;
                let ideal = parse_free_ideal(&chars, &mut pos).ok_or_else(bad)?;
                if pos != chars.len() {
                    return Err(bad());
                }
                Ok(IdealSpec { ring, ideal })
            }
        }
    }
}

fn parse_free_ideal(c: &[char], pos: &mut usize) -> Option<Ideal> {
    let mut acc = parse_free_atom(c, pos)?;
    while c.get(*pos) == Some(&'o') {
        *pos += 1;
        let rhs = parse_free_atom(c, pos)?;
        acc = Ideal::sym(acc, rhs);
    }
    Some(acc)
}

fn parse_free_atom(c: &[char], pos: &mut usize) -> Option<Ideal> {
    match c.get(*pos)? {
        '(' => {
            *pos += 1;
            let inner = parse_free_ideal(c, pos)?;
            (c.get(*pos) == Some(&')')).then(|| *pos += 1)?;
            Some(inner)
        }
        'I' => {
            let start = *pos;
            *pos += 1;
            while c.get(*pos).is_some_and(|ch| ch.is_ascii_digit()) {
                *pos += 1;
            }
            let name: String = c[start..*pos].iter().collect();
            Tag::from_name(&name).map(Ideal::Tag)
        }
        ch => {
            let tag = Tag::from_name(&ch.to_string())?;
            *pos += 1;
            Some(Ideal::Tag(tag))
        }
    }
}

fn canonical_mod(d: &BigInt, m: u64) -> BigInt {
    let g = d.gcd(&BigInt::from(m));
    if g == BigInt::from(m) {
        BigInt::zero()
    } else {
        g
    }
}

/// An element of one of the adapters, tagged with its ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElement {
    Free(Poly),
    Int(BigInt),
    Mod { value: u64, m: u64 },
    Triang { value: Triang, m: u64 },
}

impl RingElement {
    pub fn adapter(&self) -> RingAdapter {
        match self {
            RingElement::Free(_) => RingAdapter::Free,
            RingElement::Int(_) => RingAdapter::Int,
            RingElement::Mod { m, .. } => RingAdapter::Mod(*m),
            RingElement::Triang { m, .. } => RingAdapter::Triang(*m),
        }
    }
}

/// Decide `x ∈ ideal`.
pub fn ideal_member(x: &RingElement, ideal: &IdealSpec) -> Result<bool, RingError> {
    if x.adapter() != ideal.ring {
        return Err(RingError::Mismatch { left: x.adapter(), right: ideal.ring });
    }
    match x {
        RingElement::Free(p) => free_member(p, &ideal.ideal),
        RingElement::Int(v) => match reduce(ideal)? {
            Ideal::Principal(d) => Ok(divides(&d, v)),
            other => Err(RingError::InvalidIdeal(other.to_string())),
        },
        RingElement::Mod { value, .. } => match reduce(ideal)? {
            Ideal::Principal(d) => Ok(divides(&d, &BigInt::from(*value))),
            other => Err(RingError::InvalidIdeal(other.to_string())),
        },
        RingElement::Triang { value, .. } => match reduce(ideal)? {
            Ideal::Named(NamedSet::Zero) => Ok(*value == Triang { a: 0, b: 0, d: 0 }),
            Ideal::Named(NamedSet::StrictUpper) => Ok(value.a == 0 && value.d == 0),
            Ideal::Named(NamedSet::Full) => Ok(true),
            other => Err(RingError::InvalidIdeal(other.to_string())),
        },
    }
}

fn divides(d: &BigInt, v: &BigInt) -> bool {
    if d.is_zero() {
        v.is_zero()
    } else {
        (v % d).is_zero()
    }
}

/// Membership in the free ring, decided term by term.
pub fn free_member(p: &Poly, ideal: &Ideal) -> Result<bool, RingError> {
    for (m, c) in p.terms() {
        if !term_member(c, m, ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c·m ∈ ideal` for a single term of the free ring.
pub fn term_member(c: &BigInt, m: &Monomial, ideal: &Ideal) -> Result<bool, RingError> {
    match ideal {
        Ideal::Tag(t) => Ok(m.contains_tag(*t)),
        Ideal::Principal(d) => Ok(divides(d, c)),
        Ideal::Named(_) => Err(RingError::InvalidIdeal(ideal.to_string())),
        Ideal::Sym(l, r) => {
            let one = BigInt::one();
            for (m1, m2) in m.splits() {
                for (x, y) in [(l, r), (r, l)] {
                    if (term_member(c, &m1, x)? && term_member(&one, &m2, y)?)
                        || (term_member(&one, &m1, x)? && term_member(c, &m2, y)?)
                    {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
    }
}

/// Reduce a `Sym` description over ℤ, ℤ/m or the triangular ring to its
/// canonical form.
fn reduce(spec: &IdealSpec) -> Result<Ideal, RingError> {
    match &spec.ideal {
        Ideal::Sym(l, r) => {
            let l = IdealSpec { ring: spec.ring, ideal: reduce(&IdealSpec { ring: spec.ring, ideal: (**l).clone() })? };
            let r = IdealSpec { ring: spec.ring, ideal: reduce(&IdealSpec { ring: spec.ring, ideal: (**r).clone() })? };
            Ok(sym_product(&l, &r)?.ideal)
        }
        Ideal::Principal(d) => match spec.ring {
            RingAdapter::Mod(m) => Ok(Ideal::Principal(canonical_mod(d, m))),
            _ => Ok(Ideal::Principal(d.clone())),
        },
        other => Ok(other.clone()),
    }
}

/// `I ∘ J = IJ + JI`.
pub fn sym_product(i: &IdealSpec, j: &IdealSpec) -> Result<IdealSpec, RingError> {
    if i.ring != j.ring {
        return Err(RingError::Mismatch { left: i.ring, right: j.ring });
    }
    let ring = i.ring;
    let ideal = match ring {
        RingAdapter::Free => Ideal::sym(i.ideal.clone(), j.ideal.clone()),
        RingAdapter::Int | RingAdapter::Mod(_) => match (reduce(i)?, reduce(j)?) {
            (Ideal::Principal(a), Ideal::Principal(b)) => {
                return IdealSpec::principal(ring, a * b);
            }
            (x, y) => return Err(RingError::InvalidIdeal(format!("{x} o {y}"))),
        },
        RingAdapter::Triang(_) => match (reduce(i)?, reduce(j)?) {
            (Ideal::Named(a), Ideal::Named(b)) => Ideal::Named(match (a, b) {
                (NamedSet::Zero, _) | (_, NamedSet::Zero) => NamedSet::Zero,
                (NamedSet::StrictUpper, NamedSet::StrictUpper) => NamedSet::Zero,
                (NamedSet::Full, x) | (x, NamedSet::Full) => x,
            }),
            (x, y) => return Err(RingError::InvalidIdeal(format!("{x} o {y}"))),
        },
    };
    Ok(IdealSpec { ring, ideal })
}

/// Draw elements of an ideal, for randomized checks.
pub trait IdealSampler: Ring {
    fn sample_in<G: Rng + ?Sized>(&self, ideal: &IdealSpec, rng: &mut G) -> Result<Self::Elem, RingError>;
}

impl IdealSampler for ModRing {
    fn sample_in<G: Rng + ?Sized>(&self, ideal: &IdealSpec, rng: &mut G) -> Result<u64, RingError> {
        if ideal.ring != RingAdapter::Mod(self.m) {
            return Err(RingError::Mismatch { left: RingAdapter::Mod(self.m), right: ideal.ring });
        }
        match reduce(ideal)? {
            Ideal::Principal(d) => {
                let g = canonical_mod(&d, self.m).to_u64().unwrap_or(0);
                if g == 0 {
                    return Ok(0);
                }
                Ok(g * rng.gen_range(0..self.m / g))
            }
            other => Err(RingError::InvalidIdeal(other.to_string())),
        }
    }
}

impl IdealSampler for IntRing {
    fn sample_in<G: Rng + ?Sized>(&self, ideal: &IdealSpec, rng: &mut G) -> Result<BigInt, RingError> {
        if ideal.ring != RingAdapter::Int {
            return Err(RingError::Mismatch { left: RingAdapter::Int, right: ideal.ring });
        }
        match reduce(ideal)? {
            Ideal::Principal(d) => Ok(d * BigInt::from(rng.gen_range(-50i64..=50))),
            other => Err(RingError::InvalidIdeal(other.to_string())),
        }
    }
}

impl IdealSampler for TriangRing {
    fn sample_in<G: Rng + ?Sized>(&self, ideal: &IdealSpec, rng: &mut G) -> Result<Triang, RingError> {
        let me = RingAdapter::Triang(self.base.m);
        if ideal.ring != me {
            return Err(RingError::Mismatch { left: me, right: ideal.ring });
        }
        let m = self.base.m;
        match reduce(ideal)? {
            Ideal::Named(NamedSet::Zero) => Ok(self.zero()),
            Ideal::Named(NamedSet::StrictUpper) => Ok(self.elem(0, rng.gen_range(0..m), 0)),
            Ideal::Named(NamedSet::Full) => Ok(self.sample(rng)),
            other => Err(RingError::InvalidIdeal(other.to_string())),
        }
    }
}

/// Parenthesisation of a multiple commutator over ideals `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn node(l: BracketTree, r: BracketTree) -> Self {
        BracketTree::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            BracketTree::Leaf(k) => vec![*k],
            BracketTree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(l, r) => l.num_leaves() + r.num_leaves(),
        }
    }

    /// Number of leaves left of the outermost bracket; `None` for a leaf.
    pub fn cut_point(&self) -> Option<usize> {
        match self {
            BracketTree::Leaf(_) => None,
            BracketTree::Node(l, _) => Some(l.num_leaves()),
        }
    }

    /// Leaves must read `1, 2, …, m` left to right.
    pub fn validate(&self, m: usize) -> Result<(), RingError> {
        let leaves = self.leaves();
        if leaves != (1..=m).collect::<Vec<_>>() {
            return Err(RingError::TreeMismatch { leaves, ideals: m });
        }
        Ok(())
    }

    /// Parse `((1 2) 3)`-style text.
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let tokens = tokenize_tree(s).ok_or_else(|| RingError::BadTree(s.to_string()))?;
        let mut pos = 0;
        let t = parse_tree(&tokens, &mut pos).ok_or_else(|| RingError::BadTree(s.to_string()))?;
        if pos != tokens.len() {
            return Err(RingError::BadTree(s.to_string()));
        }
        Ok(t)
    }
}

#[derive(Debug, PartialEq)]
enum TreeToken {
    Open,
    Close,
    Num(usize),
}

fn tokenize_tree(s: &str) -> Option<Vec<TreeToken>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        match chars[k] {
            '(' => out.push(TreeToken::Open),
            ')' => out.push(TreeToken::Close),
            c if c.is_whitespace() || c == ',' => {}
            c if c.is_ascii_digit() => {
                let start = k;
                while k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                    k += 1;
                }
                out.push(TreeToken::Num(chars[start..=k].iter().collect::<String>().parse().ok()?));
            }
            _ => return None,
        }
        k += 1;
    }
    Some(out)
}

fn parse_tree(t: &[TreeToken], pos: &mut usize) -> Option<BracketTree> {
    match t.get(*pos)? {
        TreeToken::Num(k) => {
            *pos += 1;
            Some(BracketTree::Leaf(*k))
        }
        TreeToken::Open => {
            *pos += 1;
            let l = parse_tree(t, pos)?;
            if t.get(*pos) == Some(&TreeToken::Close) {
                // "(1)" is just the leaf
                *pos += 1;
                return Some(l);
            }
            let r = parse_tree(t, pos)?;
            (t.get(*pos) == Some(&TreeToken::Close)).then(|| *pos += 1)?;
            Some(BracketTree::node(l, r))
        }
        TreeToken::Close => None,
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(k) => write!(f, "{k}"),
            BracketTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// The nested symmetrised product following the shape of `tree`.
pub fn tree_level(tree: &BracketTree, ideals: &[IdealSpec]) -> Result<IdealSpec, RingError> {
    tree.validate(ideals.len())?;
    fn go(t: &BracketTree, ideals: &[IdealSpec]) -> Result<IdealSpec, RingError> {
        match t {
            BracketTree::Leaf(k) => Ok(ideals[k - 1].clone()),
            BracketTree::Node(l, r) => sym_product(&go(l, ideals)?, &go(r, ideals)?),
        }
    }
    go(tree, ideals)
}
