//! Exact noncommutative polynomials over tagged indeterminates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Which ideal a letter is drawn from.
///
/// `A`..`D` are the named ideals, `R` is the whole ring and `I(k)` is the
/// k-th ideal of a multiple commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    A,
    B,
    C,
    D,
    R,
    I(u32),
}

impl Tag {
    pub fn name(&self) -> String {
        match self {
            Tag::A => "A".into(),
            Tag::B => "B".into(),
            Tag::C => "C".into(),
            Tag::D => "D".into(),
            Tag::R => "R".into(),
            Tag::I(k) => format!("I{k}"),
        }
    }

    pub fn from_name(s: &str) -> Option<Tag> {
        match s {
            "A" => Some(Tag::A),
            "B" => Some(Tag::B),
            "C" => Some(Tag::C),
            "D" => Some(Tag::D),
            "R" => Some(Tag::R),
            _ => {
                let k: u32 = s.strip_prefix('I')?.parse().ok()?;
                (k >= 1).then_some(Tag::I(k))
            }
        }
    }
}

/// An indeterminate of the free ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub tag: Tag,
    pub index: u32,
}

impl Letter {
    pub const fn new(tag: Tag, index: u32) -> Self {
        Letter { tag, index }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::A => write!(f, "a{}", self.index),
            Tag::B => write!(f, "b{}", self.index),
            Tag::C => write!(f, "c{}", self.index),
            Tag::D => write!(f, "d{}", self.index),
            Tag::R => write!(f, "r{}", self.index),
            Tag::I(k) if self.index == 1 => write!(f, "i{k}"),
            Tag::I(k) => write!(f, "i{k}_{}", self.index),
        }
    }
}

/// A word in the letters; the empty word is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Letter>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Monomial(vec![l])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn reversed(&self) -> Monomial {
        Monomial(self.0.iter().rev().copied().collect())
    }

    pub fn contains_tag(&self, tag: Tag) -> bool {
        self.0.iter().any(|l| l.tag == tag)
    }

    /// All ways of writing `self = left * right`, including empty halves.
    pub fn splits(&self) -> impl Iterator<Item = (Monomial, Monomial)> + '_ {
        (0..=self.0.len()).map(|k| (Monomial(self.0[..k].to_vec()), Monomial(self.0[k..].to_vec())))
    }
}

// Degree first, then lexicographic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Element of the free associative ring ℤ⟨letters⟩.
///
/// Terms are kept in a `BTreeMap` with no zero coefficients, so two equal
/// polynomials are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn letter(l: Letter) -> Self {
        Poly::term(1, Monomial::letter(l))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Reverse every monomial (the image in the opposite ring).
    pub fn reversed(&self) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            p.add_term(m.reversed(), c.clone());
        }
        p
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.terms.keys().flat_map(|m| m.0.iter().copied())
    }

    /// Evaluate in another ring by substituting letters.
    pub fn eval<T, E>(
        &self,
        zero: T,
        mut of_int: impl FnMut(&BigInt) -> T,
        mut letter: impl FnMut(&Letter) -> Result<T, E>,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<T, E> {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = of_int(c);
            for l in &m.0 {
                t = mul(&t, &letter(l)?);
            }
            acc = add(&acc, &t);
        }
        Ok(acc)
    }
}

impl From<Letter> for Poly {
    fn from(l: Letter) -> Self {
        Poly::letter(l)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.concat(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Product of several polynomials, left to right.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
    factors.into_iter().fold(Poly::one(), |acc, p| &acc * p)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}
