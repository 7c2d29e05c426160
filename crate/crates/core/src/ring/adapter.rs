//! Concrete rings used to realise words as matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::RingError;

/// An associative ring with 1.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn of_int(&self, c: &BigInt) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    /// A uniformly-ish random element, for randomized law checks.
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;
}

/// The free ring: identities checked here hold in every ring.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeRing;

impl Ring for FreeRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, x: &Poly, y: &Poly) -> Poly {
        x + y
    }
    fn neg(&self, x: &Poly) -> Poly {
        -x
    }
    fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        x * y
    }
    fn of_int(&self, c: &BigInt) -> Poly {
        Poly::constant(c.clone())
    }
    fn is_zero(&self, x: &Poly) -> bool {
        x.is_zero()
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Poly {
        use super::poly::{Letter, Monomial, Tag};
        let tags = [Tag::A, Tag::B, Tag::C, Tag::R];
        let mut p = Poly::zero();
        for _ in 0..rng.gen_range(0..4) {
            let len = rng.gen_range(0..4);
            let m = Monomial(
                (0..len).map(|_| Letter::new(tags[rng.gen_range(0..tags.len())], rng.gen_range(1..3))).collect(),
            );
            p.add_term(m, BigInt::from(rng.gen_range(-3i64..=3)));
        }
        p
    }
}

/// ℤ with arbitrary-precision elements.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn of_int(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> BigInt {
        BigInt::from(rng.gen_range(-50i64..=50))
    }
}

/// ℤ/m, elements kept reduced in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing {
    pub m: u64,
}

impl ModRing {
    pub fn new(m: u64) -> Result<Self, RingError> {
        if m < 2 {
            return Err(RingError::BadModulus(m));
        }
        Ok(ModRing { m })
    }

    pub fn reduce(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.m)).to_u64().expect("reduced value fits")
    }
}

impl Ring for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 + *y as u128) % self.m as u128) as u64
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.m - x % self.m) % self.m
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 * *y as u128) % self.m as u128) as u64
    }
    fn of_int(&self, c: &BigInt) -> u64 {
        self.reduce(c)
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.m)
    }
}

/// Upper-triangular 2×2 matrix `[[a, b], [0, d]]` over ℤ/m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triang {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

/// Upper-triangular 2×2 matrices over ℤ/m: a small noncommutative ring
/// whose strictly upper part is a two-sided ideal of square zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangRing {
    pub base: ModRing,
}

impl TriangRing {
    pub fn new(m: u64) -> Result<Self, RingError> {
        Ok(TriangRing { base: ModRing::new(m)? })
    }

    pub fn elem(&self, a: u64, b: u64, d: u64) -> Triang {
        let m = self.base.m;
        Triang { a: a % m, b: b % m, d: d % m }
    }

    pub fn all_elements(&self) -> impl Iterator<Item = Triang> + '_ {
        let m = self.base.m;
        (0..m).flat_map(move |a| (0..m).flat_map(move |b| (0..m).map(move |d| Triang { a, b, d })))
    }
}

impl Ring for TriangRing {
    type Elem = Triang;

    fn zero(&self) -> Triang {
        Triang { a: 0, b: 0, d: 0 }
    }
    fn one(&self) -> Triang {
        let one = self.base.one();
        Triang { a: one, b: 0, d: one }
    }
    fn add(&self, x: &Triang, y: &Triang) -> Triang {
        let r = &self.base;
        Triang { a: r.add(&x.a, &y.a), b: r.add(&x.b, &y.b), d: r.add(&x.d, &y.d) }
    }
    fn neg(&self, x: &Triang) -> Triang {
        let r = &self.base;
        Triang { a: r.neg(&x.a), b: r.neg(&x.b), d: r.neg(&x.d) }
    }
    fn mul(&self, x: &Triang, y: &Triang) -> Triang {
        let r = &self.base;
        Triang { a: r.mul(&x.a, &y.a), b: r.add(&r.mul(&x.a, &y.b), &r.mul(&x.b, &y.d)), d: r.mul(&x.d, &y.d) }
    }
    fn of_int(&self, c: &BigInt) -> Triang {
        let v = self.base.reduce(c);
        Triang { a: v, b: 0, d: v }
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Triang {
        let m = self.base.m;
        Triang { a: rng.gen_range(0..m), b: rng.gen_range(0..m), d: rng.gen_range(0..m) }
    }
}

/// Runtime choice of ring, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RingAdapter {
    Free,
    Int,
    Mod(u64),
    Triang(u64),
}

impl fmt::Display for RingAdapter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingAdapter::Free => write!(f, "free"),
            RingAdapter::Int => write!(f, "z"),
            RingAdapter::Mod(m) => write!(f, "zmod:{m}"),
            RingAdapter::Triang(m) => write!(f, "triang:{m}"),
        }
    }
}

impl FromStr for RingAdapter {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        let bad = || RingError::UnknownRing(s.to_string());
        let modulus = |rest: &str| -> Result<u64, RingError> {
            let m: u64 = rest.parse().map_err(|_| bad())?;
            ModRing::new(m).map(|r| r.m)
        };
        match s {
            "free" => Ok(RingAdapter::Free),
            "z" => Ok(RingAdapter::Int),
            _ => {
                if let Some(rest) = s.strip_prefix("zmod:") {
                    Ok(RingAdapter::Mod(modulus(rest)?))
                } else if let Some(rest) = s.strip_prefix("triang:") {
                    Ok(RingAdapter::Triang(modulus(rest)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl From<RingAdapter> for String {
    fn from(r: RingAdapter) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for RingAdapter {
    type Error = RingError;
    fn try_from(s: String) -> Result<Self, RingError> {
        s.parse()
    }
}
