use std::fmt;

use crate::ring::{FreeRing, Poly, Ring};

use super::matrix::Matrix;
use super::MatError;

/// `t_ij(x) = e + x·e_ij`, indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transvection {
    pub i: usize,
    pub j: usize,
    pub arg: Poly,
}

impl Transvection {
    pub fn new(i: usize, j: usize, arg: Poly) -> Self {
        Transvection { i, j, arg }
    }

    pub fn inverse(&self) -> Self {
        Transvection { i: self.i, j: self.j, arg: -&self.arg }
    }

    pub fn check(&self, n: usize) -> Result<(), MatError> {
        if self.i == self.j || self.i == 0 || self.j == 0 || self.i > n || self.j > n {
            return Err(MatError::BadPosition { i: self.i, j: self.j, n });
        }
        Ok(())
    }
}

impl fmt::Display for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{}; {})", self.i, self.j, self.arg)
    }
}

/// A product of transvections in `GL(n, R)`; empty means the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    n: usize,
    atoms: Vec<Transvection>,
}

impl GroupWord {
    pub fn identity(n: usize) -> Self {
        GroupWord { n, atoms: Vec::new() }
    }

    pub fn new(n: usize, atoms: Vec<Transvection>) -> Result<Self, MatError> {
        if n < 2 {
            return Err(MatError::BadDegree(n));
        }
        for a in &atoms {
            a.check(n)?;
        }
        Ok(GroupWord { n, atoms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Transvection] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn push(&mut self, t: Transvection) -> Result<(), MatError> {
        t.check(self.n)?;
        self.atoms.push(t);
        Ok(())
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord, MatError> {
        if self.n != other.n {
            return Err(MatError::DegreeMismatch(self.n, other.n));
        }
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(GroupWord { n: self.n, atoms })
    }

    /// Reversed atoms with negated arguments.
    pub fn inverse(&self) -> GroupWord {
        GroupWord { n: self.n, atoms: self.atoms.iter().rev().map(Transvection::inverse).collect() }
    }

    /// Same word viewed in a larger degree.
    pub fn embed(&self, n: usize) -> Result<GroupWord, MatError> {
        GroupWord::new(n, self.atoms.clone())
    }

    /// Merge adjacent atoms at the same position and drop zero arguments.
    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Transvection> = Vec::with_capacity(self.atoms.len());
        for t in &self.atoms {
            if t.arg.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.i == t.i && last.j == t.j => {
                    last.arg = &last.arg + &t.arg;
                    if last.arg.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t.clone()),
            }
        }
        GroupWord { n: self.n, atoms: out }
    }

    /// Evaluate over `ring`, mapping each argument through `value`.
    pub fn eval_with<R: Ring, E>(
        &self,
        ring: &R,
        mut value: impl FnMut(&Poly) -> Result<R::Elem, E>,
    ) -> Result<Matrix<R::Elem>, E> {
        let mut m = Matrix::identity(ring, self.n);
        for t in &self.atoms {
            let x = value(&t.arg)?;
            m.apply_transvection(ring, t.i, t.j, &x);
        }
        Ok(m)
    }

    /// Evaluate over the free ring.
    pub fn eval_free(&self) -> Matrix<Poly> {
        let r: Result<_, std::convert::Infallible> = self.eval_with(&FreeRing, |p| Ok(p.clone()));
        match r {
            Ok(m) => m,
            Err(e) => match e {},
        }
    }

    pub fn max_arg_degree(&self) -> usize {
        self.atoms.iter().map(|t| t.arg.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        for (k, t) in self.atoms.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `g · w · g⁻¹`.
pub fn conjugate_word(g: &GroupWord, w: &GroupWord) -> Result<GroupWord, MatError> {
    g.concat(w)?.concat(&g.inverse())
}

/// `[x, y] = x · y · x⁻¹ · y⁻¹`.
pub fn commutator_word(x: &GroupWord, y: &GroupWord) -> Result<GroupWord, MatError> {
    x.concat(y)?.concat(&x.inverse())?.concat(&y.inverse())
}

/// Closed form of `[t_ij(x), t_hk(y)]` from the Steinberg relations.
///
/// Opposite positions have no closed form; the caller keeps that commutator
/// as a `y` generator.
pub fn steinberg_commutator(t1: &Transvection, t2: &Transvection) -> Result<Vec<Transvection>, MatError> {
    let (i, j, x) = (t1.i, t1.j, &t1.arg);
    let (h, k, y) = (t2.i, t2.j, &t2.arg);
    if j == h && k == i {
        return Err(MatError::NoClosedForm { i, j });
    }
    if j == h {
        // i ≠ k here
        return Ok(vec![Transvection::new(i, k, x * y)]);
    }
    if k == i {
        return Ok(vec![Transvection::new(h, j, -(y * x))]);
    }
    Ok(Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Letter, ModRing, Tag};
    use num_bigint::BigInt;

    fn a(k: u32) -> Poly {
        Poly::letter(Letter::new(Tag::A, k))
    }
    fn b(k: u32) -> Poly {
        Poly::letter(Letter::new(Tag::B, k))
    }
    fn t(i: usize, j: usize, x: Poly) -> Transvection {
        Transvection::new(i, j, x)
    }

    #[test]
    fn empty_word_is_identity() {
        let w = GroupWord::identity(3);
        assert_eq!(w.eval_free(), Matrix::identity(&FreeRing, 3));
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let w = GroupWord::new(3, vec![t(1, 2, a(1)), t(2, 3, b(1))]).unwrap();
        let inv = w.inverse();
        assert_eq!(inv.atoms(), &[t(2, 3, -b(1)), t(1, 2, -a(1))]);
        assert!(GroupWord::identity(3).inverse().is_empty());
    }

    #[test]
    fn free_reduction_cancels_inverse_pair() {
        let w = GroupWord::new(3, vec![t(1, 2, a(1)), t(1, 2, -a(1))]).unwrap();
        assert!(w.free_reduce().is_empty());
        let w = GroupWord::new(3, vec![t(1, 2, a(1)), t(1, 3, b(1))]).unwrap();
        assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn diagonal_position_is_rejected() {
        assert!(GroupWord::new(3, vec![t(1, 1, a(1))]).is_err());
        assert!(GroupWord::new(3, vec![t(1, 4, a(1))]).is_err());
    }

    #[test]
    fn steinberg_cases() {
        let r = Poly::letter(Letter::new(Tag::R, 1));
        assert_eq!(steinberg_commutator(&t(1, 3, a(1)), &t(3, 2, b(1))).unwrap(), vec![t(1, 2, a(1) * b(1))]);
        assert!(steinberg_commutator(&t(1, 2, a(1)), &t(3, 4, b(1))).unwrap().is_empty());
        assert_eq!(steinberg_commutator(&t(1, 2, a(1)), &t(1, 2, r.clone())).unwrap(), Vec::<Transvection>::new());
        assert!(matches!(steinberg_commutator(&t(1, 2, a(1)), &t(2, 1, b(1))), Err(MatError::NoClosedForm { .. })));
        // k == i branch
        assert_eq!(steinberg_commutator(&t(1, 2, a(1)), &t(3, 1, r.clone())).unwrap(), vec![t(3, 2, -(r * a(1)))]);
    }

    #[test]
    fn commutator_of_opposite_pair_over_integers() {
        // [t_12(1), t_21(1)] in degree 3, multiplied out by hand:
        // t12(1) t21(1) = [[2,1],[1,1]], t12(-1) t21(-1) = [[2,-1],[-1,1]]
        // product = [[3,-1],[1,0]].
        let one = Poly::one();
        let x = GroupWord::new(3, vec![t(1, 2, one.clone())]).unwrap();
        let y = GroupWord::new(3, vec![t(2, 1, one)]).unwrap();
        let m = commutator_word(&x, &y)
            .unwrap()
            .eval_with(&crate::ring::IntRing, |p| Ok::<_, ()>(p.as_constant().unwrap()));
        let i = |v: i64| BigInt::from(v);
        let expected = Matrix::from_rows(vec![vec![i(3), i(-1), i(0)], vec![i(1), i(0), i(0)], vec![i(0), i(0), i(1)]]);
        assert_eq!(m.unwrap(), expected);
    }

    #[test]
    fn inverse_pair_mod_12() {
        let r = ModRing::new(12).unwrap();
        for v in 0..12u64 {
            let w = GroupWord::new(3, vec![t(1, 2, a(1)), t(1, 2, -a(1))]).unwrap();
            let m = w.eval_with(&r, |p| {
                p.eval(0u64, |c| r.of_int(c), |_| Ok::<_, ()>(v), |x, y| r.add(x, y), |x, y| r.mul(x, y))
            });
            assert_eq!(m.unwrap(), Matrix::identity(&r, 3));
        }
    }
}
