use std::fmt;

use crate::ring::{IdealSpec, Poly};

use super::word::{GroupWord, Transvection};
use super::MatError;

/// A classified generator of a subgroup of `E(n, R)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `t_ij(x)`
    T { i: usize, j: usize, x: Poly },
    /// `z_ij(x, c) = t_ji(c) t_ij(x) t_ji(-c)`
    Z { i: usize, j: usize, x: Poly, c: Poly },
    /// `y_ij(x, y) = [t_ij(x), t_ji(y)]`
    Y { i: usize, j: usize, x: Poly, y: Poly },
    /// `[t_ij(x), t_hk(y)]`
    C { i: usize, j: usize, x: Poly, h: usize, k: usize, y: Poly },
}

impl Generator {
    pub fn t(i: usize, j: usize, x: Poly) -> Self {
        Generator::T { i, j, x }
    }
    pub fn z(i: usize, j: usize, x: Poly, c: Poly) -> Self {
        Generator::Z { i, j, x, c }
    }
    pub fn y(i: usize, j: usize, x: Poly, y: Poly) -> Self {
        Generator::Y { i, j, x, y }
    }
    pub fn c(i: usize, j: usize, x: Poly, h: usize, k: usize, y: Poly) -> Self {
        Generator::C { i, j, x, h, k, y }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Generator::T { .. } => "T",
            Generator::Z { .. } => "Z",
            Generator::Y { .. } => "Y",
            Generator::C { .. } => "C",
        }
    }

    /// Primary position `(i, j)`.
    pub fn position(&self) -> (usize, usize) {
        match self {
            Generator::T { i, j, .. }
            | Generator::Z { i, j, .. }
            | Generator::Y { i, j, .. }
            | Generator::C { i, j, .. } => (*i, *j),
        }
    }

    pub fn args(&self) -> Vec<&Poly> {
        match self {
            Generator::T { x, .. } => vec![x],
            Generator::Z { x, c, .. } => vec![x, c],
            Generator::Y { x, y, .. } | Generator::C { x, y, .. } => vec![x, y],
        }
    }

    /// The defining transvection word.
    pub fn expand(&self) -> Vec<Transvection> {
        let tv = Transvection::new;
        match self {
            Generator::T { i, j, x } => vec![tv(*i, *j, x.clone())],
            Generator::Z { i, j, x, c } => {
                vec![tv(*j, *i, c.clone()), tv(*i, *j, x.clone()), tv(*j, *i, -c)]
            }
            Generator::Y { i, j, x, y } => {
                vec![tv(*i, *j, x.clone()), tv(*j, *i, y.clone()), tv(*i, *j, -x), tv(*j, *i, -y)]
            }
            Generator::C { i, j, x, h, k, y } => {
                vec![tv(*i, *j, x.clone()), tv(*h, *k, y.clone()), tv(*i, *j, -x), tv(*h, *k, -y)]
            }
        }
    }

    pub fn to_word(&self, n: usize) -> Result<GroupWord, MatError> {
        GroupWord::new(n, self.expand())
    }

    /// Image under `g ↦ (gᵀ)⁻¹` followed by reading arguments in the
    /// opposite ring: `t_ij(x) ↦ t_ji(-rev x)`. Maps identities valid in
    /// every ring to identities valid in every ring.
    pub fn mirror(&self) -> Generator {
        let m = mirror_poly;
        match self {
            Generator::T { i, j, x } => Generator::t(*j, *i, m(x)),
            Generator::Z { i, j, x, c } => Generator::z(*j, *i, m(x), m(c)),
            Generator::Y { i, j, x, y } => Generator::y(*j, *i, m(x), m(y)),
            Generator::C { i, j, x, h, k, y } => Generator::c(*j, *i, m(x), *k, *h, m(y)),
        }
    }

    pub fn max_index(&self) -> usize {
        match self {
            Generator::C { i, j, h, k, .. } => *i.max(j).max(h).max(k),
            g => {
                let (i, j) = g.position();
                i.max(j)
            }
        }
    }
}

/// `p ↦ -rev(p)`; an involution.
pub fn mirror_poly(p: &Poly) -> Poly {
    -p.reversed()
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T { i, j, x } => write!(f, "t({i},{j}; {x})"),
            Generator::Z { i, j, x, c } => write!(f, "z({i},{j}; {x}; {c})"),
            Generator::Y { i, j, x, y } => write!(f, "y({i},{j}; {x}; {y})"),
            Generator::C { i, j, x, h, k, y } => write!(f, "c({i},{j}; {x}; {h},{k}; {y})"),
        }
    }
}

/// A generator occurrence in a factorization, possibly inverted, with the
/// ideal each argument is claimed to lie in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub gen: Generator,
    pub inverse: bool,
    pub levels: Vec<Option<IdealSpec>>,
}

impl Factor {
    pub fn new(gen: Generator) -> Self {
        let levels = vec![None; gen.args().len()];
        Factor { gen, inverse: false, levels }
    }

    pub fn with_levels(gen: Generator, levels: Vec<Option<IdealSpec>>) -> Self {
        debug_assert_eq!(levels.len(), gen.args().len());
        Factor { gen, inverse: false, levels }
    }

    /// A transvection with a claimed level.
    pub fn t(i: usize, j: usize, x: Poly, level: Option<IdealSpec>) -> Self {
        Factor::with_levels(Generator::t(i, j, x), vec![level])
    }

    pub fn inverted(mut self) -> Self {
        self.inverse = !self.inverse;
        self
    }

    pub fn expand(&self) -> Vec<Transvection> {
        let atoms = self.gen.expand();
        if self.inverse {
            atoms.iter().rev().map(Transvection::inverse).collect()
        } else {
            atoms
        }
    }

    pub fn mirror(&self) -> Factor {
        Factor { gen: self.gen.mirror(), inverse: self.inverse, levels: self.levels.clone() }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// Concatenate the expansions of a factor list.
pub fn expand_factors(n: usize, factors: &[Factor]) -> Result<GroupWord, MatError> {
    GroupWord::new(n, factors.iter().flat_map(Factor::expand).collect())
}
