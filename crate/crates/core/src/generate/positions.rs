use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GenerateError;

pub type Pos = (usize, usize);

/// Which fixed index is swept when enumerating position sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rows,
    Cols,
}

impl std::str::FromStr for Mode {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rows" => Ok(Mode::Rows),
            "cols" => Ok(Mode::Cols),
            other => Err(GenerateError::Invalid(format!("mode must be rows or cols, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtraKind {
    /// `z_st(ab,c)` and `z_st(ba,c)` with `(s,t)` straddling the block split.
    Z,
    /// `y_st(a,b)` with `(s,t)` inside one diagonal block.
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extra {
    pub kind: ExtraKind,
    pub s: usize,
    pub t: usize,
}

/// The interlaced positions `(i,h)`, `1 ≤ i ≤ r`, and `(k,j)`,
/// `r+1 ≤ j ≤ n`, plus an optional extra position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionSet {
    pub n: usize,
    pub r: usize,
    pub mode: Mode,
    pub h: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extra: Option<Extra>,
}

impl PositionSet {
    pub fn new(n: usize, r: usize, h: usize, k: usize, mode: Mode) -> Result<Self, GenerateError> {
        let ps = PositionSet { n, r, mode, h, k, extra: None };
        ps.validate()?;
        Ok(ps)
    }

    /// `rows` fixes `k = 1` and takes `h` as given; `cols` fixes `h = r+1`
    /// and takes `k` as given.
    pub fn with_mode(n: usize, r: usize, mode: Mode, fixed: usize) -> Result<Self, GenerateError> {
        match mode {
            Mode::Rows => PositionSet::new(n, r, fixed, 1, mode),
            Mode::Cols => PositionSet::new(n, r, r + 1, fixed, mode),
        }
    }

    /// Every position set the sweep of `mode` produces for `(n, r)`.
    pub fn sweep(n: usize, r: usize, mode: Mode) -> Result<Vec<Self>, GenerateError> {
        let fixed: Vec<usize> = match mode {
            Mode::Rows => (r + 1..=n).collect(),
            Mode::Cols => (1..=r).collect(),
        };
        fixed.into_iter().map(|f| PositionSet::with_mode(n, r, mode, f)).collect()
    }

    pub fn with_extra(mut self, extra: Extra) -> Result<Self, GenerateError> {
        self.extra = Some(extra);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        let bad = |m: String| Err(GenerateError::Invalid(m));
        if self.n < 3 {
            return bad(format!("n = {} is below 3", self.n));
        }
        if self.r < 1 || self.r >= self.n {
            return bad(format!("r = {} outside 1..{}", self.r, self.n - 1));
        }
        if self.h <= self.r || self.h > self.n {
            return bad(format!("h = {} outside {}..{}", self.h, self.r + 1, self.n));
        }
        if self.k < 1 || self.k > self.r {
            return bad(format!("k = {} outside 1..{}", self.k, self.r));
        }
        if let Some(Extra { kind, s, t }) = self.extra {
            if s == t || s < 1 || t < 1 || s > self.n || t > self.n {
                return bad(format!("extra position ({s},{t}) is not off-diagonal in degree {}", self.n));
            }
            let same_block = (s <= self.r) == (t <= self.r);
            match kind {
                ExtraKind::Z if same_block => {
                    return bad(format!("z-extra ({s},{t}) must straddle the block split at r = {}", self.r))
                }
                ExtraKind::Y if !same_block => {
                    return bad(format!("y-extra ({s},{t}) must lie inside a diagonal block (r = {})", self.r))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn family(&self) -> BTreeSet<Pos> {
        let rows = (1..=self.r).map(|i| (i, self.h));
        let cols = (self.r + 1..=self.n).map(|j| (self.k, j));
        rows.chain(cols).collect()
    }

    pub fn all_positions(n: usize) -> Vec<Pos> {
        (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    }

    /// Valid extras of the given kind.
    pub fn extras(&self, kind: ExtraKind) -> Vec<Extra> {
        PositionSet::all_positions(self.n)
            .into_iter()
            .filter(|&(s, t)| ((s <= self.r) == (t <= self.r)) == (kind == ExtraKind::Y))
            .map(|(s, t)| Extra { kind, s, t })
            .collect()
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} r={} h={} k={}", self.n, self.r, self.h, self.k)?;
        if let Some(e) = self.extra {
            let kind = if e.kind == ExtraKind::Z { "z" } else { "y" };
            write!(f, " extra={kind}({},{})", e.s, e.t)?;
        }
        Ok(())
    }
}
