use crate::ring::Ring;

/// Dense `n × n` matrix over a ring adapter, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut entries = vec![ring.zero(); n * n];
        for k in 0..n {
            entries[k * n + k] = ring.one();
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Right-multiply by `t_ij(x)`: column `j` gains column `i` times `x`.
    pub fn apply_transvection<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, x: &E) {
        if ring.is_zero(x) {
            return;
        }
        let n = self.n;
        for row in 0..n {
            let src = &self.entries[row * n + (i - 1)];
            if ring.is_zero(src) {
                continue;
            }
            let delta = ring.mul(src, x);
            let dst = &mut self.entries[row * n + (j - 1)];
            *dst = ring.add(dst, &delta);
        }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ring.zero();
                for k in 0..n {
                    acc = ring.add(&acc, &ring.mul(&self.entries[i * n + k], &other.entries[k * n + j]));
                }
                entries.push(acc);
            }
        }
        Matrix { n, entries }
    }

    /// 1-based positions where the two matrices differ.
    pub fn differences(&self, other: &Matrix<E>) -> Vec<(usize, usize)>
    where
        E: PartialEq,
    {
        let n = self.n;
        (0..n * n).filter(|&k| self.entries[k] != other.entries[k]).map(|k| (k / n + 1, k % n + 1)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &E)> {
        let n = self.n;
        self.entries.iter().enumerate().map(move |(k, e)| ((k / n + 1, k % n + 1), e))
    }

    /// Positions violating `g ≡ e (mod L)`, given a membership test for `L`.
    pub fn congruence_violations<R: Ring<Elem = E>>(
        &self,
        ring: &R,
        mut in_level: impl FnMut(&E) -> bool,
    ) -> Vec<(usize, usize)> {
        let one = ring.one();
        self.entries()
            .filter(|((i, j), e)| if i == j { !in_level(&ring.sub(e, &one)) } else { !in_level(e) })
            .map(|(p, _)| p)
            .collect()
    }
}
