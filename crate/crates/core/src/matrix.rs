//! Exchange matrices and their mutation.
//!
//! An [`ExchangeMatrix`] is a square integer matrix `B` that admits a positive
//! diagonal symmetrizer `D` with `D·B` skew-symmetric. Entry `B[i][j] > 0`
//! counts arrows from `j` to `i` in the associated (valued) quiver.
//!
//! Vertices are 0-based throughout the library API.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::CheckedMul;

use crate::canon::VertexPermutation;
use crate::error::{overflow, Error, Result};

/// `[b]₊ = max(b, 0)`.
#[inline]
pub fn pos(b: i64) -> i64 {
    b.max(0)
}

/// A sign `ε ∈ {+1, −1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Positive diagonal `D = diag(d₁, …, dₙ)` with `D·B` skew-symmetric.
///
/// Each connected component of the matrix's nonzero pattern is scaled so its
/// entries have gcd 1, which makes the symmetrizer unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symmetrizer(Vec<i64>);

impl Symmetrizer {
    pub fn diag(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }

    /// Whether `d_i·M[i][j] = −d_j·M[j][i]` for every pair.
    pub fn symmetrizes(&self, m: &ExchangeMatrix) -> bool {
        let n = m.n();
        n == self.0.len()
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let lhs = self.0[i].checked_mul(m.get(i, j));
                    let rhs = self.0[j].checked_mul(m.get(j, i)).and_then(i64::checked_neg);
                    lhs.is_some() && lhs == rhs
                })
            })
    }

    /// Permute the diagonal so that vertex `i` lands at `perm.apply(i)`.
    pub(crate) fn permuted(&self, perm: &VertexPermutation) -> Symmetrizer {
        let mut d = vec![0; self.0.len()];
        for (i, &di) in self.0.iter().enumerate() {
            d[perm.apply(i)] = di;
        }
        Symmetrizer(d)
    }
}

/// Find the reduced symmetrizer of a square integer matrix.
///
/// Ratios `d_j/d_i = −M[i][j]/M[j][i]` are propagated along each connected
/// component of the nonzero pattern, denominators are cleared and each
/// component is divided by its gcd. Fails on nonzero diagonal entries,
/// sign-pattern violations and inconsistent cycle ratios.
pub fn find_symmetrizer(rows: &[Vec<i64>]) -> Result<Symmetrizer> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
        }
    }
    let not_sym = |reason: String| Error::NotSkewSymmetrizable { reason };

    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(not_sym(format!(
                "diagonal entry ({}, {}) is {}",
                i + 1,
                i + 1,
                rows[i][i]
            )));
        }
        for j in (i + 1)..n {
            let (a, b) = (rows[i][j], rows[j][i]);
            if a.signum() != -b.signum() {
                return Err(not_sym(format!(
                    "entries ({}, {}) = {} and ({}, {}) = {} violate the sign pattern",
                    i + 1,
                    j + 1,
                    a,
                    j + 1,
                    i + 1,
                    b
                )));
            }
        }
    }

    let mut ratio: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut components = Vec::new();
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        let mut members = vec![root];
        ratio[root] = Some(Ratio::from_integer(1));
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = ratio[i].expect("visited vertex has a ratio");
            for j in 0..n {
                if rows[i][j] == 0 {
                    continue;
                }
                // d_i·M[i][j] = −d_j·M[j][i]
                let dj = di
                    .checked_mul(&Ratio::new(rows[i][j], -rows[j][i]))
                    .ok_or_else(|| overflow("symmetrizer ratio"))?;
                match ratio[j] {
                    None => {
                        ratio[j] = Some(dj);
                        members.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(not_sym(format!(
                            "inconsistent ratios around a cycle through vertices {} and {}",
                            i + 1,
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        components.push(members);
    }

    let mut d = vec![0i64; n];
    for members in &components {
        let mut lcm = 1i64;
        for &v in members {
            lcm = lcm.lcm(ratio[v].unwrap().denom());
        }
        let mut g = 0i64;
        for &v in members {
            let r = ratio[v].unwrap();
            let scaled = (*r.numer())
                .checked_mul(lcm / r.denom())
                .ok_or_else(|| overflow("symmetrizer scaling"))?;
            d[v] = scaled;
            g = g.gcd(&scaled);
        }
        for &v in members {
            d[v] /= g;
        }
    }
    Ok(Symmetrizer(d))
}

/// A skew-symmetrizable integer exchange matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
    symmetrizer: Symmetrizer,
}

impl ExchangeMatrix {
    /// Build from rows, validating skew-symmetrizability.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let symmetrizer = find_symmetrizer(&rows)?;
        let n = rows.len();
        Ok(ExchangeMatrix { n, entries: rows.into_iter().flatten().collect(), symmetrizer })
    }

    /// Build a skew-symmetric matrix from a list of weighted arrows
    /// `(from, to, weight)`: sets `B[to][from] = weight` and
    /// `B[from][to] = −weight`.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut rows = vec![vec![0i64; n]; n];
        for &(from, to, w) in arrows {
            for v in [from, to] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            rows[to][from] += w;
            rows[from][to] -= w;
        }
        Self::new(rows)
    }

    pub(crate) fn from_parts(n: usize, entries: Vec<i64>, symmetrizer: Symmetrizer) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        ExchangeMatrix { n, entries, symmetrizer }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.symmetrizer
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.symmetrizer.is_identity()
    }

    pub(crate) fn check_vertex(&self, k: usize) -> Result<()> {
        if k < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: k, n: self.n })
        }
    }

    /// Matrix mutation `μ_k`, entrywise:
    ///
    /// * `B'[i][j] = −B[i][j]` if `i = k` or `j = k`,
    /// * `B'[i][j] = B[i][j] + [B[i][k]]₊[B[k][j]]₊ − [−B[i][k]]₊[−B[k][j]]₊` otherwise.
    ///
    /// The result keeps the same symmetrizer.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let bik = self.get(i, k);
            for j in 0..n {
                let bij = self.get(i, j);
                let value = if i == k || j == k {
                    bij.checked_neg()
                } else {
                    let bkj = self.get(k, j);
                    let plus = pos(bik).checked_mul(pos(bkj));
                    let minus = pos(-bik).checked_mul(pos(-bkj));
                    plus.zip(minus)
                        .and_then(|(p, m)| bij.checked_add(p)?.checked_sub(m))
                };
                out.push(value.ok_or_else(|| overflow("matrix mutation"))?);
            }
        }
        Ok(ExchangeMatrix::from_parts(n, out, self.symmetrizer.clone()))
    }

    /// Matrix mutation in product form `(J + E)·B·(J + F)`.
    ///
    /// `J` is the identity with `−1` at position `k`, `E` is zero outside
    /// column `k` where `e_ik = [−ε·B[i][k]]₊`, and `F` is zero outside row
    /// `k` where `f_kj = [ε·B[k][j]]₊`. Equal to [`mutate`](Self::mutate)
    /// for either sign.
    pub fn mutate_matrix_form(&self, k: usize, eps: Sign) -> Result<ExchangeMatrix> {
        self.check_vertex(k)?;
        let n = self.n;
        let e = eps.value();
        let mut left = identity(n);
        let mut right = identity(n);
        left[k * n + k] = -1;
        right[k * n + k] = -1;
        for i in 0..n {
            if i != k {
                left[i * n + k] = pos(-e * self.get(i, k));
                right[k * n + i] = pos(e * self.get(k, i));
            }
        }
        let tmp = mat_mul(n, &left, &self.entries)?;
        let out = mat_mul(n, &tmp, &right)?;
        Ok(ExchangeMatrix::from_parts(n, out, self.symmetrizer.clone()))
    }

    /// `B·u`.
    pub fn apply(&self, u: &[i64]) -> Result<Vec<i64>> {
        if u.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: u.len() });
        }
        (0..self.n)
            .map(|i| {
                self.row(i).iter().zip(u).try_fold(0i64, |acc, (&b, &x)| {
                    b.checked_mul(x).and_then(|p| acc.checked_add(p))
                })
            })
            .map(|v| v.ok_or_else(|| overflow("matrix-vector product")))
            .collect()
    }

    /// Whether `B·u = 0`.
    pub fn is_radical(&self, u: &[i64]) -> Result<bool> {
        Ok(self.apply(u)?.iter().all(|&x| x == 0))
    }

    /// Relabel vertices: vertex `i` of `self` becomes vertex `perm.apply(i)`.
    pub fn permuted(&self, perm: &VertexPermutation) -> ExchangeMatrix {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[perm.apply(i) * n + perm.apply(j)] = self.get(i, j);
            }
        }
        ExchangeMatrix::from_parts(n, out, self.symmetrizer.permuted(perm))
    }

    /// Whether the quiver (arrows `j → i` when `B[i][j] > 0`) has no
    /// oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        crate::green::source_order(self).is_some()
    }

    /// The matrix with every entry negated (the opposite quiver).
    pub fn negated(&self) -> ExchangeMatrix {
        let entries = self.entries.iter().map(|&x| -x).collect();
        ExchangeMatrix::from_parts(self.n, entries, self.symmetrizer.clone())
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExchangeMatrix")
            .field("rows", &self.rows())
            .field("d", &self.symmetrizer.0)
            .finish()
    }
}

impl fmt::Display for ExchangeMatrix {
    /// The matrix text format (see [`crate::format`]).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize_matrix(self))
    }
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i * n + l];
            if ail == 0 {
                continue;
            }
            for j in 0..n {
                let v = ail
                    .checked_mul(b[l * n + j])
                    .and_then(|p| out[i * n + j].checked_add(p))
                    .ok_or_else(|| overflow("matrix product"))?;
                out[i * n + j] = v;
            }
        }
    }
    Ok(out)
}
