//! Vertex permutations, isomorphism testing and canonical forms.
//!
//! Both searches are brute force over permutations, restricted to maps that
//! send each vertex to a vertex with the same signature (the sorted multisets
//! of its row and column entries). No refinement beyond that.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

/// Largest `n` accepted by [`canonical_form`] and friends.
pub const CANONICAL_LIMIT: usize = 10;

/// A bijection on `{0, …, n−1}`. Vertex `i` is sent to `apply(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation(Vec<usize>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n).collect())
    }

    /// Validates that `map` is a bijection.
    pub fn new(map: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; map.len()];
        for &x in &map {
            if x >= map.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(VertexPermutation(map))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        VertexPermutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> Self {
        VertexPermutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Points not fixed by the permutation.
    pub fn moved_points(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(i, x)| i != *x).map(|(i, _)| i).collect()
    }

    /// Relabel a per-vertex vector: entry `i` moves to `apply(i)`.
    pub fn permute_vector<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.0[i]] = x;
        }
        out
    }
}

impl fmt::Display for VertexPermutation {
    /// One-line notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    row: Vec<i64>,
    col: Vec<i64>,
}

fn signatures(b: &ExchangeMatrix) -> Vec<Signature> {
    let n = b.n();
    (0..n)
        .map(|i| {
            let mut row = b.row(i).to_vec();
            let mut col: Vec<i64> = (0..n).map(|j| b.get(j, i)).collect();
            row.sort_unstable();
            col.sort_unstable();
            Signature { row, col }
        })
        .collect()
}

/// Find `σ` with `B2[σ(i)][σ(j)] = B1[i][j]` for all `i, j`.
pub fn are_isomorphic(b1: &ExchangeMatrix, b2: &ExchangeMatrix) -> Option<VertexPermutation> {
    let n = b1.n();
    if b2.n() != n {
        return None;
    }
    let s1 = signatures(b1);
    let s2 = signatures(b2);
    {
        let mut a = s1.clone();
        let mut b = s2.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }

    fn extend(
        i: usize,
        b1: &ExchangeMatrix,
        b2: &ExchangeMatrix,
        s1: &[Signature],
        s2: &[Signature],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let n = b1.n();
        if i == n {
            return true;
        }
        for v in 0..n {
            if used[v] || s1[i] != s2[v] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                b2.get(v, map[j]) == b1.get(i, j) && b2.get(map[j], v) == b1.get(j, i)
            });
            if !consistent {
                continue;
            }
            map.push(v);
            used[v] = true;
            if extend(i + 1, b1, b2, s1, s2, map, used) {
                return true;
            }
            used[v] = false;
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(0, b1, b2, &s1, &s2, &mut map, &mut used).then_some(VertexPermutation(map))
}

/// Branch-and-bound search for the canonical labeling.
///
/// Position `m` of the relabeled matrix `P` contributes the layer
/// `P[m][0], P[0][m], …, P[m][m−1], P[m−1][m], P[m][m]`; the canonical form
/// minimizes the concatenated layers lexicographically, and ties are broken by
/// the relabeled `labels` vector when given.
struct Labeler<'a> {
    b: &'a ExchangeMatrix,
    labels: Option<&'a [i64]>,
    sigs: Vec<Signature>,
    slot_sig: Vec<Signature>,
    inv: Vec<usize>,
    used: Vec<bool>,
    key: Vec<i64>,
    best: Option<(Vec<i64>, Vec<i64>, Vec<usize>)>,
}

impl Labeler<'_> {
    fn layer(&self, m: usize, v: usize, out: &mut Vec<i64>) {
        for l in 0..m {
            let u = self.inv[l];
            out.push(self.b.get(v, u));
            out.push(self.b.get(u, v));
        }
        out.push(self.b.get(v, v));
    }

    fn label_key(&self) -> Vec<i64> {
        self.labels.map(|a| self.inv.iter().map(|&v| a[v]).collect()).unwrap_or_default()
    }

    /// Returns true when `best` was replaced somewhere in this subtree.
    fn search(&mut self, m: usize, mut tied: bool) -> bool {
        let n = self.b.n();
        if m == n {
            let akey = self.label_key();
            let better = match &self.best {
                None => true,
                Some((_, best_a, _)) => !tied || akey < *best_a,
            };
            if better {
                self.best = Some((self.key.clone(), akey, self.inv.clone()));
            }
            return better;
        }
        let start = m * m;
        let mut replaced = false;
        let mut layer = Vec::with_capacity(2 * m + 1);
        for v in 0..n {
            if self.used[v] || self.sigs[v] != self.slot_sig[m] {
                continue;
            }
            layer.clear();
            self.layer(m, v, &mut layer);
            let child_tied = match &self.best {
                Some((best_key, _, _)) if tied => {
                    match layer.as_slice().cmp(&best_key[start..start + layer.len()]) {
                        Ordering::Greater => continue,
                        Ordering::Less => false,
                        Ordering::Equal => true,
                    }
                }
                _ => false,
            };
            self.key.extend_from_slice(&layer);
            self.inv.push(v);
            self.used[v] = true;
            if self.search(m + 1, child_tied) {
                replaced = true;
                // the new best lies below this prefix
                tied = true;
            }
            self.used[v] = false;
            self.inv.pop();
            self.key.truncate(start);
        }
        replaced
    }
}

/// The relabeling that takes `b` (and optionally a per-vertex label vector)
/// to canonical form.
pub fn canonical_labeling(
    b: &ExchangeMatrix,
    labels: Option<&[i64]>,
) -> Result<VertexPermutation> {
    let n = b.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::SizeLimitExceeded { n, limit: CANONICAL_LIMIT });
    }
    if let Some(a) = labels {
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.len() });
        }
    }
    let sigs = signatures(b);
    let mut slot_sig = sigs.clone();
    slot_sig.sort();
    let mut labeler = Labeler {
        b,
        labels,
        sigs,
        slot_sig,
        inv: Vec::with_capacity(n),
        used: vec![false; n],
        key: Vec::with_capacity(n * n),
        best: None,
    };
    labeler.search(0, false);
    let (_, _, inv) = labeler.best.expect("signature blocks always admit a labeling");
    Ok(VertexPermutation(inv).inverse())
}

/// Distinguished representative of the isomorphism class of `b`.
pub fn canonical_form(b: &ExchangeMatrix) -> Result<ExchangeMatrix> {
    Ok(b.permuted(&canonical_labeling(b, None)?))
}

/// Joint canonical form of a matrix together with a per-vertex vector: the
/// matrix part equals [`canonical_form`], the vector is relabeled by the same
/// permutation and minimized among the matrix's optimal labelings.
pub fn canonical_pair(
    b: &ExchangeMatrix,
    a: &[i64],
) -> Result<(ExchangeMatrix, Vec<i64>, VertexPermutation)> {
    let perm = canonical_labeling(b, Some(a))?;
    Ok((b.permuted(&perm), perm.permute_vector(a), perm))
}
