//! Y-seeds: a tuple of c-vectors together with an exchange matrix.
//!
//! The c-vectors are stored as the rows of the C-matrix. Every mutation
//! re-checks sign coherence and `|det C| = 1`; violations are errors carrying
//! the mutation path that produced them.

use std::fmt;

use crate::error::{overflow, Error, Result};
use crate::green::MutationSequence;
use crate::linalg::determinant;
use crate::matrix::{pos, ExchangeMatrix, Sign};

/// Green when the c-vector is nonnegative, red when nonpositive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexColor {
    Green,
    Red,
}

impl VertexColor {
    pub fn letter(self) -> char {
        match self {
            VertexColor::Green => 'G',
            VertexColor::Red => 'R',
        }
    }
}

/// A Y-seed `(c, B)`.
///
/// Equality compares the c-vectors and the exchange matrix; the recorded
/// path is bookkeeping only.
#[derive(Clone)]
pub struct YSeed {
    n: usize,
    c: Vec<i64>,
    b: ExchangeMatrix,
    path: MutationSequence,
}

impl PartialEq for YSeed {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.b == other.b
    }
}

impl Eq for YSeed {}

impl fmt::Debug for YSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YSeed")
            .field("c", &self.c_matrix())
            .field("b", &self.b)
            .field("path", &self.path.to_string())
            .finish()
    }
}

/// Sign of a c-vector, or `None` if it is zero or has mixed signs.
pub fn coherent_sign(v: &[i64]) -> Option<Sign> {
    let nonneg = v.iter().all(|&x| x >= 0);
    let nonpos = v.iter().all(|&x| x <= 0);
    match (nonneg, nonpos) {
        (true, false) => Some(Sign::Plus),
        (false, true) => Some(Sign::Minus),
        _ => None,
    }
}

impl YSeed {
    /// `(c₀, B₀)` with `c₀` the standard basis.
    pub fn initial(b0: &ExchangeMatrix) -> YSeed {
        let n = b0.n();
        let mut c = vec![0; n * n];
        for i in 0..n {
            c[i * n + i] = 1;
        }
        YSeed { n, c, b: b0.clone(), path: MutationSequence::default() }
    }

    /// Build a seed from explicit c-vectors, checking the seed invariants.
    pub fn from_parts(c_vectors: Vec<Vec<i64>>, b: ExchangeMatrix) -> Result<YSeed> {
        let n = b.n();
        if c_vectors.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c_vectors.len() });
        }
        if let Some(bad) = c_vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        let seed = YSeed {
            n,
            c: c_vectors.into_iter().flatten().collect(),
            b,
            path: MutationSequence::default(),
        };
        seed.check_invariants()?;
        Ok(seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c_vector(&self, k: usize) -> &[i64] {
        &self.c[k * self.n..(k + 1) * self.n]
    }

    /// The C-matrix, one c-vector per row.
    pub fn c_matrix(&self) -> Vec<Vec<i64>> {
        self.c.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn exchange_matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    /// Mutations applied since the initial seed.
    pub fn path(&self) -> &MutationSequence {
        &self.path
    }

    /// Sign coherence is a theorem for skew-symmetric `B` and conjectural
    /// otherwise.
    pub fn coherence_proven(&self) -> bool {
        self.b.is_skew_symmetric()
    }

    pub fn c_sign(&self, k: usize) -> Result<Sign> {
        self.b.check_vertex(k)?;
        coherent_sign(self.c_vector(k))
            .ok_or_else(|| Error::SignCoherenceViolation { vertex: k, path: self.path.clone() })
    }

    pub fn color(&self, k: usize) -> Result<VertexColor> {
        Ok(match self.c_sign(k)? {
            Sign::Plus => VertexColor::Green,
            Sign::Minus => VertexColor::Red,
        })
    }

    pub fn colors(&self) -> Result<Vec<VertexColor>> {
        (0..self.n).map(|k| self.color(k)).collect()
    }

    pub fn green_vertices(&self) -> Result<Vec<usize>> {
        let colors = self.colors()?;
        Ok((0..self.n).filter(|&k| colors[k] == VertexColor::Green).collect())
    }

    pub fn is_all_red(&self) -> Result<bool> {
        Ok(self.colors()?.iter().all(|&c| c == VertexColor::Red))
    }

    /// `|det C|`.
    pub fn abs_det(&self) -> Result<i64> {
        Ok(determinant(self.n, &self.c)?.abs())
    }

    /// Every c-vector is nonzero and sign-coherent, and they form a basis of `ℤⁿ`.
    pub fn check_invariants(&self) -> Result<()> {
        for k in 0..self.n {
            self.c_sign(k)?;
        }
        let det = determinant(self.n, &self.c)?;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { det, path: self.path.clone() });
        }
        Ok(())
    }

    /// Seed mutation `μ_k`:
    /// `c'_k = −c_k`, `c'_i = c_i + [sgn(c_k)·B[k][i]]₊·c_k` for `i ≠ k`,
    /// `B' = μ_k(B)`.
    pub fn mutate(&self, k: usize) -> Result<YSeed> {
        let eps = self.c_sign(k)?.value();
        let n = self.n;
        let ck = self.c_vector(k).to_vec();
        let mut c = self.c.clone();
        for i in 0..n {
            let row = &mut c[i * n..(i + 1) * n];
            if i == k {
                row.iter_mut().for_each(|x| *x = -*x);
                continue;
            }
            let coeff = pos(eps * self.b.get(k, i));
            if coeff == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&ck) {
                *x = coeff
                    .checked_mul(y)
                    .and_then(|p| x.checked_add(p))
                    .ok_or_else(|| overflow("c-vector mutation"))?;
            }
        }
        let mut path = self.path.clone();
        path.push(k);
        let seed = YSeed { n, c, b: self.b.mutate(k)?, path };
        seed.check_invariants()?;
        Ok(seed)
    }

    /// One line of the seed trace format:
    /// `<step> <vertex|-> <colors> | <c₁> | … | <cₙ>`, vertices 1-based.
    pub fn trace_line(&self, step: usize, vertex: Option<usize>) -> Result<String> {
        let colors: String = self.colors()?.iter().map(|c| c.letter()).collect();
        let mut line = format!(
            "{} {} {}",
            step,
            vertex.map_or_else(|| "-".to_string(), |k| (k + 1).to_string()),
            colors
        );
        for k in 0..self.n {
            line.push_str(" |");
            for x in self.c_vector(k) {
                line.push(' ');
                line.push_str(&x.to_string());
            }
        }
        Ok(line)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn initial_seed_is_standard_basis_and_green() {
        let s = YSeed::initial(&a2());
        assert_eq!(s.c_matrix(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(s.colors().unwrap(), vec![VertexColor::Green; 2]);
        assert_eq!(s.abs_det().unwrap(), 1);
    }

    #[test]
    fn c_sign_cases() {
        let b = ExchangeMatrix::new(vec![vec![0; 3]; 3]).unwrap();
        let s = YSeed { n: 3, c: vec![0, 2, 1, -1, -1, 0, 1, -1, 0], b, path: Default::default() };
        assert_eq!(s.c_sign(0).unwrap(), Sign::Plus);
        assert_eq!(s.c_sign(1).unwrap(), Sign::Minus);
        assert!(matches!(s.c_sign(2), Err(Error::SignCoherenceViolation { vertex: 2, .. })));
        let zero = YSeed { c: vec![0; 9], ..s };
        assert!(matches!(zero.c_sign(0), Err(Error::SignCoherenceViolation { .. })));
    }

    #[test]
    fn from_parts_checks_invariants() {
        let b = a2();
        assert!(YSeed::from_parts(vec![vec![1, 0], vec![0, -1]], b.clone()).is_ok());
        assert!(matches!(
            YSeed::from_parts(vec![vec![1, 0], vec![1, -1]], b.clone()),
            Err(Error::SignCoherenceViolation { vertex: 1, .. })
        ));
        assert!(matches!(
            YSeed::from_parts(vec![vec![2, 0], vec![0, 1]], b),
            Err(Error::NotUnimodular { det: 2, .. })
        ));
    }

    #[test]
    fn a2_mutations_by_hand() {
        let s = YSeed::initial(&a2());
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.c_matrix(), vec![vec![-1, 0], vec![1, 1]]);
        assert_eq!(s1.exchange_matrix().rows(), vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(s1.colors().unwrap(), vec![VertexColor::Red, VertexColor::Green]);

        let s2 = s.mutate(1).unwrap();
        assert_eq!(s2.c_matrix(), vec![vec![1, 0], vec![0, -1]]);

        let end = s2.mutate(0).unwrap();
        assert!(end.is_all_red().unwrap());
        assert_eq!(end.path().steps(), &[1, 0]);
    }

    #[test]
    fn seed_mutation_is_involutive() {
        let s = YSeed::initial(&a2()).mutate(0).unwrap().mutate(1).unwrap();
        for k in 0..2 {
            assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
        }
    }

    #[test]
    fn trace_format() {
        let s = YSeed::initial(&a2());
        assert_eq!(s.trace_line(0, None).unwrap(), "0 - GG | 1 0 | 0 1");
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.trace_line(1, Some(0)).unwrap(), "1 1 RG | -1 0 | 1 1");
    }
}
