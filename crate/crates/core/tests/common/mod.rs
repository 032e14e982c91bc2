#![allow(dead_code)]

use num_integer::Integer;
use num_rational::Ratio;
use qmgs::ExchangeMatrix;
use rand::Rng;

/// Random skew-symmetrizable matrix with `|b| <= max_entry`: pick a diagonal
/// `D` with entries in `1..=max_d`, then for each pair set
/// `B[i][j] = x·d_j/g`, `B[j][i] = −x·d_i/g` with `g = gcd(d_i, d_j)`.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, max_d: i64, max_entry: i64) -> ExchangeMatrix {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_d)).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let g = d[i].gcd(&d[j]);
            let (si, sj) = (d[j] / g, d[i] / g);
            let limit = max_entry / si.max(sj);
            let x = rng.gen_range(-limit..=limit);
            rows[i][j] = x * si;
            rows[j][i] = -x * sj;
        }
    }
    ExchangeMatrix::new(rows).expect("constructed with a symmetrizer")
}

/// Every permutation of `0..n`.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Brute-force isomorphism test over all `n!` permutations.
pub fn brute_force_isomorphic(b1: &ExchangeMatrix, b2: &ExchangeMatrix) -> bool {
    let n = b1.n();
    b2.n() == n
        && all_permutations(n).iter().any(|s| {
            (0..n).all(|i| (0..n).all(|j| b2.get(s[i], s[j]) == b1.get(i, j)))
        })
}

/// Solve `Σ_i a_i·c_i = u` for `a` over the rationals (Gauss–Jordan on the
/// transposed C-matrix). Returns `None` if the system is singular or the
/// solution is not integral.
pub fn coordinates_in_basis(c_vectors: &[Vec<i64>], u: &[i64]) -> Option<Vec<i64>> {
    let n = u.len();
    // augmented matrix of Cᵀ a = u
    let mut m: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|row| {
            let mut r: Vec<Ratio<i128>> =
                (0..n).map(|col| Ratio::from_integer(c_vectors[col][row] as i128)).collect();
            r.push(Ratio::from_integer(u[row] as i128));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| m[r][col] != Ratio::from_integer(0))?;
        m.swap(col, p);
        let pivot = m[col][col];
        for x in m[col].iter_mut() {
            *x /= pivot;
        }
        for r in 0..n {
            if r != col && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            let v = row[n];
            v.is_integer().then(|| *v.numer() as i64)
        })
        .collect()
}
