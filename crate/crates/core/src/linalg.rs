//! Exact integer linear algebra: determinants and integer kernels.

use num_integer::Integer;

use crate::error::{overflow, Result};

/// Determinant of a square row-major matrix by Bareiss fraction-free
/// elimination. Runs in `i64` and retries in `i128` if an intermediate
/// overflows.
pub fn determinant(n: usize, entries: &[i64]) -> Result<i64> {
    debug_assert_eq!(entries.len(), n * n);
    if let Some(d) = bareiss::<i64>(n, entries.to_vec()) {
        return Ok(d);
    }
    let wide = entries.iter().map(|&x| x as i128).collect();
    bareiss::<i128>(n, wide)
        .and_then(|d| i64::try_from(d).ok())
        .ok_or_else(|| overflow("determinant"))
}

trait Exact: Copy + PartialEq + From<i8> + std::ops::Neg<Output = Self> + std::ops::Div<Output = Self> {
    fn mul_sub(a: Self, b: Self, c: Self, d: Self) -> Option<Self>;
}

impl Exact for i64 {
    fn mul_sub(a: i64, b: i64, c: i64, d: i64) -> Option<i64> {
        a.checked_mul(b)?.checked_sub(c.checked_mul(d)?)
    }
}

impl Exact for i128 {
    fn mul_sub(a: i128, b: i128, c: i128, d: i128) -> Option<i128> {
        a.checked_mul(b)?.checked_sub(c.checked_mul(d)?)
    }
}

fn bareiss<T: Exact>(n: usize, mut m: Vec<T>) -> Option<T> {
    let zero = T::from(0);
    let one = T::from(1);
    if n == 0 {
        return Some(one);
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n {
        if m[k * n + k] == zero {
            let Some(r) = ((k + 1)..n).find(|&r| m[r * n + k] != zero) else {
                return Some(zero);
            };
            for c in 0..n {
                m.swap(k * n + c, r * n + c);
            }
            negate = !negate;
        }
        let pivot = m[k * n + k];
        for i in (k + 1)..n {
            let lead = m[i * n + k];
            for j in (k + 1)..n {
                let v = T::mul_sub(pivot, m[i * n + j], lead, m[k * n + j])?;
                // exact by Sylvester's identity
                m[i * n + j] = if prev == one { v } else { v / prev };
            }
            m[i * n + k] = zero;
        }
        prev = pivot;
    }
    let d = m[n * n - 1];
    Some(if negate { -d } else { d })
}

fn row_content(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Basis of the integer kernel `{x : M·x = 0}` of an `rows × cols` matrix.
///
/// Gauss–Jordan elimination with integer row operations (rows divided by
/// their content after each step). One primitive vector per free column,
/// sign-normalized so the first nonzero entry is positive. Empty when the
/// columns are independent.
pub fn integer_kernel(rows: usize, cols: usize, entries: &[i64]) -> Result<Vec<Vec<i64>>> {
    debug_assert_eq!(entries.len(), rows * cols);
    let mut m: Vec<Vec<i128>> =
        entries.chunks(cols.max(1)).take(rows).map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| m[i][c] != 0)
            .min_by_key(|&i| m[i][c].unsigned_abs())
        else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        let pv = pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let (mul_row, mul_piv) = (pv / g, row[c] / g);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = x
                    .checked_mul(mul_row)
                    .zip(y.checked_mul(mul_piv))
                    .and_then(|(a, b)| a.checked_sub(b))
                    .ok_or_else(|| overflow("kernel elimination"))?;
            }
            let content = row_content(row);
            if content > 1 {
                row.iter_mut().for_each(|x| *x /= content);
            }
        }
        pivots.push((r, c));
        r += 1;
    }

    let lcm = pivots.iter().fold(1i128, |l, &(pr, pc)| l.lcm(&m[pr][pc]));
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![0i128; cols];
        x[free] = lcm;
        for &(pr, pc) in &pivots {
            let num = lcm
                .checked_mul(m[pr][free])
                .ok_or_else(|| overflow("kernel back-substitution"))?;
            x[pc] = -num / m[pr][pc];
        }
        let g = row_content(&x);
        let first = x.iter().copied().find(|&v| v != 0).unwrap_or(1);
        let g = if first < 0 { -g } else { g };
        let v: Option<Vec<i64>> = x.iter().map(|&v| i64::try_from(v / g).ok()).collect();
        basis.push(v.ok_or_else(|| overflow("kernel vector"))?);
    }
    Ok(basis)
}
