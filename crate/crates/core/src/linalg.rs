//! Small exact linear algebra over ℤ and ℚ. Dimensions here never exceed a
//! dozen, so everything is dense and row-major.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub type Q = Rational64;
pub type IMat = Vec<Vec<i64>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &IMat, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_vec_q(m: &IMat, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Q::zero(), |acc, (a, b)| acc + *b * *a)
        })
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &IMat, cols: usize) -> IMat {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_iq(a: &[i64], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + *y * *x)
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_i(rows: &IMat) -> usize {
    rank_q(&rows.iter().map(|r| to_q(r)).collect::<Vec<_>>())
}

/// Some solution of `a x = b`, if one exists.
pub fn solve_q(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Basis of the rational kernel `{x : a x = 0}`.
pub fn kernel_q(a: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                x[c] = -m[i][f];
            }
            x
        })
        .collect()
}

/// Unimodular `u` with `r·u = [h | 0]`, where the zero block has
/// `n − rank(r)` columns. The trailing columns of `u` then form a ℤ-basis of
/// the saturated kernel of `r`.
pub fn column_reduce(r: &IMat, n: usize) -> (IMat, usize) {
    let mut a: IMat = r.clone();
    let mut u = identity(n);
    let mut p = 0;
    for i in 0..a.len() {
        if p == n {
            break;
        }
        for j in (p + 1)..n {
            // gcd step on columns p and j, driven by row i
            while a[i][j] != 0 {
                let quo = a[i][p].div_euclid(a[i][j]);
                for row in a.iter_mut() {
                    row[p] -= quo * row[j];
                    row.swap(p, j);
                }
                for row in u.iter_mut() {
                    row[p] -= quo * row[j];
                    row.swap(p, j);
                }
            }
        }
        if a[i][p] != 0 {
            p += 1;
        }
    }
    (u, p)
}

/// Inverse of an integer matrix that is known to be unimodular.
pub fn unimodular_inverse(u: &IMat) -> Option<IMat> {
    let n = u.len();
    let mut m: Vec<Vec<Q>> = u
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = to_q(row);
            r.extend((0..n).map(|j| q(i64::from(i == j))));
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = m[i][n + j];
            if !x.is_integer() {
                return None;
            }
            out[i][j] = x.to_integer();
        }
    }
    Some(out)
}

pub fn max_abs(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_single_row() {
        let k = kernel_q(&[to_q(&[1, -1, 0])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot_q(&to_q(&[1, -1, 0]), v).is_zero());
        }
    }

    #[test]
    fn column_reduce_gl2() {
        let r = vec![vec![1, -1]];
        let (u, rank) = column_reduce(&r, 2);
        assert_eq!(rank, 1);
        let ru = mat_mul(&r, &u);
        assert_eq!(ru[0][1], 0);
        let ui = unimodular_inverse(&u).unwrap();
        assert_eq!(mat_mul(&u, &ui), identity(2));
        // the kernel column is ±(1,1)
        assert_eq!(u[0][1].abs(), 1);
        assert_eq!(u[0][1], u[1][1]);
    }

    #[test]
    fn column_reduce_non_primitive_rows() {
        let r = vec![vec![2, 4, 6], vec![0, 3, 3]];
        let (u, rank) = column_reduce(&r, 3);
        assert_eq!(rank, 2);
        let ru = mat_mul(&r, &u);
        assert!(ru.iter().all(|row| row[2] == 0));
        assert!(unimodular_inverse(&u).is_some());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = vec![to_q(&[2, -1]), to_q(&[-1, 2])];
        let x = solve_q(&a, &[q(1), q(1)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let b = vec![to_q(&[1, 1]), to_q(&[2, 2])];
        assert!(solve_q(&b, &[q(1), q(3)]).is_none());
    }
}
