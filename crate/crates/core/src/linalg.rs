//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) type IntMatrix = Vec<Vec<BigInt>>;

pub(crate) fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

pub(crate) fn big_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divide by the gcd of the entries; the zero vector is returned unchanged.
pub(crate) fn primitive_big(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Rank by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: IntMatrix = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            let row = std::mem::take(&mut m[i]);
            m[i] = primitive_big(row);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
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
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Primitive integer basis of the rational kernel `{x : rows . x = 0}`.
pub(crate) fn rational_kernel(rows: &[Vec<BigInt>], dim: usize) -> IntMatrix {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); dim];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(clear_denominators(&v));
    }
    basis
}

/// Scale a rational vector to a primitive integer vector on the same ray.
pub(crate) fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive_big(v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
}

/// Lattice basis of `Z^dim ∩ ker(rows)`, via unimodular column reduction.
pub(crate) fn integer_kernel(rows: &[Vec<BigInt>], dim: usize) -> IntMatrix {
    // columns of [A; I], reduced by unimodular column operations
    let m = rows.len();
    let mut cols: Vec<Vec<BigInt>> = (0..dim)
        .map(|j| {
            let mut c: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            c.extend((0..dim).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut pivot = 0;
    for r in 0..m {
        if pivot == dim {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivot..dim).filter(|&j| !cols[j][r].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                cols.swap(pivot, nz[0]);
                pivot += 1;
                break;
            }
            let (j0, j1) = (nz[0], nz[1]);
            let a = cols[j0][r].clone();
            let b = cols[j1][r].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let c0 = cols[j0].clone();
            let c1 = cols[j1].clone();
            cols[j0] = c0.iter().zip(&c1).map(|(u, v)| &x * u + &y * v).collect();
            cols[j1] = c0.iter().zip(&c1).map(|(u, v)| -&bg * u + &ag * v).collect();
        }
    }
    cols[pivot..]
        .iter()
        .map(|c| c[m..].to_vec())
        .collect()
}

/// Bareiss determinant of a square integer matrix.
pub(crate) fn determinant(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = mat.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Inverse of a square rational matrix, or `None` when singular.
pub(crate) fn inverse(mat: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<BigRational>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer adjugate `adj(M)` with `M * adj(M) = det(M) * I`.
pub(crate) fn adjugate(mat: &[Vec<BigInt>]) -> (BigInt, IntMatrix) {
    let n = mat.len();
    let det = determinant(mat);
    let q: Vec<Vec<BigRational>> = mat
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let adj = match inverse(&q) {
        Some(inv) => {
            let d = BigRational::from_integer(det.clone());
            inv.into_iter()
                .map(|r| r.into_iter().map(|x| (x * &d).to_integer()).collect())
                .collect()
        }
        None => vec![vec![BigInt::zero(); n]; n],
    };
    (det, adj)
}

/// Solve `B y = v` for a full-column-rank integer `B` (given by columns)
/// whose solution is known to exist.
pub(crate) fn solve_in_columns(columns: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = columns.len();
    let d = v.len();
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| BigRational::from_integer(c[i].clone()))
                .collect();
            row.push(BigRational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|r| m[r][k].clone()).collect())
}
