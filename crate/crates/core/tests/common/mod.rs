#![allow(dead_code)]

//! Brute-force oracles shared by the integration tests. None of these call
//! into the cone engine; they work from raw generators or raw supports.

use canweight::{BigInt, BigRational, PolynomialSupport, WeightVector};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(c: &[i64]) -> WeightVector {
    WeightVector::new(c.to_vec()).unwrap()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Row-reduce and return a solution of `sum y_k cols[k] = x`, if any.
pub fn solve(cols: &[Vec<i64>], x: &[i64]) -> Option<Vec<BigRational>> {
    let d = x.len();
    let k = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| BigRational::from_integer(BigInt::from(c[i]))).collect();
            row.push(BigRational::from_integer(BigInt::from(x[i])));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=k {
        if r == d {
            break;
        }
        let Some(p) = (r..d).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in 0..=k {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..d {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![BigRational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        y[c] = m[row][k].clone();
    }
    Some(y)
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let d = rows[0].len();
    // rank via solvability of unit vectors is clumsy; eliminate directly
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..d {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Caratheodory membership: `x` is in `cone(gens)` iff it is a nonnegative
/// combination of some linearly independent subset.
pub fn in_cone_of(gens: &[Vec<i64>], x: &[i64]) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    let d = x.len();
    for k in 1..=d.min(gens.len()) {
        for s in subsets(gens.len(), k) {
            let cols: Vec<Vec<i64>> = s.iter().map(|&i| gens[i].clone()).collect();
            if rank(&cols) < k {
                continue;
            }
            if let Some(y) = solve(&cols, x) {
                if y.iter().all(|v| !v.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn random_nonneg(rng: &mut ChaCha8Rng, dim: usize, max: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=max)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Odometer over the box `[lo, hi]^dim`.
pub fn for_box(dim: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64])) {
    let mut x = vec![lo; dim];
    loop {
        f(&x);
        let mut j = 0;
        loop {
            if j == dim {
                return;
            }
            if x[j] < hi {
                x[j] += 1;
                break;
            }
            x[j] = lo;
            j += 1;
        }
    }
}

/// Irreducible nonzero lattice points among the members of a cone inside
/// `[0, hi]^dim`, for cones in the nonnegative orthant.
pub fn brute_hilbert(dim: usize, hi: i64, member: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let mut pts = Vec::new();
    for_box(dim, 0, hi, |x| {
        if x.iter().any(|&v| v != 0) && member(x) {
            pts.push(x.to_vec());
        }
    });
    pts.sort_by_key(|x| (x.iter().sum::<i64>(), x.clone()));
    let mut irr: Vec<Vec<i64>> = Vec::new();
    for x in pts {
        let reducible = irr.iter().any(|g| {
            let diff: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            diff.iter().all(|&v| v >= 0) && member(&diff)
        });
        if !reducible {
            irr.push(x);
        }
    }
    irr.sort();
    irr
}

/// The componentwise-least element of a set of points, if it is a member.
pub fn least_element(points: &[Vec<i64>]) -> Option<Vec<i64>> {
    points
        .iter()
        .find(|m| points.iter().all(|x| m.iter().zip(x.iter()).all(|(a, b)| a <= b)))
        .cloned()
}

pub fn q_of_f(q: &[i64], f: &PolynomialSupport) -> i64 {
    f.support().iter().map(|a| dot(q, a.coords())).min().unwrap()
}

pub fn random_support(rng: &mut ChaCha8Rng, dim: usize, max_exp: i64, terms: usize) -> PolynomialSupport {
    loop {
        let exps: Vec<Vec<i64>> = (0..terms).map(|_| random_nonneg(rng, dim, max_exp)).collect();
        let rows: Vec<&[i64]> = exps.iter().map(|e| e.as_slice()).collect();
        if let Ok(f) = PolynomialSupport::from_exponents(dim, &rows) {
            return f;
        }
    }
}

/// Random support with a pure power of every variable plus a few mixed
/// monomials, so the singularity has a chance of being isolated.
pub fn random_convenient_support(rng: &mut ChaCha8Rng, dim: usize, max_exp: i64, extra: usize) -> PolynomialSupport {
    let mut exps: Vec<Vec<i64>> = (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = rng.gen_range(2..=max_exp);
            e
        })
        .collect();
    for _ in 0..extra {
        let e = random_nonneg(rng, dim, max_exp.min(3));
        if !exps.contains(&e) && e.iter().sum::<i64>() >= 2 {
            exps.push(e);
        }
    }
    let rows: Vec<&[i64]> = exps.iter().map(|e| e.as_slice()).collect();
    PolynomialSupport::from_exponents(dim, &rows).unwrap()
}

/// Primitive nonnegative normals of all supporting hyperplanes of the
/// Newton polyhedron spanned by `dim` affinely independent support points
/// and recession directions. Brute force over all such subsets.
pub fn brute_newton_inequalities(f: &PolynomialSupport) -> Vec<(Vec<i64>, i64)> {
    let d = f.dim();
    let pts: Vec<Vec<i64>> = f.support().iter().map(|a| a.coords().to_vec()).collect();
    // items: points (kind 0) and unit directions (kind 1)
    let mut items: Vec<(bool, Vec<i64>)> = pts.iter().map(|p| (true, p.clone())).collect();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        items.push((false, e));
    }
    let mut out = Vec::new();
    for s in subsets(items.len(), d) {
        if !s.iter().any(|&i| items[i].0) {
            continue;
        }
        // unknowns (beta, c): beta.p - c = 0 for points, beta.e = 0 for directions
        let rows: Vec<Vec<i64>> = s
            .iter()
            .map(|&i| {
                let (is_pt, v) = &items[i];
                let mut r = v.clone();
                r.push(if *is_pt { -1 } else { 0 });
                r
            })
            .collect();
        if rank(&rows) != d {
            continue;
        }
        let Some(n) = kernel_vector(&rows, d + 1) else {
            continue;
        };
        for sign in [1i64, -1] {
            let beta: Vec<i64> = n[..d].iter().map(|x| x * sign).collect();
            let c = n[d] * sign;
            if beta.iter().any(|&x| x < 0) || beta.iter().all(|&x| x == 0) {
                continue;
            }
            if pts.iter().all(|p| dot(&beta, p) >= c) {
                let g = content(&beta);
                if c % g == 0 {
                    let entry = (beta.iter().map(|x| x / g).collect(), c / g);
                    if !out.contains(&entry) {
                        out.push(entry);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A primitive integer generator of a one-dimensional kernel.
fn kernel_vector(rows: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    for free in (0..n).rev() {
        // fix x_free = 1 and solve the rest
        let cols: Vec<Vec<i64>> = (0..n).filter(|&j| j != free).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        let rhs: Vec<i64> = rows.iter().map(|r| -r[free]).collect();
        if let Some(y) = solve(&cols, &rhs) {
            let mut full: Vec<BigRational> = Vec::with_capacity(n);
            let mut it = y.into_iter();
            for j in 0..n {
                full.push(if j == free { BigRational::one() } else { it.next().unwrap() });
            }
            let den = full.iter().fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()));
            let ints: Vec<i64> = full
                .iter()
                .map(|x| (x * BigRational::from_integer(den.clone())).to_integer().try_into().unwrap())
                .collect();
            let g = content(&ints);
            return Some(ints.iter().map(|x| x / g).collect());
        }
    }
    None
}
