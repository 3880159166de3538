//! A limited exact check of Newton non-degeneracy.
//!
//! Two kinds of compact faces are decided:
//! faces whose exponents are linearly independent (never degenerate), and
//! one-dimensional faces `x^A h(x^d)`, degenerate iff `h` has a repeated root.
//! Any other face leaves the answer undecided.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::linalg::{rank, to_big, IntMatrix};
use crate::newton::{affine_dimension, build_newton};
use crate::PolynomialSupport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Nondegeneracy {
    NonDegenerate,
    Degenerate,
    Undecided,
}

pub fn check_nondegeneracy_limited(f: &PolynomialSupport) -> Result<Nondegeneracy> {
    let coeffs = f
        .coeffs()
        .ok_or_else(|| Error::Precondition("non-degeneracy check needs coefficients".into()))?;
    let np = build_newton(f)?;
    let mut undecided = false;
    for face in np.compact_faces()? {
        let pts: Vec<&ExponentVector> = face.iter().map(|&i| &np.generators()[i]).collect();
        let rows: IntMatrix = pts.iter().map(|p| to_big(p.coords())).collect();
        if rank(&rows) == pts.len() {
            continue;
        }
        let owned: Vec<ExponentVector> = pts.iter().map(|&p| p.clone()).collect();
        if affine_dimension(&owned) == 1 {
            match segment_degenerate(&owned, |e| coeffs.get(e).cloned()) {
                Some(true) => return Ok(Nondegeneracy::Degenerate),
                Some(false) => continue,
                None => {}
            }
        }
        undecided = true;
    }
    Ok(if undecided {
        Nondegeneracy::Undecided
    } else {
        Nondegeneracy::NonDegenerate
    })
}

/// `Some(true)` iff the segment polynomial has a repeated root on the torus.
/// `None` when the segment is collinear with the origin.
fn segment_degenerate(
    pts: &[ExponentVector],
    coeff: impl Fn(&ExponentVector) -> Option<BigRational>,
) -> Option<bool> {
    let mut sorted = pts.to_vec();
    sorted.sort();
    let start = sorted[0].coords().to_vec();
    let end = sorted[sorted.len() - 1].coords().to_vec();
    let diff: Vec<i64> = end.iter().zip(&start).map(|(a, b)| a - b).collect();
    let g = crate::lattice::gcd_all(&diff);
    let delta: Vec<i64> = diff.iter().map(|x| x / g).collect();
    if rank(&[to_big(&start), to_big(&delta)]) < 2 {
        return None;
    }
    let mut h = vec![BigRational::zero(); g as usize + 1];
    for p in pts {
        let k = p
            .coords()
            .iter()
            .zip(&start)
            .zip(&delta)
            .find(|(_, &d)| d != 0)
            .map(|((a, s), d)| (a - s) / d)
            .expect("nonzero direction");
        h[k as usize] = coeff(p).unwrap_or_else(BigRational::one);
    }
    Some(poly_gcd_degree(&h) > 0)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect()
}

/// Degree of `gcd(h, h')` over the rationals.
fn poly_gcd_degree(h: &[BigRational]) -> usize {
    let mut a = h.to_vec();
    let mut b = derivative(h);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonempty").clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            let v = &r[shift + i] - &factor * c;
            r[shift + i] = v;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn check(s: &str, d: usize) -> Nondegeneracy {
        check_nondegeneracy_limited(&parse_polynomial(s, d).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(check("x0^2+x1^4+x2^4", 3), Nondegeneracy::NonDegenerate);
        assert_eq!(check("x0^2+2*x0*x1+x1^2", 2), Nondegeneracy::Degenerate);
        assert_eq!(
            check("x0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6", 4),
            Nondegeneracy::Undecided
        );
        assert_eq!(check("x0^2+3*x0*x1+x1^2", 2), Nondegeneracy::NonDegenerate);
        assert_eq!(check("x0^3+x1^4+x2^4", 3), Nondegeneracy::NonDegenerate);
    }

    #[test]
    fn gcd_degree() {
        let r = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect::<Vec<_>>();
        assert_eq!(poly_gcd_degree(&r(&[1, 2, 1])), 1);
        assert_eq!(poly_gcd_degree(&r(&[1, 0, 1])), 0);
        assert_eq!(poly_gcd_degree(&r(&[-1, 3, -3, 1])), 2);
    }

    #[test]
    fn needs_coefficients() {
        let f = PolynomialSupport::from_exponents(2, &[&[2, 0], &[0, 2]]).unwrap();
        assert!(check_nondegeneracy_limited(&f).is_err());
    }
}
