//! Exponent and weight lattices, polynomial supports and the weight valuation.
//!
//! Exponents live in `M = Z^{n+1}` and weights in the dual lattice `N`.
//! Coordinates are stored as `i64`; every pairing is accumulated in `i128`
//! and checked back into range, so overflow surfaces as [`Error::Overflow`]
//! instead of wrapping.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial exponent `a` with nonnegative entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ExponentVector {
    coords: Vec<i64>,
}

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("exponent vector of length 0".into()));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c < 0) {
            return Err(Error::InvalidInput(format!(
                "negative exponent {bad} in {coords:?}"
            )));
        }
        Ok(Self { coords })
    }

    /// The all-ones exponent, i.e. the monomial `x0*x1*...*xn`.
    pub fn ones(dim: usize) -> Self {
        Self {
            coords: vec![1; dim],
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Number of coordinates strictly greater than one.
    pub fn excess_count(&self) -> usize {
        self.coords.iter().filter(|&&c| c > 1).count()
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &ExponentVector) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<i64>> for ExponentVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ExponentVector> for Vec<i64> {
    fn from(v: ExponentVector) -> Self {
        v.coords
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

/// A weight (valuation) vector `q` in the dual lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector {
    coords: Vec<i64>,
    primitive: bool,
}

impl WeightVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("weight vector of length 0".into()));
        }
        if coords.contains(&i64::MIN) {
            return Err(Error::Overflow);
        }
        let primitive = gcd_all(&coords) == 1;
        Ok(Self { coords, primitive })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![0; dim],
            primitive: false,
        }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = 1;
        Self {
            coords,
            primitive: true,
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c > 0)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &WeightVector) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// `q(1) = sum of entries`.
    pub fn total(&self) -> Result<i64> {
        checked_sum(self.coords.iter().map(|&c| c as i128))
    }

    pub fn checked_add(&self, other: &WeightVector) -> Result<WeightVector> {
        check_dim(self.dim(), other.dim())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(coords)
    }

    pub fn checked_sub(&self, other: &WeightVector) -> Result<WeightVector> {
        check_dim(self.dim(), other.dim())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(coords)
    }

    pub fn checked_scale(&self, k: i64) -> Result<WeightVector> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(coords)
    }

    /// Gcd of the absolute values of the entries (0 for the zero vector).
    pub fn content(&self) -> i64 {
        gcd_all(&self.coords)
    }
}

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(v: WeightVector) -> Self {
        v.coords
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, coords: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

pub(crate) fn gcd_all(coords: &[i64]) -> i64 {
    coords.iter().fold(0i64, |g, &c| g.gcd(&c))
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn checked_sum(it: impl Iterator<Item = i128>) -> Result<i64> {
    let mut acc: i128 = 0;
    for x in it {
        acc = acc.checked_add(x).ok_or(Error::Overflow)?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow)
}

/// Raw dot product of two equally long integer slices.
pub(crate) fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    checked_sum(a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128))
}

/// The bilinear pairing `N x M -> Z`, `q(a) = sum q_i a_i`.
pub fn pairing(q: &WeightVector, a: &ExponentVector) -> Result<i64> {
    check_dim(q.dim(), a.dim())?;
    dot(&q.coords, &a.coords)
}

/// A finite set of exponents standing in for a polynomial `f`, with optional
/// exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSupport {
    dim: usize,
    support: BTreeSet<ExponentVector>,
    coeffs: Option<BTreeMap<ExponentVector, BigRational>>,
}

impl PolynomialSupport {
    pub fn new(dim: usize, support: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for a in support {
            check_dim(dim, a.dim())?;
            if !set.insert(a.clone()) {
                return Err(Error::InvalidInput(format!("duplicate exponent {a}")));
            }
        }
        if set.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Self {
            dim,
            support: set,
            coeffs: None,
        })
    }

    /// Build from exponent/coefficient pairs; zero coefficients are dropped.
    pub fn with_coeffs(
        dim: usize,
        terms: impl IntoIterator<Item = (ExponentVector, BigRational)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (a, c) in terms {
            check_dim(dim, a.dim())?;
            if coeffs.insert(a.clone(), c).is_some() {
                return Err(Error::InvalidInput(format!("duplicate exponent {a}")));
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        if coeffs.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Self {
            dim,
            support: coeffs.keys().cloned().collect(),
            coeffs: Some(coeffs),
        })
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponents(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let exps = rows
            .iter()
            .map(|r| ExponentVector::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, exps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &BTreeSet<ExponentVector> {
        &self.support
    }

    pub fn coeffs(&self) -> Option<&BTreeMap<ExponentVector, BigRational>> {
        self.coeffs.as_ref()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, a: &ExponentVector) -> bool {
        self.support.contains(a)
    }

    /// Support of the generic member of the segment family `(1-t)f + t g`.
    pub fn union(&self, other: &PolynomialSupport) -> Result<PolynomialSupport> {
        check_dim(self.dim, other.dim)?;
        PolynomialSupport::new(
            self.dim,
            self.support.union(&other.support).cloned().collect::<Vec<_>>(),
        )
    }

    /// Same support with an extra monomial (coefficients are dropped).
    pub fn with_monomial(&self, a: ExponentVector) -> Result<PolynomialSupport> {
        check_dim(self.dim, a.dim())?;
        let mut support = self.support.clone();
        support.insert(a);
        Ok(PolynomialSupport {
            dim: self.dim,
            support,
            coeffs: None,
        })
    }

    /// Componentwise-minimal support vectors (the vertices and other lattice
    /// generators of the Newton polyhedron).
    pub fn minimal_exponents(&self) -> Vec<ExponentVector> {
        self.support
            .iter()
            .filter(|a| {
                !self
                    .support
                    .iter()
                    .any(|b| b != *a && b.dominated_by(a))
            })
            .cloned()
            .collect()
    }
}

/// `q(f) = min { q(a) : a in supp f }` for a nonnegative weight.
pub fn weight_of_poly(q: &WeightVector, f: &PolynomialSupport) -> Result<i64> {
    check_dim(f.dim(), q.dim())?;
    if !q.is_nonnegative() {
        return Err(Error::weight(q.coords(), "negative entry"));
    }
    signed_weight_of_poly(q, f)
}

/// Same minimum without the sign restriction on `q`; used for arbitrary
/// pairings inside the cone machinery.
pub(crate) fn signed_weight_of_poly(q: &WeightVector, f: &PolynomialSupport) -> Result<i64> {
    let mut best: Option<i64> = None;
    for a in f.support() {
        let v = pairing(q, a)?;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    best.ok_or(Error::EmptySupport)
}

/// `q(D) = q(f) / m` for a divisor `D` with `mD = div(f)`.
pub fn monomial_divisor_weight(q: &WeightVector, f: &PolynomialSupport, m: i64) -> Result<BigRational> {
    if m <= 0 {
        return Err(Error::Precondition(format!(
            "divisor multiplicity must be positive, got {m}"
        )));
    }
    let v = weight_of_poly(q, f)?;
    Ok(BigRational::new(v.into(), m.into()))
}

/// Divide out the content of a nonzero weight.
pub fn make_primitive(q: &WeightVector) -> Result<WeightVector> {
    let g = q.content();
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    WeightVector::new(q.coords().iter().map(|c| c / g).collect())
}
