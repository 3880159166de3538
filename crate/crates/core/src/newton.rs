//! Newton polyhedra, the position of the all-ones vector, and the
//! combinatorial singularity classification.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::charge;
use crate::cone::double_description;
use crate::error::{Error, Result};
use crate::lattice::{dot, ExponentVector, PolynomialSupport, WeightVector};
use crate::linalg::{primitive_big, rank, to_big, to_i64, IntMatrix};
use crate::nondegeneracy::{check_nondegeneracy_limited, Nondegeneracy};

/// Inequality `normal . a >= offset` cutting out a facet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: WeightVector,
    pub offset: i64,
    pub compact: bool,
}

impl Facet {
    fn slack(&self, a: &[i64]) -> Result<i64> {
        Ok(dot(self.normal.coords(), a)? - self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    generators: Vec<ExponentVector>,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Componentwise-minimal support vectors.
    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Facets sorted by normal, then offset.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.compact)
    }

    pub fn contains(&self, a: &[i64]) -> Result<bool> {
        crate::lattice::check_dim(self.dim, a.len())?;
        for f in &self.facets {
            if f.slack(a)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Indices of facets tight at `a`.
    pub(crate) fn tight_facets(&self, a: &[i64]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if f.slack(a)? == 0 {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// A set of facets defines a compact face iff together their normals
    /// have support on every coordinate.
    pub(crate) fn covers_all_coordinates(&self, facets: &[usize]) -> bool {
        (0..self.dim).all(|j| facets.iter().any(|&i| self.facets[i].normal.coords()[j] > 0))
    }

    /// Compact faces as sorted sets of generator indices.
    pub fn compact_faces(&self) -> Result<Vec<Vec<usize>>> {
        let on: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut s = BTreeSet::new();
                for (i, g) in self.generators.iter().enumerate() {
                    if f.slack(g.coords())? == 0 {
                        s.insert(i);
                    }
                }
                Ok(s)
            })
            .collect::<Result<_>>()?;
        // close under intersection
        let mut family: BTreeSet<BTreeSet<usize>> = on.iter().filter(|s| !s.is_empty()).cloned().collect();
        loop {
            let current: Vec<BTreeSet<usize>> = family.iter().cloned().collect();
            charge((current.len() as u128).pow(2))?;
            let mut added = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let c: BTreeSet<usize> = a.intersection(b).copied().collect();
                    if !c.is_empty() && family.insert(c) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut out = Vec::new();
        for s in family {
            let containing: Vec<usize> = (0..on.len()).filter(|&i| s.is_subset(&on[i])).collect();
            if self.covers_all_coordinates(&containing) {
                out.push(s.into_iter().collect());
            }
        }
        out.sort();
        Ok(out)
    }
}

pub fn build_newton(f: &PolynomialSupport) -> Result<NewtonPolyhedron> {
    let dim = f.dim();
    let generators = f.minimal_exponents();
    if generators.is_empty() {
        return Err(Error::EmptySupport);
    }
    // dual of the homogenized cone: (beta, t) with beta.a + t >= 0, beta >= 0
    let mut forms: IntMatrix = generators
        .iter()
        .map(|g| {
            let mut r = to_big(g.coords());
            r.push(BigInt::one());
            r
        })
        .collect();
    for i in 0..dim {
        let mut r = vec![BigInt::zero(); dim + 1];
        r[i] = BigInt::one();
        forms.push(r);
    }
    let dd = double_description(&forms, dim + 1)?;
    if !dd.lineality.is_empty() {
        return Err(Error::Invariant("Newton polyhedron dual cone is not pointed".into()));
    }
    let mut facets = Vec::new();
    for ray in dd.rays {
        let beta = primitive_big(ray[..dim].to_vec());
        if beta.iter().all(|x| x.is_zero()) {
            continue;
        }
        let normal = WeightVector::new(to_i64(&beta)?)?;
        let offset = generators
            .iter()
            .map(|g| dot(normal.coords(), g.coords()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .expect("nonempty generators");
        let compact = normal.is_positive();
        facets.push(Facet {
            normal,
            offset,
            compact,
        });
    }
    facets.sort();
    facets.dedup();
    Ok(NewtonPolyhedron {
        dim,
        generators,
        facets,
    })
}

/// Where the all-ones vector sits relative to the Newton polyhedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Position {
    Interior,
    OnCompactFace,
    /// On the boundary, but only on facets whose normals have a zero entry.
    OnNonCompactFace,
    Outside,
}

pub fn position_of_one(np: &NewtonPolyhedron) -> Result<Position> {
    let one = vec![1i64; np.dim];
    let mut tight_compact = false;
    let mut tight_other = false;
    for f in &np.facets {
        let s = f.slack(&one)?;
        if s < 0 {
            return Ok(Position::Outside);
        }
        if s == 0 {
            if f.compact {
                tight_compact = true;
            } else {
                tight_other = true;
            }
        }
    }
    Ok(if tight_compact {
        Position::OnCompactFace
    } else if tight_other {
        Position::OnNonCompactFace
    } else {
        Position::Interior
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassLabel {
    Canonical,
    LogCanonicalNonCanonical,
    NotLogCanonical,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassLabel::Canonical => "Canonical",
            ClassLabel::LogCanonicalNonCanonical => "LogCanonicalNonCanonical",
            ClassLabel::NotLogCanonical => "NotLogCanonical",
        })
    }
}

/// Growth order of the plurigenera, as a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kappa {
    MinusInfinity,
    Zero,
    /// The singularity dimension `n`.
    Top(usize),
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::MinusInfinity => f.write_str("-inf"),
            Kappa::Zero => f.write_str("0"),
            Kappa::Top(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NondegeneracyFlag {
    Assumed,
    CheckedLimited,
    Unchecked,
}

impl fmt::Display for NondegeneracyFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NondegeneracyFlag::Assumed => "Assumed",
            NondegeneracyFlag::CheckedLimited => "CheckedLimited",
            NondegeneracyFlag::Unchecked => "Unchecked",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityClass {
    pub label: ClassLabel,
    pub kappa: Kappa,
    pub nondegeneracy: NondegeneracyFlag,
    pub position: Position,
    pub caveats: Vec<String>,
}

pub const CAVEAT_ONE_DIRECTION: &str =
    "non-degeneracy not established: only the 'if' directions of the Newton-diagram criterion are unconditional";
pub const CAVEAT_NON_COMPACT: &str =
    "the all-ones vector lies only on a non-compact face; the singularity cannot be isolated";
pub const CAVEAT_DEGENERATE: &str = "the limited checker found a degenerate compact face";

pub fn classify(f: &PolynomialSupport, assume_nondegenerate: bool) -> Result<SingularityClass> {
    let np = build_newton(f)?;
    let position = position_of_one(&np)?;
    let n = f.dim().saturating_sub(1);
    let (label, kappa) = match position {
        Position::Interior => (ClassLabel::Canonical, Kappa::MinusInfinity),
        Position::OnCompactFace | Position::OnNonCompactFace => (ClassLabel::LogCanonicalNonCanonical, Kappa::Zero),
        Position::Outside => (ClassLabel::NotLogCanonical, Kappa::Top(n)),
    };
    let mut caveats = Vec::new();
    let nondegeneracy = if assume_nondegenerate {
        NondegeneracyFlag::Assumed
    } else if f.coeffs().is_some() {
        match check_nondegeneracy_limited(f)? {
            Nondegeneracy::NonDegenerate => NondegeneracyFlag::CheckedLimited,
            Nondegeneracy::Degenerate => {
                caveats.push(CAVEAT_DEGENERATE.to_string());
                NondegeneracyFlag::Unchecked
            }
            Nondegeneracy::Undecided => NondegeneracyFlag::Unchecked,
        }
    } else {
        NondegeneracyFlag::Unchecked
    };
    if nondegeneracy == NondegeneracyFlag::Unchecked {
        caveats.push(CAVEAT_ONE_DIRECTION.to_string());
    }
    if position == Position::OnNonCompactFace {
        caveats.push(CAVEAT_NON_COMPACT.to_string());
    }
    Ok(SingularityClass {
        label,
        kappa,
        nondegeneracy,
        position,
        caveats,
    })
}

/// The minimal face of the Newton polyhedron containing the all-ones vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFace {
    pub generators: Vec<ExponentVector>,
    pub dim: usize,
    /// Primitive inner normal, present when the face is a facet.
    pub normal_ray: Option<WeightVector>,
}

pub fn face_containing_one(np: &NewtonPolyhedron) -> Result<OneFace> {
    if position_of_one(np)? != Position::OnCompactFace {
        return Err(Error::Precondition(
            "face_containing_one: the all-ones vector is not on a compact face".into(),
        ));
    }
    let one = vec![1i64; np.dim];
    let tight = np.tight_facets(&one)?;
    let mut generators = Vec::new();
    for g in &np.generators {
        let mut on = true;
        for &i in &tight {
            if np.facets[i].slack(g.coords())? != 0 {
                on = false;
                break;
            }
        }
        if on {
            generators.push(g.clone());
        }
    }
    let dim = affine_dimension(&generators);
    let normal_ray = if dim + 1 == np.dim && tight.len() == 1 {
        Some(np.facets[tight[0]].normal.clone())
    } else {
        None
    };
    Ok(OneFace {
        generators,
        dim,
        normal_ray,
    })
}

pub(crate) fn affine_dimension(points: &[ExponentVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let rows: IntMatrix = points[1..]
        .iter()
        .map(|p| p.coords().iter().zip(first.coords()).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    rank(&rows)
}

/// Whether every support exponent lying on a compact face has at most one
/// coordinate greater than one.
pub fn quasi_reduced(f: &PolynomialSupport) -> Result<bool> {
    let np = build_newton(f)?;
    for g in &np.generators {
        if g.excess_count() > 1 && np.covers_all_coordinates(&np.tight_facets(g.coords())?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stricter variant over every lattice point of every compact face; returns
/// the first offending point in odometer order.
pub fn quasi_reduced_strict(f: &PolynomialSupport) -> Result<Option<Vec<i64>>> {
    let np = build_newton(f)?;
    let d = np.dim;
    let bounds: Vec<i64> = (0..d)
        .map(|j| np.generators.iter().map(|g| g.coords()[j]).max().unwrap_or(0))
        .collect();
    let cells = bounds.iter().try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1));
    charge(cells.ok_or(Error::Overflow)?)?;
    let mut x = vec![0i64; d];
    loop {
        if x.iter().filter(|&&c| c > 1).count() > 1
            && np.contains(&x)?
            && np.covers_all_coordinates(&np.tight_facets(&x)?)
        {
            return Ok(Some(x));
        }
        let mut j = 0;
        loop {
            if j == d {
                return Ok(None);
            }
            if x[j] < bounds[j] {
                x[j] += 1;
                break;
            }
            x[j] = 0;
            j += 1;
        }
    }
}

/// Returns `a` when `f` is `x0*...*xn + sum x_i^{a_i}` with `sum 1/a_i < 1`.
pub fn is_type_t(f: &PolynomialSupport) -> Option<ExponentVector> {
    let d = f.dim();
    if f.len() != d + 1 || !f.contains(&ExponentVector::ones(d)) {
        return None;
    }
    let mut a = vec![0i64; d];
    for e in f.support() {
        if e.coords().iter().all(|&c| c == 1) {
            continue;
        }
        let nz: Vec<usize> = (0..d).filter(|&j| e.coords()[j] != 0).collect();
        if nz.len() != 1 || a[nz[0]] != 0 {
            return None;
        }
        a[nz[0]] = e.coords()[nz[0]];
    }
    if a.contains(&0) {
        return None;
    }
    let sum: BigRational = a
        .iter()
        .map(|&x| BigRational::new(BigInt::one(), BigInt::from(x)))
        .sum();
    if sum < BigRational::one() {
        ExponentVector::new(a).ok()
    } else {
        None
    }
}
