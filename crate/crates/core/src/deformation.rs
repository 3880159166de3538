//! Support-level conditions for simultaneous canonical modifications of
//! one-parameter families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{check_dim, pairing, weight_of_poly, ExponentVector, PolynomialSupport, WeightVector};
use crate::newton::{classify, NondegeneracyFlag};
use crate::weight::{CandidateStatus, Certificate, Regions};

/// Finitely many support snapshots of a family, with labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFamily {
    members: Vec<(String, PolynomialSupport)>,
}

impl SupportFamily {
    pub fn new(members: Vec<(String, PolynomialSupport)>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidInput("family has no members".into()))?;
        let d = first.1.dim();
        for (_, m) in &members {
            check_dim(d, m.dim())?;
        }
        Ok(Self { members })
    }

    /// The segment family `(1-t) f + t g`: both ends plus the generic member.
    pub fn segment(f: &PolynomialSupport, g: &PolynomialSupport) -> Result<Self> {
        Self::new(vec![
            ("f".into(), f.clone()),
            ("g".into(), g.clone()),
            ("generic".into(), f.union(g)?),
        ])
    }

    pub fn members(&self) -> &[(String, PolynomialSupport)] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members[0].1.dim()
    }
}

fn check_weight(fam: &SupportFamily, p: &WeightVector) -> Result<()> {
    check_dim(fam.dim(), p.dim())?;
    if !p.is_positive() {
        return Err(Error::weight(p.coords(), "all entries must be positive"));
    }
    Ok(())
}

/// Every support vector of every member lies in `1 + p^v`.
pub fn halfspace_condition(fam: &SupportFamily, p: &WeightVector) -> Result<bool> {
    check_weight(fam, p)?;
    let p1 = p.total()?;
    for (_, m) in fam.members() {
        for a in m.support() {
            if pairing(p, a)? < p1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `p(F) = p(1)` for every member `F`.
pub fn weight_constancy(fam: &SupportFamily, p: &WeightVector) -> Result<bool> {
    check_weight(fam, p)?;
    let p1 = p.total()?;
    for (_, m) in fam.members() {
        if weight_of_poly(p, m)? != p1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimultaneousReport {
    pub weight: WeightVector,
    /// Status of `p` as a canonical weight for `f`.
    pub f_status: CandidateStatus,
    pub f_certificate: Option<Certificate>,
    pub canonical_for_f: bool,
    pub g_weighted_homogeneous: bool,
    pub halfspace: bool,
    pub weight_constancy: bool,
    pub positive: bool,
    pub conditional: bool,
    pub caveats: Vec<String>,
    pub cited_conclusions: Vec<String>,
}

pub const CAVEAT_SEGMENT: &str =
    "generic member support is supp(f) ∪ supp(g); finitely many special parameters where coefficients cancel are not enumerated";
pub const CAVEAT_MEMBERS_NONDEGENERATE: &str = "non-degeneracy of the family members is assumed, not verified";
pub const CITED_CONCLUSION: &str =
    "the family admits a simultaneous canonical modification; constancy of the plurigenera follows by the cited argument (not recomputed)";

pub fn simultaneous_report(
    f: &PolynomialSupport,
    g: &PolynomialSupport,
    p: &WeightVector,
    assume_nondegenerate: bool,
) -> Result<SimultaneousReport> {
    check_dim(f.dim(), g.dim())?;
    check_dim(f.dim(), p.dim())?;
    let fam = SupportFamily::segment(f, g)?;
    let class = classify(f, assume_nondegenerate)?;
    let certified = class.nondegeneracy != NondegeneracyFlag::Unchecked;

    let (f_status, f_certificate) = if !p.is_positive() {
        (CandidateStatus::NotCanonicalWeight("entries must be positive".into()), None)
    } else if !p.is_primitive() {
        (CandidateStatus::NotCanonicalWeight("weight is not primitive".into()), None)
    } else {
        let fm = Regions::new(f)?.check(p)?;
        let status = match (&fm.certificate, fm.f_minimal) {
            (Certificate::OutsideEssentialCone, _) => {
                CandidateStatus::NotCanonicalWeight("outside the essential cone".into())
            }
            (_, true) if certified => CandidateStatus::CanonicalWeight,
            (_, true) => CandidateStatus::FMinimal,
            (_, false) => CandidateStatus::NotFMinimal,
        };
        (status, Some(fm.certificate))
    };
    let canonical_for_f = matches!(f_status, CandidateStatus::CanonicalWeight | CandidateStatus::FMinimal);

    let p1 = p.total()?;
    let g_weighted_homogeneous = g
        .support()
        .iter()
        .map(|a: &ExponentVector| pairing(p, a))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|v| v == p1);
    let (halfspace, weight_constancy) = if p.is_positive() {
        (halfspace_condition(&fam, p)?, self::weight_constancy(&fam, p)?)
    } else {
        (false, false)
    };
    let positive = canonical_for_f && g_weighted_homogeneous && halfspace && weight_constancy;
    let mut caveats = vec![CAVEAT_SEGMENT.to_string()];
    if !assume_nondegenerate {
        caveats.push(CAVEAT_MEMBERS_NONDEGENERATE.to_string());
    }
    caveats.extend(class.caveats.iter().cloned());
    let cited_conclusions = if positive {
        vec![CITED_CONCLUSION.to_string()]
    } else {
        Vec::new()
    };
    Ok(SimultaneousReport {
        weight: p.clone(),
        f_status,
        f_certificate,
        canonical_for_f,
        g_weighted_homogeneous,
        halfspace,
        weight_constancy,
        positive,
        conditional: !certified,
        caveats,
        cited_conclusions,
    })
}
