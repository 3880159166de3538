//! Essential cones, absolute and f-minimality, weighted blow-up charts and
//! discrepancy coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::charge;
use crate::cone::{
    componentwise_min, cone_from_inequalities, double_description, lattice_points_under, simplicial_frame,
    RationalCone, SimplicialFrame,
};
use crate::error::{Error, Result};
use crate::lattice::{check_dim, checked_sum, dot, make_primitive, weight_of_poly, ExponentVector, PolynomialSupport, WeightVector};
use crate::linalg::to_big;
use crate::newton::{classify, ClassLabel, SingularityClass};
use crate::parse::serialize_polynomial;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

/// `C_1(f) = { q >= 0 : q(f) >= q(1) }`.
pub fn essential_cone(f: &PolynomialSupport) -> Result<RationalCone> {
    let d = f.dim();
    let mut forms: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            e
        })
        .collect();
    for a in f.support() {
        forms.push(a.coords().iter().map(|x| x - 1).collect());
    }
    cone_from_inequalities(d, &forms)
}

/// The componentwise-least primitive lattice point of `c`, if it exists.
pub fn absolutely_minimal(c: &RationalCone) -> Result<Option<WeightVector>> {
    if !c.is_pointed() {
        return Err(Error::NotPointed(c.lineality().len()));
    }
    if c.is_zero() {
        return Err(Error::Precondition("absolutely_minimal: the cone is {0}".into()));
    }
    if c.rays().iter().any(|r| !r.is_nonnegative()) {
        return Err(Error::Precondition(
            "absolutely_minimal: the cone must lie in the nonnegative orthant".into(),
        ));
    }
    // m_j is the least j-th coordinate over nonzero lattice points. It is 0
    // when some ray has a zero there; otherwise nonzero means q_j >= 1 and
    // the least level is at most the smallest ray entry.
    let d = c.dim();
    let mut m = vec![0i64; d];
    for (j, mj) in m.iter_mut().enumerate() {
        let rho = c.rays().iter().map(|r| r.coords()[j]).min().unwrap_or(0);
        if rho == 0 {
            continue;
        }
        let mut e = vec![0i64; d];
        e[j] = 1;
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        let mut level = rho;
        for t in 1..rho {
            let mut sys: Vec<(Vec<i64>, i64)> = c.hrep().iter().map(|f| (f.clone(), 0)).collect();
            sys.push((e.clone(), t));
            sys.push((neg.clone(), -t));
            if integer_point(d, &sys)?.is_some() {
                level = t;
                break;
            }
        }
        *mj = level;
    }
    let m = WeightVector::new(m)?;
    if !m.is_zero() && c.contains(&m)? {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}

fn check_center(p: &WeightVector) -> Result<()> {
    if !p.is_positive() {
        return Err(Error::weight(p.coords(), "all entries must be positive"));
    }
    if !p.is_primitive() {
        return Err(Error::weight(p.coords(), "weight must be primitive"));
    }
    Ok(())
}

/// The star subdivision of the orthant at `p`: chart `i` replaces `e_i` by `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSubdivision {
    center: WeightVector,
    frames: Vec<SimplicialFrame>,
}

impl StarSubdivision {
    pub fn center(&self) -> &WeightVector {
        &self.center
    }

    pub fn frames(&self) -> &[SimplicialFrame] {
        &self.frames
    }
}

pub fn star_subdivision(p: &WeightVector) -> Result<StarSubdivision> {
    check_center(p)?;
    let d = p.dim();
    let frames = (0..d)
        .map(|i| {
            let gens: Vec<WeightVector> = (0..d)
                .map(|j| if j == i { p.clone() } else { WeightVector::unit(d, j) })
                .collect();
            simplicial_frame(&gens)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StarSubdivision {
        center: p.clone(),
        frames,
    })
}

/// Index minimizing `q_j / p_j` (lowest on ties) and whether it is tied.
fn min_ratio_chart(p: &[i64], q: &[i64]) -> (usize, bool) {
    let mut best = 0;
    let mut tie = false;
    for j in 1..p.len() {
        let lhs = q[j] as i128 * p[best] as i128;
        let rhs = q[best] as i128 * p[j] as i128;
        if lhs < rhs {
            best = j;
            tie = false;
        } else if lhs == rhs {
            tie = true;
        }
    }
    (best, tie)
}

fn interior_chart_raw(p: &[i64], q: &[i64]) -> Option<usize> {
    if q.iter().any(|&x| x <= 0) {
        return None;
    }
    let (i, tie) = min_ratio_chart(p, q);
    (!tie).then_some(i)
}

/// Chart of `Delta(p)` whose interior contains `q`, or `None` on a wall.
pub fn interior_chart(sub: &StarSubdivision, q: &WeightVector) -> Result<Option<usize>> {
    check_dim(sub.center.dim(), q.dim())?;
    if !q.is_nonnegative() || q.is_zero() {
        return Err(Error::weight(q.coords(), "expected a nonzero nonnegative weight"));
    }
    Ok(interior_chart_raw(sub.center.coords(), q.coords()))
}

/// `q(f) - q(1) + 1`.
fn log_discrepancy_denominator(q: &WeightVector, f: &PolynomialSupport) -> Result<i64> {
    let v = sub(weight_of_poly(q, f)?, q.total()?)?;
    v.checked_add(1).ok_or(Error::Overflow)
}

/// `p <=_f q`: `p_i / (p(f)-p(1)+1) <= q_i / (q(f)-q(1)+1)` for all `i`.
pub fn leq_f(p: &WeightVector, q: &WeightVector, f: &PolynomialSupport) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    let dp = log_discrepancy_denominator(p, f)?;
    let dq = log_discrepancy_denominator(q, f)?;
    if dp < 1 || dq < 1 || p.is_zero() || q.is_zero() {
        return Err(Error::Precondition("leq_f: both weights must lie in C_1(f) minus 0".into()));
    }
    Ok(p
        .coords()
        .iter()
        .zip(q.coords())
        .all(|(&pi, &qi)| pi as i128 * dq as i128 <= qi as i128 * dp as i128))
}

/// `p <_f q` in the weaker sense `p_i / p(f) <= q_i / q(f)` for all `i`.
pub fn prec_f(p: &WeightVector, q: &WeightVector, f: &PolynomialSupport) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    let pf = weight_of_poly(p, f)?;
    let qf = weight_of_poly(q, f)?;
    if pf <= 0 || qf <= 0 {
        return Err(Error::Precondition("prec_f: weights must be positive on f".into()));
    }
    Ok(p
        .coords()
        .iter()
        .zip(q.coords())
        .all(|(&pi, &qi)| pi as i128 * qf as i128 <= qi as i128 * pf as i128))
}

/// A `<=_f` violator that passes the fallback clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violator {
    pub q: WeightVector,
    pub coordinate: usize,
    pub chart: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every region was checked. Finite violators are listed with the chart
    /// witnessing the fallback; `conic_checks` counts infinite failure
    /// regions shown free of fallback failures.
    Verified {
        regions: usize,
        violators: Vec<Violator>,
        conic_checks: usize,
    },
    /// A primitive `q` in `C_1(f)` against which `p` fails. `on_wall` marks a
    /// point that satisfies `<_f` but lies on a chart wall.
    Counterexample {
        q: WeightVector,
        coordinate: usize,
        on_wall: bool,
    },
    OutsideEssentialCone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMinimality {
    pub weight: WeightVector,
    pub f_minimal: bool,
    pub certificate: Certificate,
}

/// Decide f-minimality of `p` with a certificate.
pub fn is_f_minimal(p: &WeightVector, f: &PolynomialSupport) -> Result<FMinimality> {
    Regions::new(f)?.check(p)
}

/// The essential cone split into the linearity regions of `q -> q(f)`.
pub(crate) struct Regions {
    f: PolynomialSupport,
    c1: RationalCone,
    regions: Vec<(ExponentVector, RationalCone)>,
}

enum Fallback {
    Holds(usize),
    Fails { on_wall: bool },
}

impl Regions {
    pub(crate) fn new(f: &PolynomialSupport) -> Result<Self> {
        let c1 = essential_cone(f)?;
        let mins = f.minimal_exponents();
        let mut regions = Vec::new();
        if !c1.is_zero() {
            for a in &mins {
                let mut forms = c1.hrep().to_vec();
                for b in &mins {
                    if b != a {
                        forms.push(b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect());
                    }
                }
                let k = cone_from_inequalities(f.dim(), &forms)?;
                if !k.is_zero() {
                    regions.push((a.clone(), k));
                }
            }
        }
        Ok(Self {
            f: f.clone(),
            c1,
            regions,
        })
    }

    pub(crate) fn c1(&self) -> &RationalCone {
        &self.c1
    }

    fn fallback(&self, p: &WeightVector, q: &WeightVector) -> Result<Fallback> {
        let prec = prec_f(p, q, &self.f)?;
        match interior_chart_raw(p.coords(), q.coords()) {
            Some(i) if prec => Ok(Fallback::Holds(i)),
            None => Ok(Fallback::Fails { on_wall: prec }),
            Some(_) => Ok(Fallback::Fails { on_wall: false }),
        }
    }

    pub(crate) fn check(&self, p: &WeightVector) -> Result<FMinimality> {
        let d = self.f.dim();
        check_dim(d, p.dim())?;
        check_center(p)?;
        if !self.c1.contains(p)? {
            return Ok(FMinimality {
                weight: p.clone(),
                f_minimal: false,
                certificate: Certificate::OutsideEssentialCone,
            });
        }
        let pc = p.coords();
        let pf = weight_of_poly(p, &self.f)?;
        let big_p = sub(pf, p.total()?)?.checked_add(1).ok_or(Error::Overflow)?;
        let mut violators: BTreeMap<WeightVector, Violator> = BTreeMap::new();
        let mut conic_checks = 0;
        let counterexample = |q: WeightVector, coordinate: usize, on_wall: bool| FMinimality {
            weight: p.clone(),
            f_minimal: false,
            certificate: Certificate::Counterexample { q, coordinate, on_wall },
        };

        for (a, k) in &self.regions {
            let am1: Vec<i64> = a.coords().iter().map(|x| x - 1).collect();
            for i in 0..d {
                // L(q) = P q_i - p_i q.(a - 1); <=_f fails at i iff L(q) <= p_i - 1
                let form = (0..d)
                    .map(|j| sub(if j == i { big_p } else { 0 }, mul(pc[i], am1[j])?))
                    .collect::<Result<Vec<_>>>()?;
                let mut positive = true;
                for r in k.rays() {
                    if dot(&form, r.coords())? <= 0 {
                        positive = false;
                        break;
                    }
                }
                if positive {
                    if pc[i] <= 1 {
                        continue;
                    }
                    for q in lattice_points_under(k, &form, pc[i] - 1)? {
                        if !q.is_primitive() {
                            continue;
                        }
                        match self.fallback(p, &q)? {
                            Fallback::Holds(chart) => {
                                violators.entry(q.clone()).or_insert(Violator {
                                    q,
                                    coordinate: i,
                                    chart,
                                });
                            }
                            Fallback::Fails { on_wall } => return Ok(counterexample(q, i, on_wall)),
                        }
                    }
                } else {
                    let mut base: Vec<(Vec<i64>, i64)> = k.hrep().iter().map(|h| (h.clone(), 0)).collect();
                    base.push((form.iter().map(|x| -x).collect(), 1 - pc[i]));
                    base.push((vec![1; d], 1));
                    for piece in self.fallback_failure_pieces(p, pf, a) {
                        let mut sys = base.clone();
                        sys.extend(piece);
                        if let Some(x) = integer_point(d, &sys)? {
                            let q = make_primitive(&WeightVector::new(x)?)?;
                            let on_wall = prec_f(p, &q, &self.f)?;
                            return Ok(counterexample(q, i, on_wall));
                        }
                    }
                    conic_checks += 1;
                }
            }
        }
        Ok(FMinimality {
            weight: p.clone(),
            f_minimal: true,
            certificate: Certificate::Verified {
                regions: self.regions.len(),
                violators: violators.into_values().collect(),
                conic_checks,
            },
        })
    }

    /// Polyhedral pieces covering the failure set of `[<_f and interior]`
    /// inside the region where `q(f) = q(a)`, as systems `c.q >= rhs`.
    fn fallback_failure_pieces(&self, p: &WeightVector, pf: i64, a: &ExponentVector) -> Vec<Vec<(Vec<i64>, i64)>> {
        let d = p.dim();
        let pc = p.coords();
        let mut pieces = Vec::new();
        // <_f fails at i': p_i' q(a) - p(f) q_i' >= 1
        for ip in 0..d {
            let c: Vec<i64> = (0..d)
                .map(|j| pc[ip] * a.coords()[j] - if j == ip { pf } else { 0 })
                .collect();
            pieces.push(vec![(c, 1)]);
        }
        // zero walls
        for j in 0..d {
            let mut c = vec![0; d];
            c[j] = -1;
            pieces.push(vec![(c, 0)]);
        }
        // tie walls: q_l/p_l = q_m/p_m both minimal
        for l in 0..d {
            for m in (l + 1)..d {
                let mut eq = vec![0; d];
                eq[l] = pc[m];
                eq[m] = -pc[l];
                let mut sys = vec![(eq.clone(), 0), (eq.iter().map(|x| -x).collect(), 0)];
                for kk in 0..d {
                    if kk == l {
                        continue;
                    }
                    let mut c = vec![0; d];
                    c[kk] += pc[l];
                    c[l] -= pc[kk];
                    sys.push((c, 0));
                }
                pieces.push(sys);
            }
        }
        pieces
    }
}

/// Some integer point of `{ q : c.q >= rhs for all rows }`, assumed to lie in
/// the nonnegative orthant region cut out by the rows.
pub(crate) fn integer_point(d: usize, sys: &[(Vec<i64>, i64)]) -> Result<Option<Vec<i64>>> {
    let mut forms: Vec<Vec<BigInt>> = sys
        .iter()
        .map(|(c, r)| {
            let mut v = to_big(c);
            v.push(BigInt::from(-r));
            v
        })
        .collect();
    let mut t = vec![BigInt::zero(); d + 1];
    t[d] = BigInt::one();
    forms.push(t);
    let dd = double_description(&forms, d + 1)?;
    if !dd.lineality.is_empty() {
        return Err(Error::Invariant("integer_point: unbounded in a line".into()));
    }
    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    let mut rays: Vec<&Vec<BigInt>> = Vec::new();
    for r in &dd.rays {
        if r[d].is_positive() {
            vertices.push(r[..d].iter().map(|x| BigRational::new(x.clone(), r[d].clone())).collect());
        } else {
            rays.push(r);
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    // integer points, if any, occur in conv(vertices) + sum [0,1) rays
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for c in 0..d {
        let vmin = vertices.iter().map(|v| v[c].floor().to_integer()).min().expect("vertex");
        let vmax = vertices.iter().map(|v| v[c].ceil().to_integer()).max().expect("vertex");
        let down: BigInt = rays.iter().map(|r| (-&r[c]).max(BigInt::zero())).sum();
        let up: BigInt = rays.iter().map(|r| r[c].clone().max(BigInt::zero())).sum();
        let l: i64 = (vmin - down).try_into().map_err(|_| Error::Overflow)?;
        let h: i64 = (vmax + up).try_into().map_err(|_| Error::Overflow)?;
        lo.push(l);
        hi.push(h);
    }
    let cells = lo
        .iter()
        .zip(&hi)
        .try_fold(1u128, |acc, (l, h)| acc.checked_mul((h - l + 1) as u128));
    charge(cells.ok_or(Error::Overflow)?)?;
    let mut x = lo.clone();
    loop {
        let mut ok = true;
        for (c, r) in sys {
            if dot(c, &x)? < *r {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(x));
        }
        let mut j = 0;
        loop {
            if j == d {
                return Ok(None);
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j];
            j += 1;
        }
    }
}

/// Status of a weight as a candidate for the canonical modification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason")]
pub enum CandidateStatus {
    /// f-minimal, with non-degeneracy assumed or checked.
    CanonicalWeight,
    /// f-minimal, but non-degeneracy is unchecked so the conclusion is
    /// conditional.
    FMinimal,
    NotFMinimal,
    NotCanonicalWeight(String),
    /// The check exceeded the work cap.
    Undetermined(String),
}

impl fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateStatus::CanonicalWeight => f.write_str("CanonicalWeight"),
            CandidateStatus::FMinimal => f.write_str("FMinimal"),
            CandidateStatus::NotFMinimal => f.write_str("NotFMinimal"),
            CandidateStatus::NotCanonicalWeight(r) => write!(f, "NotCanonicalWeight ({r})"),
            CandidateStatus::Undetermined(r) => write!(f, "Undetermined ({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub weight: WeightVector,
    pub status: CandidateStatus,
    pub certificate: Option<Certificate>,
    pub user_supplied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingCoefficient {
    pub weight: WeightVector,
    pub value: BigRational,
    /// True when the value is the anticanonical volume of the blow-up.
    pub minus_k_cubed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchInfo {
    pub cap: i64,
    pub pool_size: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conclusion {
    /// Already canonical: no modification needed.
    AlreadyCanonical,
    Weights { weights: Vec<WeightVector>, conditional: bool },
    /// Log canonical without an absolutely minimal vector.
    NoCanonicalWeight { conditional: bool },
    /// No f-minimal weight found in the searched pool.
    NoneFound { conditional: bool },
    /// The combinatorial criteria do not apply (non-isolated shape).
    Inapplicable,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cond = |c: &bool| if *c { " (conditional on non-degeneracy)" } else { "" };
        match self {
            Conclusion::AlreadyCanonical => f.write_str("already canonical; no modification needed"),
            Conclusion::Weights { weights, conditional } => {
                write!(f, "canonical weight {}{}", weights.iter().join(", "), cond(conditional))
            }
            Conclusion::NoCanonicalWeight { conditional } => {
                write!(f, "no canonical weight exists in these coordinates{}", cond(conditional))
            }
            Conclusion::NoneFound { conditional } => {
                write!(f, "no f-minimal weight found in the searched pool{}", cond(conditional))
            }
            Conclusion::Inapplicable => f.write_str("criteria inapplicable: the singularity cannot be isolated"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVerdict {
    pub f_hash: String,
    pub dim: usize,
    pub class: SingularityClass,
    pub essential_hrep: Vec<Vec<i64>>,
    pub essential_rays: Vec<WeightVector>,
    /// Absent when it exceeded the work cap.
    pub hilbert: Option<Vec<WeightVector>>,
    pub hilbert_min: Option<WeightVector>,
    pub abs_min: Option<WeightVector>,
    pub candidates: Vec<CandidateReport>,
    pub search: Option<SearchInfo>,
    pub leading_coeff: Option<LeadingCoefficient>,
    pub conclusion: Conclusion,
    pub caveats: Vec<String>,
}

pub const DEFAULT_CAP: i64 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictOptions {
    pub assume_nondegenerate: bool,
    /// User-supplied weights to test in addition to the automatic search.
    pub candidates: Vec<WeightVector>,
    /// Bound on `sum q_i` for the brute-force part of the candidate pool.
    pub cap: i64,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        Self {
            assume_nondegenerate: false,
            candidates: Vec::new(),
            cap: DEFAULT_CAP,
        }
    }
}

pub const CAVEAT_NOT_ISOLATED: &str =
    "an extreme ray of the essential cone has a zero coordinate: the singularity cannot be isolated";
pub const CAVEAT_POOL: &str =
    "f-minimal search covers Hilbert bases of the essential cone and its linearity regions plus all points up to the cap; completeness beyond that pool is not proven";
pub const CAVEAT_HILBERT_SKIPPED: &str =
    "a Hilbert basis exceeded the work cap and was left out of the report and the candidate pool";
pub const CAVEAT_WALL: &str =
    "a verdict depends on a chart-wall point satisfying the weak order (wall points are treated as failing the fallback)";

/// `Ok(None)` when the computation hit the work cap.
fn within_cap<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::WorkLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Weights with positive entries and `sum <= cap`, in lexicographic order.
fn positive_points_up_to(d: usize, cap: i64) -> Result<Vec<WeightVector>> {
    let mut out = Vec::new();
    if cap < d as i64 {
        return Ok(out);
    }
    let mut x = vec![1i64; d];
    loop {
        charge(out.len() as u128)?;
        out.push(WeightVector::new(x.clone())?);
        // next vector in lexicographic order with sum <= cap
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            let s: i64 = x.iter().sum();
            if s < cap {
                x[j] += 1;
                for v in &mut x[j + 1..] {
                    *v = 1;
                }
                break;
            }
            x[j] = 1;
        }
    }
}

/// Sha-256 of the canonical text form, prefixed by the dimension.
pub fn f_hash(f: &PolynomialSupport) -> String {
    let text = format!("{}|{}", f.dim(), serialize_polynomial(f));
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn status_of(fm: &FMinimality, certified: bool) -> CandidateStatus {
    match (&fm.certificate, fm.f_minimal) {
        (Certificate::OutsideEssentialCone, _) => {
            CandidateStatus::NotCanonicalWeight("outside the essential cone".into())
        }
        (_, true) if certified => CandidateStatus::CanonicalWeight,
        (_, true) => CandidateStatus::FMinimal,
        (_, false) => CandidateStatus::NotFMinimal,
    }
}

fn evaluate(regions: &Regions, q: &WeightVector, certified: bool, user: bool) -> Result<CandidateReport> {
    let invalid = |reason: &str| CandidateReport {
        weight: q.clone(),
        status: CandidateStatus::NotCanonicalWeight(reason.into()),
        certificate: None,
        user_supplied: user,
    };
    if !q.is_positive() {
        return Ok(invalid("entries must be positive"));
    }
    if !q.is_primitive() {
        return Ok(invalid("weight is not primitive"));
    }
    let fm = match regions.check(q) {
        Ok(fm) => fm,
        Err(e @ Error::WorkLimit { .. }) => {
            return Ok(CandidateReport {
                weight: q.clone(),
                status: CandidateStatus::Undetermined(e.to_string()),
                certificate: None,
                user_supplied: user,
            })
        }
        Err(e) => return Err(e),
    };
    Ok(CandidateReport {
        weight: q.clone(),
        status: status_of(&fm, certified),
        certificate: Some(fm.certificate),
        user_supplied: user,
    })
}

pub fn canonical_weight_verdict(f: &PolynomialSupport, opts: &VerdictOptions) -> Result<WeightVerdict> {
    let d = f.dim();
    for c in &opts.candidates {
        check_dim(d, c.dim())?;
    }
    if opts.cap < 1 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let class = classify(f, opts.assume_nondegenerate)?;
    let certified = class.nondegeneracy != crate::newton::NondegeneracyFlag::Unchecked;
    let conditional = !certified;
    let regions = Regions::new(f)?;
    let c1 = regions.c1();
    let mut caveats = class.caveats.clone();
    let isolated_shape = c1.rays().iter().all(|r| r.is_positive());
    if !isolated_shape {
        caveats.push(CAVEAT_NOT_ISOLATED.to_string());
    }
    let hilbert = within_cap(c1.hilbert_basis())?;
    if hilbert.is_none() {
        caveats.push(CAVEAT_HILBERT_SKIPPED.to_string());
    }
    let hilbert_min = match &hilbert {
        Some(h) if !h.is_empty() => Some(componentwise_min(h)?),
        _ => None,
    };
    let abs_min = if c1.is_zero() { None } else { absolutely_minimal(c1)? };

    let mut pool: BTreeSet<WeightVector> = BTreeSet::new();
    let mut search = None;
    let conclusion;
    match class.label {
        ClassLabel::Canonical => conclusion = Conclusion::AlreadyCanonical,
        ClassLabel::LogCanonicalNonCanonical => {
            if let Some(m) = &abs_min {
                if m.is_positive() {
                    pool.insert(m.clone());
                    conclusion = Conclusion::Weights {
                        weights: vec![m.clone()],
                        conditional,
                    };
                } else {
                    conclusion = Conclusion::Inapplicable;
                }
            } else if isolated_shape {
                conclusion = Conclusion::NoCanonicalWeight { conditional };
            } else {
                conclusion = Conclusion::Inapplicable;
            }
        }
        ClassLabel::NotLogCanonical => {
            pool.extend(hilbert.iter().flatten().cloned());
            let mut skipped = false;
            for (_, k) in &regions.regions {
                match within_cap(k.hilbert_basis())? {
                    Some(h) => pool.extend(h),
                    None => skipped = true,
                }
            }
            if skipped && hilbert.is_some() {
                caveats.push(CAVEAT_HILBERT_SKIPPED.to_string());
            }
            for q in positive_points_up_to(d, opts.cap)? {
                if q.is_primitive() && c1.contains(&q)? {
                    pool.insert(q);
                }
            }
            pool.retain(|q| q.is_positive());
            search = Some(SearchInfo {
                cap: opts.cap,
                pool_size: pool.len(),
                exhaustive: false,
            });
            caveats.push(CAVEAT_POOL.to_string());
            conclusion = Conclusion::Inapplicable; // replaced below
        }
    }

    let pool_vec: Vec<WeightVector> = pool.into_iter().collect();
    let mut candidates: Vec<CandidateReport> = pool_vec
        .par_iter()
        .map(|q| evaluate(&regions, q, certified, false))
        .collect::<Result<Vec<_>>>()?;
    if class.label == ClassLabel::LogCanonicalNonCanonical {
        if let (Some(m), Some(rep)) = (&abs_min, candidates.first()) {
            let passed = matches!(
                rep.status,
                CandidateStatus::CanonicalWeight | CandidateStatus::FMinimal | CandidateStatus::Undetermined(_)
            );
            if m.is_positive() && !passed {
                return Err(Error::Invariant(format!(
                    "absolutely minimal vector {m} failed the f-minimality check"
                )));
            }
        }
    }
    let user: Vec<CandidateReport> = opts
        .candidates
        .par_iter()
        .map(|q| evaluate(&regions, q, certified, true))
        .collect::<Result<Vec<_>>>()?;
    candidates.extend(user);

    let conclusion = if class.label == ClassLabel::NotLogCanonical {
        let found: Vec<WeightVector> = candidates
            .iter()
            .filter(|c| !c.user_supplied && matches!(c.status, CandidateStatus::CanonicalWeight | CandidateStatus::FMinimal))
            .map(|c| c.weight.clone())
            .collect();
        if found.is_empty() {
            Conclusion::NoneFound { conditional }
        } else {
            Conclusion::Weights {
                weights: found,
                conditional,
            }
        }
    } else {
        conclusion
    };
    if candidates.iter().any(|c| {
        matches!(
            c.certificate,
            Some(Certificate::Counterexample { on_wall: true, .. })
        )
    }) {
        caveats.push(CAVEAT_WALL.to_string());
    }

    let chosen = match &conclusion {
        Conclusion::Weights { weights, .. } => weights.first().cloned(),
        _ => None,
    };
    let leading_coeff = match chosen {
        Some(p) => Some(leading_report(&p, f)?),
        None => None,
    };
    Ok(WeightVerdict {
        f_hash: f_hash(f),
        dim: d,
        class,
        essential_hrep: c1.hrep().to_vec(),
        essential_rays: c1.rays().to_vec(),
        hilbert,
        hilbert_min,
        abs_min,
        candidates,
        search,
        leading_coeff,
        conclusion,
        caveats,
    })
}

pub(crate) fn leading_report(p: &WeightVector, f: &PolynomialSupport) -> Result<LeadingCoefficient> {
    let value = leading_coefficient(p)?;
    let minus_k_cubed = p.dim() == 4 && weight_of_poly(p, f)? == p.total()?;
    Ok(LeadingCoefficient {
        weight: p.clone(),
        value,
        minus_k_cubed,
    })
}

/// Coefficient data of one exceptional divisor of the blow-up at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyRecord {
    pub q: WeightVector,
    pub chart: usize,
    /// `q` lies on a wall between charts; `chart` is the lowest candidate.
    pub chart_tie: bool,
    pub m_q: BigRational,
    /// `D_q` misses the proper transform.
    pub excluded: bool,
    /// `q(1) - 1`, the coefficient over the smooth ambient space.
    pub ambient_coeff: i64,
    /// `q(1) - 1 - q(f)`, the adjunction coefficient.
    pub adjunction_coeff: i64,
}

pub fn discrepancies(
    p: &WeightVector,
    f: &PolynomialSupport,
    candidates: &[WeightVector],
) -> Result<Vec<DiscrepancyRecord>> {
    check_dim(f.dim(), p.dim())?;
    check_center(p)?;
    let pf = weight_of_poly(p, f)?;
    let big_p = sub(pf, p.total()?)?.checked_add(1).ok_or(Error::Overflow)?;
    candidates
        .iter()
        .map(|q| {
            check_dim(f.dim(), q.dim())?;
            if !q.is_nonnegative() || q.is_zero() {
                return Err(Error::weight(q.coords(), "candidate must be a nonzero nonnegative weight"));
            }
            let (i, tie) = min_ratio_chart(p.coords(), q.coords());
            let (qi, pi) = (q.coords()[i], p.coords()[i]);
            let qf = weight_of_poly(q, f)?;
            let q1 = q.total()?;
            let dq = sub(qf, q1)?.checked_add(1).ok_or(Error::Overflow)?;
            let m_q = rat(mul(qi, big_p)?, pi) - BigRational::from_integer(dq.into());
            let residual = sub(mul(qf, pi)?, mul(qi, pf)?)?;
            let excluded = residual == 0 && interior_chart_raw(p.coords(), q.coords()).is_some();
            Ok(DiscrepancyRecord {
                q: q.clone(),
                chart: i,
                chart_tie: tie,
                m_q,
                excluded,
                ambient_coeff: q1 - 1,
                adjunction_coeff: sub(q1 - 1, qf)?,
            })
        })
        .collect()
}

/// `sum p_i / prod p_i`.
pub fn leading_coefficient(p: &WeightVector) -> Result<BigRational> {
    if !p.is_positive() {
        return Err(Error::weight(p.coords(), "all entries must be positive"));
    }
    let s = checked_sum(p.coords().iter().map(|&x| x as i128))?;
    let prod: BigInt = p.coords().iter().map(|&x| BigInt::from(x)).product();
    Ok(BigRational::new(BigInt::from(s), prod))
}

/// What the computed coefficients say about the blow-up, over the
/// candidates examined only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowupSituation {
    /// Every non-excluded coefficient is `>= 0`.
    Canonical,
    /// Some coefficient is negative, all are `> -1`.
    LogTerminalNotCanonical,
    /// The least coefficient is exactly `-1`.
    LogCanonicalNotLogTerminal,
    NotLogCanonical,
}

impl fmt::Display for BlowupSituation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlowupSituation::Canonical => "canonical along the examined divisors",
            BlowupSituation::LogTerminalNotCanonical => "log terminal, not canonical",
            BlowupSituation::LogCanonicalNotLogTerminal => "log canonical, not log terminal",
            BlowupSituation::NotLogCanonical => "not log canonical",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSummary {
    pub leading: LeadingCoefficient,
    pub records: Vec<DiscrepancyRecord>,
    /// Least `m_q` over non-excluded records.
    pub min_m: Option<BigRational>,
    pub situation: BlowupSituation,
}

pub const CAVEAT_BLOWUP_CANDIDATES: &str =
    "discrepancy signs are checked only on the listed divisors (Hilbert basis of the essential cone, the center, and user candidates)";

/// Default divisors to examine for a blow-up at `p`: the center and the
/// Hilbert basis of the essential cone.
pub fn blowup_candidates(p: &WeightVector, f: &PolynomialSupport) -> Result<Vec<WeightVector>> {
    check_dim(f.dim(), p.dim())?;
    let mut set: BTreeSet<WeightVector> = essential_cone(f)?.hilbert_basis()?.into_iter().collect();
    set.insert(p.clone());
    Ok(set.into_iter().collect())
}

pub fn blowup_summary(p: &WeightVector, f: &PolynomialSupport, candidates: &[WeightVector]) -> Result<BlowupSummary> {
    let records = discrepancies(p, f, candidates)?;
    let leading = leading_report(p, f)?;
    let min_m = records.iter().filter(|r| !r.excluded).map(|r| r.m_q.clone()).min();
    let minus_one = -BigRational::one();
    let situation = match &min_m {
        None => BlowupSituation::Canonical,
        Some(m) if !m.is_negative() => BlowupSituation::Canonical,
        Some(m) if *m > minus_one => BlowupSituation::LogTerminalNotCanonical,
        Some(m) if *m == minus_one => BlowupSituation::LogCanonicalNotLogTerminal,
        Some(_) => BlowupSituation::NotLogCanonical,
    };
    Ok(BlowupSummary {
        leading,
        records,
        min_m,
        situation,
    })
}

/// All weights in `[1, cap]^dim` with `sum / prod > threshold`, in
/// lexicographic order.
pub fn weights_above_threshold(dim: usize, threshold: &BigRational, cap: i64) -> Result<Vec<WeightVector>> {
    if dim < 2 {
        return Err(Error::InvalidInput("dimension must be at least 2".into()));
    }
    if cap < 1 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let cells = (cap as u128).checked_pow(dim as u32).ok_or(Error::Overflow)?;
    charge(cells)?;
    let mut out = Vec::new();
    let mut x = vec![1i64; dim];
    loop {
        let w = WeightVector::new(x.clone())?;
        if leading_coefficient(&w)? > *threshold {
            out.push(w);
        }
        let mut j = dim;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if x[j] < cap {
                x[j] += 1;
                break;
            }
            x[j] = 1;
        }
    }
}

/// Number of entries equal to one.
pub fn unit_entries(w: &WeightVector) -> usize {
    w.coords().iter().filter(|&&c| c == 1).count()
}
