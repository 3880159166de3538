//! Rational polyhedral cones: double description, membership, Hilbert bases
//! and bounded lattice enumeration.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charge;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, dot, WeightVector};
use crate::linalg::{
    adjugate, big_dot, clear_denominators, integer_kernel, inverse, primitive_big, rank, rational_kernel,
    solve_in_columns, to_big, to_i64, IntMatrix,
};

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

pub(crate) struct DdOutput {
    pub rays: IntMatrix,
    pub lineality: IntMatrix,
}

/// Double description: extreme rays of the pointed part of `{x : A x >= 0}`
/// together with a basis of its lineality space.
pub(crate) fn double_description(forms: &[Vec<BigInt>], d: usize) -> Result<DdOutput> {
    let lineality = rational_kernel(forms, d);
    if lineality.len() == d {
        return Ok(DdOutput { rays: Vec::new(), lineality });
    }
    let mut rows: IntMatrix = forms.to_vec();
    for l in &lineality {
        rows.push(l.clone());
        rows.push(l.iter().map(|x| -x).collect());
    }
    let nrows = rows.len();

    let mut basis_idx = Vec::with_capacity(d);
    let mut chosen: IntMatrix = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        chosen.push(r.clone());
        if rank(&chosen) == chosen.len() {
            basis_idx.push(i);
            if basis_idx.len() == d {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    if basis_idx.len() != d {
        return Err(Error::Invariant("double description: row space rank deficient".into()));
    }
    let m: Vec<Vec<BigRational>> = chosen
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let inv = inverse(&m).ok_or_else(|| Error::Invariant("double description: singular start".into()))?;

    let mut rays: Vec<(Vec<BigInt>, Bits)> = (0..d)
        .map(|j| {
            let col: Vec<BigRational> = (0..d).map(|i| inv[i][j].clone()).collect();
            let v = clear_denominators(&col);
            let mut z = Bits::new(nrows);
            for &bi in &basis_idx {
                if big_dot(&rows[bi], &v).is_zero() {
                    z.set(bi);
                }
            }
            (v, z)
        })
        .collect();

    for i in (0..nrows).filter(|i| !basis_idx.contains(i)) {
        let vals: Vec<BigInt> = rays.iter().map(|(v, _)| big_dot(&rows[i], v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        if !neg.is_empty() {
            charge((pos.len() as u128) * (neg.len() as u128))?;
            for &p in &pos {
                for &n in &neg {
                    let common = rays[p].1.and(&rays[n].1);
                    if common.count() + 2 < d {
                        continue;
                    }
                    let adjacent = rays
                        .iter()
                        .enumerate()
                        .all(|(k, (_, z))| k == p || k == n || !common.subset_of(z));
                    if !adjacent {
                        continue;
                    }
                    let v: Vec<BigInt> = rays[n]
                        .0
                        .iter()
                        .zip(&rays[p].0)
                        .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                        .collect();
                    let mut z = common;
                    z.set(i);
                    next.push((primitive_big(v), z));
                }
            }
        }
        let mut kept: Vec<(Vec<BigInt>, Bits)> = Vec::with_capacity(rays.len() + next.len());
        for (k, (v, mut z)) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                z.set(i);
            }
            kept.push((v, z));
        }
        kept.extend(next);
        charge(kept.len() as u128)?;
        rays = kept;
    }
    Ok(DdOutput {
        rays: rays.into_iter().map(|(v, _)| v).collect(),
        lineality,
    })
}

/// A rational polyhedral cone `{q : L(q) >= 0 for every form L}`.
#[derive(Debug)]
pub struct RationalCone {
    dim: usize,
    forms: Vec<Vec<i64>>,
    hrep: Vec<Vec<i64>>,
    rays: Vec<WeightVector>,
    lineality: Vec<Vec<i64>>,
    hilbert: OnceLock<std::result::Result<Vec<WeightVector>, Error>>,
}

impl Clone for RationalCone {
    fn clone(&self) -> Self {
        let hilbert = OnceLock::new();
        if let Some(h) = self.hilbert.get() {
            let _ = hilbert.set(h.clone());
        }
        Self {
            dim: self.dim,
            forms: self.forms.clone(),
            hrep: self.hrep.clone(),
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
            hilbert,
        }
    }
}

/// Build a cone from inequalities; extreme rays come from double description.
pub fn cone_from_inequalities(dim: usize, forms: &[Vec<i64>]) -> Result<RationalCone> {
    if dim == 0 {
        return Err(Error::InvalidInput("cone dimension must be at least 1".into()));
    }
    for f in forms {
        check_dim(dim, f.len())?;
    }
    let big: IntMatrix = forms.iter().map(|f| to_big(f)).collect();
    let dd = double_description(&big, dim)?;
    let mut rays = dd
        .rays
        .iter()
        .map(|r| to_i64(r).and_then(WeightVector::new))
        .collect::<Result<Vec<_>>>()?;
    rays.sort();
    rays.dedup();
    let mut lineality = dd.lineality.iter().map(|l| to_i64(l)).collect::<Result<Vec<_>>>()?;
    lineality.sort();
    let mut cone = RationalCone {
        dim,
        forms: forms.to_vec(),
        hrep: Vec::new(),
        rays,
        lineality,
        hilbert: OnceLock::new(),
    };
    cone.hrep = cone.prune(forms)?;
    Ok(cone)
}

/// Build the cone generated by the given rays (and the origin).
pub fn cone_from_rays(dim: usize, generators: &[WeightVector]) -> Result<RationalCone> {
    if dim == 0 {
        return Err(Error::InvalidInput("cone dimension must be at least 1".into()));
    }
    for g in generators {
        check_dim(dim, g.dim())?;
    }
    let gens: IntMatrix = generators.iter().filter(|g| !g.is_zero()).map(|g| to_big(g.coords())).collect();
    if gens.is_empty() {
        // the zero cone
        let forms: Vec<Vec<i64>> = (0..dim)
            .flat_map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                let mut m = vec![0; dim];
                m[i] = -1;
                [e, m]
            })
            .collect();
        return cone_from_inequalities(dim, &forms);
    }
    let dual = double_description(&gens, dim)?;
    let mut forms: Vec<Vec<i64>> = Vec::new();
    for r in &dual.rays {
        forms.push(to_i64(r)?);
    }
    for l in &dual.lineality {
        let l = to_i64(l)?;
        forms.push(l.iter().map(|x| -x).collect());
        forms.push(l);
    }
    forms.sort();
    forms.dedup();
    cone_from_inequalities(dim, &forms)
}

impl RationalCone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Irredundant inequality description: implicit equalities plus one form
    /// per facet.
    pub fn hrep(&self) -> &[Vec<i64>] {
        &self.hrep
    }

    /// The forms the cone was built from.
    pub fn forms(&self) -> &[Vec<i64>] {
        &self.forms
    }

    /// Extreme rays, primitive and sorted lexicographically.
    pub fn rays(&self) -> &[WeightVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_pointed() && self.rays.is_empty()
    }

    /// True when no forms were given (the cone is the whole space).
    pub fn is_full_space(&self) -> bool {
        self.lineality.len() == self.dim
    }

    /// Dimension of the linear span of the cone.
    pub fn cone_dimension(&self) -> usize {
        let mut rows: IntMatrix = self.rays.iter().map(|r| to_big(r.coords())).collect();
        rows.extend(self.lineality.iter().map(|l| to_big(l)));
        rank(&rows)
    }

    pub fn contains(&self, q: &WeightVector) -> Result<bool> {
        check_dim(self.dim, q.dim())?;
        self.contains_raw(q.coords())
    }

    pub(crate) fn contains_raw(&self, q: &[i64]) -> Result<bool> {
        for f in &self.hrep {
            if dot(f, q)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hilbert basis of the semigroup of lattice points; cached.
    pub fn hilbert_basis(&self) -> Result<Vec<WeightVector>> {
        self.hilbert.get_or_init(|| self.compute_hilbert()).clone()
    }

    fn prune(&self, forms: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        if self.is_full_space() {
            return Ok(Vec::new());
        }
        let cdim = self.cone_dimension();
        let lin: IntMatrix = self.lineality.iter().map(|l| to_big(l)).collect();
        let mut uniq: Vec<Vec<i64>> = Vec::new();
        for f in forms {
            let p: Vec<i64> = to_i64(&primitive_big(to_big(f)))?;
            if p.iter().all(|&x| x == 0) || uniq.contains(&p) {
                continue;
            }
            uniq.push(p);
        }
        uniq.sort();
        let mut equalities = Vec::new();
        let mut facets: Vec<(Vec<bool>, Vec<i64>)> = Vec::new();
        for f in uniq {
            let tight: Vec<bool> = self
                .rays
                .iter()
                .map(|r| dot(&f, r.coords()).map(|v| v == 0))
                .collect::<Result<_>>()?;
            if tight.iter().all(|&t| t) {
                equalities.push(f);
                continue;
            }
            let mut rows: IntMatrix = self
                .rays
                .iter()
                .zip(&tight)
                .filter(|(_, &t)| t)
                .map(|(r, _)| to_big(r.coords()))
                .collect();
            rows.extend(lin.iter().cloned());
            if rank(&rows) + 1 == cdim && !facets.iter().any(|(t, _)| *t == tight) {
                facets.push((tight, f));
            }
        }
        let mut out = equalities;
        out.extend(facets.into_iter().map(|(_, f)| f));
        out.sort();
        Ok(out)
    }

    fn compute_hilbert(&self) -> Result<Vec<WeightVector>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed(self.lineality.len()));
        }
        if self.rays.is_empty() {
            return Ok(Vec::new());
        }
        let d = self.dim;
        let rays_big: IntMatrix = self.rays.iter().map(|r| to_big(r.coords())).collect();
        let k = rank(&rays_big);

        // lattice basis of span(rays) ∩ Z^d
        let complement = rational_kernel(&rays_big, d);
        let basis = integer_kernel(&complement, d);
        if basis.len() != k {
            return Err(Error::Invariant("hilbert basis: sublattice rank mismatch".into()));
        }
        let to_local = |v: &[BigInt]| -> Result<Vec<BigInt>> {
            let y = solve_in_columns(&basis, v)
                .ok_or_else(|| Error::Invariant("hilbert basis: vector outside span".into()))?;
            y.iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Invariant("hilbert basis: non-integral coordinates".into()))
                    }
                })
                .collect()
        };
        let local_rays: IntMatrix = rays_big.iter().map(|r| to_local(r)).collect::<Result<_>>()?;
        // facet forms in local coordinates, from the dual cone
        let local_facets: IntMatrix = if k == 1 {
            Vec::new()
        } else {
            let dual = double_description(&local_rays, k)?;
            if !dual.lineality.is_empty() {
                return Err(Error::Invariant("hilbert basis: local cone not full".into()));
            }
            dual.rays
        };
        let facet_sets: Vec<Vec<usize>> = local_facets
            .iter()
            .map(|f| (0..local_rays.len()).filter(|&i| big_dot(f, &local_rays[i]).is_zero()).collect())
            .collect();

        let all: Vec<usize> = (0..local_rays.len()).collect();
        let simplices = triangulate(&all, k, &facet_sets, &local_rays);

        let mut candidates: BTreeSet<Vec<BigInt>> = local_rays.iter().cloned().collect();
        for s in &simplices {
            let cols: IntMatrix = s.iter().map(|&i| local_rays[i].clone()).collect();
            parallelepiped_points(&cols, &mut candidates)?;
        }
        // a grading positive on the nonzero points of the local cone: a
        // reducible point splits off an irreducible one of smaller degree
        let grading: Vec<BigInt> = if k == 1 {
            local_rays[0].clone()
        } else {
            (0..k).map(|i| local_facets.iter().map(|f| &f[i]).sum()).collect()
        };
        let mut cand: Vec<(BigInt, Vec<BigInt>)> =
            candidates.into_iter().map(|x| (big_dot(&grading, &x), x)).collect();
        cand.sort();
        let inside = |x: &[BigInt]| {
            if k == 1 {
                !big_dot(&local_rays[0], x).is_negative()
            } else {
                local_facets.iter().all(|f| !big_dot(f, x).is_negative())
            }
        };
        let limit = crate::max_cells() as u128;
        let mut work: u128 = 0;
        let mut irreducible: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
        for (deg, x) in cand {
            work += irreducible.len() as u128;
            if work > limit {
                return Err(Error::WorkLimit { needed: work, limit: limit as u64 });
            }
            let reducible = irreducible.iter().any(|(gd, g)| {
                *gd < deg && {
                    let diff: Vec<BigInt> = x.iter().zip(g).map(|(a, b)| a - b).collect();
                    inside(&diff)
                }
            });
            if !reducible {
                irreducible.push((deg, x));
            }
        }
        let mut out = Vec::new();
        for (_, x) in &irreducible {
            let global: Vec<BigInt> = (0..d)
                .map(|j| basis.iter().zip(x).map(|(b, c)| &b[j] * c).sum())
                .collect();
            out.push(WeightVector::new(to_i64(&global)?)?);
        }
        out.sort();
        Ok(out)
    }
}

/// Pulling triangulation of the face spanned by `face` (of dimension `fdim`).
fn triangulate(face: &[usize], fdim: usize, facet_sets: &[Vec<usize>], rays: &IntMatrix) -> Vec<Vec<usize>> {
    if face.len() == fdim || fdim <= 1 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut subfacets: Vec<Vec<usize>> = Vec::new();
    for fs in facet_sets {
        let g: Vec<usize> = face.iter().copied().filter(|i| fs.contains(i)).collect();
        if g.contains(&apex) || g.is_empty() || subfacets.contains(&g) {
            continue;
        }
        let rows: IntMatrix = g.iter().map(|&i| rays[i].clone()).collect();
        if rank(&rows) + 1 == fdim {
            subfacets.push(g);
        }
    }
    let mut out = Vec::new();
    for g in subfacets {
        for mut s in triangulate(&g, fdim - 1, facet_sets, rays) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Lattice points of the half-open parallelepiped spanned by `cols`
/// (full rank in its own coordinates).
fn parallelepiped_points(cols: &IntMatrix, out: &mut BTreeSet<Vec<BigInt>>) -> Result<()> {
    let k = cols.len();
    // y matrix with columns = generators
    let y: IntMatrix = (0..k).map(|i| (0..k).map(|j| cols[j][i].clone()).collect()).collect();
    let (det, adj) = adjugate(&y);
    if det.is_zero() {
        return Err(Error::Invariant("triangulation produced a degenerate simplex".into()));
    }
    let sign = if det.is_negative() { -BigInt::one() } else { BigInt::one() };
    let n = det.abs();
    if n.is_one() {
        return Ok(());
    }
    let size: u128 = n.clone().try_into().map_err(|_| Error::Overflow)?;
    charge(size)?;
    // lambda(x) = adj * x / det; generators are images of unit vectors
    let gens: Vec<Vec<BigInt>> = (0..k)
        .map(|j| (0..k).map(|i| (&adj[i][j] * &sign).mod_floor(&n)).collect())
        .collect();
    let zero = vec![BigInt::zero(); k];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(u) = queue.pop_front() {
        for g in &gens {
            let v: Vec<BigInt> = u.iter().zip(g).map(|(a, b)| (a + b).mod_floor(&n)).collect();
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    for u in seen {
        if u.iter().all(|x| x.is_zero()) {
            continue;
        }
        let p: Vec<BigInt> = (0..k)
            .map(|i| {
                let s: BigInt = (0..k).map(|j| &cols[j][i] * &u[j]).sum();
                s / &n
            })
            .collect();
        out.insert(p);
    }
    Ok(())
}

/// Entrywise minimum of a nonempty list of weights.
pub fn componentwise_min(vs: &[WeightVector]) -> Result<WeightVector> {
    let first = vs
        .first()
        .ok_or_else(|| Error::InvalidInput("componentwise minimum of an empty list".into()))?;
    let mut m = first.coords().to_vec();
    for v in &vs[1..] {
        check_dim(m.len(), v.dim())?;
        for (a, b) in m.iter_mut().zip(v.coords()) {
            *a = (*a).min(*b);
        }
    }
    WeightVector::new(m)
}

/// Whether the entrywise minimum of two members of `c` is again a member.
pub fn meet_closed_under(c: &RationalCone, p: &WeightVector, q: &WeightVector) -> Result<bool> {
    if !c.contains(p)? || !c.contains(q)? {
        return Err(Error::Precondition("meet_closed_under: arguments must lie in the cone".into()));
    }
    c.contains(&componentwise_min(&[p.clone(), q.clone()])?)
}

/// All nonzero lattice points `q` of `c` with `form . q <= bound`.
pub fn lattice_points_under(c: &RationalCone, form: &[i64], bound: i64) -> Result<Vec<WeightVector>> {
    check_dim(c.dim(), form.len())?;
    if !c.is_pointed() {
        return Err(Error::NotPointed(c.lineality().len()));
    }
    for r in c.rays() {
        if dot(form, r.coords())? <= 0 {
            return Err(Error::NotStrictlyPositive(r.coords().to_vec()));
        }
    }
    let hilbert = c.hilbert_basis()?;
    let steps: Vec<(Vec<i64>, i64)> = hilbert
        .iter()
        .map(|h| Ok((h.coords().to_vec(), dot(form, h.coords())?)))
        .collect::<Result<_>>()?;
    let zero = vec![0i64; c.dim()];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([(zero, 0i64)]);
    while let Some((x, val)) = queue.pop_front() {
        for (h, hv) in &steps {
            let nv = val.checked_add(*hv).ok_or(Error::Overflow)?;
            if nv > bound {
                continue;
            }
            let y = x
                .iter()
                .zip(h)
                .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            if seen.insert(y.clone()) {
                charge(seen.len() as u128)?;
                queue.push_back((y, nv));
            }
        }
    }
    let mut out = seen
        .into_iter()
        .filter(|x| x.iter().any(|&v| v != 0))
        .map(WeightVector::new)
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// A simplicial cone with its dual basis and multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFrame {
    generators: Vec<WeightVector>,
    dual_basis: Vec<Vec<BigRational>>,
    multipliers: Vec<i64>,
}

impl SimplicialFrame {
    pub fn generators(&self) -> &[WeightVector] {
        &self.generators
    }

    /// `dual_basis()[j]` pairs to `delta_ij` with generator `i`.
    pub fn dual_basis(&self) -> &[Vec<BigRational>] {
        &self.dual_basis
    }

    /// Least positive `k` with `k * a_i^*` integral.
    pub fn multipliers(&self) -> &[i64] {
        &self.multipliers
    }

    /// Absolute determinant of the generator matrix.
    pub fn determinant(&self) -> BigInt {
        let rows: IntMatrix = self.generators.iter().map(|g| to_big(g.coords())).collect();
        crate::linalg::determinant(&rows).abs()
    }

    /// Coordinates of `q` in the generator basis.
    pub fn coordinates(&self, q: &WeightVector) -> Result<Vec<BigRational>> {
        check_dim(self.generators.len(), q.dim())?;
        Ok(self
            .dual_basis
            .iter()
            .map(|a| {
                a.iter()
                    .zip(q.coords())
                    .map(|(x, &c)| x * BigRational::from_integer(BigInt::from(c)))
                    .sum()
            })
            .collect())
    }
}

pub fn simplicial_frame(generators: &[WeightVector]) -> Result<SimplicialFrame> {
    let n = generators.len();
    if n == 0 {
        return Err(Error::InvalidInput("simplicial frame needs generators".into()));
    }
    for g in generators {
        check_dim(n, g.dim())?;
        if !g.is_primitive() {
            return Err(Error::weight(g.coords(), "frame generators must be primitive"));
        }
    }
    let m: Vec<Vec<BigRational>> = generators
        .iter()
        .map(|g| g.coords().iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let inv = inverse(&m).ok_or(Error::DependentGenerators)?;
    let dual_basis: Vec<Vec<BigRational>> = (0..n).map(|j| (0..n).map(|i| inv[i][j].clone()).collect()).collect();
    let multipliers = dual_basis
        .iter()
        .map(|a| {
            let l = a.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            i64::try_from(l).map_err(|_| Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialFrame {
        generators: generators.to_vec(),
        dual_basis,
        multipliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> WeightVector {
        WeightVector::new(c.to_vec()).unwrap()
    }

    fn ws(cs: &[&[i64]]) -> Vec<WeightVector> {
        cs.iter().map(|c| w(c)).collect()
    }

    #[test]
    fn orthant_rays() {
        let c = cone_from_inequalities(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(c.rays(), ws(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).as_slice());
        assert_eq!(c.hilbert_basis().unwrap(), ws(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    }

    #[test]
    fn planar_cone() {
        let c = cone_from_inequalities(2, &[vec![0, 1], vec![2, -1]]).unwrap();
        assert_eq!(c.rays(), ws(&[&[1, 0], &[1, 2]]).as_slice());
        assert_eq!(c.hilbert_basis().unwrap(), ws(&[&[1, 0], &[1, 1], &[1, 2]]));
        let redundant = cone_from_inequalities(2, &[vec![1, 0], vec![0, 1], vec![2, -1]]).unwrap();
        assert_eq!(redundant.rays(), c.rays());
        assert_eq!(redundant.hrep(), &[vec![0, 1], vec![2, -1]]);
    }

    #[test]
    fn single_ray_and_zero() {
        let c = cone_from_rays(3, &ws(&[&[2, 1, 1]])).unwrap();
        assert_eq!(c.rays(), ws(&[&[2, 1, 1]]).as_slice());
        assert_eq!(c.hilbert_basis().unwrap(), ws(&[&[2, 1, 1]]));
        assert!(c.contains(&w(&[4, 2, 2])).unwrap());
        assert!(!c.contains(&w(&[2, 1, 2])).unwrap());
        let pts = lattice_points_under(&c, &[1, 1, 1], 8).unwrap();
        assert_eq!(pts, ws(&[&[2, 1, 1], &[4, 2, 2]]));

        let z = cone_from_rays(3, &[]).unwrap();
        assert!(z.is_zero());
        assert!(z.hilbert_basis().unwrap().is_empty());
        assert!(z.contains(&WeightVector::zero(3)).unwrap());
    }

    #[test]
    fn full_space_and_lineality() {
        let c = cone_from_inequalities(2, &[]).unwrap();
        assert!(c.is_full_space());
        assert!(matches!(c.hilbert_basis(), Err(Error::NotPointed(2))));
        let h = cone_from_inequalities(2, &[vec![1, 0]]).unwrap();
        assert_eq!(h.lineality().len(), 1);
        assert_eq!(h.rays(), ws(&[&[1, 0]]).as_slice());
    }

    #[test]
    fn orthant_enumeration() {
        let c = cone_from_inequalities(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let pts = lattice_points_under(&c, &[1, 1], 2).unwrap();
        assert_eq!(pts, ws(&[&[0, 1], &[0, 2], &[1, 0], &[1, 1], &[2, 0]]));
        assert!(matches!(
            lattice_points_under(&c, &[1, 0], 2),
            Err(Error::NotStrictlyPositive(_))
        ));
    }

    #[test]
    fn componentwise_min_examples() {
        assert_eq!(componentwise_min(&ws(&[&[2, 2, 1, 1], &[2, 1, 2, 1]])).unwrap(), w(&[2, 1, 1, 1]));
        assert_eq!(componentwise_min(&ws(&[&[3, 2, 1]])).unwrap(), w(&[3, 2, 1]));
        assert_eq!(componentwise_min(&ws(&[&[1, 0], &[0, 1]])).unwrap(), w(&[0, 0]));
        assert!(componentwise_min(&[]).is_err());
    }

    #[test]
    fn frames() {
        let f = simplicial_frame(&ws(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(f.multipliers(), &[1, 1, 1]);
        let f = simplicial_frame(&ws(&[&[2, 1, 1], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(f.dual_basis()[0], vec![r(1, 2), r(0, 1), r(0, 1)]);
        assert_eq!(f.dual_basis()[1], vec![r(-1, 2), r(1, 1), r(0, 1)]);
        assert_eq!(f.dual_basis()[2], vec![r(-1, 2), r(0, 1), r(1, 1)]);
        assert_eq!(f.multipliers(), &[2, 2, 2]);
        let f = simplicial_frame(&ws(&[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(f.multipliers(), &[1, 1, 1]);
        assert_eq!(
            simplicial_frame(&ws(&[&[1, 1, 0], &[2, 2, 1], &[1, 1, 1]])),
            Err(Error::DependentGenerators)
        );
    }

    #[test]
    fn non_simplicial_hilbert() {
        // square pyramid over (1,0,1),(0,1,1),(-1,0,1),(0,-1,1)
        let c = cone_from_rays(3, &ws(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])).unwrap();
        assert_eq!(c.rays().len(), 4);
        let h = c.hilbert_basis().unwrap();
        assert_eq!(h, ws(&[&[-1, 0, 1], &[0, -1, 1], &[0, 0, 1], &[0, 1, 1], &[1, 0, 1]]));
    }
}
