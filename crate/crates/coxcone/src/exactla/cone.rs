//! Polyhedral cones in double description and their face lattices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{Signed, Zero};

use super::{
    add, annihilator, check_dim, dot, is_zero_vec, primitive_line, primitive_ray, scale,
    span_basis, span_rank, sub, zero_vec, Rat, RatMat, RatVec,
};
use crate::error::Result;

/// A finitely generated cone `lin(lineality) + cc(rays)` together with its
/// irredundant description `{x : e.x = 0 for e in equations, f.x >= 0 for f in facets}`.
///
/// Rays are the extreme rays modulo the lineality space, projected onto the
/// orthogonal complement of the lineality space; facet normals are projected onto
/// the linear hull. Both are primitive integer vectors in sorted order, so two
/// cones are equal iff their `PolyCone` values are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCone {
    dim: usize,
    lineality: Vec<RatVec>,
    rays: Vec<RatVec>,
    equations: Vec<RatVec>,
    facets: Vec<RatVec>,
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
fn project_out(v: &[Rat], basis: &[RatVec]) -> RatVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let mut gram = RatMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = dot(&basis[i], &basis[j]);
        }
    }
    let rhs: RatVec = basis.iter().map(|b| dot(b, v)).collect();
    let c = gram.solve(&rhs).expect("basis vectors are independent");
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        if !ci.is_zero() {
            out = sub(&out, &scale(ci, b));
        }
    }
    out
}

/// Double description: the cone `{x : e.x = 0, a.x >= 0}` as (lineality basis, extreme rays).
fn double_description(dim: usize, eqs: &[RatVec], ineqs: &[RatVec]) -> (Vec<RatVec>, Vec<RatVec>) {
    // Equalities first: they only cut down the lineality space.
    let mut lin = annihilator(eqs, dim);
    let mut rays: Vec<RatVec> = Vec::new();
    let mut done: Vec<&RatVec> = Vec::new();
    for a in ineqs {
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(pos);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot(a, &l0);
            let shift = |v: &RatVec| -> RatVec {
                let c = dot(a, v) / &al0;
                if c.is_zero() {
                    v.clone()
                } else {
                    sub(v, &scale(&c, &l0))
                }
            };
            lin = lin.iter().map(shift).collect();
            rays = rays.iter().map(|r| primitive_ray(&shift(r))).collect();
            rays.push(primitive_ray(&l0));
        } else {
            let vals: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
            let zero_sets: Vec<Vec<bool>> =
                rays.iter().map(|r| done.iter().map(|c| dot(c, r).is_zero()).collect()).collect();
            let mut next: Vec<RatVec> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in vals.iter().enumerate().filter(|(_, v)| v.is_positive()) {
                for (q, vq) in vals.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                    let common: Vec<bool> =
                        zero_sets[p].iter().zip(&zero_sets[q]).map(|(x, y)| *x && *y).collect();
                    let adjacent = (0..rays.len()).all(|r| {
                        r == p
                            || r == q
                            || !common.iter().zip(&zero_sets[r]).all(|(c, z)| !*c || *z)
                    });
                    if adjacent {
                        let comb = sub(&scale(vp, &rays[q]), &scale(vq, &rays[p]));
                        next.push(primitive_ray(&comb));
                    }
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        done.push(a);
    }
    (lin, rays)
}

impl PolyCone {
    /// `lin(lineality) + cc(generators)`.
    pub fn from_generators(dim: usize, generators: &[RatVec], lineality: &[RatVec]) -> Result<Self> {
        check_dim(generators, dim, "generator")?;
        check_dim(lineality, dim, "lineality vector")?;
        Ok(Self::build_from_v(dim, generators, lineality))
    }

    /// `{x : e.x = 0 for e in equations, a.x >= 0 for a in inequalities}`.
    pub fn from_inequalities(dim: usize, equations: &[RatVec], inequalities: &[RatVec]) -> Result<Self> {
        check_dim(equations, dim, "equation")?;
        check_dim(inequalities, dim, "inequality")?;
        let (lin, rays) = double_description(dim, equations, inequalities);
        Ok(Self::build_from_v(dim, &rays, &lin))
    }

    pub fn zero(dim: usize) -> Self {
        Self::build_from_v(dim, &[], &[])
    }

    pub fn whole_space(dim: usize) -> Self {
        let basis: Vec<RatVec> = (0..dim).map(|i| super::unit_vec(dim, i)).collect();
        Self::build_from_v(dim, &[], &basis)
    }

    fn build_from_v(dim: usize, gens: &[RatVec], lin: &[RatVec]) -> Self {
        // Dual cone {y : y.g >= 0, y.l = 0}: its lineality is the orthogonal
        // complement of the hull, its extreme rays are the facet normals.
        let (dual_lin, dual_rays) = double_description(dim, lin, gens);
        let equations: Vec<RatVec> = span_basis(&dual_lin, dim).into_iter().map(|v| primitive_line(&v)).collect();
        let mut facets: Vec<RatVec> = dual_rays
            .iter()
            .map(|f| primitive_ray(&project_out(f, &dual_lin)))
            .filter(|f| !is_zero_vec(f))
            .collect();
        facets.sort();
        facets.dedup();
        let (p_lin, p_rays) = double_description(dim, &equations, &facets);
        let lineality: Vec<RatVec> = span_basis(&p_lin, dim).into_iter().map(|v| primitive_line(&v)).collect();
        let mut rays: Vec<RatVec> = p_rays
            .iter()
            .map(|r| primitive_ray(&project_out(r, &lineality)))
            .filter(|r| !is_zero_vec(r))
            .collect();
        rays.sort();
        rays.dedup();
        PolyCone { dim, lineality, rays, equations, facets }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays modulo the lineality space.
    pub fn generators(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[RatVec] {
        &self.lineality
    }

    /// Vectors `e` with `e.x = 0` on the cone (a basis of the orthogonal complement of the hull).
    pub fn equations(&self) -> &[RatVec] {
        &self.equations
    }

    /// Irredundant facet normals `f` with `f.x >= 0` on the cone.
    pub fn facets(&self) -> &[RatVec] {
        &self.facets
    }

    /// All closed half-spaces describing the cone, equations as opposite pairs.
    pub fn inequalities(&self) -> Vec<RatVec> {
        let mut out = self.facets.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        out
    }

    /// Generators including both directions of each lineality vector.
    pub fn all_generators(&self) -> Vec<RatVec> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    /// Basis of the linear hull `K - K`.
    pub fn hull_basis(&self) -> Vec<RatVec> {
        annihilator(&self.equations, self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    /// Relative interior membership.
    pub fn contains_ri(&self, x: &[Rat]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn contains_cone(&self, other: &PolyCone) -> bool {
        other.all_generators().iter().all(|g| self.contains(g))
    }

    /// A point of the relative interior.
    pub fn ri_point(&self) -> RatVec {
        self.rays.iter().fold(zero_vec(self.dim), |acc, r| add(&acc, r))
    }

    pub fn intersect(&self, other: &PolyCone) -> PolyCone {
        assert_eq!(self.dim, other.dim);
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let (lin, rays) = double_description(self.dim, &eqs, &ineqs);
        Self::build_from_v(self.dim, &rays, &lin)
    }

    /// Intersection with the linear subspace spanned by `basis`.
    pub fn intersect_subspace(&self, basis: &[RatVec]) -> PolyCone {
        let mut eqs = self.equations.clone();
        eqs.extend(annihilator(basis, self.dim));
        let (lin, rays) = double_description(self.dim, &eqs, &self.facets);
        Self::build_from_v(self.dim, &rays, &lin)
    }

    /// Intersection with additional closed half-spaces `a.x >= 0`.
    pub fn cut(&self, halfspaces: &[RatVec]) -> PolyCone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(halfspaces.iter().cloned());
        let (lin, rays) = double_description(self.dim, &self.equations, &ineqs);
        Self::build_from_v(self.dim, &rays, &lin)
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &PolyCone) -> PolyCone {
        let mut gens = self.rays.clone();
        gens.extend(other.rays.iter().cloned());
        let mut lin = self.lineality.clone();
        lin.extend(other.lineality.iter().cloned());
        Self::build_from_v(self.dim, &gens, &lin)
    }

    /// `K + U` for a linear subspace `U`.
    pub fn add_subspace(&self, basis: &[RatVec]) -> PolyCone {
        let mut lin = self.lineality.clone();
        lin.extend(basis.iter().cloned());
        Self::build_from_v(self.dim, &self.rays, &lin)
    }

    pub fn negate(&self) -> PolyCone {
        let gens: Vec<RatVec> = self.rays.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        Self::build_from_v(self.dim, &gens, &self.lineality)
    }

    /// `phi(K)` for a linear map given as a matrix acting on column vectors.
    pub fn image(&self, phi: &RatMat) -> PolyCone {
        assert_eq!(phi.cols(), self.dim);
        let gens: Vec<RatVec> = self.rays.iter().map(|r| phi.mul_vec(r)).collect();
        let lin: Vec<RatVec> = self.lineality.iter().map(|l| phi.mul_vec(l)).collect();
        Self::build_from_v(phi.rows(), &gens, &lin)
    }

    /// `phi^{-1}(K)`.
    pub fn preimage(&self, phi: &RatMat) -> PolyCone {
        assert_eq!(phi.rows(), self.dim);
        let eqs: Vec<RatVec> = self.equations.iter().map(|e| phi.vec_mul(e)).collect();
        let ineqs: Vec<RatVec> = self.facets.iter().map(|f| phi.vec_mul(f)).collect();
        let (lin, rays) = double_description(phi.cols(), &eqs, &ineqs);
        Self::build_from_v(phi.cols(), &rays, &lin)
    }

    /// Indices of facets vanishing at `x`.
    pub fn tight_facets(&self, x: &[Rat]) -> BTreeSet<usize> {
        self.facets.iter().enumerate().filter(|(_, f)| dot(f, x).is_zero()).map(|(i, _)| i).collect()
    }

    pub fn face_lattice(&self) -> ConeFaceLattice {
        ConeFaceLattice::new(self)
    }
}

/// One face of a [`ConeFaceLattice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFace {
    /// Indices into the parent cone's rays.
    pub rays: BTreeSet<usize>,
    /// Indices of parent facets containing the face.
    pub tight: BTreeSet<usize>,
    pub dim: usize,
    pub cone: PolyCone,
}

/// All faces of a polyhedral cone ordered by inclusion.
#[derive(Clone, Debug)]
pub struct ConeFaceLattice {
    pub parent: PolyCone,
    /// Sorted by dimension, then by ray set.
    pub faces: Vec<ConeFace>,
    by_tight: BTreeMap<BTreeSet<usize>, usize>,
}

impl ConeFaceLattice {
    fn new(k: &PolyCone) -> Self {
        let nf = k.facets.len();
        let ray_zero: Vec<BTreeSet<usize>> = k
            .rays
            .iter()
            .map(|r| (0..nf).filter(|&f| dot(&k.facets[f], r).is_zero()).collect())
            .collect();
        let closure = |rays: &BTreeSet<usize>| -> BTreeSet<usize> {
            (0..nf).filter(|f| rays.iter().all(|r| ray_zero[*r].contains(f))).collect()
        };
        let top: BTreeSet<usize> = (0..k.rays.len()).collect();
        let mut seen: BTreeMap<BTreeSet<usize>, BTreeSet<usize>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let t = closure(&top);
        seen.insert(t.clone(), top.clone());
        queue.push_back((top, t));
        while let Some((rays, tight)) = queue.pop_front() {
            for f in 0..nf {
                if tight.contains(&f) {
                    continue;
                }
                let sub: BTreeSet<usize> = rays.iter().copied().filter(|r| ray_zero[*r].contains(&f)).collect();
                let t = closure(&sub);
                if !seen.contains_key(&t) {
                    seen.insert(t.clone(), sub.clone());
                    queue.push_back((sub, t));
                }
            }
        }
        let mut faces: Vec<ConeFace> = seen
            .into_iter()
            .map(|(tight, rays)| {
                let gens: Vec<RatVec> = rays.iter().map(|&r| k.rays[r].clone()).collect();
                let mut span = gens.clone();
                span.extend(k.lineality.iter().cloned());
                let dim = span_rank(&span, k.dim);
                let cone = PolyCone::build_from_v(k.dim, &gens, &k.lineality);
                ConeFace { rays, tight, dim, cone }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
        let by_tight = faces.iter().enumerate().map(|(i, f)| (f.tight.clone(), i)).collect();
        ConeFaceLattice { parent: k.clone(), faces, by_tight }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `faces[a] ⊆ faces[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[a].tight.is_superset(&self.faces[b].tight)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let rays: BTreeSet<usize> = self.faces[a].rays.intersection(&self.faces[b].rays).copied().collect();
        self.face_with_rays(&rays)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        (0..self.len())
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .min_by_key(|&c| self.faces[c].dim)
            .expect("the cone itself is an upper bound")
    }

    /// The smallest face containing the given parent rays.
    pub fn face_with_rays(&self, rays: &BTreeSet<usize>) -> usize {
        let nf = self.parent.facets.len();
        let tight: BTreeSet<usize> = (0..nf)
            .filter(|&f| rays.iter().all(|&r| dot(&self.parent.facets[f], &self.parent.rays[r]).is_zero()))
            .collect();
        self.by_tight[&tight]
    }

    /// The face whose relative interior contains `x` (`x` must lie in the cone).
    pub fn face_of_point(&self, x: &[Rat]) -> Option<usize> {
        if !self.parent.contains(x) {
            return None;
        }
        self.by_tight.get(&self.parent.tight_facets(x)).copied()
    }

    pub fn index_of(&self, cone: &PolyCone) -> Option<usize> {
        self.faces.iter().position(|f| &f.cone == cone)
    }

    /// Smallest face `K ∩ (-K)`.
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{ivec, unit_vec};

    #[test]
    fn zero_cone_has_one_face() {
        let k = PolyCone::zero(3);
        assert_eq!(k.face_lattice().len(), 1);
    }

    #[test]
    fn orthant_is_boolean() {
        let gens: Vec<RatVec> = (0..3).map(|i| unit_vec(3, i)).collect();
        let k = PolyCone::from_generators(3, &gens, &[]).unwrap();
        assert_eq!(k.facets().len(), 3);
        let fl = k.face_lattice();
        assert_eq!(fl.len(), 8);
        let dims: Vec<usize> = fl.faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let k = PolyCone::from_generators(2, &[ivec(&[0, 1])], &[ivec(&[1, 0])]).unwrap();
        assert_eq!(k.lineality(), &[ivec(&[1, 0])]);
        assert_eq!(k.facets(), &[ivec(&[0, 1])]);
        assert_eq!(k.face_lattice().len(), 2);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let k = PolyCone::from_generators(2, &[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[2, 0])], &[])
            .unwrap();
        assert_eq!(k.generators(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn inequality_round_trip() {
        let k = PolyCone::from_generators(3, &[ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[-1, 0, 1]), ivec(&[0, -1, 1])], &[])
            .unwrap();
        let k2 = PolyCone::from_inequalities(3, k.equations(), k.facets()).unwrap();
        assert_eq!(k, k2);
        assert_eq!(k.face_lattice().len(), 10);
    }

    #[test]
    fn full_space_from_opposite_rays() {
        let k = PolyCone::from_generators(1, &[ivec(&[1]), ivec(&[-1])], &[]).unwrap();
        assert_eq!(k, PolyCone::whole_space(1));
    }
}
