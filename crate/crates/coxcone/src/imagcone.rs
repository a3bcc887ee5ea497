//! The imaginary cone `Z = ⋃ σK ⊆ h` with `K = (Σ R⁺₀ h_i) ∩ (-C̄∨)`.
//!
//! `Z` is never materialized. Its faces are `σF(Θ)` with `F(Θ) = W_Θ K(Θ)‾`
//! for special facial `Θ`, and the face poset is anti-isomorphic to that of the
//! Tits cone through `σR(Θ) ↦ σF(Θ)`, so handles are shared with [`TitsCone`].

use std::collections::HashMap;

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{dot, feasible, is_zero_vec, neg, primitive_ray, span_basis, unit_vec, PolyCone, Rat, RatVec};
use crate::facial::is_facial;
use crate::realization::RootBase;
use crate::subset::Subset;
use crate::titscone::{FaceHandle, Membership, TitsCone};

pub type ImagFace = FaceHandle;

/// `K(Θ)‾ = (Σ_{i∈Θ} R⁺₀ h_i) ∩ (-C̄∨)` and whether `K(Θ)` (positive coefficients) is nonempty.
#[derive(Clone, Debug)]
pub struct KTheta {
    pub theta: Subset,
    pub cone: PolyCone,
    pub nonempty: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AntiIsoReport {
    pub handles: usize,
    pub pairs: usize,
    /// Pairs where the symbolic Tits order, the reversed geometric order on `Z`
    /// and the pairing test disagree.
    pub violations: Vec<(String, String)>,
}

/// Per-`Θ` data for the geometric order tests.
struct Probe {
    /// Point of `K(Θ)`.
    k: RatVec,
    /// Point of `F_Θ`.
    lambda: RatVec,
    span: PolyCone,
}

#[derive(Clone, Debug)]
pub struct ImagCone {
    pub tits: TitsCone,
}

fn anti_chamber(rb: &RootBase) -> Vec<RatVec> {
    rb.avecs().iter().map(|a| neg(a)).collect()
}

impl ImagCone {
    pub fn new(rb: &RootBase) -> Result<ImagCone> {
        Ok(ImagCone { tits: TitsCone::new(rb)? })
    }

    pub fn from_tits(tits: TitsCone) -> ImagCone {
        ImagCone { tits }
    }

    fn rb(&self) -> &RootBase {
        &self.tits.rb
    }

    fn positive_span(&self, theta: Subset) -> Result<PolyCone> {
        let gens: Vec<RatVec> = theta.iter().map(|i| self.rb().hvec(i)).collect();
        PolyCone::from_generators(self.rb().dim, &gens, &[])
    }

    /// `K` as a polyhedral cone in `h`.
    pub fn k_cone(&self) -> Result<PolyCone> {
        Ok(self.positive_span(self.rb().gcm.full())?.cut(&anti_chamber(self.rb())))
    }

    pub fn k_theta(&self, theta: Subset) -> Result<KTheta> {
        if !is_facial(self.rb(), theta) {
            return Err(Error::Precondition(format!("{theta} is not facial")));
        }
        let cone = self.positive_span(theta)?.cut(&anti_chamber(self.rb()));
        Ok(KTheta { theta, cone, nonempty: self.k_theta_nonempty(theta) })
    }

    /// Some `c > 0` on `Θ` with `Σ_{i∈Θ} c_i a_ij ≤ 0` for all `j`.
    fn k_theta_nonempty(&self, theta: Subset) -> bool {
        if theta.is_empty() {
            return true;
        }
        let idx = theta.indices();
        let g = &self.rb().gcm;
        let ge: Vec<RatVec> = (0..g.n()).map(|j| idx.iter().map(|&i| -g.entry(i, j).clone()).collect()).collect();
        let gt: Vec<RatVec> = (0..idx.len()).map(|p| unit_vec(idx.len(), p)).collect();
        feasible(&[], &ge, &gt).expect("consistent dimensions")
    }

    fn check_special_facial(&self, theta: Subset) -> Result<()> {
        self.tits.face_r(theta).map(|_| ())
    }

    /// `S∨_{Θ^aff} + span{h_i : i ∈ Θ^ind}`, with one primitive kernel vector per affine component.
    pub fn hull_formula(&self, theta: Subset) -> Result<Vec<RatVec>> {
        self.check_special_facial(theta)?;
        let rb = self.rb();
        let g = &rb.gcm;
        let mut gens = Vec::new();
        let cls = g.classify(theta);
        for (comp, label) in &cls.components {
            if *label != crate::cartan::TypeLabel::Aff {
                continue;
            }
            let idx = comp.indices();
            let ker = g.submatrix(*comp).transpose().kernel_basis();
            let k = ker.first().ok_or_else(|| Error::Internal(format!("affine {comp} without kernel")))?;
            let k = if k.iter().any(|x| x.is_negative()) { neg(k) } else { k.clone() };
            let mut v = vec![Rat::zero(); rb.dim];
            for (p, &i) in idx.iter().enumerate() {
                v = crate::exactla::axpy(&v, &k[p], &rb.hvec(i));
            }
            gens.push(primitive_ray(&v));
        }
        gens.extend(cls.ind.iter().map(|i| rb.hvec(i)));
        Ok(span_basis(&gens, rb.dim))
    }

    /// `F(Θ)` itself.
    pub fn face_f(&self, theta: Subset) -> Result<ImagFace> {
        self.tits.face_r(theta)
    }

    /// Linear hull of `σF(Θ)`.
    pub fn hull(&self, f: &ImagFace) -> Result<Vec<RatVec>> {
        let base = self.hull_formula(f.theta)?;
        Ok(base.iter().map(|v| self.tits.group.act_h(self.rb(), &f.sigma, v)).collect())
    }

    /// Generators of the pointwise stabilizer `W_{Θ^aff ∪ Θ⊥}` of `F(Θ)`.
    pub fn centralizer(&self, f: &ImagFace) -> Subset {
        let g = &self.rb().gcm;
        g.aff_part(f.theta).union(g.perp(f.theta))
    }

    /// `a ⊆ b`, the reverse of the Tits-cone order.
    pub fn leq(&self, a: &ImagFace, b: &ImagFace) -> bool {
        self.tits.leq(b, a)
    }

    pub fn meet(&self, a: &ImagFace, b: &ImagFace) -> Result<ImagFace> {
        self.tits.join(a, b)
    }

    pub fn join(&self, a: &ImagFace, b: &ImagFace) -> ImagFace {
        self.tits.meet(a, b)
    }

    /// A point of `K(Θ) ⊆ ri(F(Θ))`.
    pub fn ri_point(&self, theta: Subset) -> Result<RatVec> {
        Ok(self.k_theta(theta)?.cone.ri_point())
    }

    fn probe(&self, theta: Subset) -> Result<Probe> {
        Ok(Probe { k: self.ri_point(theta)?, lambda: self.tits.facet_point(theta)?, span: self.positive_span(theta)? })
    }

    /// `a ⊆ b` decided geometrically: a relative-interior point of `a` lies in
    /// `σ_b (Σ_{i∈Θ_b} R⁺₀ h_i)`.
    pub fn leq_geometric(&self, a: &ImagFace, b: &ImagFace) -> Result<bool> {
        self.leq_geometric_with(a, b, &self.probe(a.theta)?, &self.probe(b.theta)?)
    }

    fn leq_geometric_with(&self, a: &ImagFace, b: &ImagFace, pa: &Probe, pb: &Probe) -> Result<bool> {
        let w = &self.tits.group;
        let x = w.act_h(self.rb(), &w.mul(&w.inverse(&b.sigma), &a.sigma), &pa.k);
        Ok(pb.span.contains(&x))
    }

    /// Tits-cone inclusion `a ⊆ b` decided by pairing a point of `ri(a)` with a point of `K(Θ_b)`.
    pub fn tits_leq_by_pairing(&self, a: &FaceHandle, b: &FaceHandle) -> Result<bool> {
        self.tits_leq_by_pairing_with(a, b, &self.probe(a.theta)?, &self.probe(b.theta)?)
    }

    fn tits_leq_by_pairing_with(&self, a: &FaceHandle, b: &FaceHandle, pa: &Probe, pb: &Probe) -> Result<bool> {
        let w = &self.tits.group;
        let mu = w.act_hstar(self.rb(), &w.mul(&w.inverse(&b.sigma), &a.sigma), &pa.lambda);
        Ok(dot(&mu, &pb.k).is_zero())
    }

    /// Checks that `σR(Θ) ↦ σF(Θ)` reverses inclusion on all handles with `ℓ(σ) ≤ depth`.
    pub fn anti_isomorphism_check(&self, depth: usize) -> Result<AntiIsoReport> {
        let hs = self.tits.handles_up_to(depth);
        let probes: HashMap<Subset, Probe> =
            self.tits.family.special.iter().map(|&t| Ok((t, self.probe(t)?))).collect::<Result<_>>()?;
        let mut report = AntiIsoReport { handles: hs.len(), ..Default::default() };
        for a in &hs {
            for b in &hs {
                report.pairs += 1;
                let (pa, pb) = (&probes[&a.theta], &probes[&b.theta]);
                let x = self.tits.leq(a, b);
                let z = self.leq_geometric_with(b, a, pb, pa)?;
                let p = self.tits_leq_by_pairing_with(a, b, pa, pb)?;
                if x != z || x != p {
                    report.violations.push((a.to_string(), b.to_string()));
                }
            }
        }
        Ok(report)
    }

    /// `h ∈ Z` by reflecting `h` towards `-C̄∨`.
    ///
    /// `Z` lies in `Σ R⁺₀ h_i` and is `W`-invariant, so leaving that cone proves
    /// `h ∉ Z`; arriving in `-C̄∨` inside it means arriving in `K`. `Unknown` is
    /// returned when `cap` reflections do not settle the question.
    pub fn membership_z(&self, h: &[Rat], cap: usize) -> Result<Membership> {
        let rb = self.rb();
        if h.len() != rb.dim {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", h.len(), rb.dim)));
        }
        let cone = self.positive_span(rb.gcm.full())?;
        let mut x = h.to_vec();
        for _ in 0..=cap {
            if !cone.contains(&x) {
                return Ok(Membership::Out);
            }
            let vals: Vec<Rat> = (0..rb.n()).map(|j| dot(&rb.avec(j), &x)).collect();
            match vals.iter().position(|v| v.is_positive()) {
                None => return Ok(Membership::In),
                Some(j) => x = crate::exactla::axpy(&x, &-vals[j].clone(), &rb.hvec(j)),
            }
        }
        Ok(Membership::Unknown)
    }

    /// `K∨ = (Σ R⁺₀ α_i) ∩ (-C̄)` in `h*`.
    pub fn dual_k(&self) -> Result<PolyCone> {
        let rb = self.rb();
        let c: Vec<RatVec> = rb.hvecs().iter().map(|h| neg(h)).collect();
        Ok(PolyCone::from_generators(rb.dim, &rb.avecs(), &[])?.cut(&c))
    }

    /// For each special facial `Θ` and each sample `λ = σ·(point of F_J)` with `ℓ(σ) ≤ depth`:
    /// `λ(h) ≥ 0` for `h ∈ ri F(Θ)`, with equality iff `λ ∈ R(Θ)`. Returns the violations.
    pub fn semiduality_check(&self, depth: usize) -> Result<Vec<String>> {
        let t = &self.tits;
        let elems = t.group.elements_up_to(depth);
        let mut bad = Vec::new();
        let samples: Vec<RatVec> = t
            .family
            .all
            .iter()
            .map(|&j| t.facet_point(j))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .flat_map(|p| elems.iter().map(move |s| (s, p)))
            .map(|(s, p)| t.group.act_hstar(&t.rb, s, p))
            .collect();
        for &theta in &t.family.special {
            let h = self.ri_point(theta)?;
            let r = t.face_r(theta)?;
            for lam in &samples {
                let v = dot(lam, &h);
                let face = t.face_of_point(lam, 256)?;
                let in_r = t.leq(&face, &r);
                if v.is_negative() || v.is_zero() != in_r {
                    bad.push(format!("Θ = {theta}, point face {face}"));
                }
            }
        }
        Ok(bad)
    }

    /// `K(Θ)‾` spans the hull formula and its relative interior lies in `K(Θ)`.
    pub fn hull_matches(&self, theta: Subset) -> Result<bool> {
        let k = self.k_theta(theta)?;
        let formula = self.hull_formula(theta)?;
        let ri = k.cone.ri_point();
        Ok(crate::exactla::subspace_eq(&k.cone.hull_basis(), &formula, self.rb().dim)
            && k.nonempty
            && self.positive_span(theta)?.contains_ri(&ri)
            && is_zero_vec(&ri) == theta.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{add, subspace_eq};
    use crate::fixtures;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().map(|i| i - 1))
    }

    #[test]
    fn finite_type_k_is_zero() {
        for rb in [fixtures::a2(), fixtures::b2(), fixtures::a3()] {
            let z = ImagCone::new(&rb).unwrap();
            assert!(z.k_cone().unwrap().is_zero());
            assert!(z.dual_k().unwrap().is_zero());
            let h = rb.hvec(0);
            assert_eq!(z.membership_z(&h, 10).unwrap(), Membership::Out);
            assert_eq!(z.membership_z(&vec![Rat::zero(); rb.dim], 10).unwrap(), Membership::In);
        }
    }

    #[test]
    fn degenerate_affine_a1() {
        let rb = fixtures::affine_a1_degenerate();
        let z = ImagCone::new(&rb).unwrap();
        let delta = add(&rb.hvec(0), &rb.hvec(1));
        let k = z.k_cone().unwrap();
        let want = PolyCone::from_generators(rb.dim, &[delta.clone()], &[]).unwrap();
        assert_eq!(k, want);
        let s1 = z.tits.group.simple(0);
        assert_eq!(z.tits.group.act_h(&rb, &s1, &delta), delta);
        assert_eq!(z.membership_z(&delta, 0).unwrap(), Membership::In);
        assert_eq!(z.membership_z(&rb.hvec(0), 10).unwrap(), Membership::Out);
        let f = z.face_f(Subset::full(2)).unwrap();
        assert!(subspace_eq(&z.hull(&f).unwrap(), &[delta], rb.dim));
        assert!(z.face_f(Subset::singleton(0)).is_err());
        let dk = z.dual_k().unwrap();
        assert!(dk.generators().iter().all(|g| rb.hvecs().iter().all(|h| !dot(g, h).is_positive())));
    }

    #[test]
    fn six_cycle_a_k_theta() {
        let rb = fixtures::six_cycle_case('a');
        let z = ImagCone::new(&rb).unwrap();
        let k = z.k_theta(s(&[1, 2])).unwrap();
        assert!(k.nonempty);
        let want = PolyCone::from_generators(rb.dim, &[add(&rb.hvec(0), &rb.hvec(1))], &[]).unwrap();
        assert_eq!(k.cone, want);
        assert!(!z.k_theta(s(&[1])).unwrap().nonempty);
        assert!(z.k_theta(Subset::EMPTY).unwrap().cone.is_zero());
    }

    #[test]
    fn hull_formula_all_cases() {
        for case in ['a', 'b', 'c', 'd'] {
            let z = ImagCone::new(&fixtures::six_cycle_case(case)).unwrap();
            for &theta in &z.tits.family.special {
                assert!(z.hull_matches(theta).unwrap(), "case {case}, {theta}");
            }
        }
    }

    #[test]
    fn meet_join_examples() {
        let z = ImagCone::new(&fixtures::six_cycle_case('b')).unwrap();
        let a = z.face_f(s(&[1, 2])).unwrap();
        let b = z.face_f(s(&[4, 5])).unwrap();
        assert_eq!(z.join(&a, &b), z.face_f(s(&[1, 2, 4, 5])).unwrap());
        assert_eq!(z.meet(&a, &b).unwrap(), z.face_f(Subset::EMPTY).unwrap());
        let bottom = z.face_f(Subset::EMPTY).unwrap();
        for f in z.tits.handles_up_to(1) {
            assert!(z.leq(&bottom, &f));
        }
    }

    #[test]
    fn anti_isomorphism_case_d() {
        let z = ImagCone::new(&fixtures::six_cycle_case('d')).unwrap();
        let r = z.anti_isomorphism_check(2).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.pairs > 0);
    }

    #[test]
    fn semiduality_samples() {
        let z = ImagCone::new(&fixtures::six_cycle_case('c')).unwrap();
        assert!(z.semiduality_check(1).unwrap().is_empty());
    }

    #[test]
    fn centralizer_fixes_hull() {
        let rb = fixtures::six_cycle_case('b');
        let z = ImagCone::new(&rb).unwrap();
        for &theta in &z.tits.family.special {
            let f = z.face_f(theta).unwrap();
            let hull = z.hull(&f).unwrap();
            for i in z.centralizer(&f).iter() {
                let si = z.tits.group.simple(i);
                for v in &hull {
                    assert_eq!(&z.tits.group.act_h(&rb, &si, v), v, "{theta} {i}");
                }
            }
        }
    }
}
