//! Faces of the Tits cone `X = ⋃ σC̄ ⊆ h*`.
//!
//! Every face is `σR(Θ)` for a unique special facial `Θ` and a unique coset
//! `σW_{Θ∪Θ⊥}`, where `R(Θ) = W_{Θ⊥} F̄_Θ`. Handles store the minimal coset
//! representative, so equality of handles is equality of faces.

use std::fmt;

use num::{Signed, Zero};
use serde::Serialize;

use crate::coxeter::{CoxElem, CoxeterGroup, Side};
use crate::error::{Error, Result};
use crate::exactla::{annihilator, dot, feasible_point, span_rank, PolyCone, Rat, RatVec};
use crate::facial::{enumerate_facial, is_facial, FacialFamily};
use crate::realization::RootBase;
use crate::subset::Subset;

/// Outcome of a semi-decidable query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    In,
    Out,
    Unknown,
}

impl Membership {
    pub fn from_bool(b: bool) -> Membership {
        if b {
            Membership::In
        } else {
            Membership::Out
        }
    }
}

/// The face `σR(Θ)` (for the Tits cone) or `σF(Θ)` (for the imaginary cone).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceHandle {
    pub theta: Subset,
    pub sigma: CoxElem,
}

impl fmt::Display for FaceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·{}", self.sigma.word_one_based(), self.theta)
    }
}

pub type TitsFace = FaceHandle;

/// Root base, its Coxeter group and its facial sets, with the face calculus of `X`.
#[derive(Clone, Debug)]
pub struct TitsCone {
    pub rb: RootBase,
    pub group: CoxeterGroup,
    pub family: FacialFamily,
}

impl TitsCone {
    pub fn new(rb: &RootBase) -> Result<TitsCone> {
        Ok(TitsCone { rb: rb.clone(), group: CoxeterGroup::new(&rb.gcm), family: enumerate_facial(rb)? })
    }

    fn check_dim(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.rb.dim {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), self.rb.dim)));
        }
        Ok(())
    }

    /// `(λ(h_1), ..., λ(h_n))`.
    pub fn values(&self, lambda: &[Rat]) -> Vec<Rat> {
        (0..self.rb.n()).map(|i| dot(lambda, &self.rb.hvec(i))).collect()
    }

    pub fn in_chamber(&self, lambda: &[Rat]) -> bool {
        self.values(lambda).iter().all(|x| !x.is_negative())
    }

    /// The facial `J` with `λ ∈ F_J`; `W_J` is the stabilizer of `λ`.
    pub fn facet_of(&self, lambda: &[Rat]) -> Result<Subset> {
        self.check_dim(lambda)?;
        let vals = self.values(lambda);
        if let Some(i) = vals.iter().position(|x| x.is_negative()) {
            return Err(Error::Precondition(format!("λ(h_{}) < 0: point is outside the chamber", i + 1)));
        }
        Ok(Subset::from_indices((0..vals.len()).filter(|&i| vals[i].is_zero())))
    }

    /// A point of the open facet `F_J` (`J` facial).
    pub fn facet_point(&self, j: Subset) -> Result<RatVec> {
        let eqs: Vec<RatVec> = j.iter().map(|i| self.rb.hvec(i)).collect();
        let gt: Vec<RatVec> = j.complement(self.rb.n()).iter().map(|i| self.rb.hvec(i)).collect();
        if eqs.is_empty() && gt.is_empty() {
            return Ok(vec![Rat::zero(); self.rb.dim]);
        }
        let mut eqs_padded = eqs;
        // Pins the dimension when `eqs` and `gt` are both short of a first row.
        eqs_padded.push(vec![Rat::zero(); self.rb.dim]);
        feasible_point(&eqs_padded, &[], &gt)?.ok_or_else(|| Error::Precondition(format!("F_J is empty for J = {j}")))
    }

    /// `λ = σμ` with `μ ∈ C̄`, by repeatedly reflecting in the smallest wall with `λ(h_i) < 0`.
    pub fn normalize(&self, lambda: &[Rat], cap: usize) -> Result<(CoxElem, RatVec)> {
        self.check_dim(lambda)?;
        let w = &self.group;
        let mut sigma = w.identity();
        let mut mu = lambda.to_vec();
        for _ in 0..=cap {
            let vals = self.values(&mu);
            match vals.iter().position(|x| x.is_negative()) {
                None => return Ok((sigma, mu)),
                Some(i) => {
                    mu = crate::exactla::axpy(&mu, &-vals[i].clone(), &self.rb.avec(i));
                    sigma = w.mul_simple_right(&sigma, i);
                }
            }
        }
        Err(Error::NotFound(cap))
    }

    /// `λ ∈ C̄` lies in the interior of `X` iff its stabilizer is finite.
    pub fn interior_test(&self, lambda: &[Rat]) -> Result<bool> {
        let j = self.facet_of(lambda)?;
        Ok(self.rb.gcm.is_finite_type(j))
    }

    fn normalizer_set(&self, theta: Subset) -> Subset {
        theta.union(self.rb.gcm.perp(theta))
    }

    fn check_special_facial(&self, theta: Subset) -> Result<()> {
        if theta.0 >> self.rb.n() != 0 {
            return Err(Error::Precondition(format!("{theta} is not a subset of 1..={}", self.rb.n())));
        }
        if !self.rb.gcm.is_special(theta) || !is_facial(&self.rb, theta) {
            return Err(Error::Precondition(format!("{theta} is not special facial")));
        }
        Ok(())
    }

    /// Canonical handle for `σR(Θ)`.
    pub fn handle(&self, theta: Subset, sigma: &CoxElem) -> Result<FaceHandle> {
        self.check_special_facial(theta)?;
        Ok(self.canonical(theta, sigma))
    }

    fn canonical(&self, theta: Subset, sigma: &CoxElem) -> FaceHandle {
        let sigma = self.group.min_coset_rep(sigma, self.normalizer_set(theta), Side::Right);
        FaceHandle { theta, sigma }
    }

    /// `R(Θ)` itself.
    pub fn face_r(&self, theta: Subset) -> Result<FaceHandle> {
        self.handle(theta, &self.group.identity())
    }

    /// Indices generating the pointwise stabilizer `Z_W(R(Θ)) = W_Θ`.
    pub fn centralizer(&self, f: &FaceHandle) -> Subset {
        f.theta
    }

    /// Indices generating `N_W(R(Θ)) = W_{Θ∪Θ⊥}`.
    pub fn normalizer(&self, f: &FaceHandle) -> Subset {
        self.normalizer_set(f.theta)
    }

    /// Basis of the linear hull `σ{λ : λ(h_i) = 0 for i ∈ Θ}`.
    pub fn hull(&self, f: &FaceHandle) -> Vec<RatVec> {
        let hs: Vec<RatVec> = f.theta.iter().map(|i| self.rb.hvec(i)).collect();
        annihilator(&hs, self.rb.dim).iter().map(|v| self.group.act_hstar(&self.rb, &f.sigma, v)).collect()
    }

    pub fn dim(&self, f: &FaceHandle) -> usize {
        let hs: Vec<RatVec> = f.theta.iter().map(|i| self.rb.hvec(i)).collect();
        self.rb.dim - span_rank(&hs, self.rb.dim)
    }

    /// `a ⊆ b`: `Θ_a ⊇ Θ_b` and `σ_b⁻¹σ_a ∈ W_{Θ_b⊥} W_{Θ_a}`.
    pub fn leq(&self, a: &FaceHandle, b: &FaceHandle) -> bool {
        if !b.theta.is_subset(a.theta) {
            return false;
        }
        self.group.quotient_in_double_coset_of_identity(&b.sigma, &a.sigma, self.rb.gcm.perp(b.theta), a.theta)
    }

    /// `σ₁⁻¹σ₂ = u τ v` with `u, v` in the normalizers; returns `(σ₁u, τ)`.
    fn relative_position(&self, a: &FaceHandle, b: &FaceHandle) -> (CoxElem, CoxElem) {
        self.group.relative_double_rep(&a.sigma, &b.sigma, self.normalizer_set(a.theta), self.normalizer_set(b.theta))
    }

    /// Largest face contained in both.
    pub fn meet(&self, a: &FaceHandle, b: &FaceHandle) -> FaceHandle {
        let (base, tau) = self.relative_position(a, b);
        let theta = self.family.closure(a.theta.union(b.theta).union(tau.red()));
        self.canonical(theta, &base)
    }

    /// Smallest face containing both.
    pub fn join(&self, a: &FaceHandle, b: &FaceHandle) -> Result<FaceHandle> {
        let (base, tau) = self.relative_position(a, b);
        let cross = self.group.cross_parabolic(&self.rb, a.theta, &tau, b.theta)?;
        Ok(self.canonical(self.rb.gcm.infinite_part(cross), &base))
    }

    /// The face whose relative interior contains `λ`.
    pub fn face_of_point(&self, lambda: &[Rat], cap: usize) -> Result<FaceHandle> {
        let (sigma, mu) = self.normalize(lambda, cap)?;
        let j = self.facet_of(&mu)?;
        Ok(self.canonical(self.rb.gcm.infinite_part(j), &sigma))
    }

    /// `λ ∈ ri(σR(Θ))`, decided exactly once `λ` has been moved into the chamber.
    pub fn ri_membership(&self, lambda: &[Rat], f: &FaceHandle, cap: usize) -> Result<Membership> {
        match self.face_of_point(lambda, cap) {
            Ok(g) => Ok(Membership::from_bool(&g == f)),
            Err(Error::NotFound(_)) => Ok(Membership::Unknown),
            Err(e) => Err(e),
        }
    }

    /// Closed chamber `C̄` as a polyhedral cone in `h*`.
    pub fn chamber(&self) -> Result<PolyCone> {
        PolyCone::from_inequalities(self.rb.dim, &[], &self.rb.hvecs())
    }

    /// Canonical handles `σR(Θ)` for all special facial `Θ` and `ℓ(σ) ≤ depth`.
    pub fn handles_up_to(&self, depth: usize) -> Vec<FaceHandle> {
        let elems = self.group.elements_up_to(depth);
        let mut out: Vec<FaceHandle> = Vec::new();
        for &theta in &self.family.special {
            for s in &elems {
                out.push(self.canonical(theta, s));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{ivec, rat, subspace_eq};
    use crate::fixtures;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().map(|i| i - 1))
    }

    #[test]
    fn facets_and_normalization() {
        let t = TitsCone::new(&fixtures::a2()).unwrap();
        assert_eq!(t.facet_of(&ivec(&[1, 1])).unwrap(), Subset::EMPTY);
        assert_eq!(t.facet_of(&ivec(&[0, 0])).unwrap(), Subset::full(2));
        assert!(t.facet_of(&ivec(&[-1, 1])).is_err());
        let mu = ivec(&[1, 2]);
        assert_eq!(t.normalize(&mu, 0).unwrap(), (t.group.identity(), mu.clone()));
        let s1 = t.group.simple(0);
        let lam = t.group.act_hstar(&t.rb, &s1, &mu);
        assert_eq!(t.normalize(&lam, 5).unwrap(), (s1, mu));
    }

    #[test]
    fn affine_normalization_trace() {
        let rb = fixtures::free_minimal(&[&[2, -2], &[-2, 2]]);
        let t = TitsCone::new(&rb).unwrap();
        let mu = t.facet_point(Subset::EMPTY).unwrap();
        let x = t.group.from_word(&[0, 1, 0]).unwrap();
        let lam = t.group.act_hstar(&rb, &x, &mu);
        assert_eq!(t.normalize(&lam, 3).unwrap(), (x, mu.clone()));
        assert!(matches!(t.normalize(&lam, 1), Err(Error::NotFound(1))));
        // A point with negative level never reaches the chamber.
        let below = crate::exactla::neg(&mu);
        assert!(matches!(t.normalize(&below, 50), Err(Error::NotFound(50))));
    }

    #[test]
    fn interior_test_cases() {
        let t = TitsCone::new(&fixtures::six_cycle_case('b')).unwrap();
        assert!(t.interior_test(&t.facet_point(Subset::EMPTY).unwrap()).unwrap());
        assert!(!t.interior_test(&vec![rat(0); t.rb.dim]).unwrap());
        assert!(!t.interior_test(&t.facet_point(s(&[1, 2])).unwrap()).unwrap());
        assert!(t.interior_test(&t.facet_point(s(&[1])).unwrap()).unwrap());
    }

    #[test]
    fn six_cycle_a_facet_example() {
        // λ = -(α₁ + α₂) lies in F_{1,2,4,5}.
        let rb = fixtures::six_cycle_case('a');
        let t = TitsCone::new(&rb).unwrap();
        let lam = crate::exactla::neg(&crate::exactla::add(&rb.avec(0), &rb.avec(1)));
        assert_eq!(t.facet_of(&lam).unwrap(), s(&[1, 2, 4, 5]));
    }

    #[test]
    fn face_r_hulls() {
        let t = TitsCone::new(&fixtures::six_cycle_case('b')).unwrap();
        let x = t.face_r(Subset::EMPTY).unwrap();
        assert_eq!(t.dim(&x), t.rb.dim);
        assert_eq!(t.dim(&t.face_r(s(&[1, 2])).unwrap()), t.rb.dim - 2);
        assert!(t.face_r(s(&[1, 2, 3])).is_err());
        assert!(t.face_r(s(&[1])).is_err());
        let all = t.face_r(Subset::full(6)).unwrap();
        for f in t.handles_up_to(2) {
            assert!(t.leq(&all, &f));
            assert!(t.leq(&f, &x));
        }
        let hull = t.hull(&all);
        let want = annihilator(&t.rb.hvecs(), t.rb.dim);
        assert!(subspace_eq(&hull, &want, t.rb.dim));
    }

    #[test]
    fn meet_join_examples() {
        let t = TitsCone::new(&fixtures::six_cycle_case('b')).unwrap();
        let a = t.face_r(s(&[1, 2])).unwrap();
        let b = t.face_r(s(&[4, 5])).unwrap();
        assert_eq!(t.meet(&a, &b), t.face_r(s(&[1, 2, 4, 5])).unwrap());
        assert_eq!(t.join(&a, &b).unwrap(), t.face_r(Subset::EMPTY).unwrap());
        assert_eq!(t.meet(&a, &a), a);
        assert_eq!(t.join(&a, &a).unwrap(), a);
    }

    #[test]
    fn orbit_cross_section() {
        let t = TitsCone::new(&fixtures::six_cycle_case('d')).unwrap();
        let elems = t.group.elements_up_to(3);
        for &theta in &t.family.special {
            let p = t.facet_point(theta).unwrap();
            for x in &elems {
                let lam = t.group.act_hstar(&t.rb, x, &p);
                let f = t.face_of_point(&lam, 64).unwrap();
                assert_eq!(f, t.handle(theta, x).unwrap());
                assert_eq!(t.ri_membership(&lam, &f, 64).unwrap(), Membership::In);
            }
        }
    }

    #[test]
    fn dimension_strictly_monotone() {
        let t = TitsCone::new(&fixtures::six_cycle_case('c')).unwrap();
        let hs = t.handles_up_to(2);
        for a in &hs {
            for b in &hs {
                if a != b && t.leq(a, b) {
                    assert!(t.dim(a) < t.dim(b), "{a} < {b}");
                    assert!(!t.leq(b, a));
                }
            }
        }
    }

    #[test]
    fn ri_membership_of_facets() {
        let t = TitsCone::new(&fixtures::six_cycle_case('b')).unwrap();
        let theta = s(&[1, 2]);
        let f = t.face_r(theta).unwrap();
        let p = t.facet_point(theta).unwrap();
        assert_eq!(t.ri_membership(&p, &f, 8).unwrap(), Membership::In);
        for j in t.family.all.iter().filter(|j| t.rb.gcm.infinite_part(**j) != theta) {
            let q = t.facet_point(*j).unwrap();
            assert_eq!(t.ri_membership(&q, &f, 8).unwrap(), Membership::Out, "{j}");
        }
        // mid_{Θ_f}(F_Θ) ⊆ F_{Θ∪Θ_f} for finite Θ_f ⊆ Θ⊥.
        let perp = t.rb.gcm.perp(theta);
        for tf in perp.subsets().filter(|x| t.rb.gcm.is_finite_type(*x)) {
            let mid = t.group.mid_projector(&t.rb, tf).unwrap();
            let q = mid.transpose().mul_vec(&p);
            assert_eq!(t.facet_of(&q).unwrap(), theta.union(tf));
        }
    }

    #[test]
    fn meet_join_are_bounds() {
        for case in ['b', 'd'] {
            let t = TitsCone::new(&fixtures::six_cycle_case(case)).unwrap();
            let hs = t.handles_up_to(2);
            for a in &hs {
                for b in &hs {
                    let m = t.meet(a, b);
                    let j = t.join(a, b).unwrap();
                    assert!(t.leq(&m, a) && t.leq(&m, b), "meet {a} {b}");
                    assert!(t.leq(a, &j) && t.leq(b, &j), "join {a} {b}");
                    assert_eq!(m, t.meet(b, a));
                    assert_eq!(j, t.join(b, a).unwrap());
                    for c in &hs {
                        if t.leq(c, a) && t.leq(c, b) {
                            assert!(t.leq(c, &m));
                        }
                        if t.leq(a, c) && t.leq(b, c) {
                            assert!(t.leq(&j, c));
                        }
                    }
                }
            }
        }
    }
}
