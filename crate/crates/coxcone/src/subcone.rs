//! `W`-invariant convex subcones `Y ⊆ X` containing zero.
//!
//! Faces of `Y` are written `σR` with `R` in the cross section `Υ` (faces whose
//! relative interior meets `C̄`). The lower type `υ_*(R)` collects the simple
//! reflections fixing `R` pointwise, the upper type `υ*(R)` those fixing `R`
//! as a whole but not pointwise. Two kinds are supported: the Tits cone itself
//! (symbolic, via [`TitsCone`]) and `Y = cc(W·S)` for finite `W`, which is
//! materialized as a polyhedral cone with its full face lattice.

use std::collections::HashMap;

use num::{Signed, Zero};

use crate::coxeter::{CoxElem, CoxeterGroup, Side};
use crate::error::{Error, Result};
use crate::exactla::{
    dot, in_span, neg, subspace_eq, ConeFaceLattice, PolyCone, Rat, RatMat, RatVec,
};
use crate::realization::RootBase;
use crate::subset::Subset;
use crate::titscone::{FaceHandle, Membership, TitsCone};

/// Largest finite group we tabulate.
pub const MAX_GROUP_ORDER: usize = 5000;

/// Lower and upper type of a face in `Υ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeData {
    pub lower: Subset,
    pub upper: Subset,
}

impl TypeData {
    /// The type `υ = υ_* ∪̇ υ*`.
    pub fn full(&self) -> Subset {
        self.lower.union(self.upper)
    }
}

/// What to build.
#[derive(Clone, Debug)]
pub enum SubconeSpec {
    Tits,
    /// `cc(W·S)` for points `S ⊆ C̄`; requires finite `W`.
    Generators(Vec<RatVec>),
}

/// One element of the cross section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossEntry {
    pub label: String,
    pub dim: usize,
    pub types: TypeData,
}

/// `Υ` with its inclusion order (`leq[a][b]` means entry `a` ⊆ entry `b`).
#[derive(Clone, Debug)]
pub struct CrossSection {
    pub entries: Vec<CrossEntry>,
    pub leq: Vec<Vec<bool>>,
}

impl CrossSection {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pairs `(a, b)` with `a ⊊ b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum InvariantCone {
    BuiltinTits(Box<TitsCone>),
    FinitePolyhedral(Box<PolySubcone>),
}

impl InvariantCone {
    pub fn build(rb: &RootBase, spec: &SubconeSpec) -> Result<InvariantCone> {
        match spec {
            SubconeSpec::Tits => Ok(InvariantCone::BuiltinTits(Box::new(TitsCone::new(rb)?))),
            SubconeSpec::Generators(s) => Ok(InvariantCone::FinitePolyhedral(Box::new(PolySubcone::new(rb, s)?))),
        }
    }

    pub fn cross_section(&self) -> CrossSection {
        match self {
            InvariantCone::BuiltinTits(t) => tits_cross_section(t),
            InvariantCone::FinitePolyhedral(p) => p.cross_section(),
        }
    }

    pub fn group(&self) -> &CoxeterGroup {
        match self {
            InvariantCone::BuiltinTits(t) => &t.group,
            InvariantCone::FinitePolyhedral(p) => &p.tits.group,
        }
    }
}

// ---------------------------------------------------------------------------
// Shared pieces

/// Writes `τ⁻¹ = a·b` with `a ∈ W_lower`, `b ∈ W_upper` and returns `b`.
fn split_in_product(w: &CoxeterGroup, tau: &CoxElem, lower: Subset, upper: Subset) -> Result<CoxElem> {
    let (_, m, v) = w.double_coset_decomp(&w.inverse(tau), lower, upper);
    if !m.is_identity() {
        return Err(Error::Internal(format!("chain step {:?} is not in W_lower·W_upper", tau.word_one_based())));
    }
    Ok(v)
}

/// Parabolic subset for the stabilizer of a whole chain: the intersection of the types.
fn chain_type(types: &[TypeData], n: usize) -> Subset {
    types.iter().fold(Subset::full(n), |acc, t| acc.inter(t.full()))
}

// ---------------------------------------------------------------------------
// The Tits cone as a subcone of itself

/// `υ_*(R(Θ)) = Θ`, `υ*(R(Θ)) = Θ⊥`.
pub fn tits_type_maps(tits: &TitsCone, theta: Subset) -> Result<TypeData> {
    tits.face_r(theta)?;
    Ok(TypeData { lower: theta, upper: tits.rb.gcm.perp(theta) })
}

pub fn tits_cross_section(tits: &TitsCone) -> CrossSection {
    let thetas = &tits.family.special;
    let entries: Vec<CrossEntry> = thetas
        .iter()
        .map(|&t| {
            let f = FaceHandle { theta: t, sigma: tits.group.identity() };
            CrossEntry {
                label: t.to_string(),
                dim: tits.dim(&f),
                types: TypeData { lower: t, upper: tits.rb.gcm.perp(t) },
            }
        })
        .collect();
    let leq = thetas.iter().map(|a| thetas.iter().map(|b| b.is_subset(*a)).collect()).collect();
    CrossSection { entries, leq }
}

/// Inclusion of `σ₁R(Θ₁) ⊆ σ₂R(Θ₂)` by the general subcone criterion
/// `R₁ ⊆ R₂` and `σ₁⁻¹σ₂ ∈ W_{υ_*(R₁)} W_{υ*(R₂)}`.
pub fn tits_face_leq(tits: &TitsCone, a: &FaceHandle, b: &FaceHandle) -> bool {
    b.theta.is_subset(a.theta)
        && tits.group.quotient_in_double_coset_of_identity(&a.sigma, &b.sigma, a.theta, tits.rb.gcm.perp(b.theta))
}

/// `J = υ_*(R₁) ∩ υ*(R₂)` for `R(Θ₁) ⊆ R(Θ₂)`.
pub fn tits_interval_j(tits: &TitsCone, theta1: Subset, theta2: Subset) -> Result<Subset> {
    let t1 = tits_type_maps(tits, theta1)?;
    let t2 = tits_type_maps(tits, theta2)?;
    if !theta2.is_subset(theta1) {
        return Err(Error::Precondition(format!("R({theta1}) is not contained in R({theta2})")));
    }
    Ok(t1.lower.inter(t2.upper))
}

/// A chain `f_1 ⊆ ... ⊆ f_m` of Tits faces as `σR(Θ_k)`, with `σ` canonical
/// modulo the common stabilizer `W_{⋂υ(R(Θ_k))}`.
pub fn tits_chain_normalize(tits: &TitsCone, chain: &[FaceHandle]) -> Result<(CoxElem, Vec<Subset>)> {
    let w = &tits.group;
    let Some(top) = chain.last() else {
        return Ok((w.identity(), Vec::new()));
    };
    for p in chain.windows(2) {
        if !tits.leq(&p[0], &p[1]) {
            return Err(Error::Precondition(format!("{} is not contained in {}", p[0], p[1])));
        }
    }
    let types: Vec<TypeData> = chain.iter().map(|f| tits_type_maps(tits, f.theta)).collect::<Result<_>>()?;
    let mut sigma = top.sigma.clone();
    for k in (0..chain.len() - 1).rev() {
        let tau = w.mul(&w.inverse(&sigma), &chain[k].sigma);
        let b = split_in_product(w, &tau, types[k].lower, types[k + 1].upper)?;
        sigma = w.mul(&sigma, &w.inverse(&b));
    }
    let sigma = w.min_coset_rep(&sigma, chain_type(&types, tits.rb.n()), Side::Right);
    Ok((sigma, chain.iter().map(|f| f.theta).collect()))
}

/// Class `σ[F]` of the Renner monoid of `X`, `F = ρR(Θ)`.
///
/// `σ` is taken modulo `Z_W(F) = ρW_Θρ⁻¹`; the stored representative is
/// `κρ⁻¹` with `κ` the minimal element of `σρW_Θ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TitsRennerElem {
    pub face: FaceHandle,
    pub sigma: CoxElem,
}

pub fn tits_renner_make(tits: &TitsCone, sigma: &CoxElem, face: &FaceHandle) -> TitsRennerElem {
    let w = &tits.group;
    let kappa = w.min_coset_rep(&w.mul(sigma, &face.sigma), face.theta, Side::Right);
    TitsRennerElem { face: face.clone(), sigma: w.mul(&kappa, &w.inverse(&face.sigma)) }
}

/// `(σ, R)·(τ, T) = (στ, τ⁻¹R ∩ T)`.
pub fn tits_renner_mul(tits: &TitsCone, a: &TitsRennerElem, b: &TitsRennerElem) -> Result<TitsRennerElem> {
    let w = &tits.group;
    let moved = tits.handle(a.face.theta, &w.mul(&w.inverse(&b.sigma), &a.face.sigma))?;
    let face = tits.meet(&moved, &b.face);
    Ok(tits_renner_make(tits, &w.mul(&a.sigma, &b.sigma), &face))
}

// ---------------------------------------------------------------------------
// Finite polyhedral subcones

/// `Y = cc(W·S)` for finite `W`, with `W` tabulated and acting on `Fa(Y)`.
#[derive(Clone, Debug)]
pub struct PolySubcone {
    pub tits: TitsCone,
    /// All of `W` in ShortLex order.
    pub elems: Vec<CoxElem>,
    index: HashMap<CoxElem, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    /// `λ ↦ σλ` on `h*`.
    mats: Vec<RatMat>,
    pub seeds: Vec<RatVec>,
    pub y: PolyCone,
    pub lattice: ConeFaceLattice,
    /// `action[w][f]` is the face `w·f`.
    action: Vec<Vec<usize>>,
    /// Pointwise stabilizer of each face, as element indices.
    fixers: Vec<Vec<usize>>,
    ri_points: Vec<RatVec>,
    /// Face indices of `Υ`, ascending.
    pub upsilon: Vec<usize>,
    /// `υ_*`, `υ*` for every face (meaningful on `Υ`).
    types: Vec<TypeData>,
    chamber: PolyCone,
}

/// A face `σR` with `R ∈ Υ` given by its face index and `σ` minimal in `σW_{υ(R)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFace {
    pub rep: usize,
    pub sigma: CoxElem,
}

impl PolySubcone {
    pub fn new(rb: &RootBase, seeds: &[RatVec]) -> Result<PolySubcone> {
        let n = rb.n();
        if !rb.gcm.is_finite_type(Subset::full(n)) {
            return Err(Error::Precondition("cc(W·S) is only materialized for finite W".into()));
        }
        let tits = TitsCone::new(rb)?;
        for (k, s) in seeds.iter().enumerate() {
            if s.len() != rb.dim {
                return Err(Error::DimensionMismatch(format!("generator {} has length {}, expected {}", k + 1, s.len(), rb.dim)));
            }
            if !tits.in_chamber(s) {
                return Err(Error::Precondition(format!("generator {} is not in the chamber", k + 1)));
            }
        }
        let w = &tits.group;
        let elems = w.enum_parabolic(Subset::full(n))?;
        if elems.len() > MAX_GROUP_ORDER {
            return Err(Error::SizeBound(format!("|W| = {} exceeds {MAX_GROUP_ORDER}", elems.len())));
        }
        let index: HashMap<CoxElem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mul: Vec<Vec<usize>> =
            elems.iter().map(|a| elems.iter().map(|b| index[&w.mul(a, b)]).collect()).collect();
        let inv: Vec<usize> = elems.iter().map(|a| index[&w.inverse(a)]).collect();
        let mats: Vec<RatMat> = elems
            .iter()
            .map(|e| {
                let cols: Vec<RatVec> =
                    (0..rb.dim).map(|k| w.act_hstar(rb, e, &crate::exactla::unit_vec(rb.dim, k))).collect();
                RatMat::from_cols(&cols, rb.dim)
            })
            .collect();
        let orbit: Vec<RatVec> = mats.iter().flat_map(|m| seeds.iter().map(move |s| m.mul_vec(s))).collect();
        let y = PolyCone::from_generators(rb.dim, &orbit, &[])?;
        let lattice = y.face_lattice();
        let ri_points: Vec<RatVec> = lattice.faces.iter().map(|f| f.cone.ri_point()).collect();
        let action: Vec<Vec<usize>> = mats
            .iter()
            .map(|m| {
                ri_points
                    .iter()
                    .map(|p| lattice.face_of_point(&m.mul_vec(p)).expect("Y is W-invariant"))
                    .collect()
            })
            .collect();
        let fixers: Vec<Vec<usize>> = lattice
            .faces
            .iter()
            .map(|f| {
                let gens = f.cone.all_generators();
                (0..elems.len()).filter(|&e| gens.iter().all(|g| &mats[e].mul_vec(g) == g)).collect()
            })
            .collect();
        let chamber = tits.chamber()?;
        let types: Vec<TypeData> = lattice
            .faces
            .iter()
            .map(|f| {
                let hull = f.cone.hull_basis();
                let lower = Subset::from_indices(
                    (0..n).filter(|&i| hull.iter().all(|b| dot(b, &rb.hvec(i)).is_zero())),
                );
                let upper = Subset::from_indices((0..n).filter(|&i| in_span(&rb.avec(i), &hull)));
                TypeData { lower, upper }
            })
            .collect();
        let upsilon: Vec<usize> = (0..lattice.len())
            .filter(|&f| {
                let cone = &lattice.faces[f].cone;
                cone.contains_ri(&cone.intersect(&chamber).ri_point())
            })
            .collect();
        Ok(PolySubcone {
            tits,
            elems,
            index,
            mul,
            inv,
            mats,
            seeds: seeds.to_vec(),
            y,
            lattice,
            action,
            fixers,
            ri_points,
            upsilon,
            types,
            chamber,
        })
    }

    fn n(&self) -> usize {
        self.tits.rb.n()
    }

    fn group(&self) -> &CoxeterGroup {
        &self.tits.group
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn num_faces(&self) -> usize {
        self.lattice.len()
    }

    pub fn face_cone(&self, f: usize) -> &PolyCone {
        &self.lattice.faces[f].cone
    }

    pub fn face_dim(&self, f: usize) -> usize {
        self.lattice.faces[f].dim
    }

    pub fn elem_index(&self, a: &CoxElem) -> usize {
        self.index[a]
    }

    /// The face `σ·f`.
    pub fn act(&self, sigma: &CoxElem, f: usize) -> usize {
        self.action[self.index[sigma]][f]
    }

    pub fn in_upsilon(&self, f: usize) -> bool {
        self.upsilon.binary_search(&f).is_ok()
    }

    /// `(υ_*(R), υ*(R))` for `R ∈ Υ`.
    pub fn type_maps(&self, f: usize) -> Result<TypeData> {
        if f >= self.num_faces() || !self.in_upsilon(f) {
            return Err(Error::Precondition(format!("face {} is not in the cross section", f + 1)));
        }
        Ok(self.types[f])
    }

    fn t(&self, f: usize) -> TypeData {
        self.types[f]
    }

    pub fn cross_section(&self) -> CrossSection {
        let entries = self
            .upsilon
            .iter()
            .map(|&f| CrossEntry { label: format!("F{}", f + 1), dim: self.face_dim(f), types: self.t(f) })
            .collect();
        let leq = self
            .upsilon
            .iter()
            .map(|&a| self.upsilon.iter().map(|&b| self.lattice.leq(a, b)).collect())
            .collect();
        CrossSection { entries, leq }
    }

    fn canonical(&self, rep: usize, sigma: &CoxElem) -> PolyFace {
        PolyFace { rep, sigma: self.group().min_coset_rep(sigma, self.t(rep).full(), Side::Right) }
    }

    /// Handle `σR` for an arbitrary face.
    pub fn face_normalize(&self, f: usize) -> PolyFace {
        for (e, sigma) in self.elems.iter().enumerate() {
            let g = self.action[self.inv[e]][f];
            if self.in_upsilon(g) {
                return self.canonical(g, sigma);
            }
        }
        unreachable!("every W-orbit of faces meets the cross section")
    }

    pub fn face_of(&self, h: &PolyFace) -> usize {
        self.act(&h.sigma, h.rep)
    }

    /// `σ₁R₁ ⊆ σ₂R₂` iff `R₁ ⊆ R₂` and `σ₁⁻¹σ₂ ∈ W_{υ_*(R₁)} W_{υ*(R₂)}`.
    pub fn face_leq(&self, a: &PolyFace, b: &PolyFace) -> bool {
        self.lattice.leq(a.rep, b.rep)
            && self.group().quotient_in_double_coset_of_identity(
                &a.sigma,
                &b.sigma,
                self.t(a.rep).lower,
                self.t(b.rep).upper,
            )
    }

    /// Extremal element of `Υ` among candidates; `biggest` selects the direction.
    fn extremal(&self, cands: &[usize], biggest: bool) -> Result<usize> {
        cands
            .iter()
            .copied()
            .find(|&c| {
                cands.iter().all(|&d| if biggest { self.lattice.leq(d, c) } else { self.lattice.leq(c, d) })
            })
            .ok_or_else(|| Error::Internal("no extremal element in the cross section".into()))
    }

    /// `σ₁R₁ ∩ σ₂R₂ = σ₁u(R₁ ∩ τR₂)` where `R₁ ∩ τR₂` is the biggest `R ∈ Υ`
    /// below both with `red(τ) ⊆ υ_*(R)`.
    pub fn face_meet(&self, a: &PolyFace, b: &PolyFace) -> Result<PolyFace> {
        let (base, tau) =
            self.group().relative_double_rep(&a.sigma, &b.sigma, self.t(a.rep).full(), self.t(b.rep).full());
        let red = tau.red();
        let cands: Vec<usize> = self
            .upsilon
            .iter()
            .copied()
            .filter(|&r| {
                self.lattice.leq(r, a.rep) && self.lattice.leq(r, b.rep) && red.is_subset(self.t(r).lower)
            })
            .collect();
        Ok(self.canonical(self.extremal(&cands, true)?, &base))
    }

    /// Dual of [`Self::face_meet`] with `red(τ) ⊆ υ*(R)`.
    pub fn face_join(&self, a: &PolyFace, b: &PolyFace) -> Result<PolyFace> {
        let (base, tau) =
            self.group().relative_double_rep(&a.sigma, &b.sigma, self.t(a.rep).full(), self.t(b.rep).full());
        let red = tau.red();
        let cands: Vec<usize> = self
            .upsilon
            .iter()
            .copied()
            .filter(|&r| {
                self.lattice.leq(a.rep, r) && self.lattice.leq(b.rep, r) && red.is_subset(self.t(r).upper)
            })
            .collect();
        Ok(self.canonical(self.extremal(&cands, false)?, &base))
    }

    /// A containment chain of faces as `σS_1 ⊆ ... ⊆ σS_m` with `S_k ∈ Υ`.
    pub fn chain_normalize(&self, chain: &[usize]) -> Result<(CoxElem, Vec<usize>)> {
        let w = self.group();
        let Some(&top) = chain.last() else {
            return Ok((w.identity(), Vec::new()));
        };
        if let Some(&f) = chain.iter().find(|&&f| f >= self.num_faces()) {
            return Err(Error::Precondition(format!("no face {}", f + 1)));
        }
        for p in chain.windows(2) {
            if !self.lattice.leq(p[0], p[1]) {
                return Err(Error::Precondition(format!("face {} is not contained in face {}", p[0] + 1, p[1] + 1)));
            }
        }
        let h = self.face_normalize(top);
        let mut sigma = h.sigma;
        let mut reps = vec![h.rep];
        for k in (0..chain.len() - 1).rev() {
            let moved = self.act(&w.inverse(&sigma), chain[k]);
            let hk = self.face_normalize(moved);
            let above = *reps.last().expect("nonempty");
            let b = split_in_product(w, &hk.sigma, self.t(hk.rep).lower, self.t(above).upper)?;
            sigma = w.mul(&sigma, &w.inverse(&b));
            reps.push(hk.rep);
        }
        reps.reverse();
        let types: Vec<TypeData> = reps.iter().map(|&r| self.t(r)).collect();
        Ok((w.min_coset_rep(&sigma, chain_type(&types, self.n()), Side::Right), reps))
    }

    fn in_parabolic(&self, e: usize, j: Subset) -> bool {
        self.elems[e].red().is_subset(j)
    }

    fn parabolic_order(&self, j: Subset) -> usize {
        (0..self.order()).filter(|&e| self.in_parabolic(e, j)).count()
    }

    /// `R ∩ F̄_J` for `J ⊆ I`.
    fn cut_facet(&self, f: usize, j: Subset) -> PolyCone {
        let rb = &self.tits.rb;
        let mut hs = Vec::new();
        for i in j.iter() {
            hs.push(neg(&rb.hvec(i)));
        }
        self.face_cone(f).intersect(&self.chamber).cut(&hs)
    }

    /// `λ ∈ F_L`: `λ(h_i) = 0` exactly on `L` (and `λ ∈ C̄`).
    fn in_open_facet(&self, lambda: &[Rat], l: Subset) -> bool {
        let vals = self.tits.values(lambda);
        vals.iter().enumerate().all(|(i, v)| if l.contains(i) { v.is_zero() } else { v.is_positive() })
    }

    // -- structure checks; each returns a list of violations ------------------

    /// Stabilizers, the decomposition `R = W_{υ*}(R ∩ F̄_{υ_*})` and `R ∩ C̄ = R ∩ F̄_{υ_*}`.
    pub fn check_cross_section_structure(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for &r in &self.upsilon {
            let t = self.t(r);
            let cone = self.face_cone(r);
            let z: Vec<usize> = self.fixers[r].clone();
            let z_expected: Vec<usize> = (0..self.order()).filter(|&e| self.in_parabolic(e, t.lower)).collect();
            if z != z_expected {
                bad.push(format!("F{}: pointwise stabilizer is not W_{}", r + 1, t.lower));
            }
            let nrm: Vec<usize> = (0..self.order()).filter(|&e| self.action[e][r] == r).collect();
            let nrm_expected: Vec<usize> = (0..self.order()).filter(|&e| self.in_parabolic(e, t.full())).collect();
            if nrm != nrm_expected {
                bad.push(format!("F{}: stabilizer is not W_{}", r + 1, t.full()));
            }
            if !self.tits.family.contains(t.lower) {
                bad.push(format!("F{}: lower type {} is not facial", r + 1, t.lower));
            }
            if !self.rb_separated(t.lower, t.upper) || !t.lower.inter(t.upper).is_empty() {
                bad.push(format!("F{}: lower and upper types are not separated", r + 1));
            }
            let in_ch = cone.intersect(&self.chamber);
            let in_facet = self.cut_facet(r, t.lower);
            if in_ch != in_facet {
                bad.push(format!("F{}: R ∩ C̄ differs from R ∩ F̄ of the lower type", r + 1));
            }
            let q = in_facet.ri_point();
            if !(cone.contains_ri(&q) && self.in_open_facet(&q, t.lower)) {
                bad.push(format!("F{}: ri(R) misses the open facet of the lower type", r + 1));
            }
            let gens: Vec<RatVec> = (0..self.order())
                .filter(|&e| self.in_parabolic(e, t.upper))
                .flat_map(|e| in_facet.all_generators().into_iter().map(move |g| (e, g)))
                .map(|(e, g)| self.mats[e].mul_vec(&g))
                .collect();
            match PolyCone::from_generators(self.tits.rb.dim, &gens, &[]) {
                Ok(c) if &c == cone => {}
                _ => bad.push(format!("F{}: R ≠ W_upper(R ∩ F̄_lower)", r + 1)),
            }
            if !subspace_eq(&cone.hull_basis(), &in_ch.hull_basis(), self.tits.rb.dim) {
                bad.push(format!("F{}: hull of R differs from hull of R ∩ C̄", r + 1));
            }
        }
        bad
    }

    fn rb_separated(&self, a: Subset, b: Subset) -> bool {
        self.tits.rb.gcm.separated(a, b)
    }

    /// Facets of `C̄` met by `ri(R)` and the mid projections onto them.
    pub fn check_mid_projections(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let gcm = &self.tits.rb.gcm;
        for &r in &self.upsilon {
            let t = self.t(r);
            let cone = self.face_cone(r);
            let base = cone.intersect(&self.chamber).ri_point();
            for l in Subset::full(self.n()).subsets() {
                if !t.lower.is_subset(l) {
                    continue;
                }
                let jf = l.minus(t.lower);
                let admissible = jf.is_subset(t.upper) && gcm.is_finite_type(jf);
                let piece = self.cut_facet(r, l);
                let q = piece.ri_point();
                let meets = cone.contains_ri(&q) && self.in_open_facet(&q, l);
                if meets != admissible {
                    bad.push(format!("F{}: ri(R) ∩ F_{} nonempty = {meets}, expected {admissible}", r + 1, l));
                }
                if admissible {
                    let p = self.group().mid_projector(&self.tits.rb, jf)?;
                    let m = p.vec_mul(&base);
                    if !(cone.contains_ri(&m) && self.in_open_facet(&m, l)) {
                        bad.push(format!("F{}: mid projection for {} leaves ri(R) ∩ F_{}", r + 1, jf, l));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Inclusion in `Υ` is inclusion in the chamber, with monotone types.
    pub fn check_inclusion_in_chamber(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for &a in &self.upsilon {
            for &b in &self.upsilon {
                let ca = self.face_cone(a).intersect(&self.chamber);
                let cb = self.face_cone(b).intersect(&self.chamber);
                let direct = self.lattice.leq(a, b);
                if direct != cb.contains_cone(&ca) {
                    bad.push(format!("F{} ⊆ F{} disagrees with the chamber parts", a + 1, b + 1));
                }
                if direct {
                    let (ta, tb) = (self.t(a), self.t(b));
                    if !(tb.lower.is_subset(ta.lower) && ta.upper.is_subset(tb.upper)) {
                        bad.push(format!("types not monotone on F{} ⊆ F{}", a + 1, b + 1));
                    }
                }
            }
        }
        bad
    }

    /// Symbolic `face_leq`/`face_meet`/`face_join` against the polyhedral face lattice on all pairs.
    pub fn check_lattice_oracle(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let handles: Vec<PolyFace> = (0..self.num_faces()).map(|f| self.face_normalize(f)).collect();
        for (f, h) in handles.iter().enumerate() {
            if self.face_of(h) != f {
                bad.push(format!("face {} does not round-trip through its handle", f + 1));
            }
        }
        for a in 0..self.num_faces() {
            for b in 0..self.num_faces() {
                let (ha, hb) = (&handles[a], &handles[b]);
                if self.face_leq(ha, hb) != self.lattice.leq(a, b) {
                    bad.push(format!("leq({}, {}) disagrees", a + 1, b + 1));
                }
                if self.face_of(&self.face_meet(ha, hb)?) != self.lattice.meet(a, b) {
                    bad.push(format!("meet({}, {}) disagrees", a + 1, b + 1));
                }
                if self.face_of(&self.face_join(ha, hb)?) != self.lattice.join(a, b) {
                    bad.push(format!("join({}, {}) disagrees", a + 1, b + 1));
                }
            }
        }
        Ok(bad)
    }

    /// `Υ` is closed under meet and join and contains the top and bottom faces.
    pub fn check_sublattice(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for f in [self.lattice.bottom(), self.lattice.top()] {
            if !self.in_upsilon(f) {
                bad.push(format!("extreme face {} not in the cross section", f + 1));
            }
        }
        for &a in &self.upsilon {
            for &b in &self.upsilon {
                if !self.in_upsilon(self.lattice.meet(a, b)) || !self.in_upsilon(self.lattice.join(a, b)) {
                    bad.push(format!("F{}, F{}: meet or join leaves the cross section", a + 1, b + 1));
                }
            }
        }
        bad
    }

    /// Every chain of length up to three normalizes uniquely, checked against all `|W|` translates.
    pub fn check_chains(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let nf = self.num_faces();
        let mut chains: Vec<Vec<usize>> = (0..nf).map(|f| vec![f]).collect();
        let mut frontier = chains.clone();
        for _ in 0..2 {
            let mut next = Vec::new();
            for c in &frontier {
                let last = *c.last().expect("nonempty");
                for g in (0..nf).filter(|&g| g != last && self.lattice.leq(last, g)) {
                    let mut d = c.clone();
                    d.push(g);
                    next.push(d);
                }
            }
            chains.extend(next.iter().cloned());
            frontier = next;
        }
        for c in &chains {
            let (sigma, reps) = self.chain_normalize(c)?;
            let e = self.index[&sigma];
            if reps.iter().zip(c).any(|(&r, &f)| self.action[e][r] != f) {
                bad.push(format!("chain {c:?}: σ does not translate the normalized chain"));
            }
            let witnesses: Vec<Vec<usize>> = (0..self.order())
                .map(|x| c.iter().map(|&f| self.action[self.inv[x]][f]).collect::<Vec<_>>())
                .filter(|s: &Vec<usize>| s.iter().all(|&f| self.in_upsilon(f)))
                .collect();
            if witnesses.is_empty() || witnesses.iter().any(|s| s != &reps) {
                bad.push(format!("chain {c:?}: normalized chain is not unique"));
            }
        }
        Ok(bad)
    }

    /// Lemmas on reflections: every reflection fixes a face pointwise, fixes it
    /// as a whole but not pointwise, or keeps it strictly on one side.
    pub fn check_reflection_trichotomy(&self) -> Vec<String> {
        let rb = &self.tits.rb;
        let w = self.group();
        let mut bad = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (e, sigma) in self.elems.iter().enumerate() {
            for i in 0..self.n() {
                let s = self.index[&w.simple(i)];
                let t = self.mul[self.mul[e][s]][self.inv[e]];
                if !seen.insert(t) {
                    continue;
                }
                let coroot = w.act_h(rb, sigma, &rb.hvec(i));
                let root = w.act_hstar(rb, sigma, &rb.avec(i));
                for f in 0..self.num_faces() {
                    let cone = self.face_cone(f);
                    let gens = cone.all_generators();
                    let pointwise = cone.hull_basis().iter().all(|b| dot(b, &coroot).is_zero());
                    let whole = in_span(&root, &cone.hull_basis());
                    let vals: Vec<Rat> = gens.iter().map(|g| dot(g, &coroot)).collect();
                    let ri = dot(&self.ri_points[f], &coroot);
                    let pos = ri.is_positive() && vals.iter().all(|v| !v.is_negative());
                    let negs = ri.is_negative() && vals.iter().all(|v| !v.is_positive());
                    let count = [pointwise, whole, pos, negs].iter().filter(|&&x| x).count();
                    if count != 1 {
                        bad.push(format!("face {} and reflection {:?}: {count} cases hold", f + 1, self.elems[t].word_one_based()));
                    }
                    if (self.action[t][f] == f) != (pointwise || whole) || self.fixers[f].contains(&t) != pointwise {
                        bad.push(format!("face {}: reflection action disagrees with its case", f + 1));
                    }
                }
            }
        }
        bad
    }

    /// `(R, σW_{υ(R)}) ↦ σR` is an order isomorphism onto `Fa(Y)`.
    pub fn check_regular_type_map(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &r in &self.upsilon {
            let j = self.t(r).full();
            for e in 0..self.order() {
                if self.group().min_coset_rep(&self.elems[e], j, Side::Right) == self.elems[e] {
                    pairs.push((r, e));
                }
            }
        }
        if pairs.len() != self.num_faces() {
            bad.push(format!("{} type-map pairs for {} faces", pairs.len(), self.num_faces()));
        }
        let img: Vec<usize> = pairs.iter().map(|&(r, e)| self.action[e][r]).collect();
        let mut sorted = img.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != img.len() {
            bad.push("type-map pairs are not sent to distinct faces".into());
        }
        for (a, &(r1, e1)) in pairs.iter().enumerate() {
            for (b, &(r2, e2)) in pairs.iter().enumerate() {
                let c1: Vec<usize> = (0..self.order()).filter(|&x| self.in_parabolic(x, self.t(r1).full())).map(|x| self.mul[e1][x]).collect();
                let meets = (0..self.order())
                    .filter(|&x| self.in_parabolic(x, self.t(r2).full()))
                    .any(|x| c1.contains(&self.mul[e2][x]));
                let formal = self.lattice.leq(r1, r2) && meets;
                if formal != self.lattice.leq(img[a], img[b]) {
                    bad.push(format!("order on pairs {a}, {b} disagrees with face inclusion"));
                }
            }
        }
        bad
    }

    // -- intervals and chains -------------------------------------------------

    pub fn interval(&self, r1: usize, r2: usize) -> Result<IntervalData> {
        let t1 = self.type_maps(r1)?;
        let t2 = self.type_maps(r2)?;
        if !self.lattice.leq(r1, r2) {
            return Err(Error::Precondition(format!("F{} is not contained in F{}", r1 + 1, r2 + 1)));
        }
        let dim = self.tits.rb.dim;
        let j = t1.lower.inter(t2.upper);
        let c1 = self.face_cone(r1).intersect(&self.chamber);
        let c2 = self.face_cone(r2).intersect(&self.chamber);
        let cone = c2.sum(&c1.negate());
        let diff = self.face_cone(r2).sum(&self.face_cone(r1).negate());
        let faces: Vec<usize> =
            (0..self.num_faces()).filter(|&f| self.lattice.leq(r1, f) && self.lattice.leq(f, r2)).collect();
        let diff_lattice = diff.face_lattice();
        let images: Vec<Option<usize>> = faces
            .iter()
            .map(|&f| diff_lattice.index_of(&self.face_cone(f).sum(&self.face_cone(r1).negate())))
            .collect();
        let mut iso = images.iter().all(|x| x.is_some()) && faces.len() == diff_lattice.len();
        if iso {
            let img: Vec<usize> = images.iter().map(|x| x.expect("checked")).collect();
            for (a, &fa) in faces.iter().enumerate() {
                if self.face_dim(fa) != diff_lattice.faces[img[a]].dim {
                    iso = false;
                }
                for (b, &fb) in faces.iter().enumerate() {
                    if self.lattice.leq(fa, fb) != diff_lattice.leq(img[a], img[b]) {
                        iso = false;
                    }
                }
            }
        }
        let rb = &self.tits.rb;
        let chamber_j = if j.is_empty() {
            PolyCone::whole_space(dim)
        } else {
            PolyCone::from_inequalities(dim, &[], &j.iter().map(|i| rb.hvec(i)).collect::<Vec<_>>())?
        };
        let invariant =
            (0..self.order()).filter(|&e| self.in_parabolic(e, j)).all(|e| diff.image(&self.mats[e]) == diff);
        let chamber_part = diff.intersect(&chamber_j) == cone
            && c2.add_subspace(&self.face_cone(r1).hull_basis()) == cone;
        let normalizer: Vec<usize> = (0..self.order())
            .filter(|&e| faces.iter().all(|&f| faces.contains(&self.action[e][f])))
            .collect();
        let centralizer: Vec<usize> =
            (0..self.order()).filter(|&e| faces.iter().all(|&f| self.action[e][f] == f)).collect();
        let norm_set = t1.full().inter(t2.full());
        let cent_set = Subset::from_indices((0..self.n()).filter(|&i| centralizer.contains(&self.index[&self.group().simple(i)])));
        let norm_ok = normalizer.len() == self.parabolic_order(norm_set)
            && normalizer.iter().all(|&e| self.in_parabolic(e, norm_set));
        let cent_ok = centralizer.len() == self.parabolic_order(cent_set)
            && centralizer.iter().all(|&e| self.in_parabolic(e, cent_set));
        Ok(IntervalData {
            lower: r1,
            upper: r2,
            j,
            cone,
            faces,
            order_isomorphism: iso,
            invariant,
            chamber_part,
            normalizer: norm_set,
            normalizer_ok: norm_ok,
            centralizer: cent_set,
            centralizer_ok: cent_ok,
            centralizer_bound: t1.upper.union(t2.lower),
        })
    }

    /// Maximal chains between `a` and `b` in `Fa(Y)`, as face index lists.
    pub fn maximal_chains(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let covers = |x: usize| -> Vec<usize> {
            (0..self.num_faces())
                .filter(|&y| {
                    y != x
                        && self.lattice.leq(x, y)
                        && self.lattice.leq(y, b)
                        && !(0..self.num_faces())
                            .any(|z| z != x && z != y && self.lattice.leq(x, z) && self.lattice.leq(z, y))
                })
                .collect()
        };
        let mut out = Vec::new();
        let mut stack = vec![vec![a]];
        while let Some(c) = stack.pop() {
            let last = *c.last().expect("nonempty");
            if last == b {
                out.push(c);
                continue;
            }
            for y in covers(last) {
                let mut d = c.clone();
                d.push(y);
                stack.push(d);
            }
        }
        out.sort();
        out
    }

    /// Blocks `Υ(Θ)` by the infinite part of the lower type, chain lengths and
    /// type intersections inside each block, and the codimension one conditions.
    pub fn chain_length_check(&self) -> ChainReport {
        let gcm = &self.tits.rb.gcm;
        let mut blocks: Vec<(Subset, Vec<usize>)> = Vec::new();
        for &r in &self.upsilon {
            let theta = gcm.infinite_part(self.t(r).lower);
            match blocks.iter_mut().find(|(t, _)| *t == theta) {
                Some((_, v)) => v.push(r),
                None => blocks.push((theta, vec![r])),
            }
        }
        blocks.sort();
        let mut report = ChainReport { blocks: blocks.clone(), ..Default::default() };
        for (_, block) in &blocks {
            for &r1 in block {
                for &r2 in block {
                    if !self.lattice.leq(r1, r2) {
                        continue;
                    }
                    report.pairs += 1;
                    let want = self.face_dim(r2) - self.face_dim(r1) + 1;
                    for c in self.maximal_chains(r1, r2) {
                        report.chains += 1;
                        if c.len() != want {
                            report.violations.push(format!("chain {c:?} has length {}, expected {want}", c.len()));
                        }
                    }
                    let inter = block
                        .iter()
                        .filter(|&&r| self.lattice.leq(r1, r) && self.lattice.leq(r, r2))
                        .fold(Subset::full(self.n()), |acc, &r| acc.inter(self.t(r).full()));
                    let expected = self.t(r1).upper.union(self.t(r2).lower);
                    if inter != expected {
                        report.violations.push(format!("F{}..F{}: type intersection {inter}, expected {expected}", r1 + 1, r2 + 1));
                    }
                }
            }
        }
        for &r1 in &self.upsilon {
            for &r2 in &self.upsilon {
                if !self.lattice.leq(r1, r2) || self.face_dim(r2) != self.face_dim(r1) + 1 {
                    continue;
                }
                let (a, b) = (self.t(r1), self.t(r2));
                let ok = a.lower.inter(b.upper).is_empty()
                    && b.lower == a.lower.inter(b.full())
                    && a.upper == a.full().inter(b.upper)
                    && a.full().inter(b.full()) == a.upper.union(b.lower);
                if !ok {
                    report.violations.push(format!("codimension one pair F{} ⊆ F{} breaks the type equations", r1 + 1, r2 + 1));
                }
            }
        }
        report
    }

    // -- dual imaginary cone ----------------------------------------------------

    /// Whether the generators of `-K∨`, `K∨ = ΣR⁺₀α_i ∩ (-C̄)`, lie in `Y`.
    pub fn contains_dual_imaginary(&self) -> Result<DualImagReport> {
        let rb = &self.tits.rb;
        let hs: Vec<RatVec> = rb.hvecs().iter().map(|h| neg(h)).collect();
        let k = PolyCone::from_generators(rb.dim, &rb.avecs(), &[])?.cut(&hs);
        let gens: Vec<RatVec> = k.negate().all_generators();
        let faithful = self.t(self.lattice.top()).lower.is_empty();
        let contained = Membership::from_bool(gens.iter().all(|g| self.y.contains(g)));
        Ok(DualImagReport { faithful, generators: gens, contained })
    }

    // -- Renner monoid ------------------------------------------------------------

    pub fn renner(&self) -> RennerMonoid<'_> {
        let nf = self.num_faces();
        let meet: Vec<Vec<usize>> = (0..nf).map(|a| (0..nf).map(|b| self.lattice.meet(a, b)).collect()).collect();
        let canon: Vec<Vec<usize>> = (0..self.order())
            .map(|e| (0..nf).map(|f| self.fixers[f].iter().map(|&z| self.mul[e][z]).min().expect("identity fixes")).collect())
            .collect();
        RennerMonoid { cone: self, meet, canon }
    }
}

/// Data of an interval `[R₁, R₂]` with `R₁ ⊆ R₂` in `Υ`.
#[derive(Clone, Debug)]
pub struct IntervalData {
    pub lower: usize,
    pub upper: usize,
    /// `υ_*(R₁) ∩ υ*(R₂)`.
    pub j: Subset,
    /// `(R₂ ∩ C̄) - (R₁ ∩ C̄)`.
    pub cone: PolyCone,
    pub faces: Vec<usize>,
    /// `R ↦ R - R₁` is a dimension preserving order isomorphism onto `Fa(R₂ - R₁)`.
    pub order_isomorphism: bool,
    /// `R₂ - R₁` is `W_J`-invariant.
    pub invariant: bool,
    /// `(R₂ - R₁) ∩ C̄(J) = (R₂ ∩ C̄) - (R₁ ∩ C̄) = (R₂ ∩ C̄) + (R₁ - R₁)`.
    pub chamber_part: bool,
    pub normalizer: Subset,
    pub normalizer_ok: bool,
    /// Exact generating set of the pointwise stabilizer of the interval.
    pub centralizer: Subset,
    pub centralizer_ok: bool,
    /// `υ*(R₁) ∪ υ_*(R₂)`, always contained in the centralizer set.
    pub centralizer_bound: Subset,
}

#[derive(Clone, Debug, Default)]
pub struct ChainReport {
    pub blocks: Vec<(Subset, Vec<usize>)>,
    pub pairs: usize,
    pub chains: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct DualImagReport {
    pub faithful: bool,
    pub generators: Vec<RatVec>,
    pub contained: Membership,
}

/// `σ[F]`: `σ` is the ShortLex-least element of `σZ_W(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RennerElem {
    pub sigma: usize,
    pub face: usize,
}

/// The monoid `(W ⋉ Fa(Y))/∼` with everything tabulated.
pub struct RennerMonoid<'a> {
    pub cone: &'a PolySubcone,
    meet: Vec<Vec<usize>>,
    canon: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default)]
pub struct RennerReport {
    pub classes: usize,
    pub idempotents: usize,
    pub units: usize,
    pub faithful: bool,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl<'a> RennerMonoid<'a> {
    pub fn make(&self, sigma: &CoxElem, face: usize) -> RennerElem {
        let e = self.cone.elem_index(sigma);
        RennerElem { sigma: self.canon[e][face], face }
    }

    fn norm(&self, e: usize, face: usize) -> RennerElem {
        RennerElem { sigma: self.canon[e][face], face }
    }

    pub fn one(&self) -> RennerElem {
        self.norm(0, self.cone.lattice.top())
    }

    pub fn mul(&self, a: RennerElem, b: RennerElem) -> RennerElem {
        let c = self.cone;
        let moved = c.action[c.inv[b.sigma]][a.face];
        self.norm(c.mul[a.sigma][b.sigma], self.meet[moved][b.face])
    }

    pub fn sigma(&self, a: RennerElem) -> &CoxElem {
        &self.cone.elems[a.sigma]
    }

    pub fn is_unit(&self, a: RennerElem) -> bool {
        a.face == self.cone.lattice.top()
    }

    pub fn is_idempotent(&self, a: RennerElem) -> bool {
        self.mul(a, a) == a
    }

    pub fn elements(&self) -> Vec<RennerElem> {
        let mut out: Vec<RennerElem> = (0..self.cone.order())
            .flat_map(|e| (0..self.cone.num_faces()).map(move |f| (e, f)))
            .map(|(e, f)| self.norm(e, f))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn idempotents(&self) -> Vec<RennerElem> {
        self.elements().into_iter().filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Unit, associativity on all triples, idempotents `= {1[F]}` ordered like `Fa(Y)`,
    /// units `≅ W` when `W` acts faithfully.
    pub fn check(&self) -> RennerReport {
        let c = self.cone;
        let elems = self.elements();
        let mut rep = RennerReport { classes: elems.len(), faithful: c.t(c.lattice.top()).lower.is_empty(), ..Default::default() };
        let one = self.one();
        let expected_classes: usize = c.fixers.iter().map(|z| c.order() / z.len()).sum();
        if elems.len() != expected_classes {
            rep.violations.push(format!("{} classes, expected {expected_classes}", elems.len()));
        }
        for &a in &elems {
            if self.mul(one, a) != a || self.mul(a, one) != a {
                rep.violations.push(format!("unit fails on {a:?}"));
            }
        }
        'outer: for &a in &elems {
            for &b in &elems {
                let ab = self.mul(a, b);
                for &x in &elems {
                    if self.mul(ab, x) != self.mul(a, self.mul(b, x)) {
                        rep.violations.push(format!("associativity fails on {a:?}, {b:?}, {x:?}"));
                        break 'outer;
                    }
                }
            }
        }
        let idem = self.idempotents();
        rep.idempotents = idem.len();
        if idem.len() != c.num_faces() || idem.iter().any(|e| e.sigma != 0) {
            rep.violations.push("idempotents are not exactly the classes 1[F]".into());
        }
        for &e in &idem {
            for &f in &idem {
                let below = self.mul(e, f) == e && self.mul(f, e) == e;
                if below != c.lattice.leq(e.face, f.face) {
                    rep.violations.push(format!("idempotent order disagrees on faces {}, {}", e.face + 1, f.face + 1));
                }
            }
        }
        rep.units = elems.iter().filter(|&&a| self.is_unit(a)).count();
        if rep.faithful {
            if rep.units != c.order() {
                rep.violations.push(format!("{} units for |W| = {}", rep.units, c.order()));
            }
        } else {
            rep.warnings.push("W does not act faithfully on Y; Renner-Coxeter properties not certified".into());
        }
        rep
    }
}

/// `co(Wλ) ∩ C̄ = (λ - ΣR⁺₀α_i) ∩ C̄` for `λ` in the chamber and finite `W`,
/// compared as homogenized cones in `h* ⊕ R`.
pub fn convex_hull_orbit_check(rb: &RootBase, lambda: &[Rat]) -> Result<bool> {
    let w = CoxeterGroup::new(&rb.gcm);
    let elems = w.enum_parabolic(rb.gcm.full())?;
    let dim = rb.dim;
    let lift = |v: &[Rat], t: i64| -> RatVec {
        let mut x = v.to_vec();
        x.push(Rat::from_integer(t.into()));
        x
    };
    let mut chamber: Vec<RatVec> = rb.hvecs().iter().map(|h| lift(h, 0)).collect();
    chamber.push(lift(&vec![Rat::zero(); dim], 1));
    let orbit: Vec<RatVec> = elems.iter().map(|e| lift(&w.act_hstar(rb, e, lambda), 1)).collect();
    let left = PolyCone::from_generators(dim + 1, &orbit, &[])?.cut(&chamber);
    let mut gens: Vec<RatVec> = rb.avecs().iter().map(|a| lift(&neg(a), 0)).collect();
    gens.push(lift(lambda, 1));
    let right = PolyCone::from_generators(dim + 1, &gens, &[])?.cut(&chamber);
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ivec;
    use crate::fixtures;
    use crate::realization::Characteristic;

    /// `A_2` with one trivial extra coordinate, so that `cc(Wρ)` is a hexagonal cone.
    fn a2_hexagonal() -> PolySubcone {
        let rb = RootBase::build(&fixtures::a2().gcm, &Characteristic::free(1)).unwrap();
        let rho = rho_plus(&rb, 1);
        PolySubcone::new(&rb, &[rho]).unwrap()
    }

    /// The point with `λ(h_i) = 1` and last coordinate `t`.
    fn rho_plus(rb: &RootBase, t: i64) -> RatVec {
        let n = rb.n();
        let mut eqs: Vec<RatVec> = rb.hvecs().iter().map(|h| h.clone()).collect();
        let mut rhs: RatVec = vec![Rat::from_integer(1.into()); n];
        if rb.dim > n {
            let mut e = vec![Rat::zero(); rb.dim];
            e[rb.dim - 1] = Rat::from_integer(1.into());
            eqs.push(e);
            rhs.push(Rat::from_integer(t.into()));
        }
        RatMat::from_rows(&eqs, rb.dim).solve(&rhs).unwrap()
    }

    #[test]
    fn hexagonal_counts() {
        let y = a2_hexagonal();
        assert_eq!(y.order(), 6);
        assert_eq!(y.num_faces(), 14);
        assert_eq!(y.upsilon.len(), 5);
        let cs = y.cross_section();
        let dims: Vec<usize> = cs.entries.iter().map(|e| e.dim).collect();
        assert_eq!(dims, vec![0, 1, 2, 2, 3]);
        let top = cs.entries.last().unwrap().types;
        assert_eq!((top.lower, top.upper), (Subset::EMPTY, Subset::full(2)));
        let bottom = cs.entries[0].types;
        assert_eq!((bottom.lower, bottom.upper), (Subset::full(2), Subset::EMPTY));
        // The ray through ρ is fixed by nothing; each 2-face meeting C̄ is flipped by one reflection.
        assert_eq!(cs.entries[1].types, TypeData { lower: Subset::EMPTY, upper: Subset::EMPTY });
        let uppers: Vec<Subset> = cs.entries[2..4].iter().map(|e| e.types.upper).collect();
        assert_eq!(uppers, vec![Subset::singleton(0), Subset::singleton(1)]);
    }

    #[test]
    fn empty_seed_gives_zero_cone() {
        let y = PolySubcone::new(&fixtures::a2(), &[]).unwrap();
        assert_eq!(y.num_faces(), 1);
        assert_eq!(y.upsilon, vec![0]);
        assert!(y.chain_length_check().violations.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let rb = fixtures::a2();
        assert!(matches!(PolySubcone::new(&rb, &[ivec(&[-1, 0])]), Err(Error::Precondition(_))));
        assert!(matches!(PolySubcone::new(&fixtures::affine_a2(), &[]), Err(Error::Precondition(_))));
        assert!(matches!(PolySubcone::new(&rb, &[ivec(&[1])]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn hexagonal_structure() {
        let y = a2_hexagonal();
        assert_eq!(y.check_cross_section_structure(), Vec::<String>::new());
        assert_eq!(y.check_mid_projections().unwrap(), Vec::<String>::new());
        assert_eq!(y.check_inclusion_in_chamber(), Vec::<String>::new());
        assert_eq!(y.check_lattice_oracle().unwrap(), Vec::<String>::new());
        assert_eq!(y.check_sublattice(), Vec::<String>::new());
        assert_eq!(y.check_chains().unwrap(), Vec::<String>::new());
        assert_eq!(y.check_reflection_trichotomy(), Vec::<String>::new());
        assert_eq!(y.check_regular_type_map(), Vec::<String>::new());
    }

    #[test]
    fn hexagonal_renner() {
        let y = a2_hexagonal();
        let m = y.renner();
        let rep = m.check();
        assert_eq!(rep.violations, Vec::<String>::new());
        assert_eq!(rep.classes, 79);
        assert_eq!(rep.idempotents, 14);
        assert_eq!(rep.units, 6);
        assert!(rep.faithful);
    }

    #[test]
    fn hexagonal_intervals_and_chains() {
        let y = a2_hexagonal();
        let full = y.interval(y.lattice.bottom(), y.lattice.top()).unwrap();
        assert_eq!(full.faces.len(), 14);
        assert!(full.order_isomorphism && full.invariant && full.chamber_part);
        for &a in &y.upsilon {
            for &b in &y.upsilon {
                if y.lattice.leq(a, b) {
                    let iv = y.interval(a, b).unwrap();
                    assert!(iv.order_isomorphism && iv.invariant && iv.chamber_part, "[{a},{b}]");
                    assert!(iv.normalizer_ok && iv.centralizer_ok);
                    assert_eq!(iv.centralizer, iv.centralizer_bound);
                } else {
                    assert!(y.interval(a, b).is_err());
                }
            }
        }
        let rep = y.chain_length_check();
        assert_eq!(rep.blocks.len(), 1);
        assert_eq!(rep.violations, Vec::<String>::new());
        assert_eq!(y.maximal_chains(y.lattice.bottom(), y.lattice.top()).len(), 12);
    }

    #[test]
    fn hexagonal_dual_imaginary_and_orbit_hull() {
        let y = a2_hexagonal();
        let d = y.contains_dual_imaginary().unwrap();
        assert!(d.faithful);
        assert_eq!(d.contained, Membership::In);
        assert!(d.generators.iter().all(|g| g.iter().all(|x| x.is_zero())));
        let rho = rho_plus(&y.tits.rb, 1);
        assert!(convex_hull_orbit_check(&y.tits.rb, &rho).unwrap());
        assert!(convex_hull_orbit_check(&fixtures::b2(), &ivec(&[2, 1])).unwrap());
    }

    #[test]
    fn not_a_chain_is_rejected() {
        let y = a2_hexagonal();
        let top = y.lattice.top();
        assert!(matches!(y.chain_normalize(&[top, y.lattice.bottom()]), Err(Error::Precondition(_))));
    }

    #[test]
    fn other_instances() {
        let b2 = fixtures::b2();
        let a3 = fixtures::a3();
        let cases: Vec<(RootBase, Vec<RatVec>)> = vec![
            (b2.clone(), vec![ivec(&[1, 0])]),
            (b2, vec![ivec(&[1, 0]), ivec(&[0, 1])]),
            (fixtures::g2(), vec![ivec(&[1, 1])]),
            (fixtures::a1xa1(), vec![ivec(&[1, 0])]),
            (a3, vec![ivec(&[0, 1, 0])]),
        ];
        for (rb, seeds) in cases {
            let seeds: Vec<RatVec> = seeds.iter().map(|s| RatMat::from_rows(&rb.hvecs(), rb.dim).solve(s).unwrap()).collect();
            let y = PolySubcone::new(&rb, &seeds).unwrap();
            assert_eq!(y.check_cross_section_structure(), Vec::<String>::new());
            assert_eq!(y.check_lattice_oracle().unwrap(), Vec::<String>::new());
            assert_eq!(y.check_chains().unwrap(), Vec::<String>::new());
            assert_eq!(y.chain_length_check().violations, Vec::<String>::new());
            assert_eq!(y.renner().check().violations, Vec::<String>::new());
        }
    }

    #[test]
    fn tits_kind() {
        let tits = TitsCone::new(&fixtures::six_cycle_case('d')).unwrap();
        let cs = tits_cross_section(&tits);
        assert_eq!(cs.len(), 5);
        let tb = TitsCone::new(&fixtures::six_cycle_case('b')).unwrap();
        assert_eq!(tits_cross_section(&tb).len(), 17);
        let empty = tits_type_maps(&tits, Subset::EMPTY).unwrap();
        assert_eq!(empty, TypeData { lower: Subset::EMPTY, upper: Subset::full(6) });
        let handles = tits.handles_up_to(2);
        for a in &handles {
            for b in &handles {
                assert_eq!(tits_face_leq(&tits, a, b), tits.leq(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn tits_chains_normalize() {
        let tits = TitsCone::new(&fixtures::six_cycle_case('d')).unwrap();
        let handles = tits.handles_up_to(2);
        let mut checked = 0;
        for a in &handles {
            for b in handles.iter().filter(|b| *b != a && tits.leq(a, b)) {
                let (sigma, thetas) = tits_chain_normalize(&tits, &[a.clone(), b.clone()]).unwrap();
                assert_eq!(thetas, vec![a.theta, b.theta]);
                assert_eq!(&tits.handle(a.theta, &sigma).unwrap(), a);
                assert_eq!(&tits.handle(b.theta, &sigma).unwrap(), b);
                checked += 1;
            }
        }
        assert!(checked > 0);
        let top = tits.face_r(Subset::EMPTY).unwrap();
        let bottom = tits.face_r(*tits.family.special.last().unwrap()).unwrap();
        assert!(tits_chain_normalize(&tits, &[top, bottom]).is_err());
    }

    #[test]
    fn tits_renner_small() {
        let tits = TitsCone::new(&fixtures::six_cycle_case('d')).unwrap();
        let w = &tits.group;
        let faces = tits.handles_up_to(1);
        let sigmas = w.elements_up_to(1);
        let elems: Vec<TitsRennerElem> =
            sigmas.iter().flat_map(|s| faces.iter().map(move |f| (s, f))).map(|(s, f)| tits_renner_make(&tits, s, f)).collect();
        let one = tits_renner_make(&tits, &w.identity(), &tits.face_r(Subset::EMPTY).unwrap());
        for a in elems.iter().take(12) {
            assert_eq!(&tits_renner_mul(&tits, &one, a).unwrap(), a);
            assert_eq!(&tits_renner_mul(&tits, a, &one).unwrap(), a);
            for b in elems.iter().take(12) {
                for c in elems.iter().take(6) {
                    let l = tits_renner_mul(&tits, &tits_renner_mul(&tits, a, b).unwrap(), c).unwrap();
                    let r = tits_renner_mul(&tits, a, &tits_renner_mul(&tits, b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}
