//! Realizations of a GCM with prescribed characteristic, and the free cover.

use num::{Signed, Zero};
use serde::Deserialize;

use crate::cartan::Gcm;
use crate::error::{Error, Result};
use crate::exactla::{
    annihilator, feasible_point, fmt_rat, parse_rat, span_basis, Rat, RatMat, RatVec,
};
use crate::subset::Subset;

/// Spaces of linear relations of the `h_i` and the `α_i`, plus the defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characteristic {
    pub l_h: Vec<RatVec>,
    pub l_alpha: Vec<RatVec>,
    pub defect: usize,
}

impl Characteristic {
    /// Bases brought to reduced echelon form, so equal subspaces compare equal.
    pub fn canonical(&self, n: usize) -> Characteristic {
        Characteristic { l_h: span_basis(&self.l_h, n), l_alpha: span_basis(&self.l_alpha, n), defect: self.defect }
    }

    pub fn free(defect: usize) -> Characteristic {
        Characteristic { l_h: vec![], l_alpha: vec![], defect }
    }
}

/// A realization `(h, (h_i), (α_i))` of a GCM whose `h_i` are positively independent.
///
/// Vectors of `h` are coordinate columns, covectors are rows; `α_i(h_j) = a_ji`.
#[derive(Clone, Debug)]
pub struct RootBase {
    pub gcm: Gcm,
    pub dim: usize,
    /// `dim × n`, column `i` is `h_i`.
    pub h: RatMat,
    /// `n × dim`, row `i` is `α_i`.
    pub alpha: RatMat,
    pub characteristic: Characteristic,
}

/// A linear map `φ` with `φ(h_i) = h'_i` and `α'_i ∘ φ = α_i`.
#[derive(Clone, Debug)]
pub struct RealizationMorphism {
    pub source: RootBase,
    pub target: RootBase,
    pub phi: RatMat,
}

impl RealizationMorphism {
    pub fn check(&self) -> bool {
        self.phi.mul(&self.source.h) == self.target.h && self.target.alpha.mul(&self.phi) == self.source.alpha
    }
}

/// Result of [`RootBase::free_cover`]: `φ: h'' → h'` surjective, `ψ: h → h'` injective.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub free: RootBase,
    pub middle: RootBase,
    pub phi: RealizationMorphism,
    pub psi: RealizationMorphism,
}

impl RootBase {
    /// Explicit realization with the given characteristic.
    ///
    /// Coordinates are `h = R^{n-k_h} ⊕ R^c ⊕ R^d` with `c` the codimension of
    /// `L_alpha` in `ker A`: `h_i` lives in the first block as the image of `e_i`
    /// modulo `L_h`, and `α_i = (X_i, G_i, 0)` where `X` factors `Aᵀ` through the
    /// first block and `G` separates `ker A` modulo `L_alpha`.
    pub fn build(gcm: &Gcm, ch: &Characteristic) -> Result<RootBase> {
        let n = gcm.n();
        let a = gcm.matrix();
        crate::exactla::check_dim(&ch.l_h, n, "L_h row")?;
        crate::exactla::check_dim(&ch.l_alpha, n, "L_alpha row")?;
        let at = a.transpose();
        for (k, r) in ch.l_h.iter().enumerate() {
            if !at.mul_vec(r).iter().all(|x| x.is_zero()) {
                return Err(Error::Precondition(format!("L_h row {} is not in ker(A^T)", k + 1)));
            }
        }
        for (k, r) in ch.l_alpha.iter().enumerate() {
            if !a.mul_vec(r).iter().all(|x| x.is_zero()) {
                return Err(Error::Precondition(format!("L_alpha row {} is not in ker(A)", k + 1)));
            }
        }
        let ch = ch.canonical(n);
        check_root_base(&ch.l_h, n)?;

        // First block: H0 has kernel L_h and full row rank.
        let h0 = RatMat::from_rows(&annihilator(&ch.l_h, n), n);
        let p = h0.rows();
        // X H0 = A^T; H0 has full row rank, so X = A^T H0^T (H0 H0^T)^{-1}.
        let h0t = h0.transpose();
        let gram_inv = h0.mul(&h0t).inverse().expect("full row rank");
        let x = at.mul(&h0t).mul(&gram_inv);

        let g = separating_block(a, &ch.l_alpha);
        let c = g.cols();
        let dim = p + c + ch.defect;
        let mut h = RatMat::zeros(dim, n);
        for r in 0..p {
            for i in 0..n {
                h[(r, i)] = h0[(r, i)].clone();
            }
        }
        let mut alpha = RatMat::zeros(n, dim);
        for i in 0..n {
            for col in 0..p {
                alpha[(i, col)] = x[(i, col)].clone();
            }
            for col in 0..c {
                alpha[(i, p + col)] = g[(i, col)].clone();
            }
        }
        let rb = RootBase { gcm: gcm.clone(), dim, h, alpha, characteristic: ch };
        debug_assert!(rb.alpha.mul(&rb.h) == at);
        Ok(rb)
    }

    pub fn n(&self) -> usize {
        self.gcm.n()
    }

    pub fn hvec(&self, i: usize) -> RatVec {
        self.h.col(i)
    }

    pub fn avec(&self, i: usize) -> RatVec {
        self.alpha.row(i).to_vec()
    }

    pub fn hvecs(&self) -> Vec<RatVec> {
        self.h.col_vecs()
    }

    pub fn avecs(&self) -> Vec<RatVec> {
        self.alpha.row_vecs()
    }

    pub fn l_h(&self) -> &[RatVec] {
        &self.characteristic.l_h
    }

    pub fn l_alpha(&self) -> &[RatVec] {
        &self.characteristic.l_alpha
    }

    pub fn is_free(&self) -> bool {
        self.characteristic.l_h.is_empty() && self.characteristic.l_alpha.is_empty()
    }

    /// Recomputes the characteristic from the coordinates.
    pub fn characteristic(&self) -> Characteristic {
        let n = self.n();
        let l_h = span_basis(&self.h.kernel_basis(), n);
        let l_alpha = span_basis(&self.alpha.transpose().kernel_basis(), n);
        let rank_alpha = self.alpha.rank();
        let rank_h = self.h.rank();
        let defect = self.dim + self.gcm.matrix().rank() - rank_alpha - rank_h;
        Characteristic { l_h, l_alpha, defect }
    }

    /// `h'' →> h' <-< h` with `h''` free of the same defect and `h'` having
    /// characteristic `(L_h, 0, d)`.
    pub fn free_cover(&self) -> Result<FreeCover> {
        let n = self.n();
        let d = self.characteristic.defect;
        let free = RootBase::build(&self.gcm, &Characteristic::free(d))?;
        let middle = RootBase::build(
            &self.gcm,
            &Characteristic { l_h: self.characteristic.l_h.clone(), l_alpha: vec![], defect: d },
        )?;
        let p_mid = n - self.characteristic.l_h.len();
        let c_free = free.dim - n - d;
        // phi = blockdiag(H0', I, I).
        let mut phi = RatMat::zeros(middle.dim, free.dim);
        for r in 0..p_mid {
            for i in 0..n {
                phi[(r, i)] = middle.h[(r, i)].clone();
            }
        }
        for k in 0..c_free + d {
            phi[(p_mid + k, n + k)] = Rat::from_integer(1.into());
        }
        // psi = blockdiag(I, K'^T G, I) where K' spans ker A (the columns of G'
        // are K'(K'^T K')^{-1}), so G' K'^T G = G.
        let c_self = self.dim - p_mid - d;
        let kprime = RatMat::from_cols(&self.gcm.matrix().kernel_basis(), n);
        let g_self = self.alpha.submatrix(&(0..n).collect::<Vec<_>>(), &(p_mid..p_mid + c_self).collect::<Vec<_>>());
        let block = kprime.transpose().mul(&g_self);
        let mut psi = RatMat::zeros(middle.dim, self.dim);
        for r in 0..p_mid {
            psi[(r, r)] = Rat::from_integer(1.into());
        }
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                psi[(p_mid + r, p_mid + c)] = block[(r, c)].clone();
            }
        }
        for k in 0..d {
            psi[(p_mid + c_free + k, p_mid + c_self + k)] = Rat::from_integer(1.into());
        }
        let phi = RealizationMorphism { source: free.clone(), target: middle.clone(), phi };
        let psi = RealizationMorphism { source: self.clone(), target: middle.clone(), phi: psi };
        if !phi.check() || !psi.check() {
            return Err(Error::Internal("free cover morphism identities fail".into()));
        }
        Ok(FreeCover { free, middle, phi, psi })
    }

    /// `(I_0, I_1)`: `I_0` is the largest support of a nonnegative relation among the `α_i`.
    pub fn exceptional_indices(&self) -> (Subset, Subset) {
        let n = self.n();
        let basis = &self.characteristic.l_alpha;
        let mut i0 = Subset::EMPTY;
        if !basis.is_empty() {
            // r = B t, r >= 0, r_i > 0.
            let bt = RatMat::from_cols(basis, n);
            let rows: Vec<RatVec> = bt.row_vecs();
            for i in 0..n {
                if i0.contains(i) {
                    continue;
                }
                if let Ok(Some(t)) = feasible_point(&[], &rows, &[rows[i].clone()]) {
                    let r = bt.mul_vec(&t);
                    for (j, x) in r.iter().enumerate() {
                        if x.is_positive() {
                            i0 = i0.with(j);
                        }
                    }
                }
            }
        }
        (i0, i0.complement(n))
    }
}

/// Columns of `G = K (Kᵀ K)^{-1} [0; I_c]` where `K = [L_alpha | complement]` spans `ker A`.
fn separating_block(a: &RatMat, l_alpha: &[RatVec]) -> RatMat {
    let n = a.rows();
    let ker = a.kernel_basis();
    let mut k_cols: Vec<RatVec> = l_alpha.to_vec();
    for v in &ker {
        let mut trial = k_cols.clone();
        trial.push(v.clone());
        if crate::exactla::span_rank(&trial, n) == trial.len() {
            k_cols = trial;
        }
    }
    let c = k_cols.len() - l_alpha.len();
    if k_cols.is_empty() {
        return RatMat::zeros(n, 0);
    }
    let k = RatMat::from_cols(&k_cols, n);
    let kk_inv = k.transpose().mul(&k).inverse().expect("independent columns");
    let m = k_cols.len();
    let mut e = RatMat::zeros(m, c);
    for j in 0..c {
        e[(m - c + j, j)] = Rat::from_integer(1.into());
    }
    k.mul(&kk_inv).mul(&e)
}

fn check_root_base(l_h: &[RatVec], n: usize) -> Result<()> {
    if l_h.is_empty() {
        return Ok(());
    }
    // r = B t with r >= 0 and sum r > 0.
    let bt = RatMat::from_cols(l_h, n);
    let rows = bt.row_vecs();
    let total: RatVec = (0..l_h.len()).map(|c| rows.iter().map(|r| r[c].clone()).sum()).collect();
    if let Some(t) = feasible_point(&[], &rows, &[total])? {
        let r: Vec<String> = bt.mul_vec(&t).iter().map(fmt_rat).collect();
        return Err(Error::RootBaseViolation(format!("L_h contains the nonnegative vector ({})", r.join(","))));
    }
    Ok(())
}

/// The input document: a GCM with an optional characteristic.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub n: usize,
    pub cartan: Vec<Vec<RatEntry>>,
    #[serde(rename = "L_h", default)]
    pub l_h: Vec<Vec<RatEntry>>,
    #[serde(rename = "L_alpha", default)]
    pub l_alpha: Vec<Vec<RatEntry>>,
    #[serde(default)]
    pub defect: usize,
}

/// A rational given as a string `"p/q"` or as a JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RatEntry {
    Str(String),
    Int(i64),
}

impl RatEntry {
    fn value(&self, field: &str) -> Result<Rat> {
        match self {
            RatEntry::Int(v) => Ok(Rat::from_integer((*v).into())),
            RatEntry::Str(s) => parse_rat(s).map_err(|_| Error::Parse(format!("{field}: cannot parse '{s}' as a rational"))),
        }
    }
}

fn rows_of(entries: &[Vec<RatEntry>], n: usize, field: &str) -> Result<Vec<RatVec>> {
    entries
        .iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != n {
                return Err(Error::Parse(format!("{field}[{r}]: expected {n} entries, got {}", row.len())));
            }
            row.iter().enumerate().map(|(c, e)| e.value(&format!("{field}[{r}][{c}]"))).collect()
        })
        .collect()
}

impl SystemSpec {
    pub fn from_json(s: &str) -> Result<SystemSpec> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn gcm(&self) -> Result<Gcm> {
        if self.cartan.len() != self.n {
            return Err(Error::Parse(format!("cartan: expected {} rows, got {}", self.n, self.cartan.len())));
        }
        let rows = rows_of(&self.cartan, self.n, "cartan")?;
        Gcm::validate(&RatMat::from_rows(&rows, self.n))
    }

    pub fn characteristic(&self) -> Result<Characteristic> {
        Ok(Characteristic {
            l_h: rows_of(&self.l_h, self.n, "L_h")?,
            l_alpha: rows_of(&self.l_alpha, self.n, "L_alpha")?,
            defect: self.defect,
        })
    }

    pub fn root_base(&self) -> Result<RootBase> {
        RootBase::build(&self.gcm()?, &self.characteristic()?)
    }
}

/// Does the positive span of `hvecs` contain no line? Used to sanity check root bases.
pub fn h_positively_independent(rb: &RootBase) -> bool {
    crate::exactla::positively_independent(&rb.hvecs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{ivec, rat};
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn free_minimal_finite_is_standard() {
        let rb = fixtures::a2();
        assert_eq!(rb.dim, 2);
        assert_eq!(rb.h, RatMat::identity(2));
        assert_eq!(rb.characteristic(), Characteristic::free(0));
        assert_eq!(rb.exceptional_indices().0, Subset::EMPTY);
    }

    #[test]
    fn degenerate_affine() {
        let rb = fixtures::affine_a1_degenerate();
        assert_eq!(rb.dim, 2);
        assert_eq!(rb.avec(1), rb.avec(0).iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(rb.hvec(0), ivec(&[1, 0]));
        assert_eq!(rb.exceptional_indices().0, Subset::full(2));
    }

    #[test]
    fn six_cycle_dimensions() {
        assert_eq!(fixtures::six_cycle_case('a').dim, 8);
        assert_eq!(fixtures::six_cycle_case('b').dim, 7);
        assert_eq!(fixtures::six_cycle_case('d').dim, 6);
        let d = fixtures::six_cycle_case('d');
        assert_eq!(d.characteristic().l_h.len(), 2);
    }

    #[test]
    fn free_cover_kernel_case_b() {
        let rb = fixtures::six_cycle_case('b');
        let fc = rb.free_cover().unwrap();
        let ker = fc.phi.phi.kernel_basis();
        assert_eq!(ker.len(), 1);
        // sum r_i h''_i with r = (1,2,1,-1,-2,-1)
        let r = ivec(&[1, 2, 1, -1, -2, -1]);
        let v = fc.free.h.mul_vec(&r);
        assert!(crate::exactla::in_span(&v, &ker));
        assert!(fc.psi.phi.kernel_basis().is_empty());
    }

    #[test]
    fn rejects_nonnegative_relation() {
        let g = Gcm::from_i64(&[&[2, -2], &[-2, 2]]).unwrap();
        let err = RootBase::build(&g, &Characteristic { l_h: vec![ivec(&[1, 1])], l_alpha: vec![], defect: 0 });
        assert!(matches!(err, Err(Error::RootBaseViolation(_))));
        let err = RootBase::build(&g, &Characteristic { l_h: vec![ivec(&[1, 0])], l_alpha: vec![], defect: 0 });
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn parses_system_spec() {
        let s = r#"{"n":2,"cartan":[["2","-1"],["-1","2"]]}"#;
        let rb = SystemSpec::from_json(s).unwrap().root_base().unwrap();
        assert_eq!(rb.dim, 2);
        let bad = r#"{"n":2,"cartan":[["2","x"],["-1","2"]]}"#;
        let e = SystemSpec::from_json(bad).unwrap().gcm().unwrap_err();
        assert!(e.to_string().contains("cartan[0][1]"));
        let frac = r#"{"n":2,"cartan":[["2","-1/2"],["-2","2"]]}"#;
        assert_eq!(SystemSpec::from_json(frac).unwrap().gcm().unwrap().entry(0, 1), &Rat::new((-1).into(), 2.into()));
        let _ = rat(0);
    }

    fn random_gcm(n: usize, codes: &[u8]) -> Gcm {
        let mut a = RatMat::identity(n).scaled(&rat(2));
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = match codes[k % codes.len()] % 7 {
                    0 | 1 => (0, 0),
                    2 => (-1, -1),
                    3 => (-1, -2),
                    4 => (-2, -2),
                    5 => (-1, -4),
                    _ => (-2, -3),
                };
                k += 1;
                a[(i, j)] = rat(x);
                a[(j, i)] = rat(y);
            }
        }
        Gcm::validate(&a).unwrap()
    }

    fn combos(basis: &[RatVec], coeffs: &[i64], count: usize, n: usize) -> Vec<RatVec> {
        (0..count)
            .map(|c| {
                let mut v = crate::exactla::zero_vec(n);
                for (b, vec) in basis.iter().enumerate() {
                    let k = rat(coeffs[(c * 7 + b * 3) % coeffs.len()]);
                    v = crate::exactla::axpy(&v, &k, vec);
                }
                v
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn characteristic_round_trip(
            n in 1usize..=6,
            codes in proptest::collection::vec(0u8..7, 15),
            coeffs in proptest::collection::vec(-2i64..=2, 12),
            kh in 0usize..3,
            ka in 0usize..3,
            d in 0usize..3,
        ) {
            let g = random_gcm(n, &codes);
            let kt = g.matrix().transpose().kernel_basis();
            let k = g.matrix().kernel_basis();
            let ch = Characteristic {
                l_h: combos(&kt, &coeffs, kh.min(kt.len()), n),
                l_alpha: combos(&k, &coeffs[3..], ka.min(k.len()), n),
                defect: d,
            };
            let rb = match RootBase::build(&g, &ch) {
                Ok(rb) => rb,
                Err(Error::RootBaseViolation(_)) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            prop_assert_eq!(rb.characteristic(), ch.canonical(n));
            let r = g.matrix().rank();
            prop_assert_eq!(rb.dim, 2 * n - r - rb.l_h().len() - rb.l_alpha().len() + d);
            let fc = rb.free_cover().unwrap();
            prop_assert!(fc.phi.check() && fc.psi.check());
            prop_assert!(crate::exactla::subspace_eq(
                &fc.phi.phi.kernel_basis(),
                &rb.l_h().iter().map(|x| fc.free.h.mul_vec(x)).collect::<Vec<_>>(),
                fc.free.dim
            ));
            prop_assert!(fc.psi.phi.kernel_basis().is_empty());
            // im(psi) is the annihilator of [L_alpha] in the middle realization.
            let la: Vec<RatVec> = rb.l_alpha().iter().map(|c| fc.middle.alpha.vec_mul(c)).collect();
            prop_assert!(crate::exactla::subspace_eq(
                &fc.psi.phi.col_vecs(),
                &crate::exactla::annihilator(&la, fc.middle.dim),
                fc.middle.dim
            ));
            let (i0, _) = rb.exceptional_indices();
            let c = g.classify(i0);
            prop_assert_eq!(c.aff, i0);
            prop_assert!(g.components(i0).iter().all(|comp| g.components(g.full()).contains(comp)));
        }
    }
}
