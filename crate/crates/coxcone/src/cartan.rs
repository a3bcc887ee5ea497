//! Generalized Cartan matrices: validation, Coxeter labels, components and types.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, RatMat};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeLabel {
    Fin,
    Aff,
    Ind,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::Fin => "Fin",
            TypeLabel::Aff => "Aff",
            TypeLabel::Ind => "Ind",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypClass {
    Hyp0,
    Hyp1,
    Neither,
}

/// Types of the components of a subset, with the aggregated unions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub components: Vec<(Subset, TypeLabel)>,
    pub fin: Subset,
    pub aff: Subset,
    pub ind: Subset,
}

impl Classification {
    /// Union of the components of nonfinite type.
    pub fn infinite(&self) -> Subset {
        self.aff.union(self.ind)
    }
}

pub struct Gcm {
    a: RatMat,
    /// Coxeter labels, `None` for ∞.
    m: Vec<Vec<Option<u32>>>,
    adj: Vec<Subset>,
    memo: Mutex<HashMap<u64, TypeLabel>>,
}

impl Clone for Gcm {
    fn clone(&self) -> Self {
        Gcm {
            a: self.a.clone(),
            m: self.m.clone(),
            adj: self.adj.clone(),
            memo: Mutex::new(self.memo.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gcm").field("a", &self.a).finish()
    }
}

impl PartialEq for Gcm {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl Gcm {
    pub fn validate(a: &RatMat) -> Result<Gcm> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::DimensionMismatch(format!("Cartan matrix is {}x{}", n, a.cols())));
        }
        if n > 64 {
            return Err(Error::SizeBound(format!("{n} indices, at most 64 supported")));
        }
        let mut m = vec![vec![Some(2u32); n]; n];
        let mut adj = vec![Subset::EMPTY; n];
        let four = rat(4);
        for i in 0..n {
            if a[(i, i)] != rat(2) {
                return Err(Error::NotGcm { i: i + 1, j: i + 1, reason: "diagonal entry is not 2".into() });
            }
            m[i][i] = Some(1);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (x, y) = (&a[(i, j)], &a[(j, i)]);
                if x.is_positive() {
                    return Err(Error::NotGcm { i: i + 1, j: j + 1, reason: "positive off-diagonal entry".into() });
                }
                if x.is_zero() != y.is_zero() {
                    return Err(Error::NotGcm { i: i + 1, j: j + 1, reason: "a_ij and a_ji not both zero".into() });
                }
                if x.is_zero() {
                    continue;
                }
                adj[i] = adj[i].with(j);
                let p = x * y;
                m[i][j] = if p >= four {
                    None
                } else if p == rat(1) {
                    Some(3)
                } else if p == rat(2) {
                    Some(4)
                } else if p == rat(3) {
                    Some(6)
                } else {
                    return Err(Error::NotGcm {
                        i: i + 1,
                        j: j + 1,
                        reason: format!("a_ij*a_ji = {p} is not 4cos^2(pi/m) for a rational label"),
                    });
                };
            }
        }
        Ok(Gcm { a: a.clone(), m, adj, memo: Mutex::new(HashMap::new()) })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Gcm> {
        Gcm::validate(&RatMat::from_i64(rows))
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &RatMat {
        &self.a
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.a[(i, j)]
    }

    /// Coxeter label `m_ij`, `None` meaning ∞.
    pub fn coxeter_label(&self, i: usize, j: usize) -> Option<u32> {
        self.m[i][j]
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n())
    }

    pub fn submatrix(&self, j: Subset) -> RatMat {
        let idx = j.indices();
        self.a.submatrix(&idx, &idx)
    }

    pub fn neighbours(&self, i: usize) -> Subset {
        self.adj[i]
    }

    pub fn adjacent(&self, j: Subset, k: Subset) -> bool {
        j.iter().any(|i| !self.adj[i].inter(k).is_empty())
    }

    pub fn separated(&self, j: Subset, k: Subset) -> bool {
        !self.adjacent(j, k)
    }

    /// Connected components of `j`, ordered by smallest element.
    pub fn components(&self, j: Subset) -> Vec<Subset> {
        let mut rest = j;
        let mut out = Vec::new();
        while let Some(s) = rest.min_elem() {
            let mut comp = Subset::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = Subset::EMPTY;
                for i in frontier.iter() {
                    next = next.union(self.adj[i]);
                }
                frontier = next.inter(j).minus(comp);
                comp = comp.union(frontier);
            }
            rest = rest.minus(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, j: Subset) -> bool {
        !j.is_empty() && self.components(j).len() == 1
    }

    /// Type of a connected subset.
    pub fn component_type(&self, k: Subset) -> TypeLabel {
        if let Some(t) = self.memo.lock().unwrap().get(&k.0) {
            return *t;
        }
        let t = type_of_indecomposable(&self.submatrix(k));
        self.memo.lock().unwrap().insert(k.0, t);
        t
    }

    pub fn classify(&self, j: Subset) -> Classification {
        let mut c = Classification { components: Vec::new(), fin: Subset::EMPTY, aff: Subset::EMPTY, ind: Subset::EMPTY };
        for k in self.components(j) {
            let t = self.component_type(k);
            match t {
                TypeLabel::Fin => c.fin = c.fin.union(k),
                TypeLabel::Aff => c.aff = c.aff.union(k),
                TypeLabel::Ind => c.ind = c.ind.union(k),
            }
            c.components.push((k, t));
        }
        c
    }

    pub fn fin_part(&self, j: Subset) -> Subset {
        self.classify(j).fin
    }

    pub fn aff_part(&self, j: Subset) -> Subset {
        self.classify(j).aff
    }

    pub fn ind_part(&self, j: Subset) -> Subset {
        self.classify(j).ind
    }

    /// Union of the nonfinite components of `j`.
    pub fn infinite_part(&self, j: Subset) -> Subset {
        self.classify(j).infinite()
    }

    pub fn is_special(&self, j: Subset) -> bool {
        self.infinite_part(j) == j
    }

    pub fn is_finite_type(&self, j: Subset) -> bool {
        self.classify(j).fin == j
    }

    /// `{i : a_ij = 0 for all j in J}`.
    pub fn perp(&self, j: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for i in 0..self.n() {
            if j.iter().all(|k| self.a[(i, k)].is_zero()) {
                out = out.with(i);
            }
        }
        out
    }

    pub fn hyperbolic_class(&self, j: Subset) -> Result<HypClass> {
        if !self.is_connected(j) || self.component_type(j) != TypeLabel::Ind {
            return Err(Error::Precondition(format!("{j} is not a connected set of indefinite type")));
        }
        let all_nonind = |k: Subset| self.classify(k).ind.is_empty();
        if j.iter().all(|i| all_nonind(j.without(i))) {
            return Ok(HypClass::Hyp0);
        }
        let idx = j.indices();
        for (p, &i1) in idx.iter().enumerate() {
            for &i2 in &idx[p + 1..] {
                if !all_nonind(j.without(i1).without(i2)) {
                    return Ok(HypClass::Neither);
                }
            }
        }
        Ok(HypClass::Hyp1)
    }
}

/// Type of an indecomposable GCM.
///
/// Finite type is detected by positivity of all leading principal minors (a
/// Z-matrix with this property is a nonsingular M-matrix, so a positive `u` with
/// `Au > 0` exists). Affine type means a one-dimensional kernel spanned by a
/// strictly positive vector.
pub fn type_of_indecomposable(a: &RatMat) -> TypeLabel {
    if leading_minors_positive(a) {
        return TypeLabel::Fin;
    }
    let ker = a.kernel_basis();
    if ker.len() == 1 {
        let v = &ker[0];
        if v.iter().all(|x| x.is_positive()) || v.iter().all(|x| x.is_negative()) {
            return TypeLabel::Aff;
        }
    }
    TypeLabel::Ind
}

fn leading_minors_positive(a: &RatMat) -> bool {
    // Gaussian elimination without pivoting: the k-th pivot is the ratio of the
    // k-th and (k-1)-th leading minors.
    let n = a.rows();
    let mut m: Vec<Vec<Rat>> = a.row_vecs();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] / &m[k][k];
            for c in k..n {
                let d = &f * &m[k][c];
                m[r][c] -= d;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{feasible, unit_vec, RatVec};
    use proptest::prelude::*;

    pub(crate) fn six_cycle() -> Gcm {
        let mut rows = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            rows[i][i] = 2;
            rows[i][(i + 1) % 6] = -2;
            rows[(i + 1) % 6][i] = -2;
        }
        let r: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
        Gcm::from_i64(&r).unwrap()
    }

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().map(|i| i - 1))
    }

    #[test]
    fn coxeter_labels() {
        assert_eq!(Gcm::from_i64(&[&[2, -1], &[-1, 2]]).unwrap().coxeter_label(0, 1), Some(3));
        assert_eq!(Gcm::from_i64(&[&[2, -2], &[-2, 2]]).unwrap().coxeter_label(0, 1), None);
        assert_eq!(Gcm::from_i64(&[&[2, -1], &[-3, 2]]).unwrap().coxeter_label(0, 1), Some(6));
        let g = six_cycle();
        assert!((0..6).all(|i| g.coxeter_label(i, (i + 1) % 6).is_none()));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(Gcm::from_i64(&[&[2, -1], &[0, 2]]), Err(Error::NotGcm { .. })));
        assert!(matches!(Gcm::from_i64(&[&[1, 0], &[0, 2]]), Err(Error::NotGcm { .. })));
        assert!(matches!(Gcm::from_i64(&[&[2, 1], &[1, 2]]), Err(Error::NotGcm { .. })));
        let irr = RatMat::from_rows(&[vec![rat(2), Rat::new((-1).into(), 2.into())], vec![rat(-1), rat(2)]], 2);
        assert!(matches!(Gcm::validate(&irr), Err(Error::NotGcm { .. })));
    }

    #[test]
    fn six_cycle_structure() {
        let g = six_cycle();
        assert_eq!(g.components(Subset::EMPTY), vec![]);
        assert_eq!(g.components(s(&[1, 2, 4, 5])), vec![s(&[1, 2]), s(&[4, 5])]);
        assert_eq!(g.components(g.full()).len(), 1);
        assert_eq!(g.perp(Subset::EMPTY), g.full());
        assert_eq!(g.perp(s(&[1, 2])), s(&[4, 5]));
        assert_eq!(g.perp(g.full()), Subset::EMPTY);
        assert!(g.is_special(Subset::EMPTY));
        assert!(g.is_special(s(&[1, 2, 4, 5])));
        assert!(g.separated(s(&[1, 2]), s(&[4, 5])));
        for j in g.full().subsets().filter(|j| g.is_connected(*j)) {
            let want = match j.len() {
                1 => TypeLabel::Fin,
                2 => TypeLabel::Aff,
                _ => TypeLabel::Ind,
            };
            assert_eq!(g.component_type(j), want, "{j}");
        }
    }

    #[test]
    fn hyperbolic_classes() {
        let g = six_cycle();
        assert_eq!(g.hyperbolic_class(g.full()).unwrap(), HypClass::Neither);
        assert_eq!(g.hyperbolic_class(s(&[1, 2, 3])).unwrap(), HypClass::Hyp0);
        assert_eq!(g.hyperbolic_class(s(&[1, 2, 3, 4])).unwrap(), HypClass::Hyp1);
        let h = Gcm::from_i64(&[&[2, -3], &[-2, 2]]).unwrap();
        assert_eq!(h.hyperbolic_class(h.full()).unwrap(), HypClass::Hyp0);
        assert!(g.hyperbolic_class(s(&[1, 2])).is_err());
    }

    #[test]
    fn small_types() {
        assert_eq!(Gcm::from_i64(&[&[2, -1], &[-1, 2]]).unwrap().component_type(Subset(3)), TypeLabel::Fin);
        assert_eq!(Gcm::from_i64(&[&[2, -2], &[-2, 2]]).unwrap().component_type(Subset(3)), TypeLabel::Aff);
        assert_eq!(Gcm::from_i64(&[&[2, -1], &[-4, 2]]).unwrap().component_type(Subset(3)), TypeLabel::Aff);
        assert_eq!(Gcm::from_i64(&[&[2, -1], &[-5, 2]]).unwrap().component_type(Subset(3)), TypeLabel::Ind);
    }

    /// Which of the three defining feasibility problems is solvable, by LP.
    fn lp_types(a: &RatMat) -> Vec<TypeLabel> {
        let n = a.rows();
        let pos: Vec<RatVec> = (0..n).map(|i| unit_vec(n, i)).collect();
        let rows = a.row_vecs();
        let neg_rows: Vec<RatVec> = rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let mut out = Vec::new();
        let fin_gt: Vec<RatVec> = pos.iter().chain(rows.iter()).cloned().collect();
        if feasible(&[], &[], &fin_gt).unwrap() {
            out.push(TypeLabel::Fin);
        }
        if feasible(&rows, &[], &pos).unwrap() {
            out.push(TypeLabel::Aff);
        }
        let ind_gt: Vec<RatVec> = pos.iter().chain(neg_rows.iter()).cloned().collect();
        if feasible(&[], &[], &ind_gt).unwrap() {
            out.push(TypeLabel::Ind);
        }
        out
    }

    fn gcm_strategy() -> impl Strategy<Value = Gcm> {
        (2usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(prop_oneof![Just(0i64), Just(1), Just(2), Just(3), Just(4), Just(5)], n * n)
                .prop_map(move |v| {
                    let mut rows = vec![vec![0i64; n]; n];
                    for i in 0..n {
                        rows[i][i] = 2;
                        for j in i + 1..n {
                            // product code: 0 -> (0,0), 1 -> (-1,-1), 2 -> (-1,-2), 3 -> (-1,-3), 4 -> (-2,-2), 5 -> (-1,-5)
                            let (x, y) = match v[i * n + j] {
                                0 => (0, 0),
                                1 => (-1, -1),
                                2 => (-1, -2),
                                3 => (-1, -3),
                                4 => (-2, -2),
                                _ => (-1, -5),
                            };
                            rows[i][j] = x;
                            rows[j][i] = y;
                        }
                    }
                    let r: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
                    Gcm::from_i64(&r).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn trichotomy_matches_lp(g in gcm_strategy()) {
            for j in g.full().subsets().filter(|j| g.is_connected(*j)) {
                let lp = lp_types(&g.submatrix(j));
                prop_assert_eq!(lp, vec![g.component_type(j)]);
            }
        }

        #[test]
        fn infinite_part_decomposition(g in gcm_strategy(), bits in 0u64..32) {
            let j = Subset(bits).inter(g.full());
            let c = g.classify(j);
            prop_assert_eq!(c.fin.union(c.infinite()), j);
            prop_assert!(c.fin.inter(c.infinite()).is_empty());
            prop_assert!(g.is_special(c.infinite()));
        }

        #[test]
        fn affine_has_corank_one(g in gcm_strategy()) {
            for j in g.full().subsets().filter(|j| g.is_connected(*j)) {
                if g.component_type(j) == TypeLabel::Aff {
                    let sub = g.submatrix(j);
                    prop_assert_eq!(sub.transpose().kernel_basis().len(), 1);
                }
            }
        }
    }
}
