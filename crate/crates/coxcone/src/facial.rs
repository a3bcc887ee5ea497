//! Facial sets: the subsets `J` for which `Σ_{j∈J} R⁺₀ h_j` is a face of `Σ_i R⁺₀ h_i`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{feasible, neg, RatMat, RatVec};
use crate::realization::RootBase;
use crate::subset::Subset;

pub const SIGN_VECTOR_DIM_BOUND: usize = 4;
pub const ENUMERATION_SIZE_BOUND: usize = 20;

/// Signs of the coordinates of a nonzero relation `r ∈ L_h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn positive(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, s)| **s > 0).map(|(i, _)| i))
    }

    pub fn negative(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, s)| **s < 0).map(|(i, _)| i))
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| -s).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rows `i` of a basis matrix of `L_h`: `r_i = row_i · t`.
fn relation_rows(rb: &RootBase) -> Vec<RatVec> {
    RatMat::from_cols(rb.l_h(), rb.n()).row_vecs()
}

/// Is there `r ∈ L_h` with `r_i >= 0` off `j` and `r_{i0} > 0`?
fn escapes(rows: &[RatVec], j: Subset, i0: usize) -> bool {
    let ge: Vec<RatVec> = (0..rows.len()).filter(|i| !j.contains(*i)).map(|i| rows[i].clone()).collect();
    feasible(&[], &ge, &[rows[i0].clone()]).expect("consistent dimensions")
}

/// LP form of the facial test: `L_h ∩ (R^J + (R⁺₀)^{I∖J}) ⊆ R^J`.
pub fn is_facial(rb: &RootBase, j: Subset) -> bool {
    if rb.l_h().is_empty() {
        return true;
    }
    let rows = relation_rows(rb);
    j.complement(rb.n()).iter().all(|i0| !escapes(&rows, j, i0))
}

/// All sign vectors of `L_h ∖ {0}`, sorted.
pub fn sign_vectors(rb: &RootBase) -> Result<Vec<SignVector>> {
    subspace_sign_vectors(rb.l_h(), rb.n())
}

/// All sign vectors of `span(basis) ∖ {0}` for linearly independent `basis ⊆ R^n`, sorted.
pub fn subspace_sign_vectors(basis: &[RatVec], n: usize) -> Result<Vec<SignVector>> {
    let k = basis.len();
    if k > SIGN_VECTOR_DIM_BOUND {
        return Err(Error::DimensionBound(format!("subspace dimension {k} exceeds {SIGN_VECTOR_DIM_BOUND}")));
    }
    if k == 0 {
        return Ok(vec![]);
    }
    let rows = RatMat::from_cols(basis, n).row_vecs();
    let mut out = BTreeSet::new();
    let mut prefix = Vec::with_capacity(rows.len());
    arrangement_faces(&rows, &mut prefix, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.remove(&SignVector(vec![0; rows.len()]));
    Ok(out.into_iter().collect())
}

/// Depth-first search over sign assignments of the hyperplanes `row_i · t = 0`,
/// pruning infeasible prefixes.
fn arrangement_faces(
    rows: &[RatVec],
    prefix: &mut Vec<i8>,
    eqs: &mut Vec<RatVec>,
    gts: &mut Vec<RatVec>,
    out: &mut BTreeSet<SignVector>,
) {
    let i = prefix.len();
    if i == rows.len() {
        out.insert(SignVector(prefix.clone()));
        return;
    }
    for s in [1i8, 0, -1] {
        match s {
            0 => eqs.push(rows[i].clone()),
            1 => gts.push(rows[i].clone()),
            _ => gts.push(neg(&rows[i])),
        }
        let ok = if gts.is_empty() {
            true
        } else {
            crate::exactla::fm::solve(rows[0].len(), eqs, &[], gts).is_some()
        };
        if ok {
            prefix.push(s);
            arrangement_faces(rows, prefix, eqs, gts, out);
            prefix.pop();
        }
        if s == 0 {
            eqs.pop();
        } else {
            gts.pop();
        }
    }
}

/// Sign-vector form of the facial test: `I₊(r) ⊆ J ⟹ I₋(r) ⊆ J`.
pub fn is_facial_by_signs(signs: &[SignVector], j: Subset) -> bool {
    signs.iter().all(|s| !s.positive().is_subset(j) || s.negative().is_subset(j))
}

/// Smallest facial set containing `l`.
///
/// Any `i0` that some relation nonnegative off `l` reaches belongs to every facial
/// superset of `l`; adding such indices until none is left gives the closure.
pub fn facial_closure(rb: &RootBase, l: Subset) -> Subset {
    if rb.l_h().is_empty() {
        return l;
    }
    let rows = relation_rows(rb);
    let mut j = l;
    loop {
        let add: Vec<usize> = j.complement(rb.n()).iter().filter(|&i0| escapes(&rows, j, i0)).collect();
        if add.is_empty() {
            return j;
        }
        for i in add {
            j = j.with(i);
        }
    }
}

/// Meet and join in the lattice of facial sets.
pub fn facial_meet_join(rb: &RootBase, j1: Subset, j2: Subset) -> Result<(Subset, Subset)> {
    for j in [j1, j2] {
        if !is_facial(rb, j) {
            return Err(Error::Precondition(format!("{j} is not facial")));
        }
    }
    Ok((j1.inter(j2), facial_closure(rb, j1.union(j2))))
}

/// `Θ^aff ∪ Θ⊥` for special `Θ`; a facial set containing `I⁰ ∪ I^aff`.
pub fn aff_perp_face(rb: &RootBase, theta: Subset) -> Result<Subset> {
    let g = &rb.gcm;
    if !g.is_special(theta) {
        return Err(Error::Precondition(format!("{theta} is not special")));
    }
    let out = g.aff_part(theta).union(g.perp(theta));
    let c = g.classify(g.full());
    if !is_facial(rb, out) || !c.fin.union(c.aff).is_subset(out) {
        return Err(Error::Internal(format!("aff-perp set of {theta} is not a facial superset of I0 ∪ Iaff")));
    }
    Ok(out)
}

/// All facial sets, the special ones, and closure through the family.
#[derive(Clone, Debug)]
pub struct FacialFamily {
    pub n: usize,
    /// Sorted by size, then lexicographically.
    pub all: Vec<Subset>,
    pub special: Vec<Subset>,
    members: HashSet<Subset>,
}

impl FacialFamily {
    pub fn contains(&self, j: Subset) -> bool {
        self.members.contains(&j)
    }

    /// Intersection of all facial supersets.
    pub fn closure(&self, l: Subset) -> Subset {
        self.all.iter().filter(|j| l.is_subset(**j)).fold(Subset::full(self.n), |acc, j| acc.inter(*j))
    }
}

/// Enumerates the special facial sets by the LP test, then all facial sets as the
/// `J` whose nonfinite part is special facial.
pub fn enumerate_facial(rb: &RootBase) -> Result<FacialFamily> {
    let n = rb.n();
    if n > ENUMERATION_SIZE_BOUND {
        return Err(Error::SizeBound(format!("n = {n} exceeds {ENUMERATION_SIZE_BOUND}")));
    }
    let g = &rb.gcm;
    let subsets: Vec<Subset> = Subset::full(n).subsets().collect();
    let infinite: Vec<Subset> = subsets.par_iter().map(|j| g.infinite_part(*j)).collect();
    let mut special: Vec<Subset> = subsets
        .par_iter()
        .zip(infinite.par_iter())
        .filter(|(j, inf)| *j == *inf && is_facial(rb, **j))
        .map(|(j, _)| *j)
        .collect();
    special.sort();
    let special_set: HashSet<Subset> = special.iter().copied().collect();
    let mut all: Vec<Subset> =
        subsets.iter().zip(&infinite).filter(|(_, inf)| special_set.contains(inf)).map(|(j, _)| *j).collect();
    all.sort();
    let members = all.iter().copied().collect();
    Ok(FacialFamily { n, all, special, members })
}
