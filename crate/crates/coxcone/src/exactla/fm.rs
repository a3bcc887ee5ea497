//! Exact feasibility of homogeneous systems with strict inequalities.
//!
//! Equalities are removed by parametrizing their solution space. A homogeneous
//! system `G y >= 0, S y > 0` is feasible iff `G y >= 0, S y >= 1` is, which is a
//! closed affine system handled by Fourier–Motzkin elimination with Chernikov's
//! history rule. A witness is recovered by back substitution.

use num::{One, Signed, Zero};

use super::{check_dim, dot, primitive_ray, zero_vec, Rat, RatMat, RatVec};
use crate::error::Result;

#[derive(Clone, Debug)]
struct Row {
    coef: RatVec,
    rhs: Rat,
    hist: Vec<u64>,
}

impl Row {
    fn hist_len(&self) -> u32 {
        self.hist.iter().map(|w| w.count_ones()).sum()
    }

    /// Scales by a positive factor so that coefficients are coprime integers.
    fn normalize(&mut self) {
        if self.coef.iter().all(|x| x.is_zero()) {
            return;
        }
        let p = primitive_ray(&self.coef);
        let (i, _) = self.coef.iter().enumerate().find(|(_, x)| !x.is_zero()).unwrap();
        let f = &p[i] / &self.coef[i];
        self.rhs = &self.rhs * &f;
        self.coef = p;
    }
}

fn hist_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

/// True iff some rational `x` satisfies `e.x = 0` for `e` in `eqs`,
/// `g.x >= 0` for `g` in `ge` and `s.x > 0` for `s` in `gt`.
pub fn feasible(eqs: &[RatVec], ge: &[RatVec], gt: &[RatVec]) -> Result<bool> {
    Ok(feasible_point(eqs, ge, gt)?.is_some())
}

/// A rational witness for [`feasible`], if one exists.
pub fn feasible_point(eqs: &[RatVec], ge: &[RatVec], gt: &[RatVec]) -> Result<Option<RatVec>> {
    let dim = eqs
        .first()
        .or_else(|| ge.first())
        .or_else(|| gt.first())
        .map(|v| v.len())
        .unwrap_or(0);
    check_dim(eqs, dim, "equality")?;
    check_dim(ge, dim, "inequality")?;
    check_dim(gt, dim, "strict inequality")?;
    Ok(solve(dim, eqs, ge, gt))
}

/// Same as [`feasible_point`] with an explicit ambient dimension (allows empty systems).
pub(crate) fn solve(dim: usize, eqs: &[RatVec], ge: &[RatVec], gt: &[RatVec]) -> Option<RatVec> {
    if gt.is_empty() {
        return Some(zero_vec(dim));
    }
    // x = N y parametrizes the solutions of the equalities.
    let basis = RatMat::from_rows(eqs, dim).kernel_basis();
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let n = RatMat::from_cols(&basis, dim);
    let reduce = |g: &RatVec| -> RatVec { n.vec_mul(g) };
    let m = ge.len() + gt.len();
    let words = m.div_ceil(64).max(1);
    let mut rows = Vec::with_capacity(m);
    for (idx, (g, strict)) in ge.iter().map(|g| (g, false)).chain(gt.iter().map(|g| (g, true))).enumerate() {
        let mut hist = vec![0u64; words];
        hist[idx / 64] |= 1 << (idx % 64);
        rows.push(Row { coef: reduce(g), rhs: if strict { Rat::one() } else { Rat::zero() }, hist });
    }
    let y = fourier_motzkin(k, rows)?;
    let x = n.mul_vec(&y);
    debug_assert!(ge.iter().all(|g| !dot(g, &x).is_negative()) && gt.iter().all(|g| dot(g, &x).is_positive()));
    Some(x)
}

/// Solves `coef.y >= rhs` for all rows; returns a witness or `None`.
fn fourier_motzkin(k: usize, rows: Vec<Row>) -> Option<RatVec> {
    let mut rows = simplify(rows)?;
    let mut eliminated: Vec<bool> = vec![false; k];
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();
    for step in 0..k {
        // Pick the variable with the cheapest elimination.
        let var = (0..k)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| {
                let p = rows.iter().filter(|r| r.coef[v].is_positive()).count();
                let q = rows.iter().filter(|r| r.coef[v].is_negative()).count();
                (p * q, v)
            })
            .unwrap();
        eliminated[var] = true;
        let (mut pos, mut negs, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            if r.coef[var].is_positive() {
                pos.push(r);
            } else if r.coef[var].is_negative() {
                negs.push(r);
            } else {
                rest.push(r.clone());
            }
        }
        let limit = (step + 2) as u32;
        for p in &pos {
            for q in &negs {
                let hist = hist_union(&p.hist, &q.hist);
                let row = Row {
                    coef: p
                        .coef
                        .iter()
                        .zip(&q.coef)
                        .map(|(a, b)| -(&q.coef[var]) * a + &p.coef[var] * b)
                        .collect(),
                    rhs: -(&q.coef[var]) * &p.rhs + &p.coef[var] * &q.rhs,
                    hist,
                };
                if row.hist_len() <= limit {
                    rest.push(row);
                }
            }
        }
        stages.push((var, std::mem::replace(&mut rows, Vec::new())));
        rows = simplify(rest)?;
    }
    // All variables eliminated and every remaining row was `0 >= rhs` with rhs <= 0.
    let mut y = zero_vec(k);
    for (var, rows) in stages.iter().rev() {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for r in rows {
            let c = &r.coef[*var];
            if c.is_zero() {
                continue;
            }
            let mut rest = dot(&r.coef, &y);
            rest -= c * &y[*var];
            let b = (&r.rhs - rest) / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| b > *l) {
                    lo = Some(b);
                }
            } else if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        }
        y[*var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rat::from_integer(2.into()),
            (Some(l), None) => l + Rat::one(),
            (None, Some(h)) => h - Rat::one(),
            (None, None) => Rat::zero(),
        };
    }
    Some(y)
}

/// Drops trivial rows, detects `0 >= positive` and removes exact duplicates.
fn simplify(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut out: Vec<Row> = Vec::with_capacity(rows.len());
    for mut r in rows {
        if r.coef.iter().all(|x| x.is_zero()) {
            if r.rhs.is_positive() {
                return None;
            }
            continue;
        }
        r.normalize();
        // Rows differing only in the right-hand side are distinct rows of the
        // homogenized system; merging them would invalidate the history rule.
        if let Some(o) = out.iter_mut().find(|o| o.coef == r.coef && o.rhs == r.rhs) {
            if r.hist_len() < o.hist_len() {
                *o = r;
            }
            continue;
        }
        out.push(r);
    }
    Some(out)
}


#[cfg(test)]
mod regression {
    use super::*;
    use crate::exactla::ivec;

    #[test]
    fn parallel_rows_with_different_bounds() {
        // u > 0 and A u > 0 for a 3x3 indefinite Cartan matrix: infeasible.
        let gt = vec![
            ivec(&[1, 0, 0]),
            ivec(&[0, 1, 0]),
            ivec(&[0, 0, 1]),
            ivec(&[2, 0, -1]),
            ivec(&[0, 2, -1]),
            ivec(&[-5, -1, 2]),
        ];
        assert!(!feasible(&[], &[], &gt).unwrap());
    }
}
