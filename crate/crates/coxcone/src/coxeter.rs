//! Coxeter group arithmetic.
//!
//! Elements are stored as `n × n` matrices of their action on the span of the
//! coroots `h''_i` of a free realization, where the `h''_i` are a basis: the simple
//! reflection `σ_i` sends `h''_j` to `h''_j - a_ji h''_i`. In these coordinates
//! `i` is a right descent of `σ` iff the column `σ h''_i` is nonpositive.
//!
//! Integral Cartan matrices use `i64` entries and switch to exact rationals on
//! overflow.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use num::{One, Signed, ToPrimitive, Zero};

use crate::cartan::Gcm;
use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, RatMat, RatVec};
use crate::realization::RootBase;
use crate::subset::Subset;

/// Row-major square matrix, integral while the entries fit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Mat {
    Int(Vec<i64>),
    Rat(RatMat),
}

impl Mat {
    fn identity(n: usize, int: bool) -> Mat {
        if int {
            let mut d = vec![0; n * n];
            for i in 0..n {
                d[i * n + i] = 1;
            }
            Mat::Int(d)
        } else {
            Mat::Rat(RatMat::identity(n))
        }
    }

    fn to_rat(&self, n: usize) -> RatMat {
        match self {
            Mat::Int(d) => {
                let mut m = RatMat::zeros(n, n);
                for r in 0..n {
                    for c in 0..n {
                        m[(r, c)] = rat(d[r * n + c]);
                    }
                }
                m
            }
            Mat::Rat(m) => m.clone(),
        }
    }

    fn promote(&mut self, n: usize) {
        if let Mat::Int(_) = self {
            *self = Mat::Rat(self.to_rat(n));
        }
    }

    fn is_identity(&self, n: usize) -> bool {
        match self {
            Mat::Int(d) => (0..n).all(|r| (0..n).all(|c| d[r * n + c] == i64::from(r == c))),
            Mat::Rat(m) => *m == RatMat::identity(n),
        }
    }

    /// Column `c` is nonzero with no positive entry.
    fn col_nonpositive(&self, n: usize, c: usize) -> bool {
        let mut any = false;
        match self {
            Mat::Int(d) => {
                for r in 0..n {
                    let x = d[r * n + c];
                    if x > 0 {
                        return false;
                    }
                    any |= x != 0;
                }
            }
            Mat::Rat(m) => {
                for r in 0..n {
                    let x = &m[(r, c)];
                    if x.is_positive() {
                        return false;
                    }
                    any |= !x.is_zero();
                }
            }
        }
        any
    }
}

/// A group element as its matrix and inverse matrix, without a normal form.
#[derive(Clone, Debug)]
struct Raw {
    mat: Mat,
    inv: Mat,
}

/// An element of the Coxeter group with its ShortLex reduced word (0-based letters).
#[derive(Clone, Debug)]
pub struct CoxElem {
    raw: Raw,
    n: usize,
    word: Vec<usize>,
}

impl CoxElem {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action on the free coroot span.
    pub fn matrix(&self) -> RatMat {
        self.raw.mat.to_rat(self.n)
    }

    pub fn inverse_matrix(&self) -> RatMat {
        self.raw.inv.to_rat(self.n)
    }

    /// Letters occurring in a reduced word.
    pub fn red(&self) -> Subset {
        Subset::from_indices(self.word.iter().copied())
    }

    /// Word with 1-based letters, for output.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }
}

impl PartialEq for CoxElem {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for CoxElem {}

impl Hash for CoxElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state)
    }
}

/// ShortLex order.
impl Ord for CoxElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for CoxElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    gcm: Gcm,
    n: usize,
    /// Nonzero `a_ki` of column `i` of the Cartan matrix, as integers when all are.
    col_int: Option<Vec<Vec<(usize, i64)>>>,
    col_rat: Vec<Vec<(usize, Rat)>>,
}

impl CoxeterGroup {
    pub fn new(gcm: &Gcm) -> CoxeterGroup {
        let n = gcm.n();
        let col_rat: Vec<Vec<(usize, Rat)>> = (0..n)
            .map(|i| (0..n).filter(|&k| !gcm.entry(k, i).is_zero()).map(|k| (k, gcm.entry(k, i).clone())).collect())
            .collect();
        let col_int = col_rat
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(k, a)| if a.is_integer() { a.to_integer().to_i64().map(|v| (*k, v)) } else { None })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>();
        CoxeterGroup { gcm: gcm.clone(), n, col_int, col_rat }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    /// `s_i · m`: row `i` becomes `row_i - Σ_k a_ki row_k`.
    fn left_simple(&self, i: usize, m: &mut Mat) {
        let n = self.n;
        if let (Mat::Int(d), Some(cols)) = (&mut *m, &self.col_int) {
            let mut row: Vec<i64> = d[i * n..(i + 1) * n].to_vec();
            let ok = cols[i].iter().all(|&(k, a)| {
                (0..n).all(|c| match a.checked_mul(d[k * n + c]).and_then(|x| row[c].checked_sub(x)) {
                    Some(v) => {
                        row[c] = v;
                        true
                    }
                    None => false,
                })
            });
            if ok {
                d[i * n..(i + 1) * n].copy_from_slice(&row);
                return;
            }
        }
        m.promote(n);
        let Mat::Rat(r) = m else { unreachable!() };
        for c in 0..n {
            let mut v = r[(i, c)].clone();
            for (k, a) in &self.col_rat[i] {
                if !r[(*k, c)].is_zero() {
                    v -= a * &r[(*k, c)];
                }
            }
            r[(i, c)] = v;
        }
    }

    /// `m · s_i`: column `c` gains `-a_ci` times column `i`.
    fn right_simple(&self, m: &mut Mat, i: usize) {
        let n = self.n;
        if let (Mat::Int(d), Some(cols)) = (&mut *m, &self.col_int) {
            let col_i: Vec<i64> = (0..n).map(|r| d[r * n + i]).collect();
            let mut out = d.clone();
            let ok = cols[i].iter().all(|&(c, a)| {
                (0..n).all(|r| match a.checked_mul(col_i[r]).and_then(|x| out[r * n + c].checked_sub(x)) {
                    Some(v) => {
                        out[r * n + c] = v;
                        true
                    }
                    None => false,
                })
            });
            if ok {
                *d = out;
                return;
            }
        }
        m.promote(n);
        let Mat::Rat(r) = m else { unreachable!() };
        let col_i: RatVec = r.col(i);
        for (c, a) in &self.col_rat[i] {
            for row in 0..n {
                if !col_i[row].is_zero() {
                    let d = a * &col_i[row];
                    r[(row, *c)] -= d;
                }
            }
        }
    }

    fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        if let (Mat::Int(x), Mat::Int(y)) = (a, b) {
            let mut out = vec![0i64; n * n];
            let ok = (0..n).all(|r| {
                (0..n).all(|k| {
                    let xv = x[r * n + k];
                    xv == 0
                        || (0..n).all(|c| match xv.checked_mul(y[k * n + c]).and_then(|p| out[r * n + c].checked_add(p)) {
                            Some(v) => {
                                out[r * n + c] = v;
                                true
                            }
                            None => false,
                        })
                })
            });
            if ok {
                return Mat::Int(out);
            }
        }
        Mat::Rat(a.to_rat(n).mul(&b.to_rat(n)))
    }

    fn raw_identity(&self) -> Raw {
        let int = self.col_int.is_some();
        Raw { mat: Mat::identity(self.n, int), inv: Mat::identity(self.n, int) }
    }

    fn raw_right(&self, x: &mut Raw, i: usize) {
        self.right_simple(&mut x.mat, i);
        self.left_simple(i, &mut x.inv);
    }

    fn raw_left(&self, i: usize, x: &mut Raw) {
        self.left_simple(i, &mut x.mat);
        self.right_simple(&mut x.inv, i);
    }

    fn raw_mul(&self, a: &Raw, b: &Raw) -> Raw {
        Raw { mat: self.mat_mul(&a.mat, &b.mat), inv: self.mat_mul(&b.inv, &a.inv) }
    }

    fn raw_right_descents(&self, x: &Raw) -> Subset {
        Subset::from_indices((0..self.n).filter(|&i| x.mat.col_nonpositive(self.n, i)))
    }

    fn raw_left_descents(&self, x: &Raw) -> Subset {
        Subset::from_indices((0..self.n).filter(|&i| x.inv.col_nonpositive(self.n, i)))
    }

    /// Attaches the ShortLex word by peeling off the smallest left descent.
    fn finish(&self, raw: Raw) -> CoxElem {
        let mut word = Vec::new();
        let mut mi = raw.inv.clone();
        while let Some(i) = (0..self.n).find(|&i| mi.col_nonpositive(self.n, i)) {
            word.push(i);
            self.right_simple(&mut mi, i);
        }
        debug_assert!(mi.is_identity(self.n));
        CoxElem { raw, n: self.n, word }
    }

    pub fn identity(&self) -> CoxElem {
        self.finish(self.raw_identity())
    }

    pub fn simple(&self, i: usize) -> CoxElem {
        self.from_word(&[i]).expect("valid letter")
    }

    fn check_letters(&self, word: &[usize]) -> Result<()> {
        if let Some(&i) = word.iter().find(|&&i| i >= self.n) {
            return Err(Error::Precondition(format!("letter {} outside 1..={}", i + 1, self.n)));
        }
        Ok(())
    }

    pub fn from_word(&self, word: &[usize]) -> Result<CoxElem> {
        self.check_letters(word)?;
        let mut x = self.raw_identity();
        for &i in word {
            self.raw_right(&mut x, i);
        }
        Ok(self.finish(x))
    }

    pub fn mul(&self, a: &CoxElem, b: &CoxElem) -> CoxElem {
        self.finish(self.raw_mul(&a.raw, &b.raw))
    }

    pub fn inverse(&self, a: &CoxElem) -> CoxElem {
        self.finish(Raw { mat: a.raw.inv.clone(), inv: a.raw.mat.clone() })
    }

    pub fn mul_simple_right(&self, a: &CoxElem, i: usize) -> CoxElem {
        let mut x = a.raw.clone();
        self.raw_right(&mut x, i);
        self.finish(x)
    }

    pub fn mul_simple_left(&self, i: usize, a: &CoxElem) -> CoxElem {
        let mut x = a.raw.clone();
        self.raw_left(i, &mut x);
        self.finish(x)
    }

    /// `i` with `ℓ(σ s_i) < ℓ(σ)`: the column `σ h''_i` is nonpositive.
    pub fn right_descents(&self, a: &CoxElem) -> Subset {
        self.raw_right_descents(&a.raw)
    }

    pub fn left_descents(&self, a: &CoxElem) -> Subset {
        self.raw_left_descents(&a.raw)
    }

    pub fn length_descents(&self, a: &CoxElem) -> (usize, Subset, Subset) {
        (a.length(), self.left_descents(a), self.right_descents(a))
    }

    /// Minimal element of `W_J σ` (left) or `σ W_J` (right).
    pub fn min_coset_rep(&self, a: &CoxElem, j: Subset, side: Side) -> CoxElem {
        let mut cur = a.raw.clone();
        let mut moved = false;
        loop {
            let d = match side {
                Side::Left => self.raw_left_descents(&cur),
                Side::Right => self.raw_right_descents(&cur),
            };
            match d.inter(j).min_elem() {
                None => return if moved { self.finish(cur) } else { a.clone() },
                Some(i) => {
                    moved = true;
                    match side {
                        Side::Left => self.raw_left(i, &mut cur),
                        Side::Right => self.raw_right(&mut cur, i),
                    }
                }
            }
        }
    }

    fn raw_double_decomp(&self, a: &Raw, j: Subset, k: Subset) -> (Raw, Raw, Raw) {
        let mut u = self.raw_identity();
        let mut v = self.raw_identity();
        let mut cur = a.clone();
        loop {
            if let Some(i) = self.raw_left_descents(&cur).inter(j).min_elem() {
                self.raw_left(i, &mut cur);
                self.raw_right(&mut u, i);
            } else if let Some(i) = self.raw_right_descents(&cur).inter(k).min_elem() {
                self.raw_right(&mut cur, i);
                self.raw_left(i, &mut v);
            } else {
                return (u, cur, v);
            }
        }
    }

    /// Minimal element of `W_J σ W_K`.
    pub fn min_double_rep(&self, a: &CoxElem, j: Subset, k: Subset) -> CoxElem {
        self.finish(self.raw_double_decomp(&a.raw, j, k).1)
    }

    /// `σ = u · m · v` with `u ∈ W_J`, `v ∈ W_K` and `m` the minimal element of `W_J σ W_K`.
    pub fn double_coset_decomp(&self, a: &CoxElem, j: Subset, k: Subset) -> (CoxElem, CoxElem, CoxElem) {
        let (u, m, v) = self.raw_double_decomp(&a.raw, j, k);
        (self.finish(u), self.finish(m), self.finish(v))
    }

    pub fn is_min_double_rep(&self, a: &CoxElem, j: Subset, k: Subset) -> bool {
        self.left_descents(a).inter(j).is_empty() && self.right_descents(a).inter(k).is_empty()
    }

    /// `σ ∈ W_J W_K`.
    pub fn in_double_coset_of_identity(&self, a: &CoxElem, j: Subset, k: Subset) -> bool {
        self.raw_double_decomp(&a.raw, j, k).1.mat.is_identity(self.n)
    }

    /// `a⁻¹ b ∈ W_J W_K`, without normal forms for the intermediate elements.
    pub fn quotient_in_double_coset_of_identity(&self, a: &CoxElem, b: &CoxElem, j: Subset, k: Subset) -> bool {
        let ai = Raw { mat: a.raw.inv.clone(), inv: a.raw.mat.clone() };
        let x = self.raw_mul(&ai, &b.raw);
        self.raw_double_decomp(&x, j, k).1.mat.is_identity(self.n)
    }

    /// `a⁻¹ b = u · m · v` as in [`Self::double_coset_decomp`]; returns `(a u, m)`.
    pub fn relative_double_rep(&self, a: &CoxElem, b: &CoxElem, j: Subset, k: Subset) -> (CoxElem, CoxElem) {
        let ai = Raw { mat: a.raw.inv.clone(), inv: a.raw.mat.clone() };
        let x = self.raw_mul(&ai, &b.raw);
        let (u, m, _) = self.raw_double_decomp(&x, j, k);
        (self.finish(self.raw_mul(&a.raw, &u)), self.finish(m))
    }

    /// All elements of the finite parabolic subgroup `W_J`, in ShortLex order.
    pub fn enum_parabolic(&self, j: Subset) -> Result<Vec<CoxElem>> {
        if !self.gcm.is_finite_type(j) {
            return Err(Error::Precondition(format!("W_J is infinite for J = {j}")));
        }
        let mut seen: HashSet<CoxElem> = HashSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(x) = queue.pop_front() {
            let desc = self.right_descents(&x);
            for i in j.minus(desc).iter() {
                let y = self.mul_simple_right(&x, i);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<CoxElem> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// All elements of length at most `max_len`, in ShortLex order.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<CoxElem> {
        let mut layer = vec![self.identity()];
        let mut out = layer.clone();
        for _ in 0..max_len {
            let mut next: HashSet<CoxElem> = HashSet::new();
            for x in &layer {
                let desc = self.right_descents(x);
                for i in Subset::full(self.n).minus(desc).iter() {
                    next.insert(self.mul_simple_right(x, i));
                }
            }
            let mut next: Vec<CoxElem> = next.into_iter().collect();
            next.sort();
            out.extend(next.iter().cloned());
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        out
    }

    /// The minimal double coset representatives in `W_J \ W / W_K` of length at most `max_len`.
    pub fn min_double_reps_up_to(&self, j: Subset, k: Subset, max_len: usize) -> Vec<CoxElem> {
        self.elements_up_to(max_len).into_iter().filter(|x| self.is_min_double_rep(x, j, k)).collect()
    }

    /// Matrix of `σ` acting on `h` (columns) for a root base; the same matrix acts
    /// on `h*` as `λ ↦ λ M(σ⁻¹)`.
    pub fn matrix_on(&self, rb: &RootBase, a: &CoxElem) -> RatMat {
        let mut m = RatMat::identity(rb.dim);
        for &i in &a.word {
            m = m.mul(&working_simple(rb, i));
        }
        m
    }

    /// `σ x` for `x ∈ h`.
    pub fn act_h(&self, rb: &RootBase, a: &CoxElem, x: &[Rat]) -> RatVec {
        let mut v = x.to_vec();
        for &i in a.word.iter().rev() {
            let c = crate::exactla::dot(&rb.avec(i), &v);
            if !c.is_zero() {
                v = crate::exactla::axpy(&v, &-c, &rb.hvec(i));
            }
        }
        v
    }

    /// `σ λ` for `λ ∈ h*`.
    pub fn act_hstar(&self, rb: &RootBase, a: &CoxElem, lambda: &[Rat]) -> RatVec {
        let mut v = lambda.to_vec();
        for &i in a.word.iter().rev() {
            let c = crate::exactla::dot(&v, &rb.hvec(i));
            if !c.is_zero() {
                v = crate::exactla::axpy(&v, &-c, &rb.avec(i));
            }
        }
        v
    }

    /// `|W_J|^{-1} Σ_{τ ∈ W_J} τ` on `h`; it also acts on `h*` from the right.
    pub fn mid_projector(&self, rb: &RootBase, j: Subset) -> Result<RatMat> {
        let elems = self.enum_parabolic(j)?;
        let mut sum = RatMat::zeros(rb.dim, rb.dim);
        for e in &elems {
            sum = sum.add(&self.matrix_on(rb, e));
        }
        Ok(sum.scaled(&(Rat::one() / Rat::from_integer((elems.len() as i64).into()))))
    }

    /// `J₁ ∩ σJ₂`: the `i ∈ J₁` with `R⁺₀ h_i = σ R⁺₀ h_j` for some `j ∈ J₂`.
    pub fn cross_parabolic(&self, rb: &RootBase, j1: Subset, a: &CoxElem, j2: Subset) -> Result<Subset> {
        for j in [j1, j2] {
            if !crate::facial::is_facial(rb, j) {
                return Err(Error::Precondition(format!("{j} is not facial")));
            }
        }
        if !self.is_min_double_rep(a, j1, j2) {
            return Err(Error::Precondition("element is not a minimal double coset representative".into()));
        }
        let n = self.n();
        let mut out = Subset::EMPTY;
        for j in j2.iter() {
            let col = a.matrix().col(j);
            let support: Vec<usize> = (0..n).filter(|&r| !col[r].is_zero()).collect();
            if let [i] = support[..] {
                if col[i].is_positive() && j1.contains(i) {
                    out = out.with(i);
                }
            }
        }
        if !crate::facial::is_facial(rb, out) {
            return Err(Error::Internal(format!("{j1} ∩ σ{j2} = {out} is not facial")));
        }
        Ok(out)
    }
}

/// `I - h_i α_i` on `h`.
fn working_simple(rb: &RootBase, i: usize) -> RatMat {
    let h = rb.hvec(i);
    let a = rb.avec(i);
    let mut m = RatMat::identity(rb.dim);
    for r in 0..rb.dim {
        for c in 0..rb.dim {
            if !h[r].is_zero() && !a[c].is_zero() {
                let d = &h[r] * &a[c];
                m[(r, c)] -= d;
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{is_zero_vec, subspace_eq};
    use crate::fixtures;
    use proptest::prelude::*;

    fn a2() -> CoxeterGroup {
        CoxeterGroup::new(&fixtures::a2().gcm)
    }

    #[test]
    fn basic_words() {
        let w = a2();
        assert_eq!(w.from_word(&[]).unwrap().matrix(), RatMat::identity(2));
        assert!(w.from_word(&[0, 0]).unwrap().is_identity());
        let x = w.from_word(&[0, 1, 0]).unwrap();
        let y = w.from_word(&[1, 0, 1]).unwrap();
        assert_eq!(x.matrix(), y.matrix());
        assert_eq!(x, y);
        assert_eq!(x.word(), &[0, 1, 0]);
        assert_eq!(x.red(), Subset::full(2));
        assert!(w.from_word(&[2]).is_err());
        let s = w.simple(1);
        assert_eq!(w.length_descents(&s), (1, Subset::singleton(1), Subset::singleton(1)));
        assert_eq!(w.length_descents(&w.identity()), (0, Subset::EMPTY, Subset::EMPTY));
    }

    #[test]
    fn affine_a1_descents() {
        let w = CoxeterGroup::new(&fixtures::affine_a1_degenerate().gcm);
        let x = w.from_word(&[0, 1, 0]).unwrap();
        assert_eq!(x.length(), 3);
        assert_eq!(w.right_descents(&x), Subset::singleton(0));
        assert_eq!(w.elements_up_to(6).len(), 13);
    }

    #[test]
    fn coset_reps() {
        let w = a2();
        let s12 = w.from_word(&[0, 1]).unwrap();
        assert_eq!(w.min_coset_rep(&s12, Subset::singleton(0), Side::Left), w.simple(1));
        let x = w.simple(0);
        assert!(w.min_coset_rep(&x, Subset::singleton(0), Side::Left).is_identity());
        assert_eq!(w.enum_parabolic(Subset::EMPTY).unwrap().len(), 1);
        assert_eq!(w.enum_parabolic(Subset::singleton(1)).unwrap().len(), 2);
        assert_eq!(w.enum_parabolic(Subset::full(2)).unwrap().len(), 6);
        let aff = CoxeterGroup::new(&fixtures::affine_a1_degenerate().gcm);
        assert!(aff.enum_parabolic(Subset::full(2)).is_err());
    }

    #[test]
    fn finite_group_orders() {
        for (rb, order) in [
            (fixtures::b2(), 8),
            (fixtures::g2(), 12),
            (fixtures::a3(), 24),
            (fixtures::a1xa2(), 12),
        ] {
            let w = CoxeterGroup::new(&rb.gcm);
            assert_eq!(w.enum_parabolic(rb.gcm.full()).unwrap().len(), order);
        }
    }

    #[test]
    fn mid_projector_properties() {
        let rb = fixtures::six_cycle_case('d');
        let w = CoxeterGroup::new(&rb.gcm);
        assert_eq!(w.mid_projector(&rb, Subset::EMPTY).unwrap(), RatMat::identity(rb.dim));
        for j in [Subset::singleton(0), Subset::from_indices([0, 3]), Subset::from_indices([1, 4])] {
            let p = w.mid_projector(&rb, j).unwrap();
            assert_eq!(p.mul(&p), p);
            // On h*: kernel spanned by α_i (i ∈ J), image {λ : λ(h_i) = 0 on J}.
            let pt = p.transpose();
            let alphas: Vec<RatVec> = j.iter().map(|i| rb.avec(i)).collect();
            assert!(subspace_eq(&pt.kernel_basis(), &alphas, rb.dim));
            let im = pt.col_vecs();
            let want = crate::exactla::annihilator(&j.iter().map(|i| rb.hvec(i)).collect::<Vec<_>>(), rb.dim);
            assert!(subspace_eq(&im, &want, rb.dim));
        }
        assert!(w.mid_projector(&rb, Subset::from_indices([0, 1])).is_err());
    }

    #[test]
    fn working_action_matches_word() {
        let rb = fixtures::six_cycle_case('b');
        let w = CoxeterGroup::new(&rb.gcm);
        let x = w.from_word(&[0, 2, 1, 4]).unwrap();
        let m = w.matrix_on(&rb, &x);
        for i in 0..6 {
            assert_eq!(m.mul_vec(&rb.hvec(i)), w.act_h(&rb, &x, &rb.hvec(i)));
            // pairing is invariant: (σλ)(σx) = λ(x)
            let lam = rb.avec(i);
            let sl = w.act_hstar(&rb, &x, &lam);
            let sx = w.act_h(&rb, &x, &rb.hvec((i + 1) % 6));
            assert_eq!(crate::exactla::dot(&sl, &sx), crate::exactla::dot(&lam, &rb.hvec((i + 1) % 6)));
        }
    }

    #[test]
    fn kilmoyer_on_finite_groups() {
        for rb in [fixtures::a3(), fixtures::b2(), fixtures::a1xa2()] {
            let w = CoxeterGroup::new(&rb.gcm);
            let all = w.enum_parabolic(rb.gcm.full()).unwrap();
            for j1 in rb.gcm.full().subsets() {
                for j2 in rb.gcm.full().subsets() {
                    let p1: HashSet<CoxElem> = w.enum_parabolic(j1).unwrap().into_iter().collect();
                    let p2 = w.enum_parabolic(j2).unwrap();
                    for x in all.iter().filter(|x| w.is_min_double_rep(x, j1, j2)) {
                        let xi = w.inverse(x);
                        let conj: HashSet<CoxElem> =
                            p2.iter().map(|y| w.mul(&w.mul(x, y), &xi)).filter(|z| p1.contains(z)).collect();
                        let k = w.cross_parabolic(&rb, j1, x, j2).unwrap();
                        let want: HashSet<CoxElem> = w.enum_parabolic(k).unwrap().into_iter().collect();
                        assert_eq!(conj, want);
                    }
                }
            }
        }
    }

    #[test]
    fn cross_parabolic_trivial_cases() {
        let rb = fixtures::six_cycle_case('a');
        let w = CoxeterGroup::new(&rb.gcm);
        let j1 = Subset::from_indices([0, 1, 3]);
        let j2 = Subset::from_indices([1, 3, 4]);
        assert_eq!(w.cross_parabolic(&rb, j1, &w.identity(), j2).unwrap(), j1.inter(j2));
        let x = w.from_word(&[2, 5]).unwrap();
        assert_eq!(w.cross_parabolic(&rb, j1, &x, Subset::EMPTY).unwrap(), Subset::EMPTY);
    }

    fn word_strategy(n: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0..n, 0..=max)
    }

    /// All reduced words of `x`, by recursion over right descents.
    fn reduced_words(w: &CoxeterGroup, x: &CoxElem) -> Vec<Vec<usize>> {
        if x.is_identity() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in w.right_descents(x).iter() {
            for mut u in reduced_words(w, &w.mul_simple_right(x, i)) {
                u.push(i);
                out.push(u);
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn red_is_word_independent(word in word_strategy(6, 8)) {
            let w = CoxeterGroup::new(&fixtures::six_cycle_gcm());
            let x = w.from_word(&word).unwrap();
            for u in reduced_words(&w, &x) {
                prop_assert_eq!(u.len(), x.length());
                prop_assert_eq!(Subset::from_indices(u.iter().copied()), x.red());
                prop_assert_eq!(w.from_word(&u).unwrap(), x.clone());
            }
        }

        #[test]
        fn double_rep_is_idempotent(word in word_strategy(6, 8), jb in 0u64..64, kb in 0u64..64) {
            let w = CoxeterGroup::new(&fixtures::six_cycle_gcm());
            let x = w.from_word(&word).unwrap();
            let (j, k) = (Subset(jb), Subset(kb));
            let r = w.min_double_rep(&x, j, k);
            prop_assert!(r.length() <= x.length());
            prop_assert_eq!(w.min_double_rep(&r, j, k), r.clone());
            prop_assert!(w.is_min_double_rep(&r, j, k));
            let (u, m, v) = w.double_coset_decomp(&x, j, k);
            prop_assert_eq!(&m, &r);
            prop_assert!(u.red().is_subset(j) && v.red().is_subset(k));
            prop_assert_eq!(w.mul(&w.mul(&u, &m), &v), x);
        }

        #[test]
        fn group_laws(a in word_strategy(3, 6), b in word_strategy(3, 6)) {
            let w = CoxeterGroup::new(&fixtures::affine_a2().gcm);
            let x = w.from_word(&a).unwrap();
            let y = w.from_word(&b).unwrap();
            let xy = w.mul(&x, &y);
            prop_assert!(w.mul(&xy, &w.inverse(&xy)).is_identity());
            prop_assert_eq!(w.inverse(&xy), w.mul(&w.inverse(&y), &w.inverse(&x)));
            let mut concat = a.clone();
            concat.extend(&b);
            prop_assert_eq!(w.from_word(&concat).unwrap(), xy);
        }
    }

    /// Every `σh''_i` is either nonnegative or nonpositive.
    #[test]
    fn descent_signs_are_definite() {
        for gcm in [fixtures::six_cycle_gcm(), fixtures::affine_a2().gcm, fixtures::a3().gcm] {
            let w = CoxeterGroup::new(&gcm);
            for x in w.elements_up_to(4) {
                for i in 0..w.n() {
                    let col = x.matrix().col(i);
                    assert!(!is_zero_vec(&col));
                    let pos = col.iter().all(|c| !c.is_negative());
                    let neg = col.iter().all(|c| !c.is_positive());
                    assert!(pos ^ neg);
                }
            }
        }
    }

    /// Distinct reduced words at small length give distinct matrices (the BFS
    /// layer sizes of the infinite dihedral group are 1, 2, 2, ...).
    #[test]
    fn faithful_on_small_balls() {
        let w = CoxeterGroup::new(&fixtures::affine_a1_degenerate().gcm);
        let elems = w.elements_up_to(6);
        let mats: HashSet<RatMat> = elems.iter().map(|x| x.matrix().clone()).collect();
        assert_eq!(mats.len(), elems.len());
        let w2 = CoxeterGroup::new(&fixtures::a2().gcm);
        assert_eq!(w2.elements_up_to(6).len(), 6);
    }

    /// Entries beyond `i64` fall back to rationals without changing results.
    #[test]
    fn overflow_promotes_to_rationals() {
        let g = Gcm::from_i64(&[&[2, -1_000_000], &[-1_000_000, 2]]).unwrap();
        let w = CoxeterGroup::new(&g);
        let word = [0, 1, 0, 1, 0, 1, 0];
        let x = w.from_word(&word).unwrap();
        assert_eq!(x.word(), &word);
        let mut want = RatMat::identity(2);
        for &i in &word {
            let mut s = RatMat::identity(2);
            for j in 0..2 {
                s[(i, j)] -= g.entry(j, i).clone();
            }
            want = want.mul(&s);
        }
        assert_eq!(x.matrix(), want);
        assert!(w.mul(&x, &w.inverse(&x)).is_identity());
        let half = Gcm::validate(&RatMat::from_rows(&[
            vec![crate::exactla::rat(2), crate::exactla::ratio(-1, 2)],
            vec![crate::exactla::rat(-2), crate::exactla::rat(2)],
        ], 2))
        .unwrap();
        let wh = CoxeterGroup::new(&half);
        assert_eq!(wh.enum_parabolic(half.full()).unwrap().len(), 6);
    }
}
