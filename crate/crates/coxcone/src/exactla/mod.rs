//! Exact rational linear algebra and polyhedral cones.
//!
//! Everything here works over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate.

mod cone;
pub(crate) mod fm;
mod transport;

pub use cone::{ConeFace, ConeFaceLattice, PolyCone};
pub use fm::{feasible, feasible_point};
pub use transport::{
    faces_mod_subspace, is_chamber_base, positively_independent, transport_faces, Direction,
    FaceCorrespondence, SubspaceMode,
};

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero_vec(n: usize) -> RatVec {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> RatVec {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn ivec(v: &[i64]) -> RatVec {
    v.iter().map(|&x| rat(x)).collect()
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

/// Formats as `p/q`, or `p` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rat, a: &[Rat]) -> RatVec {
    a.iter().map(|x| c * x).collect()
}

/// `a + c * b`
pub fn axpy(a: &[Rat], c: &Rat, b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

pub fn neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

fn integer_scale(v: &[Rat]) -> Option<(Rat, Vec<BigInt>)> {
    if is_zero_vec(v) {
        return None;
    }
    let mut l = BigInt::one();
    for x in v {
        l = num::integer::lcm(l, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    Some((Rat::new(l, g), ints))
}

/// Positive rescaling to coprime integer coordinates (keeps the direction of a ray).
pub fn primitive_ray(v: &[Rat]) -> RatVec {
    match integer_scale(v) {
        None => v.to_vec(),
        Some((_, ints)) => ints.into_iter().map(Rat::from_integer).collect(),
    }
}

/// Coprime integer coordinates with positive leading nonzero entry (for lines).
pub fn primitive_line(v: &[Rat]) -> RatVec {
    let mut r = primitive_ray(v);
    if let Some(x) = r.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            r = neg(&r);
        }
    }
    r
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[RatVec], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        RatMat { rows: rows.len(), cols, data }
    }

    pub fn from_cols(cols: &[RatVec], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<RatVec> = rows.iter().map(|r| ivec(r)).collect();
        Self::from_rows(&rs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<RatVec> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> RatVec {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<RatVec> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.rows, v.len(), "dimension mismatch in product");
        let mut out = zero_vec(self.cols);
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let y = &self[(r, c)];
                if !y.is_zero() {
                    *o += x * y;
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> RatMat {
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat { rows: self.rows, cols: self.cols, data: add(&self.data, &other.data) }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMat {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(p) = (pr..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, pr);
            let inv = m[(pr, c)].recip();
            for k in c..m.cols {
                let v = &m[(pr, k)] * &inv;
                m[(pr, k)] = v;
            }
            for r in 0..m.rows {
                if r == pr || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for k in c..m.cols {
                    if m[(pr, k)].is_zero() {
                        continue;
                    }
                    let v = &m[(pr, k)] * &f;
                    m[(r, k)] -= v;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<RatVec> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RatMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(red.submatrix(&rows, &cols))
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<RatVec> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in piv.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

/// Null space of `M`, spec-level name.
pub fn kernel_basis(m: &RatMat) -> Vec<RatVec> {
    m.kernel_basis()
}

/// A basis of the span of `vecs`, in reduced echelon form (canonical for the subspace).
pub fn span_basis(vecs: &[RatVec], dim: usize) -> Vec<RatVec> {
    let m = RatMat::from_rows(vecs, dim);
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn span_rank(vecs: &[RatVec], dim: usize) -> usize {
    RatMat::from_rows(vecs, dim).rank()
}

pub fn in_span(v: &[Rat], basis: &[RatVec]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let dim = v.len();
    let mut all = basis.to_vec();
    let r = span_rank(&all, dim);
    all.push(v.to_vec());
    span_rank(&all, dim) == r
}

pub fn subspace_contains(big: &[RatVec], small: &[RatVec], dim: usize) -> bool {
    let r = span_rank(big, dim);
    let mut all = big.to_vec();
    all.extend_from_slice(small);
    span_rank(&all, dim) == r
}

pub fn subspace_eq(a: &[RatVec], b: &[RatVec], dim: usize) -> bool {
    span_basis(a, dim) == span_basis(b, dim)
}

/// `{x : <x, v> = 0 for all v in vecs}`.
pub fn annihilator(vecs: &[RatVec], dim: usize) -> Vec<RatVec> {
    RatMat::from_rows(vecs, dim).kernel_basis()
}

pub fn subspace_intersection(a: &[RatVec], b: &[RatVec], dim: usize) -> Vec<RatVec> {
    let mut eqs = annihilator(a, dim);
    eqs.extend(annihilator(b, dim));
    annihilator(&eqs, dim)
}

pub(crate) fn check_dim(vecs: &[RatVec], dim: usize, what: &str) -> Result<()> {
    if let Some(v) = vecs.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!("{what}: expected length {dim}, got {}", v.len())));
    }
    Ok(())
}
