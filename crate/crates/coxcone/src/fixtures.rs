//! Named systems used by tests, the self test and the examples in the README.

use crate::cartan::Gcm;
use crate::exactla::{ivec, RatMat, RatVec};
use crate::realization::{Characteristic, RootBase};

/// The 6-cycle with all edges labelled ∞ (`a_ij = -2` for neighbours).
pub fn six_cycle_gcm() -> Gcm {
    let mut a = RatMat::identity(6).scaled(&crate::exactla::rat(2));
    for i in 0..6 {
        a[(i, (i + 1) % 6)] = crate::exactla::rat(-2);
        a[((i + 1) % 6, i)] = crate::exactla::rat(-2);
    }
    Gcm::validate(&a).expect("valid GCM")
}

/// The two kernel vectors of the transposed 6-cycle matrix.
pub fn six_cycle_kernel() -> [RatVec; 2] {
    [ivec(&[1, 2, 1, -1, -2, -1]), ivec(&[1, 0, -1, -1, 0, 1])]
}

/// The four root bases of the 6-cycle: `'a'` free, `'b'` and `'c'` with one
/// kernel vector as relation, `'d'` with the whole kernel.
pub fn six_cycle_case(case: char) -> RootBase {
    let [r1, r2] = six_cycle_kernel();
    let l_h = match case {
        'a' => vec![],
        'b' => vec![r1],
        'c' => vec![r2],
        'd' => vec![r1, r2],
        _ => panic!("unknown case {case}"),
    };
    RootBase::build(&six_cycle_gcm(), &Characteristic { l_h, l_alpha: vec![], defect: 0 }).expect("root base")
}

/// Affine `A_1^(1)` with `α_2 = -α_1`.
pub fn affine_a1_degenerate() -> RootBase {
    let g = Gcm::from_i64(&[&[2, -2], &[-2, 2]]).unwrap();
    RootBase::build(&g, &Characteristic { l_h: vec![], l_alpha: vec![ivec(&[1, 1])], defect: 0 }).unwrap()
}

pub fn free_minimal(rows: &[&[i64]]) -> RootBase {
    RootBase::build(&Gcm::from_i64(rows).unwrap(), &Characteristic::free(0)).unwrap()
}

pub fn a1xa1() -> RootBase {
    free_minimal(&[&[2, 0], &[0, 2]])
}

pub fn a2() -> RootBase {
    free_minimal(&[&[2, -1], &[-1, 2]])
}

pub fn b2() -> RootBase {
    free_minimal(&[&[2, -1], &[-2, 2]])
}

pub fn g2() -> RootBase {
    free_minimal(&[&[2, -1], &[-3, 2]])
}

pub fn a3() -> RootBase {
    free_minimal(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])
}

pub fn a1xa2() -> RootBase {
    free_minimal(&[&[2, 0, 0], &[0, 2, -1], &[0, -1, 2]])
}

/// Affine `A_2^(1)` (triangle with simple edges), free realization.
pub fn affine_a2() -> RootBase {
    free_minimal(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
}
