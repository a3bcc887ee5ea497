//! Moving faces along linear maps and across sums and intersections with subspaces.

use super::{check_dim, fm::solve, in_span, is_zero_vec, subspace_contains, unit_vec, PolyCone, Rat, RatMat, RatVec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Back,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceMode {
    Sum,
    Intersect,
}

/// Face correspondences between a cone and its sum with, or intersection with, a subspace.
#[derive(Clone, Debug)]
pub enum FaceCorrespondence {
    /// Pairs `(F, F + U)` for the faces `F` of `K` with `U ∩ (K - F) ⊆ F - F`;
    /// the second components run through all faces of `K + U` exactly once.
    Sum(Vec<(PolyCone, PolyCone)>),
    /// `project` lists `(F, F ∩ U)` for all faces of `K`; `section` lists
    /// `(G, i(G))` for all faces `G` of `K ∩ U`, where `i(G)` is the smallest face
    /// of `K` containing `G`.
    Intersect { project: Vec<(PolyCone, PolyCone)>, section: Vec<(PolyCone, PolyCone)> },
}

/// Image (`Forward`) or preimage (`Back`) of `k` under `phi`.
///
/// Forward requires `K + ker(phi) ⊆ K`, back requires `K ⊆ im(phi)`; under these
/// conditions the map is an isomorphism of face lattices.
pub fn transport_faces(phi: &RatMat, k: &PolyCone, direction: Direction) -> Result<PolyCone> {
    match direction {
        Direction::Forward => {
            if phi.cols() != k.ambient_dim() {
                return Err(Error::DimensionMismatch("map source differs from cone space".into()));
            }
            let ker = phi.kernel_basis();
            if !subspace_contains(k.lineality(), &ker, k.ambient_dim()) {
                return Err(Error::Precondition("kernel of the map is not inside the lineality space".into()));
            }
            Ok(k.image(phi))
        }
        Direction::Back => {
            if phi.rows() != k.ambient_dim() {
                return Err(Error::DimensionMismatch("map target differs from cone space".into()));
            }
            let im = phi.col_vecs();
            if !k.all_generators().iter().all(|g| in_span(g, &im)) {
                return Err(Error::Precondition("cone is not inside the image of the map".into()));
            }
            Ok(k.preimage(phi))
        }
    }
}

pub fn faces_mod_subspace(k: &PolyCone, u: &[RatVec], mode: SubspaceMode) -> Result<FaceCorrespondence> {
    check_dim(u, k.ambient_dim(), "subspace vector")?;
    let faces = k.face_lattice();
    match mode {
        SubspaceMode::Sum => {
            let mut out = Vec::new();
            for f in &faces.faces {
                let k_minus_f = k.sum(&f.cone.negate());
                let meet = k_minus_f.intersect_subspace(u);
                let hull = f.cone.hull_basis();
                if meet.all_generators().iter().all(|g| in_span(g, &hull)) {
                    out.push((f.cone.clone(), f.cone.add_subspace(u)));
                }
            }
            Ok(FaceCorrespondence::Sum(out))
        }
        SubspaceMode::Intersect => {
            let project: Vec<(PolyCone, PolyCone)> =
                faces.faces.iter().map(|f| (f.cone.clone(), f.cone.intersect_subspace(u))).collect();
            let ku = k.intersect_subspace(u);
            let section = ku
                .face_lattice()
                .faces
                .iter()
                .map(|g| {
                    let idx = faces.face_of_point(&g.cone.ri_point()).expect("K ∩ U lies in K");
                    (g.cone.clone(), faces.faces[idx].cone.clone())
                })
                .collect();
            Ok(FaceCorrespondence::Intersect { project, section })
        }
    }
}

/// True iff no nontrivial nonnegative combination of `vectors` vanishes.
pub fn positively_independent(vectors: &[RatVec]) -> bool {
    let m = vectors.len();
    if m == 0 {
        return true;
    }
    let dim = vectors[0].len();
    // Variables c_1..c_m: sum c_l v_l = 0, c >= 0, sum c > 0.
    let eqs: Vec<RatVec> = (0..dim).map(|j| vectors.iter().map(|v| v[j].clone()).collect()).collect();
    let ge: Vec<RatVec> = (0..m).map(|l| unit_vec(m, l)).collect();
    let gt = vec![vec![Rat::from_integer(1.into()); m]];
    solve(m, &eqs, &ge, &gt).is_none()
}

/// `x ∈ cc(gens)`.
pub(crate) fn in_cone(x: &[Rat], gens: &[RatVec]) -> bool {
    if is_zero_vec(x) {
        return true;
    }
    let m = gens.len();
    let dim = x.len();
    // Variables (c_1..c_m, t): sum c_l g_l - t x = 0, c >= 0, t > 0.
    let eqs: Vec<RatVec> = (0..dim)
        .map(|j| {
            let mut row: RatVec = gens.iter().map(|g| g[j].clone()).collect();
            row.push(-x[j].clone());
            row
        })
        .collect();
    let ge: Vec<RatVec> = (0..m).map(|l| unit_vec(m + 1, l)).collect();
    let gt = vec![unit_vec(m + 1, m)];
    solve(m + 1, &eqs, &ge, &gt).is_some()
}

/// Positively independent and no member lies in the cone of the others.
pub fn is_chamber_base(hvecs: &[RatVec]) -> bool {
    if !positively_independent(hvecs) {
        return false;
    }
    (0..hvecs.len()).all(|i| {
        let others: Vec<RatVec> = hvecs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        others.is_empty() || !in_cone(&hvecs[i], &others)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ivec;

    #[test]
    fn identity_transport() {
        let k = PolyCone::from_generators(2, &[ivec(&[1, 0]), ivec(&[1, 1])], &[]).unwrap();
        let id = RatMat::identity(2);
        assert_eq!(transport_faces(&id, &k, Direction::Forward).unwrap(), k);
        assert_eq!(transport_faces(&id, &k, Direction::Back).unwrap(), k);
    }

    #[test]
    fn projection_of_half_plane() {
        // Upper half-plane {y >= 0}, projection onto the second coordinate.
        let k = PolyCone::from_generators(2, &[ivec(&[0, 1])], &[ivec(&[1, 0])]).unwrap();
        let phi = RatMat::from_i64(&[&[0, 1]]);
        let img = transport_faces(&phi, &k, Direction::Forward).unwrap();
        assert_eq!(img, PolyCone::from_generators(1, &[ivec(&[1])], &[]).unwrap());
        assert_eq!(transport_faces(&phi, &img, Direction::Back).unwrap(), k);
    }

    #[test]
    fn forward_precondition() {
        let k = PolyCone::from_generators(2, &[ivec(&[1, 0]), ivec(&[0, 1])], &[]).unwrap();
        let phi = RatMat::from_i64(&[&[0, 1]]);
        assert!(transport_faces(&phi, &k, Direction::Forward).is_err());
    }

    #[test]
    fn sum_with_line() {
        let k = PolyCone::from_generators(2, &[ivec(&[1, 0]), ivec(&[0, 1])], &[]).unwrap();
        let FaceCorrespondence::Sum(pairs) = faces_mod_subspace(&k, &[ivec(&[1, 0])], SubspaceMode::Sum).unwrap() else {
            panic!()
        };
        let firsts: Vec<PolyCone> = pairs.iter().map(|p| p.0.clone()).collect();
        assert_eq!(firsts, vec![PolyCone::from_generators(2, &[ivec(&[1, 0])], &[]).unwrap(), k.clone()]);
        assert_eq!(pairs[0].1, PolyCone::from_generators(2, &[], &[ivec(&[1, 0])]).unwrap());
    }

    #[test]
    fn positive_independence() {
        assert!(positively_independent(&[ivec(&[1, 0]), ivec(&[0, 1])]));
        assert!(!positively_independent(&[ivec(&[1, 0]), ivec(&[-1, 0])]));
        assert!(!positively_independent(&[ivec(&[0, 0])]));
        assert!(positively_independent(&[ivec(&[3, 1])]));
    }

    #[test]
    fn chamber_bases() {
        let e: Vec<RatVec> = (0..3).map(|i| unit_vec(3, i)).collect();
        assert!(is_chamber_base(&e));
        assert!(!is_chamber_base(&[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])]));
    }
}
