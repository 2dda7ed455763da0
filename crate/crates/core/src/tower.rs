//! Iterated Rota-Baxter brackets `[x,y]_{i+1} = [Rx,y]_i + [x,Ry]_i + [x,y]_i`.

use serde::Serialize;
use thiserror::Error;

use crate::lie::{Fingerprint, LieAlgebra, Subspace};
use crate::matrix::ExactMatrix;
use crate::postlie::{rota_baxter_violation, LinearMap};
use crate::scalar::axpy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("operator acts on dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("level {level}: not a Rota-Baxter operator on (e{}, e{})", .pair.0 + 1, .pair.1 + 1)]
    NotRotaBaxter { level: usize, pair: (usize, usize) },
    #[error("level {level}: Jacobi identity fails")]
    Jacobi { level: usize },
    #[error("level {level}: {map} is not a homomorphism to level {}", .level - 1)]
    NotHomomorphism { level: usize, map: &'static str },
}

/// One step of the tower, computed straight from structure constants.
pub fn next_bracket(l: &LieAlgebra, r: &LinearMap) -> Result<LieAlgebra, TowerError> {
    let n = l.dim();
    if r.dim() != n {
        return Err(TowerError::DimensionMismatch { expected: n, found: r.dim() });
    }
    if let Some(pair) = rota_baxter_violation(l, r) {
        return Err(TowerError::NotRotaBaxter { level: 0, pair });
    }
    let images = r.images();
    Ok(LieAlgebra::from_upper(n, |i, j| {
        // [Reᵢ, eⱼ] = Σₘ R[m][i] c[m][j], [eᵢ, Reⱼ] = Σₘ R[m][j] c[i][m]
        let mut out = l.bracket_basis(i, j).to_vec();
        for (m, coef) in images[i].iter().enumerate() {
            axpy(&mut out, coef, l.bracket_basis(m, j));
        }
        for (m, coef) in images[j].iter().enumerate() {
            axpy(&mut out, coef, l.bracket_basis(i, m));
        }
        out
    })
    .expect("dimensions agree"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTower {
    pub levels: Vec<LieAlgebra>,
    pub r: LinearMap,
}

/// `depth + 1` levels. Every level is checked for Jacobi and for `R` being
/// Rota-Baxter, and `R`, `R + id` are checked as homomorphisms from each level
/// to the one below.
pub fn build_tower(l: &LieAlgebra, r: &LinearMap, depth: usize) -> Result<LieTower, TowerError> {
    let mut levels = vec![l.clone()];
    let r_plus = r.plus_identity();
    for level in 1..=depth {
        let prev = &levels[level - 1];
        if let Some(pair) = rota_baxter_violation(prev, r) {
            return Err(TowerError::NotRotaBaxter { level: level - 1, pair });
        }
        let next = next_bracket(prev, r)?;
        if !next.check_jacobi() {
            return Err(TowerError::Jacobi { level });
        }
        if !next.is_homomorphism_to(prev, r.matrix()) {
            return Err(TowerError::NotHomomorphism { level, map: "R" });
        }
        if !next.is_homomorphism_to(prev, r_plus.matrix()) {
            return Err(TowerError::NotHomomorphism { level, map: "R+id" });
        }
        levels.push(next);
    }
    if let Some(pair) = rota_baxter_violation(&levels[depth], r) {
        return Err(TowerError::NotRotaBaxter { level: depth, pair });
    }
    Ok(LieTower { levels, r: r.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub fingerprint: Fingerprint,
    pub semisimple: bool,
    pub jacobi: bool,
    /// Rank of `Rⁱ` and `(R+id)ⁱ` as maps from this level down to level 0.
    pub rank_r_power: usize,
    pub rank_r_plus_id_power: usize,
    /// `Some(true)` when the map is invertible and verified as a homomorphism
    /// to the previous level, i.e. an explicit isomorphism.
    pub r_isomorphism: Option<bool>,
    pub r_plus_id_isomorphism: Option<bool>,
    /// `R(gᵢ) + (R+id)(gᵢ) = g`.
    pub images_span: bool,
    /// `ker R ∩ ker(R+id) = 0`.
    pub kernels_disjoint: bool,
    /// `R(gᵢ) ∩ (R+id)(gᵢ) = R(R+id)(gᵢ₊₁)`; absent on the top level.
    pub intersection_identity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub levels: Vec<LevelReport>,
    pub fingerprints_coincide: bool,
    pub all_semisimple: bool,
    /// Whenever level `i+1` is semisimple, so is level `i`.
    pub semisimplicity_descends: bool,
}

pub fn tower_report(t: &LieTower) -> TowerReport {
    let n = t.r.dim();
    let r = t.r.matrix();
    let rp = t.r.plus_identity();
    let rp = rp.matrix();
    let image_r = Subspace::image(r);
    let image_rp = Subspace::image(rp);
    let images_span = image_r.sum(&image_rp) == Subspace::full(n);
    let kernels_disjoint = Subspace::kernel(r).intersection(&Subspace::kernel(rp)).dim() == 0;
    let composite = Subspace::image(&r.mul(rp));
    let identity_holds = image_r.intersection(&image_rp) == composite;

    let depth = t.levels.len() - 1;
    let mut levels = Vec::with_capacity(t.levels.len());
    for (i, l) in t.levels.iter().enumerate() {
        let (_, semisimple) = l.killing_semisimple();
        let iso = |m: &ExactMatrix| (i > 0 && m.inverse().is_some()).then(|| l.is_homomorphism_to(&t.levels[i - 1], m));
        levels.push(LevelReport {
            level: i,
            fingerprint: l.invariant_fingerprint(),
            semisimple,
            jacobi: l.check_jacobi(),
            rank_r_power: r.pow(i as u32).rank(),
            rank_r_plus_id_power: rp.pow(i as u32).rank(),
            r_isomorphism: iso(r),
            r_plus_id_isomorphism: iso(rp),
            images_span,
            kernels_disjoint,
            intersection_identity: (i >= 1 && i < depth).then_some(identity_holds),
        });
    }
    let fingerprints_coincide = levels.windows(2).all(|w| w[0].fingerprint == w[1].fingerprint);
    let all_semisimple = levels.iter().all(|l| l.semisimple);
    let semisimplicity_descends = levels.windows(2).all(|w| !w[1].semisimple || w[0].semisimple);
    TowerReport { levels, fingerprints_coincide, all_semisimple, semisimplicity_descends }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lie_obstruction::construct_rb_from_obstruction;
    use crate::postlie::{from_rota_baxter, inner_product_from_map};
    use crate::scalar::GaussianRational;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn zero_operator_is_constant() {
        let l = catalog::sl2();
        let t = build_tower(&l, &LinearMap::zero(3), 5).unwrap();
        assert_eq!(t.levels.len(), 6);
        assert!(t.levels.iter().all(|x| *x == l));
        assert!(tower_report(&t).fingerprints_coincide);
    }

    #[test]
    fn minus_identity_flips_sign() {
        let l = catalog::sl2();
        let next = next_bracket(&l, &LinearMap::identity(3).neg()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let neg: Vec<_> = l.bracket_basis(i, j).iter().map(|c| -c).collect();
                assert_eq!(next.bracket_basis(i, j), neg.as_slice());
            }
        }
    }

    #[test]
    fn agrees_with_sub_adjacent() {
        let sl2 = catalog::sl2();
        let p = catalog::sl2_rota_baxter();
        assert_eq!(next_bracket(&sl2, &p).unwrap(), from_rota_baxter(&sl2, &p).unwrap().sub_adjacent());
        let s = catalog::solvable();
        let r = catalog::solvable_phi(q(2), q(0), q(5));
        assert_eq!(next_bracket(&s, &r).unwrap(), from_rota_baxter(&s, &r).unwrap().sub_adjacent());
    }

    #[test]
    fn rejects_non_rota_baxter() {
        assert!(matches!(
            next_bracket(&catalog::sl2(), &LinearMap::identity(3)),
            Err(TowerError::NotRotaBaxter { .. })
        ));
        assert!(build_tower(&catalog::sl2(), &LinearMap::identity(3), 2).is_err());
    }

    #[test]
    fn sl2_tower_certificates() {
        let t = build_tower(&catalog::sl2(), &catalog::sl2_rota_baxter(), 3).unwrap();
        assert_eq!(t.levels.len(), 4);
        let rep = tower_report(&t);
        assert!(rep.levels.iter().all(|l| l.jacobi && l.images_span && l.kernels_disjoint));
        assert!(rep.levels[0].semisimple);
        // level 1 is the sub-adjacent algebra, which is solvable here
        assert!(!rep.levels[1].semisimple);
        assert!(rep.semisimplicity_descends);
        assert!(rep.levels.iter().all(|l| l.intersection_identity != Some(false)));
    }

    #[test]
    fn semisimple_towers_from_trivial_operators() {
        for r in [LinearMap::zero(3), LinearMap::identity(3).neg()] {
            let rep = tower_report(&build_tower(&catalog::sl2(), &r, 3).unwrap());
            assert!(rep.all_semisimple && rep.fingerprints_coincide);
            assert!(rep.levels[1..]
                .iter()
                .any(|l| l.r_isomorphism == Some(true) || l.r_plus_id_isomorphism == Some(true)));
        }
    }

    #[test]
    fn solvable_tower() {
        let l = catalog::solvable();
        let p = inner_product_from_map(&l, &catalog::solvable_phi(q(0), q(1), q(0)));
        let r = construct_rb_from_obstruction(&p).unwrap().r;
        let rep = tower_report(&build_tower(&l, &r, 3).unwrap());
        assert!(rep.levels.iter().all(|x| !x.semisimple && x.jacobi));
    }
}
