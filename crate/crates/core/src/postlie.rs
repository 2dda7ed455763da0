//! Post-Lie algebras, Rota-Baxter operators on Lie algebras and the inner
//! witness `φ` with `x ▷ y = [φ(x), y]`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lie::{LieAlgebra, Subspace};
use crate::matrix::ExactMatrix;
use crate::scalar::{
    add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, GaussianRational, Vector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PostLieError {
    #[error("operator acts on dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a Rota-Baxter operator: identity fails on (e{}, e{})", .pair.0 + 1, .pair.1 + 1)]
    NotRotaBaxter { pair: (usize, usize) },
    #[error("product table has {found} entries, expected {expected}")]
    BadTable { expected: usize, found: usize },
}

/// A linear endomorphism of `Kⁿ`; column `j` is the image of `eⱼ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap(ExactMatrix);

impl LinearMap {
    pub fn new(matrix: ExactMatrix) -> Self {
        assert!(matrix.is_square(), "linear map must be square");
        Self(matrix)
    }

    pub fn from_images(images: &[Vector]) -> Self {
        Self(ExactMatrix::from_columns(images.len(), images).expect("images have the ambient length"))
    }

    pub fn zero(n: usize) -> Self {
        Self(ExactMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(ExactMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn image_of_basis(&self, j: usize) -> Vector {
        self.0.column(j)
    }

    pub fn images(&self) -> Vec<Vector> {
        (0..self.dim()).map(|j| self.image_of_basis(j)).collect()
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vector {
        self.0.mul_vec(v)
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> LinearMap {
        LinearMap(self.0.scale(&-GaussianRational::one()))
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap(self.0.mul(&inner.0))
    }

    pub fn plus_identity(&self) -> LinearMap {
        self.add(&LinearMap::identity(self.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// A Lie algebra `(g, [·,·])` with a second product `eᵢ ▷ eⱼ = Σₖ t[i][j][k] eₖ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PostLieAlgebra {
    base: LieAlgebra,
    tc: Vec<GaussianRational>,
}

/// Which post-Lie identity a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PostLieAxiom {
    /// `x▷[y,z] = [x▷y,z] + [y,x▷z]`
    Derivation,
    /// `([x,y] + x▷y − y▷x)▷z = x▷(y▷z) − y▷(x▷z)`
    WeightedAssociativity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: PostLieAxiom,
    /// 0-based basis triple `(x, y, z)`.
    pub triple: (usize, usize, usize),
    pub residual: Vector,
}

/// Every basis triple on which a post-Lie identity fails. Empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PostLieReport {
    pub violations: Vec<AxiomViolation>,
}

impl PostLieReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: PostLieAxiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

impl PostLieAlgebra {
    /// `table(i, j)` gives the coordinates of `eᵢ ▷ eⱼ`.
    pub fn from_fn(base: LieAlgebra, mut table: impl FnMut(usize, usize) -> Vector) -> Result<Self, PostLieError> {
        let n = base.dim();
        let mut tc = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = table(i, j);
                if v.len() != n {
                    return Err(PostLieError::BadTable { expected: n, found: v.len() });
                }
                tc.extend(v);
            }
        }
        Ok(Self { base, tc })
    }

    /// The zero product `x ▷ y = 0`.
    pub fn trivial(base: LieAlgebra) -> Self {
        let n = base.dim();
        Self { base, tc: vec![GaussianRational::zero(); n * n * n] }
    }

    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn triangle_basis(&self, i: usize, j: usize) -> &[GaussianRational] {
        let n = self.dim();
        let start = (i * n + j) * n;
        &self.tc[start..start + n]
    }

    pub fn triangle(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.triangle_basis(i, j));
            }
        }
        out
    }

    /// Matrix of the left multiplication `L▷(x): y ↦ x ▷ y`.
    pub fn left_multiplication(&self, x: &[GaussianRational]) -> ExactMatrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.triangle(x, &unit_vector(n, j))).collect();
        ExactMatrix::from_columns(n, &cols).expect("square")
    }

    pub fn left_multiplication_basis(&self, i: usize) -> ExactMatrix {
        let n = self.dim();
        ExactMatrix::from_fn(n, n, |k, j| self.triangle_basis(i, j)[k].clone())
    }

    /// Checks both post-Lie identities on every basis triple and reports all
    /// failures.
    pub fn check_axioms(&self) -> PostLieReport {
        let n = self.dim();
        let l = &self.base;
        let e = |t: usize| unit_vector(n, t);
        let mut violations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // x▷[y,z] - [x▷y,z] - [y,x▷z]
                    let lhs = self.triangle(&e(x), l.bracket_basis(y, z));
                    let r1 = l.bracket(self.triangle_basis(x, y), &e(z));
                    let r2 = l.bracket(&e(y), self.triangle_basis(x, z));
                    let res = sub_vectors(&sub_vectors(&lhs, &r1), &r2);
                    if !is_zero_vector(&res) {
                        violations.push(AxiomViolation {
                            axiom: PostLieAxiom::Derivation,
                            triple: (x, y, z),
                            residual: res,
                        });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let s = self.sub_adjacent_bracket(&e(x), &e(y));
                for z in 0..n {
                    let lhs = self.triangle(&s, &e(z));
                    let a = self.triangle(&e(x), self.triangle_basis(y, z));
                    let b = self.triangle(&e(y), self.triangle_basis(x, z));
                    let res = sub_vectors(&sub_vectors(&lhs, &a), &b.iter().map(|v| -v).collect::<Vector>());
                    if !is_zero_vector(&res) {
                        violations.push(AxiomViolation {
                            axiom: PostLieAxiom::WeightedAssociativity,
                            triple: (x, y, z),
                            residual: res,
                        });
                    }
                }
            }
        }
        PostLieReport { violations }
    }

    /// `[x,y]▷ = x▷y − y▷x + [x,y]`.
    pub fn sub_adjacent_bracket(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let a = self.triangle(x, y);
        let b = self.triangle(y, x);
        add_vectors(&sub_vectors(&a, &b), &self.base.bracket(x, y))
    }

    /// The sub-adjacent Lie algebra `g▷`.
    pub fn sub_adjacent(&self) -> LieAlgebra {
        let n = self.dim();
        LieAlgebra::from_upper(n, |i, j| self.sub_adjacent_bracket(&unit_vector(n, i), &unit_vector(n, j)))
            .expect("dimensions agree")
    }

    /// Center sub-representation: `x ▷ z ∈ Z(g)` for basis `x` and center basis `z`.
    pub fn center_is_invariant(&self) -> bool {
        let center = self.base.center();
        let n = self.dim();
        (0..n).all(|x| center.basis().iter().all(|z| center.contains(&self.triangle(&unit_vector(n, x), z))))
    }

    /// `x ▷ z = 0` for every `x` and every central `z`.
    pub fn center_action_is_trivial(&self) -> bool {
        let center = self.base.center();
        let n = self.dim();
        (0..n).all(|x| center.basis().iter().all(|z| is_zero_vector(&self.triangle(&unit_vector(n, x), z))))
    }

    /// The canonical inner witness, if every `L▷(eᵢ)` is an inner derivation.
    ///
    /// `φ(eᵢ)` is the solution of `ad_{φ(eᵢ)} = L▷(eᵢ)` with free coordinates
    /// set to zero, so `[φ(x), y] = x ▷ y` for all `x, y`.
    pub fn innerness_witness(&self) -> Option<LinearMap> {
        self.innerness_witness_detailed().ok()
    }

    /// Like [`Self::innerness_witness`], but on failure reports the first
    /// basis index whose left multiplication is not inner.
    pub fn innerness_witness_detailed(&self) -> Result<LinearMap, usize> {
        let n = self.dim();
        let inner = self.base.inner_derivations();
        for i in 0..n {
            if !inner.contains(self.left_multiplication_basis(i).entries()) {
                return Err(i);
            }
        }
        // columns: flattened ad(e_m); rows: matrix entries (k, j)
        let ads: Vec<ExactMatrix> = (0..n).map(|m| self.base.ad_basis(m)).collect();
        let system = ExactMatrix::from_fn(n * n, n, |r, m| ads[m].entries()[r].clone());
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let rhs = self.left_multiplication_basis(i);
            let (x, _) = system.solve_affine(rhs.entries()).expect("dimensions agree").ok_or(i)?;
            images.push(x);
        }
        Ok(LinearMap::from_images(&images))
    }

    /// `[φ(eᵢ), eⱼ] = eᵢ ▷ eⱼ` for all basis pairs.
    pub fn is_witness(&self, phi: &LinearMap) -> bool {
        let n = self.dim();
        phi.dim() == n
            && (0..n).all(|i| {
                let p = phi.image_of_basis(i);
                (0..n).all(|j| self.base.bracket(&p, &unit_vector(n, j)) == self.triangle_basis(i, j))
            })
    }

    /// Post-Lie structure with the same product on the sub-adjacent algebra
    /// replaced as base bracket; used to walk the Rota-Baxter tower.
    pub fn with_base(&self, base: LieAlgebra) -> Self {
        assert_eq!(base.dim(), self.dim());
        Self { base, tc: self.tc.clone() }
    }
}

/// Residual of the weight-1 Rota-Baxter identity on `(eᵢ, eⱼ)`:
/// `[Rx,Ry] − R([Rx,y] + [x,Ry] + [x,y])`.
fn rota_baxter_residual(l: &LieAlgebra, r: &LinearMap, i: usize, j: usize) -> Vector {
    let n = l.dim();
    let (x, y) = (unit_vector(n, i), unit_vector(n, j));
    let (rx, ry) = (r.image_of_basis(i), r.image_of_basis(j));
    let lhs = l.bracket(&rx, &ry);
    let inner = add_vectors(&add_vectors(&l.bracket(&rx, &y), &l.bracket(&x, &ry)), l.bracket_basis(i, j));
    sub_vectors(&lhs, &r.apply(&inner))
}

/// First basis pair violating the Rota-Baxter identity.
pub fn rota_baxter_violation(l: &LieAlgebra, r: &LinearMap) -> Option<(usize, usize)> {
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            if !is_zero_vector(&rota_baxter_residual(l, r, i, j)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_rota_baxter(l: &LieAlgebra, r: &LinearMap) -> bool {
    r.dim() == l.dim() && rota_baxter_violation(l, r).is_none()
}

/// The post-Lie algebra `x ▷ y = [R(x), y]` induced by a Rota-Baxter operator.
pub fn from_rota_baxter(l: &LieAlgebra, r: &LinearMap) -> Result<PostLieAlgebra, PostLieError> {
    if r.dim() != l.dim() {
        return Err(PostLieError::DimensionMismatch { expected: l.dim(), found: r.dim() });
    }
    if let Some(pair) = rota_baxter_violation(l, r) {
        return Err(PostLieError::NotRotaBaxter { pair });
    }
    Ok(inner_product_from_map(l, r))
}

/// `x ▷ y = [φ(x), y]` for an arbitrary linear map, without checking any axiom.
pub fn inner_product_from_map(l: &LieAlgebra, phi: &LinearMap) -> PostLieAlgebra {
    let n = l.dim();
    let images = phi.images();
    PostLieAlgebra::from_fn(l.clone(), |i, j| l.bracket(&images[i], &unit_vector(n, j))).expect("dimensions agree")
}

/// Subspace of all linear maps `g → Z(g)` expressed as `n×n` matrices
/// (flattened row-major); handy for perturbing witnesses.
pub fn maps_into_center(l: &LieAlgebra) -> Vec<LinearMap> {
    let n = l.dim();
    let center: Subspace = l.center();
    let mut out = Vec::new();
    for z in center.basis() {
        for j in 0..n {
            let mut images = vec![zero_vector(n); n];
            images[j] = z.clone();
            out.push(LinearMap::from_images(&images));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn zero_product_is_post_lie() {
        for l in [catalog::sl2(), catalog::solvable(), LieAlgebra::abelian(2)] {
            let p = PostLieAlgebra::trivial(l.clone());
            assert!(p.check_axioms().is_valid());
            assert_eq!(p.sub_adjacent(), l);
        }
    }

    #[test]
    fn sl2_example_is_post_lie() {
        let p = catalog::sl2_post_lie();
        assert!(p.check_axioms().is_valid());
        let s = p.sub_adjacent();
        assert!(s.check_jacobi());
        // [e1,e2]▷ = −(i/2)e2 + (3/2)e3, [e2,e3]▷ = 0, [e3,e1]▷ = (3/2)e2 + (i/2)e3
        assert_eq!(s.bracket_basis(1, 2), &[q(0), q(0), q(0)]);
        assert_eq!(
            s.bracket_basis(0, 1),
            &[q(0), GaussianRational::complex(0, 1, -1, 2), GaussianRational::ratio(3, 2)]
        );
        assert_eq!(s.killing_form().rank(), 1);
        assert!(!s.is_semisimple());
    }

    #[test]
    fn perturbed_sl2_is_reported() {
        let p = catalog::sl2_post_lie();
        let perturbed = PostLieAlgebra::from_fn(p.base().clone(), |i, j| {
            let mut v = p.triangle_basis(i, j).to_vec();
            if (i, j) == (0, 1) {
                v[0] += &q(1);
            }
            v
        })
        .unwrap();
        let report = perturbed.check_axioms();
        assert!(!report.is_valid());
        assert!(report.count(PostLieAxiom::Derivation) > 0);
    }

    #[test]
    fn rota_baxter_examples() {
        let sl2 = catalog::sl2();
        assert!(check_rota_baxter(&sl2, &LinearMap::zero(3)));
        assert!(check_rota_baxter(&sl2, &LinearMap::identity(3).neg()));
        assert!(check_rota_baxter(&sl2, &catalog::sl2_rota_baxter()));
        assert!(!check_rota_baxter(&sl2, &LinearMap::identity(3)));
        assert!(!check_rota_baxter(&catalog::solvable(), &LinearMap::zero(2)));
    }

    #[test]
    fn from_rota_baxter_examples() {
        let sl2 = catalog::sl2();
        assert_eq!(from_rota_baxter(&sl2, &LinearMap::zero(3)).unwrap(), PostLieAlgebra::trivial(sl2.clone()));

        let induced = from_rota_baxter(&sl2, &catalog::sl2_rota_baxter()).unwrap();
        assert_eq!(induced, catalog::sl2_post_lie());
        assert_eq!(induced.triangle_basis(2, 1), &[GaussianRational::ratio(1, 2), q(0), q(0)]);

        let s = catalog::solvable();
        let phi = catalog::solvable_phi(q(2), q(0), q(-1));
        let p = from_rota_baxter(&s, &phi).unwrap();
        assert!(p.check_axioms().is_valid());
        assert!(p.innerness_witness().is_some());

        assert!(matches!(
            from_rota_baxter(&s, &catalog::solvable_phi(q(0), q(1), q(0))),
            Err(PostLieError::NotRotaBaxter { .. })
        ));
        assert!(matches!(from_rota_baxter(&s, &LinearMap::zero(2)), Err(PostLieError::DimensionMismatch { .. })));
    }

    #[test]
    fn witness_examples() {
        let l = LieAlgebra::abelian(3);
        assert_eq!(PostLieAlgebra::trivial(l).innerness_witness(), Some(LinearMap::zero(3)));
        assert_eq!(PostLieAlgebra::trivial(catalog::sl2()).innerness_witness(), Some(LinearMap::zero(3)));

        let p = catalog::sl2_post_lie();
        assert_eq!(p.innerness_witness(), Some(catalog::sl2_rota_baxter()));

        let s = catalog::solvable();
        let phi = catalog::solvable_phi(q(3), q(1), q(5));
        let p = inner_product_from_map(&s, &phi);
        let w = p.innerness_witness().unwrap();
        assert!(p.is_witness(&w));
        let diff = phi.sub(&w);
        let center = s.center();
        assert!(diff.images().iter().all(|v| center.contains(v)));
    }

    #[test]
    fn outer_derivation_is_not_inner() {
        let p = catalog::outer_post_lie();
        assert!(p.check_axioms().is_valid());
        assert!(p.innerness_witness().is_none());
        assert_eq!(p.innerness_witness_detailed(), Err(2));
    }

    #[test]
    fn center_invariants_on_examples() {
        for p in [
            catalog::sl2_post_lie(),
            inner_product_from_map(&catalog::solvable(), &catalog::solvable_phi(q(1), q(1), q(1))),
        ] {
            assert!(p.center_is_invariant());
        }
        let s = catalog::solvable();
        let p = from_rota_baxter(&s, &catalog::solvable_phi(q(1), q(0), q(2))).unwrap();
        assert!(p.center_action_is_trivial());
    }

    #[test]
    fn rota_baxter_is_homomorphism_from_sub_adjacent() {
        let sl2 = catalog::sl2();
        let r = catalog::sl2_rota_baxter();
        let s = from_rota_baxter(&sl2, &r).unwrap().sub_adjacent();
        assert!(s.is_homomorphism_to(&sl2, r.matrix()));
        assert!(s.is_homomorphism_to(&sl2, r.plus_identity().matrix()));
    }
}
