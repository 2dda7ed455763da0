//! Finite-dimensional Lie algebras given by structure constants.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::scalar::{axpy, is_zero_vector, zero_vector, GaussianRational, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("[e{i},e{i}] must vanish")]
    NonzeroDiagonal { i: usize },
    #[error("bracket [e{i},e{j}] has {found} coordinates, expected {expected}")]
    BadLength { i: usize, j: usize, expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("conflicting definitions of [e{i},e{j}]")]
    Conflict { i: usize, j: usize },
}

/// A Lie algebra with basis `e₁ … eₙ` and `[eᵢ,eⱼ] = Σₖ c[i][j][k] eₖ`.
///
/// Only the brackets with `i < j` are supplied; the rest of the table is
/// derived, so antisymmetry holds by construction. The Jacobi identity is
/// checked separately by [`LieAlgebra::check_jacobi`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieAlgebra {
    dim: usize,
    sc: Vec<GaussianRational>,
}

impl LieAlgebra {
    /// Builds the algebra from `upper(i, j)` = `[eᵢ,eⱼ]` for `i < j`.
    pub fn from_upper(dim: usize, mut upper: impl FnMut(usize, usize) -> Vector) -> Result<Self, LieError> {
        let mut sc = vec![GaussianRational::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = upper(i, j);
                if v.len() != dim {
                    return Err(LieError::BadLength { i: i + 1, j: j + 1, expected: dim, found: v.len() });
                }
                for (k, x) in v.into_iter().enumerate() {
                    sc[(j * dim + i) * dim + k] = -&x;
                    sc[(i * dim + j) * dim + k] = x;
                }
            }
        }
        Ok(Self { dim, sc })
    }

    /// Builds the algebra from a list of brackets `([eᵢ,eⱼ], value)` with
    /// 0-based indices in either order; unlisted brackets are zero.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self, LieError> {
        let mut upper: Vec<Option<Vector>> = vec![None; dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx + 1, dim });
                }
            }
            if v.len() != dim {
                return Err(LieError::BadLength { i: i + 1, j: j + 1, expected: dim, found: v.len() });
            }
            if i == j {
                if is_zero_vector(v) {
                    continue;
                }
                return Err(LieError::NonzeroDiagonal { i: i + 1 });
            }
            let (a, b, val) = if i < j { (i, j, v.clone()) } else { (j, i, v.iter().map(|x| -x).collect()) };
            match &upper[a * dim + b] {
                Some(prev) if *prev != val => return Err(LieError::Conflict { i: a + 1, j: b + 1 }),
                _ => upper[a * dim + b] = Some(val),
            }
        }
        Self::from_upper(dim, |i, j| upper[i * dim + j].clone().unwrap_or_else(|| zero_vector(dim)))
    }

    pub fn abelian(dim: usize) -> Self {
        Self { dim, sc: vec![GaussianRational::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &GaussianRational {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[eᵢ,eⱼ]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[GaussianRational] {
        let start = (i * self.dim + j) * self.dim;
        &self.sc[start..start + self.dim]
    }

    pub fn bracket(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                axpy(&mut out, &c, self.bracket_basis(i, j));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.iter().all(Zero::is_zero)
    }

    /// Jacobi residual `[[eᵢ,eⱼ],eₖ] + [[eⱼ,eₖ],eᵢ] + [[eₖ,eᵢ],eⱼ]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim;
        let e = |t: usize| crate::scalar::unit_vector(n, t);
        let mut acc = self.bracket(self.bracket_basis(i, j), &e(k));
        let b = self.bracket(self.bracket_basis(j, k), &e(i));
        axpy(&mut acc, &GaussianRational::from_int(1), &b);
        let c = self.bracket(self.bracket_basis(k, i), &e(j));
        axpy(&mut acc, &GaussianRational::from_int(1), &c);
        acc
    }

    /// Basis triples `i < j < k` on which the Jacobi identity fails. The
    /// jacobiator is alternating, so these triples cover every case.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !is_zero_vector(&self.jacobiator(i, j, k)) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violations().is_empty()
    }

    /// Matrix of `y ↦ [x,y]` (columns are images of basis vectors).
    pub fn ad_matrix(&self, x: &[GaussianRational]) -> ExactMatrix {
        let n = self.dim;
        assert_eq!(x.len(), n, "ad_matrix: vector length");
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &crate::scalar::unit_vector(n, j));
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> ExactMatrix {
        let n = self.dim;
        ExactMatrix::from_fn(n, n, |k, j| self.constant(i, j, k).clone())
    }

    /// The center `Z(g)`, the common kernel of all `ad(eᵢ)`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|j| self.constant(i, j, k).clone()).collect::<Vector>());
            }
        }
        let null = if n == 0 { Vec::new() } else { ExactMatrix::from_rows(&rows).expect("rectangular").nullspace() };
        Subspace::span(n, &null)
    }

    /// `Der(g)` as a subspace of `n×n` matrices flattened row-major.
    pub fn derivations(&self) -> Subspace {
        let n = self.dim;
        let var = |row: usize, col: usize| row * n + col;
        let mut eqs: Vec<Vector> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j], coordinate k
                    let mut eq = zero_vector(n * n);
                    for m in 0..n {
                        let c = self.constant(i, j, m);
                        if !c.is_zero() {
                            eq[var(k, m)] += c;
                        }
                        let c = self.constant(m, j, k);
                        if !c.is_zero() {
                            eq[var(m, i)] -= c;
                        }
                        let c = self.constant(i, m, k);
                        if !c.is_zero() {
                            eq[var(m, j)] -= c;
                        }
                    }
                    if !is_zero_vector(&eq) {
                        eqs.push(eq);
                    }
                }
            }
        }
        if eqs.is_empty() {
            return Subspace::full(n * n);
        }
        let null = ExactMatrix::from_rows(&eqs).expect("rectangular").nullspace();
        Subspace::span(n * n, &null)
    }

    /// `Inn(g)`, spanned by the flattened `ad(eᵢ)`.
    pub fn inner_derivations(&self) -> Subspace {
        let n = self.dim;
        let gens: Vec<Vector> = (0..n).map(|i| self.ad_basis(i).entries().to_vec()).collect();
        Subspace::span(n * n, &gens)
    }

    /// Killing form `K(eᵢ,eⱼ) = tr(ad eᵢ · ad eⱼ)`.
    pub fn killing_form(&self) -> ExactMatrix {
        let n = self.dim;
        let ads: Vec<ExactMatrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        ExactMatrix::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace())
    }

    /// Killing form together with the flag `det K ≠ 0` (Cartan's criterion).
    pub fn killing_semisimple(&self) -> (ExactMatrix, bool) {
        let k = self.killing_form();
        let semisimple = self.dim > 0 && !k.determinant().is_zero();
        (k, semisimple)
    }

    pub fn is_semisimple(&self) -> bool {
        self.killing_semisimple().1
    }

    /// Zero center and every derivation inner.
    pub fn is_complete(&self) -> bool {
        self.center().dim() == 0 && self.derivations().dim() == self.inner_derivations().dim()
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                gens.push(self.bracket(u, v));
            }
        }
        Subspace::span(self.dim, &gens)
    }

    /// Dimensions of `g⁽¹⁾ = [g,g], g⁽²⁾ = [g⁽¹⁾,g⁽¹⁾], …` up to the first
    /// repeated term.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        self.series(|alg, cur| alg.bracket_subspaces(cur, cur))
    }

    /// Dimensions of `g¹ = [g,g], g² = [g,g¹], …` up to the first repeated term.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let whole = Subspace::full(self.dim);
        self.series(|alg, cur| alg.bracket_subspaces(&whole, cur))
    }

    fn series(&self, next: impl Fn(&Self, &Subspace) -> Subspace) -> Vec<usize> {
        let whole = Subspace::full(self.dim);
        let mut cur = self.bracket_subspaces(&whole, &whole);
        let mut dims = vec![cur.dim()];
        loop {
            let nxt = next(self, &cur);
            if nxt == cur {
                return dims;
            }
            dims.push(nxt.dim());
            cur = nxt;
        }
    }

    pub fn invariant_fingerprint(&self) -> Fingerprint {
        Fingerprint {
            dim: self.dim,
            center_dim: self.center().dim(),
            killing_rank: self.killing_form().rank(),
            derived_series: self.derived_series_dims(),
            lower_central_series: self.lower_central_series_dims(),
            derivation_dim: self.derivations().dim(),
        }
    }

    /// True when the linear map `m` (columns = images) preserves brackets
    /// from `self` to `target`, checked on basis pairs.
    pub fn is_homomorphism_to(&self, target: &LieAlgebra, m: &ExactMatrix) -> bool {
        self.homomorphism_violations(target, m).is_empty()
    }

    pub fn homomorphism_violations(&self, target: &LieAlgebra, m: &ExactMatrix) -> Vec<(usize, usize)> {
        let n = self.dim;
        let images: Vec<Vector> = (0..n).map(|i| m.column(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = m.mul_vec(self.bracket_basis(i, j));
                let rhs = target.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The same algebra written in the basis `bᵢ = Σₖ p[k][i] eₖ` (columns of
    /// the invertible matrix `p`).
    pub fn change_basis(&self, p: &ExactMatrix) -> Option<LieAlgebra> {
        let inv = p.inverse()?;
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|i| p.column(i)).collect();
        LieAlgebra::from_upper(n, |i, j| inv.mul_vec(&self.bracket(&cols[i], &cols[j]))).ok()
    }
}

/// Isomorphism invariants of a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub center_dim: usize,
    pub killing_rank: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub derivation_dim: usize,
}

/// A linear subspace of `K^ambient`, stored as the nonzero rows of its
/// reduced row echelon form. Equal subspaces have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(|k| crate::scalar::unit_vector(ambient, k)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let vectors: Vec<Vector> = vectors.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "span: vector length");
        let (r, pivots) = ExactMatrix::from_rows(&vectors).expect("rectangular").rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self { ambient, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` against the echelon basis, or `None` if `v` is not
    /// in the subspace.
    pub fn coordinates(&self, v: &[GaussianRational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient, "coordinates: vector length");
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zero_vector(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut rebuilt, c, b);
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &gens)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // a·A - b·B = 0  ⇒  a·A lies in both
        let (p, q) = (self.dim(), other.dim());
        let cols: Vec<Vector> =
            self.basis.iter().cloned().chain(other.basis.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
        let m = ExactMatrix::from_columns(self.ambient, &cols).expect("consistent lengths");
        let gens: Vec<Vector> = m
            .nullspace()
            .into_iter()
            .map(|w| {
                let mut acc = zero_vector(self.ambient);
                for (c, b) in w[..p].iter().zip(&self.basis) {
                    axpy(&mut acc, c, b);
                }
                acc
            })
            .collect();
        debug_assert!(gens.len() <= p.min(q));
        Subspace::span(self.ambient, &gens)
    }

    /// Image of the matrix `m` (column space).
    pub fn image(m: &ExactMatrix) -> Subspace {
        let cols: Vec<Vector> = (0..m.cols()).map(|j| m.column(j)).collect();
        Subspace::span(m.rows(), &cols)
    }

    pub fn kernel(m: &ExactMatrix) -> Subspace {
        Subspace::span(m.cols(), &m.nullspace())
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn algebra() -> impl Strategy<Value = LieAlgebra> {
        prop_oneof![
            Just(catalog::sl2()),
            Just(catalog::solvable()),
            Just(catalog::heisenberg()),
            Just(LieAlgebra::abelian(3)),
        ]
    }

    fn invertible() -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec(-2i64..3, 9)
            .prop_map(|v| ExactMatrix::from_fn(3, 3, |i, j| GaussianRational::from_int(v[i * 3 + j])))
            .prop_filter("invertible", |m| !m.determinant().is_zero())
    }

    proptest! {
        #[test]
        fn inner_derivations_are_derivations(l in algebra(), p in invertible()) {
            let l = l.change_basis(&p).unwrap();
            prop_assert!(l.check_jacobi());
            let inn = l.inner_derivations();
            prop_assert!(inn.is_subspace_of(&l.derivations()));
            prop_assert_eq!(inn.dim(), l.dim() - l.center().dim());
            if l.is_semisimple() {
                prop_assert!(l.is_complete());
            }
        }

        #[test]
        fn fingerprint_is_basis_invariant(l in algebra(), p in invertible()) {
            prop_assert_eq!(l.change_basis(&p).unwrap().invariant_fingerprint(), l.invariant_fingerprint());
        }
    }
}
