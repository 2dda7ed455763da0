//! The obstruction 2-cocycle `κ` of an inner post-Lie algebra, its coboundary
//! solve and the reconstruction of a Rota-Baxter operator.

use serde::Serialize;
use thiserror::Error;

use crate::lie::{LieAlgebra, Subspace};
use crate::matrix::ExactMatrix;
use crate::postlie::{check_rota_baxter, inner_product_from_map, LinearMap, PostLieAlgebra};
use crate::scalar::{
    add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, GaussianRational, Vector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("not inner: L(e{}) is not an inner derivation", .index + 1)]
    NotInner { index: usize },
    #[error("obstruction class is nontrivial")]
    NontrivialClass,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// `κ(eᵢ, eⱼ)` for `i < j`, valued in the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTwoCochain {
    ambient: usize,
    values: Vec<Vector>,
    center: Subspace,
}

impl LieTwoCochain {
    /// `value(i, j)` gives `κ(eᵢ, eⱼ)` for `i < j`; panics if a value leaves
    /// the center.
    pub fn from_fn(center: Subspace, mut value: impl FnMut(usize, usize) -> Vector) -> Self {
        let n = center.ambient_dim();
        let mut values = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = value(i, j);
                assert!(center.contains(&v), "cochain value must be central");
                values.push(v);
            }
        }
        Self { ambient: n, values, center }
    }

    pub fn zero(center: Subspace) -> Self {
        let n = center.ambient_dim();
        Self::from_fn(center, |_, _| zero_vector(n))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // row-major index into the strict upper triangle
        let n = self.ambient;
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Antisymmetric extension to all basis pairs.
    pub fn value(&self, i: usize, j: usize) -> Vector {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.values[self.slot(i, j)].clone(),
            std::cmp::Ordering::Equal => zero_vector(self.ambient),
            std::cmp::Ordering::Greater => self.values[self.slot(j, i)].iter().map(|x| -x).collect(),
        }
    }

    pub fn evaluate(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let n = self.ambient;
        let mut out = zero_vector(n);
        for i in 0..n {
            for j in 0..n {
                if i == j || x[i] == GaussianRational::default() || y[j] == GaussianRational::default() {
                    continue;
                }
                axpy(&mut out, &(&x[i] * &y[j]), &self.value(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    pub fn sub(&self, other: &LieTwoCochain) -> LieTwoCochain {
        assert_eq!(self.center, other.center);
        LieTwoCochain {
            ambient: self.ambient,
            values: self.values.iter().zip(&other.values).map(|(a, b)| sub_vectors(a, b)).collect(),
            center: self.center.clone(),
        }
    }

    /// Nonzero entries as `(i, j, κ(eᵢ,eⱼ))`, `i < j`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.ambient;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.values[self.slot(i, j)];
                if !is_zero_vector(v) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }
}

/// `κ(x,y) = [φ(x),φ(y)] − φ([x,y]▷)` on basis pairs.
pub fn obstruction_cocycle(p: &PostLieAlgebra, phi: &LinearMap) -> Result<LieTwoCochain, ObstructionError> {
    if !p.is_witness(phi) {
        return Err(ObstructionError::InvalidWitness("[φ(x), y] differs from x ▷ y".into()));
    }
    let l = p.base();
    let n = p.dim();
    let center = l.center();
    let images = phi.images();
    let mut bad = None;
    let kappa = LieTwoCochain::from_fn(Subspace::full(n), |i, j| {
        let sub = p.sub_adjacent_bracket(&unit_vector(n, i), &unit_vector(n, j));
        let v = sub_vectors(&l.bracket(&images[i], &images[j]), &phi.apply(&sub));
        if bad.is_none() && !center.contains(&v) {
            bad = Some((i, j));
        }
        v
    });
    if let Some((i, j)) = bad {
        return Err(ObstructionError::InvalidWitness(format!("κ(e{}, e{}) is not central", i + 1, j + 1)));
    }
    Ok(LieTwoCochain { center, ..kappa })
}

/// `κ([x,y]▷,z) + κ([y,z]▷,x) + κ([z,x]▷,y) = 0` on all basis triples.
pub fn verify_lie_2cocycle(kappa: &LieTwoCochain, s: &LieAlgebra) -> bool {
    cocycle_violations(kappa, s).is_empty()
}

pub fn cocycle_violations(kappa: &LieTwoCochain, s: &LieAlgebra) -> Vec<(usize, usize, usize)> {
    let n = s.dim();
    assert_eq!(kappa.ambient_dim(), n);
    let e = |t: usize| unit_vector(n, t);
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let a = kappa.evaluate(s.bracket_basis(x, y), &e(z));
                let b = kappa.evaluate(s.bracket_basis(y, z), &e(x));
                let c = kappa.evaluate(s.bracket_basis(z, x), &e(y));
                if !is_zero_vector(&add_vectors(&add_vectors(&a, &b), &c)) {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// Canonical `t: g → Z(g)` with `κ(x,y) = −t([x,y]▷)`, or `None` when `[κ] ≠ 0`.
///
/// Unknowns are the coordinates of each `t(eₘ)` against the center basis.
pub fn coboundary_solve(kappa: &LieTwoCochain, s: &LieAlgebra) -> Option<LinearMap> {
    let n = s.dim();
    let center = kappa.center();
    let c = center.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if c == 0 || pairs.is_empty() {
        return kappa.is_zero().then(|| LinearMap::zero(n));
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &(i, j) in &pairs {
        let coords = center.coordinates(&kappa.value(i, j)).expect("central value");
        let br = s.bracket_basis(i, j);
        for (l, kl) in coords.into_iter().enumerate() {
            let mut row = vec![GaussianRational::default(); n * c];
            for (m, sm) in br.iter().enumerate() {
                row[m * c + l] = -sm;
            }
            rows.push(row);
            rhs.push(kl);
        }
    }
    let a = ExactMatrix::from_rows(&rows).expect("rectangular system");
    let (x, _) = a.solve_affine(&rhs).expect("dimensions agree")?;
    let images: Vec<Vector> = (0..n)
        .map(|m| {
            let mut v = zero_vector(n);
            for (l, z) in center.basis().iter().enumerate() {
                axpy(&mut v, &x[m * c + l], z);
            }
            v
        })
        .collect();
    Some(LinearMap::from_images(&images))
}

/// Everything produced by a successful reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieReconstruction {
    pub phi: LinearMap,
    pub kappa: LieTwoCochain,
    pub t: LinearMap,
    pub r: LinearMap,
}

/// Witness, obstruction, coboundary, then `R = φ − t`.
pub fn construct_rb_from_obstruction(p: &PostLieAlgebra) -> Result<LieReconstruction, ObstructionError> {
    let phi = p.innerness_witness_detailed().map_err(|index| ObstructionError::NotInner { index })?;
    let kappa = obstruction_cocycle(p, &phi)?;
    let s = p.sub_adjacent();
    let t = coboundary_solve(&kappa, &s).ok_or(ObstructionError::NontrivialClass)?;
    let r = phi.sub(&t);
    assert!(check_rota_baxter(p.base(), &r), "reconstructed operator must be Rota-Baxter");
    assert_eq!(&inner_product_from_map(p.base(), &r), p, "reconstructed operator must reproduce the product");
    Ok(LieReconstruction { phi, kappa, t, r })
}

/// `g⁽²⁾ = {(x,y) : L▷(x) = ad_y}` inside `g▷ ⊕ g`, with its basis in `K²ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub algebra: LieAlgebra,
    pub embedding: Subspace,
}

pub fn pullback_algebra(p: &PostLieAlgebra) -> Result<Pullback, ObstructionError> {
    p.innerness_witness_detailed().map_err(|index| ObstructionError::NotInner { index })?;
    let n = p.dim();
    let l = p.base();
    let lefts: Vec<ExactMatrix> = (0..n).map(|i| p.left_multiplication_basis(i)).collect();
    let ads: Vec<ExactMatrix> = (0..n).map(|m| l.ad_basis(m)).collect();
    // Σ xᵢ L▷(eᵢ) − Σ yₘ ad(eₘ) = 0, one row per matrix entry
    let cond = ExactMatrix::from_fn(n * n, 2 * n, |r, c| {
        if c < n {
            lefts[c].entries()[r].clone()
        } else {
            -&ads[c - n].entries()[r]
        }
    });
    let embedding = Subspace::kernel(&cond);
    let s = p.sub_adjacent();
    let basis = embedding.basis().to_vec();
    let bracket = |u: &[GaussianRational], w: &[GaussianRational]| -> Vector {
        let mut out = s.bracket(&u[..n], &w[..n]);
        out.extend(l.bracket(&u[n..], &w[n..]));
        out
    };
    let algebra = LieAlgebra::from_upper(basis.len(), |i, j| {
        embedding.coordinates(&bracket(&basis[i], &basis[j])).expect("pullback is a subalgebra")
    })
    .expect("dimensions agree");
    Ok(Pullback { algebra, embedding })
}

/// Why two operators do not differ by a 1-cocycle into the center.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum DifferenceError {
    #[error("operator {0} is not Rota-Baxter")]
    NotRotaBaxter(usize),
    #[error("induced products differ at (e{}, e{})", .0 + 1, .1 + 1)]
    DifferentProducts(usize, usize),
    #[error("difference is not central at e{}", .0 + 1)]
    NotCentral(usize),
    #[error("difference does not vanish on [e{}, e{}]▷", .0 + 1, .1 + 1)]
    NotCocycle(usize, usize),
}

/// `t = R₂ − R₁`, verified central with `t([x,y]▷) = 0`.
pub fn rb_difference_cocycle(l: &LieAlgebra, r1: &LinearMap, r2: &LinearMap) -> Result<LinearMap, DifferenceError> {
    for (k, r) in [r1, r2].into_iter().enumerate() {
        if !check_rota_baxter(l, r) {
            return Err(DifferenceError::NotRotaBaxter(k + 1));
        }
    }
    let p1 = inner_product_from_map(l, r1);
    let p2 = inner_product_from_map(l, r2);
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            if p1.triangle_basis(i, j) != p2.triangle_basis(i, j) {
                return Err(DifferenceError::DifferentProducts(i, j));
            }
        }
    }
    let t = r2.sub(r1);
    let center = l.center();
    if let Some(j) = (0..n).find(|&j| !center.contains(&t.image_of_basis(j))) {
        return Err(DifferenceError::NotCentral(j));
    }
    let s = p1.sub_adjacent();
    for i in 0..n {
        for j in i + 1..n {
            if !is_zero_vector(&t.apply(s.bracket_basis(i, j))) {
                return Err(DifferenceError::NotCocycle(i, j));
            }
        }
    }
    Ok(t)
}
