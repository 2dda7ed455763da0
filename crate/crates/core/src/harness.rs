//! Seeded random Rota-Baxter instances on small solvable and nilpotent
//! algebras over ℚ, and the property suite run over them.
//!
//! An instance starts from `R = −π_S`, the projection onto a coordinate
//! subalgebra `S` along a complementary coordinate subalgebra. On top of that
//! it may flip `R ↦ −id − R`, add a central map vanishing on `[g,g]▷`, and
//! conjugate everything by a random integer basis change.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::lie::{LieAlgebra, Subspace};
use crate::lie_obstruction::{coboundary_solve, construct_rb_from_obstruction, obstruction_cocycle};
use crate::matrix::ExactMatrix;
use crate::postlie::{check_rota_baxter, from_rota_baxter, maps_into_center, LinearMap};
use crate::scalar::{unit_vector, zero_vector, GaussianRational, Vector};
use crate::tower::next_bracket;

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn vec_of(dim: usize, terms: &[(usize, i64)]) -> Vector {
    let mut v = zero_vector(dim);
    for &(k, c) in terms {
        v[k] = q(c);
    }
    v
}

fn algebra(dim: usize, brackets: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    let list: Vec<_> = brackets.iter().map(|&(i, j, t)| (i, j, vec_of(dim, t))).collect();
    LieAlgebra::from_brackets(dim, &list).expect("catalog entry")
}

/// Named solvable or nilpotent algebras of dimension at most 4.
pub fn small_catalog() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("k1", LieAlgebra::abelian(1)),
        ("k2", LieAlgebra::abelian(2)),
        ("k3", LieAlgebra::abelian(3)),
        ("k4", LieAlgebra::abelian(4)),
        ("r2", algebra(2, &[(0, 1, &[(1, 1)])])),
        ("r2+k", algebra(3, &[(0, 1, &[(1, 1)])])),
        ("r2+k2", algebra(4, &[(0, 1, &[(1, 1)])])),
        ("h3", algebra(3, &[(0, 1, &[(2, 1)])])),
        ("h3+k", algebra(4, &[(0, 1, &[(2, 1)])])),
        ("r3(1)", algebra(3, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, 1)])])),
        ("r3(-1)", algebra(3, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, -1)])])),
        ("r3(2)", algebra(3, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, 2)])])),
        ("r3", algebra(3, &[(0, 1, &[(1, 1)]), (0, 2, &[(1, 1), (2, 1)])])),
        ("r2+r2", algebra(4, &[(0, 1, &[(1, 1)]), (2, 3, &[(3, 1)])])),
        ("n4", algebra(4, &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])])),
        ("h3xd", algebra(4, &[(0, 1, &[(2, 1)]), (3, 0, &[(0, 1)]), (3, 1, &[(1, 1)]), (3, 2, &[(2, 2)])])),
    ]
}

fn coordinate_closed(l: &LieAlgebra, set: &[bool]) -> bool {
    let n = l.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            !(set[i] && set[j]) || l.bracket_basis(i, j).iter().enumerate().all(|(k, c)| set[k] || c.is_zero())
        })
    })
}

#[derive(Debug, Clone)]
pub struct RbInstance {
    pub label: String,
    pub algebra: LieAlgebra,
    pub r: LinearMap,
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    loop {
        let m = ExactMatrix::from_fn(n, n, |_, _| q(rng.gen_range(-2..=2)));
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Central maps `t` with `t([g,g]▷) = 0`.
fn central_shifts(l: &LieAlgebra, r: &LinearMap) -> Vec<LinearMap> {
    let n = l.dim();
    let sub = next_bracket(l, r).expect("RB by construction");
    let derived = sub.bracket_subspaces(&Subspace::full(n), &Subspace::full(n));
    let functionals = if derived.dim() == 0 {
        (0..n).map(|k| unit_vector(n, k)).collect()
    } else {
        ExactMatrix::from_rows(derived.basis()).expect("rectangular").nullspace()
    };
    let mut out = Vec::new();
    for z in l.center().basis() {
        for f in &functionals {
            let images: Vec<Vector> = f.iter().map(|c| z.iter().map(|x| x * c).collect()).collect();
            out.push(LinearMap::from_images(&images));
        }
    }
    out
}

fn random_combination(rng: &mut ChaCha8Rng, n: usize, maps: &[LinearMap]) -> LinearMap {
    maps.iter().fold(LinearMap::zero(n), |acc, m| {
        let c = q(rng.gen_range(-3..=3));
        acc.add(&LinearMap::new(m.matrix().scale(&c)))
    })
}

pub fn random_rb_instance(rng: &mut ChaCha8Rng) -> RbInstance {
    let catalog = small_catalog();
    let (name, base) = catalog.choose(rng).expect("nonempty").clone();
    let n = base.dim();
    let s = loop {
        let s: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let t: Vec<bool> = s.iter().map(|b| !b).collect();
        if coordinate_closed(&base, &s) && coordinate_closed(&base, &t) {
            break s;
        }
    };
    let mut label =
        format!("{name} S={:?}", s.iter().enumerate().filter(|p| *p.1).map(|p| p.0 + 1).collect::<Vec<_>>());
    let diag: Vec<Vector> = (0..n).map(|k| if s[k] { vec_of(n, &[(k, -1)]) } else { zero_vector(n) }).collect();
    let mut r = LinearMap::from_images(&diag);
    if rng.gen_bool(0.3) {
        r = r.neg().sub(&LinearMap::identity(n));
        label.push_str(" flip");
    }
    let shifts = central_shifts(&base, &r);
    if !shifts.is_empty() && rng.gen_bool(0.6) {
        r = r.add(&random_combination(rng, n, &shifts));
        label.push_str(" +t");
    }
    let (algebra, r) = if rng.gen_bool(0.7) {
        let p = random_invertible(rng, n);
        let inv = p.inverse().expect("invertible");
        label.push_str(" basis-change");
        (base.change_basis(&p).expect("invertible"), LinearMap::new(inv.mul(r.matrix()).mul(&p)))
    } else {
        (base, r)
    };
    RbInstance { label, algebra, r }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    pub instance: usize,
    pub label: String,
    pub property: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub seed: u64,
    pub instances: usize,
    pub with_center: usize,
    pub perturbations: usize,
    pub failures: Vec<PropertyFailure>,
}

impl PropertySummary {
    pub fn failed(&self, property: &str) -> usize {
        self.failures.iter().filter(|f| f.property == property).count()
    }
}

pub const PROPERTIES: [&str; 6] =
    ["rota-baxter", "post-lie-axioms", "pipeline", "center-invariants", "next-bracket", "section-independence"];

fn check_instance(inst: &RbInstance, rng: &mut ChaCha8Rng) -> (Vec<&'static str>, usize) {
    let mut bad = Vec::new();
    let (l, r) = (&inst.algebra, &inst.r);
    if !check_rota_baxter(l, r) {
        return (vec!["rota-baxter"], 0);
    }
    let Ok(p) = from_rota_baxter(l, r) else {
        return (vec!["rota-baxter"], 0);
    };
    if !p.check_axioms().is_valid() {
        bad.push("post-lie-axioms");
    }
    match construct_rb_from_obstruction(&p) {
        Ok(rec) if check_rota_baxter(l, &rec.r) && from_rota_baxter(l, &rec.r).ok().as_ref() == Some(&p) => {}
        _ => bad.push("pipeline"),
    }
    if !(p.center_is_invariant() && p.center_action_is_trivial()) {
        bad.push("center-invariants");
    }
    let sub = p.sub_adjacent();
    if next_bracket(l, r).ok().as_ref() != Some(&sub) {
        bad.push("next-bracket");
    }
    let mut perturbations = 0;
    let central = maps_into_center(l);
    if let Some(phi) = p.innerness_witness() {
        let kappa = obstruction_cocycle(&p, &phi).expect("witness");
        let trivial = coboundary_solve(&kappa, &sub).is_some();
        for _ in 0..if central.is_empty() { 0 } else { 2 } {
            let z = random_combination(rng, l.dim(), &central);
            let phi2 = phi.add(&z);
            perturbations += 1;
            let ok = p.is_witness(&phi2)
                && obstruction_cocycle(&p, &phi2).is_ok_and(|k2| {
                    coboundary_solve(&k2, &sub).is_some() == trivial
                        && coboundary_solve(&kappa.sub(&k2), &sub).is_some()
                });
            if !ok {
                bad.push("section-independence");
                break;
            }
        }
    } else {
        bad.push("pipeline");
    }
    (bad, perturbations)
}

/// Runs every property on `count` instances. Instance `k` draws from its own
/// stream of the seeded generator, so results do not depend on scheduling.
pub fn run_property_suite(seed: u64, count: usize) -> PropertySummary {
    let results: Vec<_> = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let inst = random_rb_instance(&mut rng);
            let has_center = inst.algebra.center().dim() > 0;
            let (bad, perturbations) = check_instance(&inst, &mut rng);
            (k, inst.label, has_center, bad, perturbations)
        })
        .collect();
    let mut summary =
        PropertySummary { seed, instances: count, with_center: 0, perturbations: 0, failures: Vec::new() };
    for (k, label, has_center, bad, perturbations) in results {
        summary.with_center += usize::from(has_center);
        summary.perturbations += perturbations;
        for property in bad {
            summary.failures.push(PropertyFailure { instance: k, label: label.clone(), property });
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_satisfies_jacobi() {
        for (name, l) in small_catalog() {
            assert!(l.check_jacobi(), "{name}");
            assert!(!l.is_semisimple() || l.dim() == 0, "{name}");
        }
    }

    #[test]
    fn instances_are_rota_baxter() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let inst = random_rb_instance(&mut rng);
            assert!(check_rota_baxter(&inst.algebra, &inst.r), "{}", inst.label);
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let a = run_property_suite(3, 20);
        assert_eq!(a, run_property_suite(3, 20));
        assert!(a.failures.is_empty(), "{:?}", a.failures);
    }
}
