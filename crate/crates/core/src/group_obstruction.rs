//! The obstruction 2-cocycle `ω` of an inner post-group, its coboundary solve
//! over the center, reconstruction of `B`, the pullback `G⁽²⁾` and the group
//! tower.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::group::{AbelianDecomposition, FiniteGroup, GroupMap};
use crate::integer::{solve_congruences, IntMatrix};
use crate::lie_obstruction::{DifferenceError, ObstructionError};
use crate::postgroup::{check_rb_group, conjugation_product, rb_group_violation, PostGroup, PostGroupError};

/// `ω(a, b)` for all pairs, valued in `Z(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTwoCocycle {
    order: usize,
    values: Vec<usize>,
    center: AbelianDecomposition,
}

impl GroupTwoCocycle {
    /// Panics if a value is not in the center.
    pub fn from_fn(order: usize, center: AbelianDecomposition, mut value: impl FnMut(usize, usize) -> usize) -> Self {
        let values: Vec<usize> = (0..order * order).map(|k| value(k / order, k % order)).collect();
        assert!(values.iter().all(|&v| center.contains(v)), "cocycle values must be central");
        Self { order, values, center }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[a * self.order + b]
    }

    pub fn center(&self) -> &AbelianDecomposition {
        &self.center
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.values.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// `ω(e, b) = ω(a, e) = e`.
    pub fn is_normalized(&self, identity: usize) -> bool {
        (0..self.order).all(|x| self.value(identity, x) == identity && self.value(x, identity) == identity)
    }

    pub fn is_trivial(&self, identity: usize) -> bool {
        self.values.iter().all(|&v| v == identity)
    }

    /// Pointwise `ω₁·ω₂⁻¹`.
    pub fn divide(&self, other: &GroupTwoCocycle) -> GroupTwoCocycle {
        let values =
            self.values.iter().zip(&other.values).map(|(&a, &b)| self.center.add(a, self.center.neg(b))).collect();
        GroupTwoCocycle { order: self.order, values, center: self.center.clone() }
    }
}

/// `ω(a,b) = Φ(b)⁻¹·Φ(a)⁻¹·Φ(a∘b)`.
pub fn obstruction_cocycle_group(pg: &PostGroup, phi: &GroupMap) -> Result<GroupTwoCocycle, ObstructionError> {
    if !pg.is_witness(phi) {
        return Err(ObstructionError::InvalidWitness("Ad_Φ(a) differs from L(a)".into()));
    }
    let g = pg.base();
    let e = g.identity();
    if phi.apply(e) != e {
        return Err(ObstructionError::InvalidWitness("Φ(e) is not the identity".into()));
    }
    let center = g.abelian_decomposition(&g.center()).expect("the center is an abelian subgroup");
    let n = g.order();
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let w = g.mul(g.mul(g.inv(phi.apply(b)), g.inv(phi.apply(a))), phi.apply(pg.circ(a, b)));
            if !center.contains(w) {
                return Err(ObstructionError::InvalidWitness(format!("ω({a}, {b}) is not central")));
            }
            values.push(w);
        }
    }
    let omega = GroupTwoCocycle { order: n, values, center };
    assert!(omega.is_normalized(e), "normalized witness gives a normalized cocycle");
    Ok(omega)
}

/// `ω(b,c)·ω(a,b∘c) = ω(a,b)·ω(a∘b,c)` on all triples; `circ` is `(G, ∘)`.
pub fn verify_group_2cocycle(omega: &GroupTwoCocycle, circ: &FiniteGroup) -> bool {
    group_cocycle_violation(omega, circ).is_none()
}

pub fn group_cocycle_violation(omega: &GroupTwoCocycle, circ: &FiniteGroup) -> Option<(usize, usize, usize)> {
    let n = omega.order();
    assert_eq!(circ.order(), n);
    let z = omega.center();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = z.add(omega.value(b, c), omega.value(a, circ.mul(b, c)));
                let rhs = z.add(omega.value(a, b), omega.value(circ.mul(a, b), c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// `ζ` with `ω(a,b) = ζ(a)·ζ(b)·ζ(a∘b)⁻¹` and `ζ(e) = e`, or `None` when the
/// class is nontrivial. One congruence system per invariant factor of `Z(G)`.
pub fn coboundary_solve_group(omega: &GroupTwoCocycle, circ: &FiniteGroup) -> Option<GroupMap> {
    let n = omega.order();
    let e = circ.identity();
    let z = omega.center();
    let factors = z.invariant_factors();
    if factors.is_empty() {
        return omega.is_trivial(e).then(|| GroupMap::constant(n, e));
    }
    let unknowns: Vec<usize> = (0..n).filter(|&a| a != e).collect();
    let column = |a: usize| unknowns.iter().position(|&u| u == a);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &a in &unknowns {
        for &b in &unknowns {
            let mut row = vec![0i64; unknowns.len()];
            row[column(a).expect("non-identity")] += 1;
            row[column(b).expect("non-identity")] += 1;
            if let Some(k) = column(circ.mul(a, b)) {
                row[k] -= 1;
            }
            rows.push(row);
            rhs.push(z.to_coords(omega.value(a, b)).expect("central").iter().map(|&c| c as i64).collect::<Vec<_>>());
        }
    }
    if unknowns.is_empty() {
        return Some(GroupMap::constant(n, e));
    }
    let moduli: Vec<BigInt> = factors.iter().map(|&d| BigInt::from(d)).collect();
    let x = solve_congruences(&IntMatrix::from_rows(&rows), &IntMatrix::from_rows(&rhs), &moduli)?;
    let mut zeta = vec![e; n];
    for (k, &a) in unknowns.iter().enumerate() {
        let coords: Vec<i64> = (0..factors.len()).map(|j| x[(k, j)].to_i64().expect("reduced residue")).collect();
        zeta[a] = z.from_coords(&coords);
    }
    let zeta = GroupMap(zeta);
    debug_assert!(is_trivialization(omega, circ, &zeta));
    Some(zeta)
}

/// Substitution check of `ω(a,b) = ζ(a)·ζ(b)·ζ(a∘b)⁻¹`.
pub fn is_trivialization(omega: &GroupTwoCocycle, circ: &FiniteGroup, zeta: &GroupMap) -> bool {
    let z = omega.center();
    let n = omega.order();
    (0..n).all(|a| z.contains(zeta.apply(a)))
        && (0..n).all(|a| {
            (0..n).all(|b| {
                let rhs = z.add(z.add(zeta.apply(a), zeta.apply(b)), z.neg(zeta.apply(circ.mul(a, b))));
                omega.value(a, b) == rhs
            })
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupReconstruction {
    pub phi: GroupMap,
    pub omega: GroupTwoCocycle,
    pub zeta: GroupMap,
    pub b: GroupMap,
}

/// Witness, obstruction, coboundary, then `B(a) = Φ(a)·ζ(a)`.
pub fn construct_rb_from_obstruction_group(pg: &PostGroup) -> Result<GroupReconstruction, ObstructionError> {
    let phi = pg.innerness_witness_detailed().map_err(|index| ObstructionError::NotInner { index })?;
    let omega = obstruction_cocycle_group(pg, &phi)?;
    let circ = pg
        .sub_adjacent_group()
        .map_err(|err| ObstructionError::InvalidWitness(format!("sub-adjacent product: {err}")))?;
    let zeta = coboundary_solve_group(&omega, &circ).ok_or(ObstructionError::NontrivialClass)?;
    let g = pg.base();
    let b = GroupMap((0..g.order()).map(|a| g.mul(phi.apply(a), zeta.apply(a))).collect());
    assert!(check_rb_group(g, &b), "reconstructed map must be Rota-Baxter");
    assert_eq!(&conjugation_product(g, &b), pg, "reconstructed map must reproduce the product");
    Ok(GroupReconstruction { phi, omega, zeta, b })
}

/// `G⁽²⁾ = {(a,b) : L▷(a) = Ad_b}` with `(a,b)(a',b') = (a∘a', b·b')`;
/// pairs listed lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPullback {
    pub group: FiniteGroup,
    pub pairs: Vec<(usize, usize)>,
}

pub fn pullback_group(pg: &PostGroup) -> Result<GroupPullback, ObstructionError> {
    pg.innerness_witness_detailed().map_err(|index| ObstructionError::NotInner { index })?;
    let g = pg.base();
    let n = g.order();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| pg.witness_coset(a).into_iter().map(move |b| (a, b))).collect();
    let index = |p: (usize, usize)| pairs.binary_search(&p).expect("pullback is closed");
    let table =
        pairs.iter().map(|&(a, b)| pairs.iter().map(|&(c, d)| index((pg.circ(a, c), g.mul(b, d)))).collect()).collect();
    let names = pairs.iter().map(|&(a, b)| format!("({},{})", g.name(a), g.name(b))).collect();
    let group = FiniteGroup::from_table(table)
        .map_err(|err| ObstructionError::InvalidWitness(format!("pullback: {err}")))?
        .with_names(names);
    Ok(GroupPullback { group, pairs })
}

/// `ζ(a) = B₁(a)⁻¹·B₂(a)`, verified central and multiplicative on `(G, ∘)`.
pub fn rb_difference_cocycle_group(g: &FiniteGroup, b1: &GroupMap, b2: &GroupMap) -> Result<GroupMap, DifferenceError> {
    for (k, b) in [b1, b2].into_iter().enumerate() {
        if !check_rb_group(g, b) {
            return Err(DifferenceError::NotRotaBaxter(k + 1));
        }
    }
    let p1 = conjugation_product(g, b1);
    let p2 = conjugation_product(g, b2);
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if p1.triangle(a, b) != p2.triangle(a, b) {
                return Err(DifferenceError::DifferentProducts(a, b));
            }
        }
    }
    let zeta = GroupMap((0..n).map(|a| g.mul(g.inv(b1.apply(a)), b2.apply(a))).collect());
    if let Some(a) = (0..n).find(|&a| !g.is_central(zeta.apply(a))) {
        return Err(DifferenceError::NotCentral(a));
    }
    for a in 0..n {
        for b in 0..n {
            if zeta.apply(p1.circ(a, b)) != g.mul(zeta.apply(a), zeta.apply(b)) {
                return Err(DifferenceError::NotCocycle(a, b));
            }
        }
    }
    Ok(zeta)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupTowerError {
    #[error(transparent)]
    Base(#[from] PostGroupError),
    #[error("level {level}: B is not Rota-Baxter on ({}, {})", .pair.0, .pair.1)]
    NotRotaBaxter { level: usize, pair: (usize, usize) },
    #[error("level {level}: {map} is not a homomorphism to level {}", .level - 1)]
    NotHomomorphism { level: usize, map: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTowerLevel {
    pub level: usize,
    pub center_order: usize,
    pub abelian: bool,
    /// `a ↦ a·B(a)` (product of level 0) is a homomorphism to the previous level.
    pub literal_tilde_homomorphism: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTower {
    pub levels: Vec<FiniteGroup>,
    pub b: GroupMap,
    pub report: Vec<GroupTowerLevel>,
}

/// `a ∘ᵢ₊₁ b = a ∘ᵢ (B(a) ∘ᵢ b ∘ᵢ B(a)⁻¹)`. Each level is checked: `B` is
/// Rota-Baxter there, and `B` and `a ↦ a ∘ᵢ₋₁ B(a)` are homomorphisms to the
/// previous level. The literal map `a ↦ a·B(a)` is only reported.
pub fn group_tower(g: &FiniteGroup, b: &GroupMap, depth: usize) -> Result<GroupTower, GroupTowerError> {
    if b.len() != g.order() || b.images().iter().any(|&v| v >= g.order()) {
        return Err(PostGroupError::BadMap { expected: g.order(), found: b.len() }.into());
    }
    let mut levels = vec![g.clone()];
    let mut report = vec![GroupTowerLevel {
        level: 0,
        center_order: g.center().len(),
        abelian: g.is_abelian(),
        literal_tilde_homomorphism: None,
    }];
    let literal = GroupMap((0..g.order()).map(|a| g.mul(a, b.apply(a))).collect());
    for level in 1..=depth {
        let prev = &levels[level - 1];
        if let Some(pair) = rb_group_violation(prev, b) {
            return Err(GroupTowerError::NotRotaBaxter { level: level - 1, pair });
        }
        let next = conjugation_product(prev, b).sub_adjacent_group()?;
        if !next.is_homomorphism_to(prev, b) {
            return Err(GroupTowerError::NotHomomorphism { level, map: "B" });
        }
        let tilde = GroupMap((0..g.order()).map(|a| prev.mul(a, b.apply(a))).collect());
        if !next.is_homomorphism_to(prev, &tilde) {
            return Err(GroupTowerError::NotHomomorphism { level, map: "a -> a * B(a)" });
        }
        report.push(GroupTowerLevel {
            level,
            center_order: next.center().len(),
            abelian: next.is_abelian(),
            literal_tilde_homomorphism: Some(next.is_homomorphism_to(prev, &literal)),
        });
        levels.push(next);
    }
    if let Some(pair) = rb_group_violation(&levels[depth], b) {
        return Err(GroupTowerError::NotRotaBaxter { level: depth, pair });
    }
    Ok(GroupTower { levels, b: b.clone(), report })
}
