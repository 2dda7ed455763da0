//! Post-groups on finite groups, group Rota-Baxter operators and their
//! exhaustive enumeration.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PostGroupError {
    #[error("triangle table: {0}")]
    BadTable(String),
    #[error("map has {found} entries, expected {expected}")]
    BadMap { expected: usize, found: usize },
    #[error("not a Rota-Baxter operator: identity fails on ({}, {})", .0.0, .0.1)]
    NotRotaBaxter((usize, usize)),
    #[error("sub-adjacent product is not a group: {0}")]
    NotAGroup(GroupError),
    #[error("search exceeded {0} nodes")]
    CapExceeded(usize),
}

/// `(G, ·, ▷)` with `a ▷ b` stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PostGroup {
    base: FiniteGroup,
    triangle: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PostGroupAxiom {
    /// `a▷(b·c) = (a▷b)·(a▷c)`
    Automorphism,
    /// `(a·(a▷b))▷c = a▷(b▷c)`
    WeightedAssociativity,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PostGroupReport {
    pub violations: Vec<(PostGroupAxiom, (usize, usize, usize))>,
    /// Elements `a` whose left multiplication `b ↦ a▷b` is not a bijection.
    pub non_bijective: Vec<usize>,
}

impl PostGroupReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.non_bijective.is_empty()
    }
}

impl PostGroup {
    pub fn from_table(base: FiniteGroup, table: Vec<Vec<usize>>) -> Result<Self, PostGroupError> {
        let n = base.order();
        if table.len() != n {
            return Err(PostGroupError::BadTable(format!("{} rows, expected {n}", table.len())));
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(PostGroupError::BadTable(format!("row {row} has {} entries, expected {n}", r.len())));
            }
            if let Some(&v) = r.iter().find(|&&v| v >= n) {
                return Err(PostGroupError::BadTable(format!("row {row}: entry {v} out of range")));
            }
        }
        Ok(Self { base, triangle: table.into_iter().flatten().collect() })
    }

    /// `a ▷ b = b`.
    pub fn trivial(base: FiniteGroup) -> Self {
        let n = base.order();
        Self { base, triangle: (0..n * n).map(|k| k % n).collect() }
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn triangle(&self, a: usize, b: usize) -> usize {
        self.triangle[a * self.order() + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.triangle.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn left_multiplication(&self, a: usize) -> GroupMap {
        GroupMap((0..self.order()).map(|b| self.triangle(a, b)).collect())
    }

    pub fn check_axioms(&self) -> PostGroupReport {
        let g = &self.base;
        let n = self.order();
        let mut report = PostGroupReport::default();
        for a in 0..n {
            if !self.left_multiplication(a).is_bijection() {
                report.non_bijective.push(a);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.triangle(a, g.mul(b, c)) != g.mul(self.triangle(a, b), self.triangle(a, c)) {
                        report.violations.push((PostGroupAxiom::Automorphism, (a, b, c)));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let circ = g.mul(a, self.triangle(a, b));
                for c in 0..n {
                    if self.triangle(circ, c) != self.triangle(a, self.triangle(b, c)) {
                        report.violations.push((PostGroupAxiom::WeightedAssociativity, (a, b, c)));
                    }
                }
            }
        }
        report
    }

    /// `a ∘ b = a·(a▷b)`.
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.base.mul(a, self.triangle(a, b))
    }

    pub fn sub_adjacent_group(&self) -> Result<FiniteGroup, PostGroupError> {
        let n = self.order();
        let g = FiniteGroup::from_table((0..n).map(|a| (0..n).map(|b| self.circ(a, b)).collect()).collect())
            .map_err(PostGroupError::NotAGroup)?;
        Ok(match self.base.names() {
            Some(names) => g.with_names(names.to_vec()),
            None => g,
        })
    }

    /// `a ▷ z ∈ Z(G)` for all `a` and central `z`.
    pub fn center_is_invariant(&self) -> bool {
        let center = self.base.center();
        (0..self.order()).all(|a| center.iter().all(|&z| self.base.is_central(self.triangle(a, z))))
    }

    /// `a ▷ z = z` for all `a` and central `z`.
    pub fn center_action_is_trivial(&self) -> bool {
        let center = self.base.center();
        (0..self.order()).all(|a| center.iter().all(|&z| self.triangle(a, z) == z))
    }

    /// All `c` with `Ad_c = L▷(a)`, ascending.
    pub fn witness_coset(&self, a: usize) -> Vec<usize> {
        let target = self.left_multiplication(a);
        (0..self.order()).filter(|&c| self.base.inner_automorphism(c) == target).collect()
    }

    /// `Φ(a)` = smallest `c` with `Ad_c = L▷(a)`, then `Φ(e) = e`.
    pub fn innerness_witness(&self) -> Option<GroupMap> {
        self.innerness_witness_detailed().ok()
    }

    /// On failure, the first element whose left multiplication is not inner.
    pub fn innerness_witness_detailed(&self) -> Result<GroupMap, usize> {
        let n = self.order();
        let ads: Vec<GroupMap> = (0..n).map(|c| self.base.inner_automorphism(c)).collect();
        let mut phi = Vec::with_capacity(n);
        for a in 0..n {
            let target = self.left_multiplication(a);
            phi.push(ads.iter().position(|ad| *ad == target).ok_or(a)?);
        }
        let e = self.base.identity();
        phi[e] = e;
        Ok(GroupMap(phi))
    }

    pub fn is_witness(&self, phi: &GroupMap) -> bool {
        phi.len() == self.order()
            && (0..self.order()).all(|a| self.base.inner_automorphism(phi.apply(a)) == self.left_multiplication(a))
    }
}

/// `c = a·B(a)·b·B(a)⁻¹`, the argument of `B` on the right of the identity.
fn rb_argument(g: &FiniteGroup, a: usize, ba: usize, b: usize) -> usize {
    g.mul(g.mul(g.mul(a, ba), b), g.inv(ba))
}

/// First pair violating `B(a)·B(b) = B(a·B(a)·b·B(a)⁻¹)`.
pub fn rb_group_violation(g: &FiniteGroup, b: &GroupMap) -> Option<(usize, usize)> {
    let n = g.order();
    for x in 0..n {
        let bx = b.apply(x);
        for y in 0..n {
            if g.mul(bx, b.apply(y)) != b.apply(rb_argument(g, x, bx, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn check_rb_group(g: &FiniteGroup, b: &GroupMap) -> bool {
    b.len() == g.order() && b.images().iter().all(|&v| v < g.order()) && rb_group_violation(g, b).is_none()
}

/// `a ▷ b = B(a)·b·B(a)⁻¹`.
pub fn from_rb_group(g: &FiniteGroup, b: &GroupMap) -> Result<PostGroup, PostGroupError> {
    if b.len() != g.order() || b.images().iter().any(|&v| v >= g.order()) {
        return Err(PostGroupError::BadMap { expected: g.order(), found: b.len() });
    }
    if let Some(pair) = rb_group_violation(g, b) {
        return Err(PostGroupError::NotRotaBaxter(pair));
    }
    Ok(conjugation_product(g, b))
}

/// `a ▷ b = Φ(a)·b·Φ(a)⁻¹` for any map, without checks.
pub fn conjugation_product(g: &FiniteGroup, phi: &GroupMap) -> PostGroup {
    let n = g.order();
    let triangle = (0..n).flat_map(|a| g.inner_automorphism(phi.apply(a)).0).collect();
    PostGroup { base: g.clone(), triangle }
}

/// Assigns `B(x) = v` and propagates forced values; `false` on contradiction.
fn assign(g: &FiniteGroup, state: &mut [Option<usize>], x: usize, v: usize) -> bool {
    let n = g.order();
    let mut work = vec![(x, v)];
    while let Some((x, v)) = work.pop() {
        match state[x] {
            Some(w) if w == v => continue,
            Some(_) => return false,
            None => state[x] = Some(v),
        }
        for y in 0..n {
            let Some(by) = state[y] else { continue };
            for (a, ba, b, bb) in [(x, v, y, by), (y, by, x, v)] {
                let c = rb_argument(g, a, ba, b);
                let want = g.mul(ba, bb);
                match state[c] {
                    Some(bc) if bc != want => return false,
                    Some(_) => {}
                    None => work.push((c, want)),
                }
            }
        }
    }
    true
}

fn search(
    g: &FiniteGroup,
    state: Vec<Option<usize>>,
    nodes: &AtomicUsize,
    cap: usize,
    out: &mut Vec<GroupMap>,
) -> Result<(), PostGroupError> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= cap {
        return Err(PostGroupError::CapExceeded(cap));
    }
    let Some(x) = state.iter().position(Option::is_none) else {
        out.push(GroupMap(state.into_iter().map(|v| v.expect("complete")).collect()));
        return Ok(());
    };
    for v in 0..g.order() {
        let mut next = state.clone();
        if assign(g, &mut next, x, v) {
            search(g, next, nodes, cap, out)?;
        }
    }
    Ok(())
}

/// All Rota-Baxter operators on `g`, sorted lexicographically by image
/// table. `cap` bounds the number of search nodes.
pub fn enumerate_rb_operators(g: &FiniteGroup, cap: usize) -> Result<Vec<GroupMap>, PostGroupError> {
    let n = g.order();
    let nodes = AtomicUsize::new(1);
    if cap == 0 {
        return Err(PostGroupError::CapExceeded(cap));
    }
    let mut root = vec![None; n];
    // B(e)² = B(e) forces B(e) = e
    let e = g.identity();
    assert!(assign(g, &mut root, e, e));
    let Some(x) = root.iter().position(Option::is_none) else {
        return Ok(vec![GroupMap(root.into_iter().map(|v| v.expect("complete")).collect())]);
    };
    let branches: Vec<Result<Vec<GroupMap>, PostGroupError>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut state = root.clone();
            let mut out = Vec::new();
            if assign(g, &mut state, x, v) {
                search(g, state, &nodes, cap, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for b in branches {
        all.extend(b?);
    }
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_and_conjugation_products() {
        let s3 = catalog::s3();
        let t = PostGroup::trivial(s3.clone());
        assert!(t.check_axioms().is_valid());
        assert_eq!(t.sub_adjacent_group().unwrap(), s3);

        let inv = GroupMap((0..6).map(|a| s3.inv(a)).collect());
        assert!(check_rb_group(&s3, &inv));
        let c = from_rb_group(&s3, &inv).unwrap();
        assert!(c.check_axioms().is_valid());
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(c.triangle(a, b), s3.mul(s3.mul(s3.inv(a), b), a));
            }
        }
        assert_eq!(c.sub_adjacent_group().unwrap(), s3.opposite());
        assert_eq!(c.innerness_witness(), Some(inv));
    }

    #[test]
    fn perturbed_cell_is_reported() {
        let s3 = catalog::s3();
        let mut rows = PostGroup::trivial(s3.clone()).rows();
        rows[1][2] = rows[1][3];
        let p = PostGroup::from_table(s3, rows).unwrap();
        let report = p.check_axioms();
        assert!(!report.is_valid());
        assert_eq!(report.non_bijective, vec![1]);
    }

    #[test]
    fn rota_baxter_basics() {
        let s3 = catalog::s3();
        assert!(check_rb_group(&s3, &GroupMap::constant(6, s3.identity())));
        let mut b = GroupMap::identity(6);
        b.0.swap(1, 3);
        assert!(!check_rb_group(&s3, &b));
        assert!(matches!(from_rb_group(&s3, &b), Err(PostGroupError::NotRotaBaxter(_))));
        assert_eq!(from_rb_group(&s3, &GroupMap::constant(6, s3.identity())).unwrap(), PostGroup::trivial(s3));
    }

    #[test]
    fn witness_on_trivial_product() {
        let d4 = catalog::d4();
        let phi = PostGroup::trivial(d4.clone()).innerness_witness().unwrap();
        assert_eq!(phi, GroupMap::constant(8, d4.identity()));
    }

    #[test]
    fn outer_action_on_z3() {
        // a ▷ b = b⁻¹ for a ≠ e is an outer automorphism of ℤ/3
        let z3 = FiniteGroup::cyclic(3);
        let rows = (0..3).map(|a| (0..3).map(|b| if a == 0 { b } else { (3 - b) % 3 }).collect()).collect();
        let p = PostGroup::from_table(z3, rows).unwrap();
        assert!(!p.check_axioms().is_valid() || p.innerness_witness().is_none());
        assert_eq!(p.innerness_witness_detailed(), Err(1));
    }

    #[test]
    fn z2_operators_are_endomorphisms() {
        let z2 = FiniteGroup::cyclic(2);
        let all = enumerate_rb_operators(&z2, 100).unwrap();
        assert_eq!(all, vec![GroupMap(vec![0, 0]), GroupMap(vec![0, 1])]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_rb_operators(&catalog::s3(), 3), Err(PostGroupError::CapExceeded(3)));
    }

    #[test]
    fn s3_enumeration_matches_brute_force() {
        let s3 = catalog::s3();
        let fast = enumerate_rb_operators(&s3, 1_000_000).unwrap();
        let mut slow = Vec::new();
        for code in 0..6usize.pow(6) {
            let mut m = Vec::with_capacity(6);
            let mut c = code;
            for _ in 0..6 {
                m.push(c % 6);
                c /= 6;
            }
            m.reverse();
            let b = GroupMap(m);
            // direct check of the defining identity, independent of the library helper
            let ok = (0..6).all(|x| {
                (0..6).all(|y| {
                    let bx = b.0[x];
                    let arg = s3.mul(s3.mul(s3.mul(x, bx), y), s3.inv(bx));
                    s3.mul(bx, b.0[y]) == b.0[arg]
                })
            });
            if ok {
                slow.push(b);
            }
        }
        slow.sort();
        assert_eq!(fast, slow);
        assert!(fast.contains(&GroupMap::constant(6, s3.identity())));
        assert!(fast.contains(&GroupMap((0..6).map(|a| s3.inv(a)).collect())));
        for b in &fast {
            let p = from_rb_group(&s3, b).unwrap();
            assert!(p.check_axioms().is_valid());
            assert!(p.center_is_invariant() && p.center_action_is_trivial());
            let circ = p.sub_adjacent_group().unwrap();
            assert!(circ.is_homomorphism_to(&s3, b));
        }
    }
}
