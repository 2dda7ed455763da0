//! Finite groups given by Cayley tables.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::integer::{smith_normal_form, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    BadRow { row: usize, expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails on ({}, {}, {})", .0.0, .0.1, .0.2)]
    NotAssociative((usize, usize, usize)),
    #[error("subset is not closed under the product")]
    NotClosed,
    #[error("subset is not abelian")]
    NotAbelian,
    #[error("map has {found} entries, expected {expected}")]
    BadMap { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("closure exceeds {0} elements")]
    CapExceeded(usize),
}

/// First failure found when validating a raw Cayley table.
pub fn check_cayley_table(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>), GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(GroupError::BadRow { row, expected: n, found: r.len() });
        }
        if let Some(col) = r.iter().position(|&v| v >= n) {
            return Err(GroupError::OutOfRange { row, col, value: r[col] });
        }
    }
    let identity =
        (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or(GroupError::NoIdentity)?;
    let mut inverse = Vec::with_capacity(n);
    for a in 0..n {
        let b = (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity).ok_or(GroupError::NoInverse(a))?;
        inverse.push(b);
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAssociative((a, b, c)));
                }
            }
        }
    }
    Ok((identity, inverse))
}

/// A finite group; elements are the indices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Option<Vec<String>>,
}

/// A map on element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupMap(pub Vec<usize>);

impl GroupMap {
    pub fn constant(order: usize, value: usize) -> Self {
        Self(vec![value; order])
    }

    pub fn identity(order: usize) -> Self {
        Self((0..order).collect())
    }

    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
    }
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let (identity, inverse) = check_cayley_table(&table)?;
        let order = table.len();
        Ok(Self { order, table: table.into_iter().flatten().collect(), identity, inverse, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Re-runs every group axiom on the stored table.
    pub fn check_group(&self) -> bool {
        check_cayley_table(&self.rows()).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| self.is_central(z)).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `b ↦ c·b·c⁻¹`.
    pub fn inner_automorphism(&self, c: usize) -> GroupMap {
        let ci = self.inv(c);
        GroupMap((0..self.order).map(|b| self.mul(self.mul(c, b), ci)).collect())
    }

    /// First pair `(a, b)` with `f(a·b) ≠ f(a)·f(b)` in `target`.
    pub fn homomorphism_violation(&self, target: &FiniteGroup, f: &GroupMap) -> Option<(usize, usize)> {
        assert_eq!(f.len(), self.order);
        for a in 0..self.order {
            for b in 0..self.order {
                if f.apply(self.mul(a, b)) != target.mul(f.apply(a), f.apply(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_homomorphism_to(&self, target: &FiniteGroup, f: &GroupMap) -> bool {
        f.len() == self.order
            && f.0.iter().all(|&v| v < target.order)
            && self.homomorphism_violation(target, f).is_none()
    }

    pub fn is_automorphism(&self, f: &GroupMap) -> bool {
        f.is_bijection() && self.is_homomorphism_to(self, f)
    }

    /// The group `(G, ∗)` with `a ∗ b = b·a`.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.order;
        let mut g = FiniteGroup::from_table((0..n).map(|a| (0..n).map(|b| self.mul(b, a)).collect()).collect())
            .expect("opposite of a group is a group");
        g.names = self.names.clone();
        g
    }

    /// Coordinates on an abelian subgroup given as a list of elements.
    pub fn abelian_decomposition(&self, subset: &[usize]) -> Result<AbelianDecomposition, GroupError> {
        AbelianDecomposition::new(self, subset)
    }
}

/// `H ≅ ⊕ⱼ ℤ/dⱼ` with explicit coordinates; factors equal to 1 are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianDecomposition {
    invariant_factors: Vec<usize>,
    elements: Vec<usize>,
    coords: HashMap<usize, Vec<usize>>,
    by_coords: HashMap<Vec<usize>, usize>,
}

impl AbelianDecomposition {
    fn new(g: &FiniteGroup, subset: &[usize]) -> Result<Self, GroupError> {
        let mut elements: Vec<usize> = subset.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::OutOfRange { row: 0, col: 0, value: bad });
        }
        let members: HashSet<usize> = elements.iter().copied().collect();
        if !members.contains(&g.identity()) {
            return Err(GroupError::NotClosed);
        }
        for &a in &elements {
            for &b in &elements {
                if !members.contains(&g.mul(a, b)) {
                    return Err(GroupError::NotClosed);
                }
                if g.mul(a, b) != g.mul(b, a) {
                    return Err(GroupError::NotAbelian);
                }
            }
        }

        // Greedy generators; `exps` records each generated element as exponents.
        let mut gens: Vec<usize> = Vec::new();
        let mut exps: HashMap<usize, Vec<i64>> = HashMap::from([(g.identity(), Vec::new())]);
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for &x in &elements {
            if exps.contains_key(&x) {
                continue;
            }
            // smallest m with x^m already generated
            let mut m = 1i64;
            let mut p = x;
            while !exps.contains_key(&p) {
                p = g.mul(p, x);
                m += 1;
            }
            let k = gens.len();
            let mut rel: Vec<i64> = exps[&p].iter().map(|v| -v).collect();
            rel.resize(k, 0);
            rel.push(m);
            for r in &mut relations {
                r.push(0);
            }
            relations.push(rel);
            let old: Vec<(usize, Vec<i64>)> = exps.iter().map(|(&h, e)| (h, e.clone())).collect();
            for (h, e) in old {
                let mut y = h;
                for t in 0..m {
                    let mut ev = e.clone();
                    ev.resize(k, 0);
                    ev.push(t);
                    exps.entry(y).or_insert(ev);
                    y = g.mul(y, x);
                }
            }
            for e in exps.values_mut() {
                e.resize(k + 1, 0);
            }
            gens.push(x);
        }
        debug_assert_eq!(exps.len(), elements.len());

        let k = gens.len();
        let snf = smith_normal_form(&IntMatrix::from_rows(&relations));
        let diag = snf.diagonal();
        let keep: Vec<usize> = (0..k).filter(|&j| diag[j] != BigInt::from(1)).collect();
        let invariant_factors: Vec<usize> =
            keep.iter().map(|&j| diag[j].to_usize().expect("positive factor")).collect();
        let mut coords = HashMap::new();
        let mut by_coords = HashMap::new();
        for (&h, e) in &exps {
            let c: Vec<usize> = keep
                .iter()
                .zip(&invariant_factors)
                .map(|(&j, &d)| {
                    let mut acc = BigInt::from(0);
                    for (i, ei) in e.iter().enumerate() {
                        acc += &snf.v[(i, j)] * BigInt::from(*ei);
                    }
                    let d = BigInt::from(d);
                    (((acc % &d) + &d) % &d).to_usize().expect("reduced coordinate")
                })
                .collect();
            by_coords.insert(c.clone(), h);
            coords.insert(h, c);
        }
        assert_eq!(by_coords.len(), elements.len(), "coordinates must be a bijection");
        Ok(Self { invariant_factors, elements, coords, by_coords })
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.invariant_factors
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.coords.contains_key(&x)
    }

    pub fn to_coords(&self, x: usize) -> Option<&[usize]> {
        self.coords.get(&x).map(Vec::as_slice)
    }

    /// Coordinates are reduced modulo the invariant factors first.
    pub fn from_coords(&self, c: &[i64]) -> usize {
        assert_eq!(c.len(), self.invariant_factors.len());
        let key: Vec<usize> =
            c.iter().zip(&self.invariant_factors).map(|(&v, &d)| v.rem_euclid(d as i64) as usize).collect();
        self.by_coords[&key]
    }

    /// Product inside the subgroup via coordinates.
    pub fn add(&self, x: usize, y: usize) -> usize {
        let (cx, cy) = (&self.coords[&x], &self.coords[&y]);
        let sum: Vec<i64> = cx.iter().zip(cy).map(|(a, b)| (a + b) as i64).collect();
        self.from_coords(&sum)
    }

    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<i64> = self.coords[&x].iter().map(|&a| -(a as i64)).collect();
        self.from_coords(&c)
    }
}

/// Closure of permutation generators by breadth-first products; elements in
/// discovery order starting from the identity. The product is composition
/// `(p·q)(x) = p(q(x))`.
pub fn expand_permutation_generators(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<(FiniteGroup, Vec<Vec<usize>>), GroupError> {
    for g in generators {
        if g.len() != degree {
            return Err(GroupError::BadPermutation(format!("expected {degree} images, found {}", g.len())));
        }
        if !GroupMap(g.clone()).is_bijection() {
            return Err(GroupError::BadPermutation(format!("{g:?} is not a bijection of 0..{degree}")));
        }
    }
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
    let id: Vec<usize> = (0..degree).collect();
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in generators {
            let next = compose(&elements[k], g);
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    let table: Vec<Vec<usize>> =
        elements.iter().map(|p| elements.iter().map(|q| index[&compose(p, q)]).collect()).collect();
    Ok((FiniteGroup::from_table(table)?, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    #[test]
    fn small_groups_validate() {
        assert!(FiniteGroup::cyclic(2).check_group());
        assert!(catalog::s3().check_group());
        assert!(catalog::d4().check_group());
    }

    #[test]
    fn swapped_cell_breaks_s3() {
        let mut rows = catalog::s3().rows();
        let (a, b) = (rows[1][2], rows[1][3]);
        rows[1][2] = b;
        rows[1][3] = a;
        assert!(check_cayley_table(&rows).is_err());
        assert!(FiniteGroup::from_table(rows).is_err());
    }

    #[test]
    fn centers() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.center(), vec![0, 1, 2, 3]);
        let s3 = catalog::s3();
        assert_eq!(s3.center(), vec![s3.identity()]);
        let d4 = catalog::d4();
        let z = d4.center();
        assert_eq!(z.len(), 2);
        assert!(z.contains(&d4.identity()));
        let r2 = z.iter().copied().find(|&x| x != d4.identity()).unwrap();
        assert_eq!(d4.name(r2), "r2");
    }

    #[test]
    fn inner_automorphisms() {
        let s3 = catalog::s3();
        assert_eq!(s3.inner_automorphism(s3.identity()), GroupMap::identity(6));
        let z5 = FiniteGroup::cyclic(5);
        for c in 0..5 {
            assert_eq!(z5.inner_automorphism(c), GroupMap::identity(5));
        }
        // conjugating by a transposition swaps the two 3-cycles
        let t = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let ad = s3.inner_automorphism(t);
        let threes: Vec<usize> = (0..6).filter(|&a| s3.element_order(a) == 3).collect();
        assert_eq!(ad.apply(threes[0]), threes[1]);
        assert_eq!(ad.apply(t), t);
        for g in [s3, catalog::d4()] {
            let kernel: Vec<usize> =
                (0..g.order()).filter(|&c| g.inner_automorphism(c) == GroupMap::identity(g.order())).collect();
            assert_eq!(kernel, g.center());
            for c in 0..g.order() {
                assert!(g.is_automorphism(&g.inner_automorphism(c)));
            }
        }
    }

    #[test]
    fn decompositions() {
        let s3 = catalog::s3();
        assert!(s3.abelian_decomposition(&[s3.identity()]).unwrap().invariant_factors().is_empty());
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.abelian_decomposition(&[0, 1, 2, 3]).unwrap().invariant_factors(), &[4]);
        let d4 = catalog::d4();
        assert_eq!(d4.abelian_decomposition(&d4.center()).unwrap().invariant_factors(), &[2]);
        let z2z6 = catalog::product_of_cyclic(&[2, 6]);
        assert_eq!(z2z6.abelian_decomposition(&(0..12).collect::<Vec<_>>()).unwrap().invariant_factors(), &[2, 6]);
        let z6z4 = catalog::product_of_cyclic(&[6, 4]);
        assert_eq!(z6z4.abelian_decomposition(&(0..24).collect::<Vec<_>>()).unwrap().invariant_factors(), &[2, 12]);
        let c3 = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        assert_eq!(s3.abelian_decomposition(&[s3.identity(), c3]), Err(GroupError::NotClosed));
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(s3.abelian_decomposition(&all), Err(GroupError::NotAbelian));
    }

    #[test]
    fn permutation_closure() {
        let (z2, _) = expand_permutation_generators(2, &[vec![1, 0]], 100).unwrap();
        assert_eq!(z2.order(), 2);
        let (s3, _) = expand_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let (d4, _) = expand_permutation_generators(4, &[vec![1, 2, 3, 0], vec![2, 1, 0, 3]], 100).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert_eq!(
            expand_permutation_generators(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 10).unwrap_err(),
            GroupError::CapExceeded(10)
        );
        assert!(expand_permutation_generators(3, &[vec![0, 0, 1]], 10).is_err());
    }

    proptest! {
        #[test]
        fn decomposition_round_trip(dims in prop::collection::vec(1usize..7, 1..4)) {
            let g = catalog::product_of_cyclic(&dims);
            let all: Vec<usize> = (0..g.order()).collect();
            let dec = g.abelian_decomposition(&all).unwrap();
            prop_assert_eq!(dec.invariant_factors().iter().product::<usize>(), g.order());
            for w in dec.invariant_factors().windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            for x in 0..g.order() {
                let c: Vec<i64> = dec.to_coords(x).unwrap().iter().map(|&v| v as i64).collect();
                prop_assert_eq!(dec.from_coords(&c), x);
                for y in 0..g.order() {
                    prop_assert_eq!(dec.add(x, y), g.mul(x, y));
                }
            }
        }
    }
}
