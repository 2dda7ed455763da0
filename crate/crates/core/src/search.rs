//! Scan for inner post-Lie algebras with a nontrivial obstruction class.
//!
//! Inner products `x ▷ y = [φx, y]` are parametrized by the entries of `φ`.
//! Every base of dimension at most 3 is scanned over the grid `{−1,0,1}^{n×n}`
//! and, when `samples > 0`, over seeded random draws from `{−2,…,2}^{n×n}`.
//! Nothing is asserted about the outcome; findings are only reported.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::document::{render_document, Document};
use crate::expr::render_linear_combination;
use crate::harness::small_catalog;
use crate::lie::LieAlgebra;
use crate::lie_obstruction::{coboundary_solve, obstruction_cocycle};
use crate::matrix::ExactMatrix;
use crate::postlie::{inner_product_from_map, LinearMap};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub base: String,
    pub phi: Vec<String>,
    pub kappa: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseSummary {
    pub base: String,
    pub dim: usize,
    pub center_dim: usize,
    pub maps_scanned: usize,
    /// Maps whose inner product satisfies both post-Lie axioms.
    pub post_lie: usize,
    /// Distinct products among those.
    pub distinct_products: usize,
    pub nontrivial: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub seed: u64,
    pub samples: usize,
    pub bases: Vec<BaseSummary>,
    /// At most a handful per base.
    pub findings: Vec<Finding>,
}

impl SearchSummary {
    pub fn nontrivial(&self) -> usize {
        self.bases.iter().map(|b| b.nontrivial).sum()
    }
}

const FINDINGS_PER_BASE: usize = 3;

fn search_bases() -> Vec<(String, LieAlgebra)> {
    let mut out: Vec<(String, LieAlgebra)> =
        small_catalog().into_iter().filter(|(_, l)| l.dim() <= 3).map(|(n, l)| (n.to_string(), l)).collect();
    out.push(("sl2".into(), catalog::sl2()));
    out
}

fn map_from_entries(n: usize, entries: &[i64]) -> LinearMap {
    LinearMap::new(ExactMatrix::from_fn(n, n, |i, j| GaussianRational::from_int(entries[i * n + j])))
}

struct Outcome {
    key: String,
    finding: Option<Finding>,
}

fn examine(name: &str, l: &LieAlgebra, phi: &LinearMap) -> Option<Outcome> {
    let p = inner_product_from_map(l, phi);
    // for inner products weighted associativity holds iff κ is central, which
    // is cheap to test; the full axiom check only confirms survivors
    let kappa = obstruction_cocycle(&p, phi).ok()?;
    if !p.check_axioms().is_valid() {
        return None;
    }
    let key = render_document(&Document::PostLie { product: p.clone(), witness: None });
    if kappa.is_zero() || coboundary_solve(&kappa, &p.sub_adjacent()).is_some() {
        return Some(Outcome { key, finding: None });
    }
    let finding = Finding {
        base: name.to_string(),
        phi: phi.images().iter().map(|v| render_linear_combination(v)).collect(),
        kappa: kappa
            .nonzero_entries()
            .into_iter()
            .map(|(i, j, v)| format!("k(e{},e{}) = {}", i + 1, j + 1, render_linear_combination(&v)))
            .collect(),
    };
    Some(Outcome { key, finding: Some(finding) })
}

fn scan(name: &str, l: &LieAlgebra, maps: Vec<Vec<i64>>) -> (BaseSummary, Vec<Finding>) {
    let n = l.dim();
    let outcomes: Vec<Outcome> = maps.par_iter().filter_map(|e| examine(name, l, &map_from_entries(n, e))).collect();
    let post_lie = outcomes.len();
    let mut seen = BTreeSet::new();
    let mut nontrivial = 0;
    let mut findings = Vec::new();
    for o in outcomes {
        if !seen.insert(o.key) {
            continue;
        }
        if let Some(f) = o.finding {
            nontrivial += 1;
            if findings.len() < FINDINGS_PER_BASE {
                findings.push(f);
            }
        }
    }
    let summary = BaseSummary {
        base: name.to_string(),
        dim: n,
        center_dim: l.center().dim(),
        maps_scanned: maps.len(),
        post_lie,
        distinct_products: seen.len(),
        nontrivial,
    };
    (summary, findings)
}

fn grid(n: usize) -> Vec<Vec<i64>> {
    let cells = n * n;
    let total = 3usize.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            (0..cells)
                .map(|_| {
                    let d = (code % 3) as i64 - 1;
                    code /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn run_search(seed: u64, samples: usize) -> SearchSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = Vec::new();
    let mut findings = Vec::new();
    for (name, l) in search_bases() {
        let n = l.dim();
        let mut maps = grid(n);
        for _ in 0..samples {
            maps.push((0..n * n).map(|_| rng.gen_range(-2..=2)).collect());
        }
        let (summary, found) = scan(&name, &l, maps);
        bases.push(summary);
        findings.extend(found);
    }
    SearchSummary { seed, samples, bases, findings }
}
