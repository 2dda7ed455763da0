//! Command-line surface: argument definitions and dispatch into reports.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::document::{parse_document, Document};
use crate::expr::render_linear_combination;
use crate::group::{FiniteGroup, GroupMap};
use crate::group_obstruction::{
    coboundary_solve_group, group_cocycle_violation, group_tower, obstruction_cocycle_group, pullback_group,
    rb_difference_cocycle_group, GroupTwoCocycle,
};
use crate::harness::{run_property_suite, PROPERTIES};
use crate::lie::LieAlgebra;
use crate::lie_obstruction::{
    coboundary_solve, cocycle_violations, obstruction_cocycle, pullback_algebra, rb_difference_cocycle,
    DifferenceError, LieTwoCochain,
};
use crate::postgroup::{conjugation_product, enumerate_rb_operators, from_rb_group, PostGroup, PostGroupAxiom};
use crate::postlie::{
    check_rota_baxter, from_rota_baxter, inner_product_from_map, LinearMap, PostLieAlgebra, PostLieAxiom,
};
use crate::report::{Failure, Report};
use crate::search::run_search;
use crate::tower::{build_tower, tower_report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "innerpost", version, about = "Obstruction classes of inner post-Lie algebras and inner post-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for the randomized harnesses (`search`, `properties`).
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Input {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity and structural invariants of a Lie algebra.
    CheckLie(Input),
    /// Post-Lie axioms and the sub-adjacent algebra.
    CheckPostlie(Input),
    /// Witness φ with ad(φ(x)) = L▷(x).
    Innerness(Input),
    /// Obstruction cocycle, coboundary solve and reconstructed operator.
    Obstruction(Input),
    /// Iterated Rota-Baxter brackets with certificates.
    Tower {
        #[command(flatten)]
        input: Input,
        /// Number of levels above the base (default: the dimension).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Group axioms and center of a Cayley table.
    CheckGroup(Input),
    /// Post-group axioms and the sub-adjacent group.
    CheckPostgroup(Input),
    /// Group obstruction cocycle, coboundary solve and reconstructed operator.
    GroupObstruction(Input),
    /// Iterated group Rota-Baxter products.
    GroupTower {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// All Rota-Baxter operators on a finite group.
    EnumerateRb {
        #[command(flatten)]
        input: Input,
        /// Maximal number of search nodes.
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
    },
    /// Central 1-cocycle relating two Rota-Baxter operators.
    DiffCocycle {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Scan small inner post-Lie algebras for a nontrivial class.
    Search {
        /// Extra random maps per base on top of the fixed grid.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Randomized property suite over Rota-Baxter operators.
    Properties {
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLie(_) => "check-lie",
            Command::CheckPostlie(_) => "check-postlie",
            Command::Innerness(_) => "innerness",
            Command::Obstruction(_) => "obstruction",
            Command::Tower { .. } => "tower",
            Command::CheckGroup(_) => "check-group",
            Command::CheckPostgroup(_) => "check-postgroup",
            Command::GroupObstruction(_) => "group-obstruction",
            Command::GroupTower { .. } => "group-tower",
            Command::EnumerateRb { .. } => "enumerate-rb",
            Command::DiffCocycle { .. } => "diff-cocycle",
            Command::Search { .. } => "search",
            Command::Properties { .. } => "properties",
        }
    }
}

/// Runs one command; returns the report, whose exit code is the process status.
pub fn run_command(cli: &Cli) -> Report {
    let mut rep = Report::new(cli.command.name());
    let res = match &cli.command {
        Command::CheckLie(i) => load(&i.input).map(|d| check_lie(&mut rep, &d)),
        Command::CheckPostlie(i) => load(&i.input).map(|d| check_postlie(&mut rep, &d)),
        Command::Innerness(i) => load(&i.input).map(|d| innerness(&mut rep, &d)),
        Command::Obstruction(i) => load(&i.input).map(|d| obstruction(&mut rep, &d)),
        Command::Tower { input, depth } => load(&input.input).map(|d| tower(&mut rep, &d, *depth)),
        Command::CheckGroup(i) => load(&i.input).map(|d| check_group(&mut rep, &d)),
        Command::CheckPostgroup(i) => load(&i.input).map(|d| check_postgroup(&mut rep, &d)),
        Command::GroupObstruction(i) => load(&i.input).map(|d| group_obstruction(&mut rep, &d)),
        Command::GroupTower { input, depth } => load(&input.input).map(|d| group_tower_cmd(&mut rep, &d, *depth)),
        Command::EnumerateRb { input, cap } => load(&input.input).map(|d| enumerate(&mut rep, &d, *cap)),
        Command::DiffCocycle { a, b } => load(a).and_then(|da| load(b).map(|db| diff(&mut rep, &da, &db))),
        Command::Search { samples } => {
            search(&mut rep, cli.seed, *samples);
            Ok(())
        }
        Command::Properties { count } => {
            properties(&mut rep, cli.seed, *count);
            Ok(())
        }
    };
    if let Err((failure, detail)) = res {
        rep.fail("input", failure, detail);
    }
    rep
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Machine => report.render_machine(),
    }
}

fn load(path: &Path) -> Result<Document, (Failure, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| (Failure::Other, format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| (Failure::Parse, format!("{}: {e}", path.display())))
}

fn vector(v: &[crate::scalar::GaussianRational]) -> String {
    render_linear_combination(v)
}

fn map_lines(m: &LinearMap) -> Vec<String> {
    m.images().iter().enumerate().map(|(j, v)| format!("e{} -> {}", j + 1, vector(v))).collect()
}

fn bracket_lines(l: &LieAlgebra) -> Vec<String> {
    let n = l.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = l.bracket_basis(i, j);
            if v.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                out.push(format!("[e{},e{}] = {}", i + 1, j + 1, vector(v)));
            }
        }
    }
    out
}

fn cochain_lines(k: &LieTwoCochain) -> Vec<String> {
    k.nonzero_entries().into_iter().map(|(i, j, v)| format!("k(e{},e{}) = {}", i + 1, j + 1, vector(&v))).collect()
}

fn group_map_lines(g: &FiniteGroup, m: &GroupMap) -> Vec<String> {
    (0..g.order()).map(|a| format!("{} -> {}", g.name(a), g.name(m.apply(a)))).collect()
}

fn group_map_compact(g: &FiniteGroup, m: &GroupMap) -> String {
    format!("[{}]", (0..g.order()).map(|a| g.name(m.apply(a))).collect::<Vec<_>>().join(" "))
}

fn names(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&a| g.name(a)).collect()
}

fn wrong_kind(rep: &mut Report, expected: &str, doc: &Document) {
    rep.fail("input", Failure::Parse, format!("expected {expected}, found a {} document", doc.kind().keyword()));
}

fn jacobi_verdict(rep: &mut Report, check: &str, l: &LieAlgebra) -> bool {
    match l.jacobi_violations().first() {
        None => {
            rep.pass(check, "");
            true
        }
        Some(&(i, j, k)) => {
            let v = l.jacobiator(i, j, k);
            rep.fail(check, Failure::Axiom, format!("jacobiator(e{},e{},e{}) = {}", i + 1, j + 1, k + 1, vector(&v)));
            false
        }
    }
}

fn check_lie(rep: &mut Report, doc: &Document) {
    let Some(l) = doc.lie_algebra() else {
        return wrong_kind(rep, "a Lie algebra", doc);
    };
    if !jacobi_verdict(rep, "jacobi", l) {
        return;
    }
    let center: Vec<String> = l.center().basis().iter().map(|v| vector(v)).collect();
    rep.output("dim", l.dim());
    rep.output("center", center);
    rep.output("derivations", l.derivations().dim());
    rep.output("inner derivations", l.inner_derivations().dim());
    rep.output("semisimple", l.is_semisimple());
    rep.output("complete", l.is_complete());
    rep.output("fingerprint", serde_json::to_value(l.invariant_fingerprint()).expect("serializes"));
}

/// The post-Lie algebra of a postlie or rb-lie document, after the axioms.
fn post_lie(rep: &mut Report, doc: &Document) -> Option<PostLieAlgebra> {
    let p = match doc {
        Document::PostLie { product, .. } => product.clone(),
        Document::RbLie { algebra, map } => {
            if !jacobi_verdict(rep, "jacobi", algebra) {
                return None;
            }
            match from_rota_baxter(algebra, map) {
                Ok(p) => {
                    rep.pass("rota-baxter", "");
                    p
                }
                Err(e) => {
                    rep.fail("rota-baxter", Failure::Axiom, e.to_string());
                    return None;
                }
            }
        }
        _ => {
            wrong_kind(rep, "a postlie or rb-lie document", doc);
            return None;
        }
    };
    if matches!(doc, Document::PostLie { .. }) && !jacobi_verdict(rep, "jacobi", p.base()) {
        return None;
    }
    let axioms = p.check_axioms();
    for (axiom, check) in [
        (PostLieAxiom::Derivation, "derivation axiom"),
        (PostLieAxiom::WeightedAssociativity, "weighted associativity"),
    ] {
        match axioms.violations.iter().find(|v| v.axiom == axiom) {
            None => rep.pass(check, ""),
            Some(v) => {
                let (x, y, z) = v.triple;
                rep.fail(
                    check,
                    Failure::Axiom,
                    format!(
                        "(e{},e{},e{}): residual {} ({} violating triples)",
                        x + 1,
                        y + 1,
                        z + 1,
                        vector(&v.residual),
                        axioms.count(axiom)
                    ),
                );
            }
        }
    }
    axioms.is_valid().then_some(p)
}

fn check_postlie(rep: &mut Report, doc: &Document) {
    let Some(p) = post_lie(rep, doc) else {
        return;
    };
    let sub = p.sub_adjacent();
    jacobi_verdict(rep, "sub-adjacent jacobi", &sub);
    rep.output("sub-adjacent brackets", bracket_lines(&sub));
    rep.output("center invariant", p.center_is_invariant());
    rep.output("center acts trivially", p.center_action_is_trivial());
}

fn witness(rep: &mut Report, p: &PostLieAlgebra, chosen: Option<&LinearMap>) -> Option<LinearMap> {
    if let Some(phi) = chosen {
        if p.is_witness(phi) {
            rep.pass("inner", "witness from the document");
            rep.output("phi", map_lines(phi));
            return Some(phi.clone());
        }
        let k = (0..p.dim())
            .find(|&k| p.base().ad_matrix(&phi.image_of_basis(k)) != p.left_multiplication_basis(k))
            .unwrap_or(0);
        rep.fail("inner", Failure::NotInner, format!("document witness: ad(phi(e{0})) != L(e{0})", k + 1));
        return None;
    }
    match p.innerness_witness_detailed() {
        Ok(phi) => {
            rep.pass("inner", "");
            rep.output("phi", map_lines(&phi));
            Some(phi)
        }
        Err(k) => {
            rep.fail("inner", Failure::NotInner, format!("L(e{}) is not an inner derivation", k + 1));
            None
        }
    }
}

fn document_witness(doc: &Document) -> Option<&LinearMap> {
    match doc {
        Document::PostLie { witness, .. } => witness.as_ref(),
        _ => None,
    }
}

fn innerness(rep: &mut Report, doc: &Document) {
    if let Some(p) = post_lie(rep, doc) {
        witness(rep, &p, document_witness(doc));
    }
}

/// Obstruction pipeline; returns the reconstructed operator.
fn lie_pipeline(rep: &mut Report, p: &PostLieAlgebra, chosen: Option<&LinearMap>) -> Option<LinearMap> {
    let phi = witness(rep, p, chosen)?;
    let kappa = obstruction_cocycle(p, &phi).expect("witness was just verified");
    let sub = p.sub_adjacent();
    rep.output("kappa", cochain_lines(&kappa));
    match cocycle_violations(&kappa, &sub).first() {
        None => rep.pass("kappa is a 2-cocycle", ""),
        Some(&(x, y, z)) => {
            rep.fail(
                "kappa is a 2-cocycle",
                Failure::Other,
                format!("cyclic sum fails at (e{},e{},e{})", x + 1, y + 1, z + 1),
            );
            return None;
        }
    }
    let Some(t) = coboundary_solve(&kappa, &sub) else {
        let n = p.dim();
        let first = kappa
            .nonzero_entries()
            .first()
            .map(|(i, j, v)| {
                format!(
                    "; first nonzero value k(e{0},e{1}) = {2} against [e{0},e{1}] = {3}",
                    i + 1,
                    j + 1,
                    vector(v),
                    {
                        let b = sub.bracket_basis(*i, *j);
                        if b.iter().all(num_traits::Zero::is_zero) {
                            "0".to_string()
                        } else {
                            vector(b)
                        }
                    }
                )
            })
            .unwrap_or_default();
        rep.fail(
            "class trivial",
            Failure::ClassNontrivial,
            format!(
                "k(x,y) = -t([x,y]) is inconsistent: {} equations, {} unknowns (center dimension {}){first}",
                n * (n - 1) / 2 * n,
                n * kappa.center().dim(),
                kappa.center().dim()
            ),
        );
        return None;
    };
    rep.pass("class trivial", "");
    rep.output("t", map_lines(&t));
    let r = phi.sub(&t);
    rep.output("R", map_lines(&r));
    rep.verdict("R is rota-baxter", check_rota_baxter(p.base(), &r), Failure::Other, "");
    rep.verdict("R reproduces the product", inner_product_from_map(p.base(), &r) == *p, Failure::Other, "");
    Some(r)
}

fn obstruction(rep: &mut Report, doc: &Document) {
    let Some(p) = post_lie(rep, doc) else {
        return;
    };
    if lie_pipeline(rep, &p, document_witness(doc)).is_some() {
        if let Ok(pb) = pullback_algebra(&p) {
            rep.output("pullback dim", pb.algebra.dim());
        }
    }
}

fn tower(rep: &mut Report, doc: &Document, depth: Option<usize>) {
    let (l, r) = match doc {
        Document::RbLie { algebra, map } => {
            if !jacobi_verdict(rep, "jacobi", algebra) {
                return;
            }
            (algebra.clone(), map.clone())
        }
        Document::PostLie { witness, .. } => {
            let Some(p) = post_lie(rep, doc) else {
                return;
            };
            let Some(r) = lie_pipeline(rep, &p, witness.as_ref()) else {
                return;
            };
            (p.base().clone(), r)
        }
        _ => return wrong_kind(rep, "an rb-lie or postlie document", doc),
    };
    let depth = depth.unwrap_or(l.dim());
    match build_tower(&l, &r, depth) {
        Ok(t) => {
            rep.pass("tower", format!("R and R+id are homomorphisms on all {depth} steps"));
            let report = tower_report(&t);
            let levels: Vec<Value> = t
                .levels
                .iter()
                .zip(&report.levels)
                .map(|(lvl, lr)| {
                    let mut v = serde_json::to_value(lr).expect("serializes");
                    v["brackets"] = json!(bracket_lines(lvl));
                    v
                })
                .collect();
            rep.output("levels", levels);
            rep.output("fingerprints coincide", report.fingerprints_coincide);
            rep.output("all semisimple", report.all_semisimple);
            rep.output("semisimplicity descends", report.semisimplicity_descends);
        }
        Err(e) => rep.fail("tower", Failure::Other, e.to_string()),
    }
}

fn check_group(rep: &mut Report, doc: &Document) {
    let Some(g) = doc.group() else {
        return wrong_kind(rep, "a group document", doc);
    };
    rep.pass("group axioms", format!("order {}", g.order()));
    let center = g.center();
    rep.output("order", g.order());
    rep.output("abelian", g.is_abelian());
    rep.output("center", names(g, &center));
    let dec = g.abelian_decomposition(&center).expect("center is an abelian subgroup");
    rep.output("center invariant factors", dec.invariant_factors().to_vec());
}

fn post_group(rep: &mut Report, doc: &Document) -> Option<PostGroup> {
    let p = match doc {
        Document::PostGroup(p) => p.clone(),
        Document::RbGroup { group, map } => match from_rb_group(group, map) {
            Ok(p) => {
                rep.pass("rota-baxter", "");
                p
            }
            Err(e) => {
                rep.fail("rota-baxter", Failure::Axiom, e.to_string());
                return None;
            }
        },
        _ => {
            wrong_kind(rep, "a postgroup or rb-group document", doc);
            return None;
        }
    };
    let g = p.base();
    let axioms = p.check_axioms();
    match axioms.non_bijective.first() {
        None => rep.pass("left multiplications bijective", ""),
        Some(&a) => rep.fail("left multiplications bijective", Failure::Axiom, format!("b -> {} > b", g.name(a))),
    }
    for (axiom, check) in [
        (PostGroupAxiom::Automorphism, "automorphism axiom"),
        (PostGroupAxiom::WeightedAssociativity, "weighted associativity"),
    ] {
        match axioms.violations.iter().find(|v| v.0 == axiom) {
            None => rep.pass(check, ""),
            Some(&(_, (a, b, c))) => {
                rep.fail(check, Failure::Axiom, format!("({}, {}, {})", g.name(a), g.name(b), g.name(c)))
            }
        }
    }
    axioms.is_valid().then_some(p)
}

fn check_postgroup(rep: &mut Report, doc: &Document) {
    let Some(p) = post_group(rep, doc) else {
        return;
    };
    match p.sub_adjacent_group() {
        Ok(circ) => {
            rep.pass("sub-adjacent group", "");
            rep.output("sub-adjacent table", circ.rows().iter().map(|r| json!(r)).collect::<Vec<_>>());
        }
        Err(e) => rep.fail("sub-adjacent group", Failure::Axiom, e.to_string()),
    }
    rep.output("center invariant", p.center_is_invariant());
    rep.output("center acts trivially", p.center_action_is_trivial());
}

fn omega_lines(g: &FiniteGroup, w: &GroupTwoCocycle) -> Vec<String> {
    let e = g.identity();
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            if w.value(a, b) != e {
                out.push(format!("w({}, {}) = {}", g.name(a), g.name(b), g.name(w.value(a, b))));
            }
        }
    }
    out
}

fn group_pipeline(rep: &mut Report, p: &PostGroup) -> Option<GroupMap> {
    let g = p.base();
    let phi = match p.innerness_witness_detailed() {
        Ok(phi) => {
            rep.pass("inner", "");
            rep.output("phi", group_map_lines(g, &phi));
            phi
        }
        Err(a) => {
            rep.fail("inner", Failure::NotInner, format!("L({}) is not conjugation", g.name(a)));
            return None;
        }
    };
    let omega = obstruction_cocycle_group(p, &phi).expect("witness was just verified");
    let circ = p.sub_adjacent_group().expect("post-group axioms hold");
    rep.output("omega", omega_lines(g, &omega));
    match group_cocycle_violation(&omega, &circ) {
        None => rep.pass("omega is a 2-cocycle", ""),
        Some((a, b, c)) => {
            rep.fail(
                "omega is a 2-cocycle",
                Failure::Other,
                format!("fails at ({}, {}, {})", g.name(a), g.name(b), g.name(c)),
            );
            return None;
        }
    }
    let Some(zeta) = coboundary_solve_group(&omega, &circ) else {
        rep.fail(
            "class trivial",
            Failure::ClassNontrivial,
            format!(
                "congruence system over center with invariant factors {:?} is inconsistent",
                omega.center().invariant_factors()
            ),
        );
        return None;
    };
    rep.pass("class trivial", "");
    rep.output("zeta", group_map_lines(g, &zeta));
    let b = GroupMap((0..g.order()).map(|a| g.mul(phi.apply(a), zeta.apply(a))).collect());
    rep.output("B", group_map_lines(g, &b));
    rep.verdict("B is rota-baxter", crate::postgroup::check_rb_group(g, &b), Failure::Other, "");
    rep.verdict("B reproduces the product", conjugation_product(g, &b) == *p, Failure::Other, "");
    Some(b)
}

fn group_obstruction(rep: &mut Report, doc: &Document) {
    let Some(p) = post_group(rep, doc) else {
        return;
    };
    if group_pipeline(rep, &p).is_some() {
        if let Ok(pb) = pullback_group(&p) {
            rep.output("pullback order", pb.group.order());
        }
    }
}

fn group_tower_cmd(rep: &mut Report, doc: &Document, depth: usize) {
    let (g, b) = match doc {
        Document::RbGroup { group, map } => (group.clone(), map.clone()),
        Document::PostGroup(_) => {
            let Some(p) = post_group(rep, doc) else {
                return;
            };
            let Some(b) = group_pipeline(rep, &p) else {
                return;
            };
            (p.base().clone(), b)
        }
        _ => return wrong_kind(rep, "an rb-group or postgroup document", doc),
    };
    match group_tower(&g, &b, depth) {
        Ok(t) => {
            rep.pass("tower", format!("B and a -> a o B(a) are homomorphisms on all {depth} steps"));
            let levels: Vec<Value> = t
                .levels
                .iter()
                .zip(&t.report)
                .map(|(lvl, lr)| {
                    let mut v = serde_json::to_value(lr).expect("serializes");
                    v["table"] = json!(lvl.rows());
                    v
                })
                .collect();
            rep.output("levels", levels);
        }
        Err(e) => rep.fail("tower", Failure::Other, e.to_string()),
    }
}

fn enumerate(rep: &mut Report, doc: &Document, cap: usize) {
    let Some(g) = doc.group() else {
        return wrong_kind(rep, "a group document", doc);
    };
    match enumerate_rb_operators(g, cap) {
        Ok(ops) => {
            rep.pass("search complete", format!("cap {cap}"));
            rep.output("count", ops.len());
            rep.output("operators", ops.iter().map(|b| group_map_compact(g, b)).collect::<Vec<_>>());
        }
        Err(e) => rep.fail("search complete", Failure::Other, e.to_string()),
    }
}

fn diff(rep: &mut Report, a: &Document, b: &Document) {
    match (a, b) {
        (Document::RbLie { algebra: l1, map: r1 }, Document::RbLie { algebra: l2, map: r2 }) => {
            if l1 != l2 {
                return rep.fail("same algebra", Failure::Other, "the two documents have different brackets");
            }
            match rb_difference_cocycle(l1, r1, r2) {
                Ok(t) => {
                    rep.pass("difference cocycle", "");
                    rep.output("t", map_lines(&t));
                }
                Err(e) => rep.fail("difference cocycle", Failure::Other, e.to_string()),
            }
        }
        (Document::RbGroup { group: g1, map: b1 }, Document::RbGroup { group: g2, map: b2 }) => {
            if g1.rows() != g2.rows() {
                return rep.fail("same group", Failure::Other, "the two documents have different tables");
            }
            match rb_difference_cocycle_group(g1, b1, b2) {
                Ok(z) => {
                    rep.pass("difference cocycle", "");
                    rep.output("zeta", group_map_lines(g1, &z));
                }
                Err(e) => {
                    let n = |a: usize| g1.name(a);
                    let detail = match e {
                        DifferenceError::NotRotaBaxter(k) => format!("operator {k} is not Rota-Baxter"),
                        DifferenceError::DifferentProducts(a, b) => {
                            format!("induced products differ at ({}, {})", n(a), n(b))
                        }
                        DifferenceError::NotCentral(a) => format!("B1(a)^-1 B2(a) is not central at a = {}", n(a)),
                        DifferenceError::NotCocycle(a, b) => {
                            format!("zeta(a o b) != zeta(a) zeta(b) at ({}, {})", n(a), n(b))
                        }
                    };
                    rep.fail("difference cocycle", Failure::Other, detail);
                }
            }
        }
        _ => rep.fail("input", Failure::Parse, "expected two rb-lie or two rb-group documents"),
    }
}

fn search(rep: &mut Report, seed: u64, samples: usize) {
    let s = run_search(seed, samples);
    rep.pass("search terminated", format!("{} bases scanned", s.bases.len()));
    rep.output("seed", seed);
    rep.output("bases", serde_json::to_value(&s.bases).expect("serializes"));
    rep.output("nontrivial classes", s.nontrivial());
    rep.output("findings", serde_json::to_value(&s.findings).expect("serializes"));
}

fn properties(rep: &mut Report, seed: u64, count: usize) {
    let s = run_property_suite(seed, count);
    for prop in PROPERTIES {
        let bad = s.failed(prop);
        let first = s.failures.iter().find(|f| f.property == prop);
        let detail = first
            .map_or_else(String::new, |f| format!("{bad} failures, first at instance {} ({})", f.instance, f.label));
        rep.verdict(prop, bad == 0, Failure::Other, detail);
    }
    rep.output("seed", seed);
    rep.output("instances", s.instances);
    rep.output("instances with center", s.with_center);
    rep.output("witness perturbations", s.perturbations);
}
