//! Line-oriented text documents: one algebraic object per file.
//!
//! ```text
//! # comment
//! postlie                 kind: lie | postlie | rb-lie | group | postgroup | rb-group
//! dim 3
//! [1,2] = e3              brackets, 1-based; unlisted brackets are zero
//! 2>1 = i/2*e2 + 1/2*e3   products e2 ▷ e1 (postlie only)
//! map                     rb-lie: images, one `i -> combination` line each
//! 1 -> e1
//! ```
//!
//! A postlie document may carry a `witness` block in the same form as `map`,
//! naming the `φ` to use instead of the canonical one.
//!
//! Groups use `order n`, an optional `names` line and a `table` block of `n`
//! rows of 0-based indices (or names), or `degree d` followed by `gen` lines
//! holding permutations of `0..d`. Post-groups add a `triangle` block, RB
//! groups a `map` block of `a -> b` lines. An rb-lie map may be given as a
//! `matrix` block instead: `n` rows of comma-separated scalars whose columns
//! are the images.

use std::collections::HashMap;

use thiserror::Error;

use crate::expr::{parse_linear_combination, render_linear_combination};
use crate::group::{check_cayley_table, expand_permutation_generators, FiniteGroup, GroupError, GroupMap};
use crate::lie::LieAlgebra;
use crate::matrix::ExactMatrix;
use crate::postgroup::PostGroup;
use crate::postlie::{LinearMap, PostLieAlgebra};
use crate::scalar::{is_zero_vector, GaussianRational, Vector};

/// Largest group accepted from permutation generators.
pub const DEFAULT_PERMUTATION_CAP: usize = 5040;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the error concerns the document as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lie,
    PostLie,
    RbLie,
    Group,
    PostGroup,
    RbGroup,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Lie => "lie",
            Kind::PostLie => "postlie",
            Kind::RbLie => "rb-lie",
            Kind::Group => "group",
            Kind::PostGroup => "postgroup",
            Kind::RbGroup => "rb-group",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        [Kind::Lie, Kind::PostLie, Kind::RbLie, Kind::Group, Kind::PostGroup, Kind::RbGroup]
            .into_iter()
            .find(|k| k.keyword() == s)
    }

    fn is_lie(self) -> bool {
        matches!(self, Kind::Lie | Kind::PostLie | Kind::RbLie)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Lie(LieAlgebra),
    /// `witness`, when present, is a chosen `φ` with `ad(φ(x)) = L▷(x)`;
    /// it is not checked here.
    PostLie {
        product: PostLieAlgebra,
        witness: Option<LinearMap>,
    },
    RbLie {
        algebra: LieAlgebra,
        map: LinearMap,
    },
    Group(FiniteGroup),
    PostGroup(PostGroup),
    RbGroup {
        group: FiniteGroup,
        map: GroupMap,
    },
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Lie(_) => Kind::Lie,
            Document::PostLie { .. } => Kind::PostLie,
            Document::RbLie { .. } => Kind::RbLie,
            Document::Group(_) => Kind::Group,
            Document::PostGroup(_) => Kind::PostGroup,
            Document::RbGroup { .. } => Kind::RbGroup,
        }
    }

    pub fn lie_algebra(&self) -> Option<&LieAlgebra> {
        match self {
            Document::Lie(l) | Document::RbLie { algebra: l, .. } => Some(l),
            Document::PostLie { product, .. } => Some(product.base()),
            _ => None,
        }
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match self {
            Document::Group(g) | Document::RbGroup { group: g, .. } => Some(g),
            Document::PostGroup(p) => Some(p.base()),
            _ => None,
        }
    }
}

#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn strip(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let t = raw.split('#').next().unwrap_or("").trim();
            (!t.is_empty()).then_some(Line { number: k + 1, text: t })
        })
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    parse_document_with_cap(text, DEFAULT_PERMUTATION_CAP)
}

pub fn parse_document_with_cap(text: &str, permutation_cap: usize) -> Result<Document, ParseError> {
    let lines = strip(text);
    let Some(first) = lines.first() else {
        return err(0, "empty document");
    };
    let kind = Kind::from_keyword(first.text)
        .ok_or_else(|| ParseError { line: first.number, message: format!("unknown document kind `{}`", first.text) })?;
    let rest = &lines[1..];
    if kind.is_lie() {
        parse_lie(kind, rest)
    } else {
        parse_group(kind, rest, permutation_cap)
    }
}

fn parse_index(s: &str, dim: usize, line: usize) -> Result<usize, ParseError> {
    match s.trim().parse::<usize>() {
        Ok(k) if (1..=dim).contains(&k) => Ok(k - 1),
        _ => err(line, format!("expected a basis index in 1..={dim}, found `{}`", s.trim())),
    }
}

fn parse_lie(kind: Kind, lines: &[Line]) -> Result<Document, ParseError> {
    let Some(head) = lines.first() else {
        return err(0, "missing `dim n`");
    };
    let dim = match head.text.strip_prefix("dim").map(str::trim).map(str::parse::<usize>) {
        Some(Ok(n)) if n > 0 => n,
        _ => return err(head.number, "expected `dim n` with n >= 1"),
    };
    let mut brackets: HashMap<(usize, usize), (Vector, usize)> = HashMap::new();
    let mut triangle: HashMap<(usize, usize), (Vector, usize)> = HashMap::new();
    let mut images: Vec<Option<Vector>> = vec![None; dim];
    let mut k = 1;
    while k < lines.len() {
        let Line { number, text } = lines[k];
        k += 1;
        if (text == "map" && kind == Kind::RbLie) || (text == "witness" && kind == Kind::PostLie) {
            while k < lines.len() && lines[k].text.contains("->") {
                let Line { number, text } = lines[k];
                k += 1;
                let (lhs, rhs) = text.split_once("->").expect("checked");
                let i = parse_index(lhs, dim, number)?;
                if images[i].is_some() {
                    return err(number, format!("image of e{} given twice", i + 1));
                }
                images[i] = Some(
                    parse_linear_combination(rhs.trim(), dim).map_err(|m| ParseError { line: number, message: m })?,
                );
            }
            continue;
        }
        if text == "matrix" && kind == Kind::RbLie {
            if images.iter().any(Option::is_some) {
                return err(number, "map given twice");
            }
            let mut rows = Vec::with_capacity(dim);
            for _ in 0..dim {
                let Some(&Line { number, text }) = lines.get(k) else {
                    return err(number, format!("matrix needs {dim} rows"));
                };
                k += 1;
                let row: Vec<GaussianRational> = text
                    .split(',')
                    .map(|s| s.trim().parse::<GaussianRational>().map_err(|m| ParseError { line: number, message: m }))
                    .collect::<Result<_, _>>()?;
                if row.len() != dim {
                    return err(number, format!("matrix row has {} entries, expected {dim}", row.len()));
                }
                rows.push(row);
            }
            let m = ExactMatrix::from_rows(&rows).expect("square");
            for (j, slot) in images.iter_mut().enumerate() {
                *slot = Some(m.column(j));
            }
            continue;
        }
        let Some((lhs, rhs)) = text.split_once('=') else {
            return err(number, format!("unexpected line `{text}`"));
        };
        let value = parse_linear_combination(rhs.trim(), dim).map_err(|m| ParseError { line: number, message: m })?;
        let lhs = lhs.trim();
        if let Some(inner) = lhs.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let Some((a, b)) = inner.split_once(',') else {
                return err(number, "expected `[i,j]`");
            };
            let (i, j) = (parse_index(a, dim, number)?, parse_index(b, dim, number)?);
            if i == j {
                if !is_zero_vector(&value) {
                    return err(number, format!("[e{0},e{0}] must be zero", i + 1));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), value) } else { ((j, i), value.iter().map(|x| -x).collect()) };
            if let Some((old, first)) = brackets.get(&key) {
                if *old != v {
                    return err(number, format!("bracket contradicts line {first} (antisymmetry)"));
                }
            } else {
                brackets.insert(key, (v, number));
            }
        } else if let Some((a, b)) = lhs.split_once('>') {
            if kind != Kind::PostLie {
                return err(number, "products `i>j` only belong in postlie documents");
            }
            let (i, j) = (parse_index(a, dim, number)?, parse_index(b, dim, number)?);
            if triangle.insert((i, j), (value, number)).is_some() {
                return err(number, format!("e{} > e{} given twice", i + 1, j + 1));
            }
        } else {
            return err(number, format!("unexpected left-hand side `{lhs}`"));
        }
    }
    let algebra = LieAlgebra::from_upper(dim, |i, j| {
        brackets.get(&(i, j)).map(|(v, _)| v.clone()).unwrap_or_else(|| vec![GaussianRational::default(); dim])
    })
    .expect("dimensions agree");
    Ok(match kind {
        Kind::Lie => Document::Lie(algebra),
        Kind::PostLie => {
            let witness = if images.iter().all(Option::is_none) {
                None
            } else if let Some(i) = images.iter().position(Option::is_none) {
                return err(0, format!("witness lacks the image of e{}", i + 1));
            } else {
                let images: Vec<Vector> = images.into_iter().map(|v| v.expect("checked")).collect();
                Some(LinearMap::from_images(&images))
            };
            let product = PostLieAlgebra::from_fn(algebra, |i, j| {
                triangle.get(&(i, j)).map(|(v, _)| v.clone()).unwrap_or_else(|| vec![GaussianRational::default(); dim])
            })
            .expect("dimensions agree");
            Document::PostLie { product, witness }
        }
        Kind::RbLie => {
            if let Some(i) = images.iter().position(Option::is_none) {
                return err(0, format!("rb-lie document lacks the image of e{}", i + 1));
            }
            let images: Vec<Vector> = images.into_iter().map(|v| v.expect("checked")).collect();
            Document::RbLie { algebra, map: LinearMap::from_images(&images) }
        }
        _ => unreachable!(),
    })
}

fn element(token: &str, names: &Option<Vec<String>>, order: usize, line: usize) -> Result<usize, ParseError> {
    if let Ok(k) = token.parse::<usize>() {
        if k < order {
            return Ok(k);
        }
        return err(line, format!("element index {k} out of range 0..{order}"));
    }
    if let Some(k) = names.as_ref().and_then(|ns| ns.iter().position(|n| n == token)) {
        return Ok(k);
    }
    err(line, format!("unknown element `{token}`"))
}

fn read_rows(
    lines: &[Line],
    k: &mut usize,
    header: usize,
    order: usize,
    names: &Option<Vec<String>>,
) -> Result<(Vec<Vec<usize>>, Vec<usize>), ParseError> {
    let mut rows = Vec::with_capacity(order);
    let mut numbers = Vec::with_capacity(order);
    for _ in 0..order {
        let Some(&Line { number, text }) = lines.get(*k) else {
            return err(header, format!("block needs {order} rows"));
        };
        *k += 1;
        let row: Vec<usize> =
            text.split_whitespace().map(|t| element(t, names, order, number)).collect::<Result<_, _>>()?;
        if row.len() != order {
            return err(number, format!("row has {} entries, expected {order}", row.len()));
        }
        rows.push(row);
        numbers.push(number);
    }
    Ok((rows, numbers))
}

fn parse_group(kind: Kind, lines: &[Line], cap: usize) -> Result<Document, ParseError> {
    let mut k = 0;
    let mut order = None;
    let mut names: Option<Vec<String>> = None;
    let mut group: Option<FiniteGroup> = None;
    let mut degree = None;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut gen_line = 0;
    let mut triangle = None;
    let mut map: Option<Vec<Option<usize>>> = None;
    while k < lines.len() {
        let Line { number, text } = lines[k];
        k += 1;
        let (word, rest) = text.split_once(char::is_whitespace).map_or((text, ""), |(a, b)| (a, b.trim()));
        match word {
            "order" => match rest.parse::<usize>() {
                Ok(n) if n > 0 => order = Some(n),
                _ => return err(number, "expected `order n` with n >= 1"),
            },
            "names" => {
                let ns: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ns.iter().any(|n| n.parse::<usize>().is_ok()) {
                    return err(number, "element names must not be plain numbers");
                }
                names = Some(ns);
            }
            "table" => {
                let Some(n) = order else {
                    return err(number, "`table` needs a preceding `order n`");
                };
                if let Some(ns) = &names {
                    if ns.len() != n {
                        return err(number, format!("{} names for order {n}", ns.len()));
                    }
                }
                let (rows, numbers) = read_rows(lines, &mut k, number, n, &names)?;
                let g = match check_cayley_table(&rows) {
                    Ok(_) => FiniteGroup::from_table(rows).expect("validated"),
                    Err(GroupError::NotAssociative((a, b, c))) => {
                        return err(numbers[a], format!("not associative: ({a}*{b})*{c} != {a}*({b}*{c})"))
                    }
                    Err(GroupError::NoInverse(a)) => return err(numbers[a], format!("element {a} has no inverse")),
                    Err(e) => return err(number, e.to_string()),
                };
                group = Some(match names.clone() {
                    Some(ns) => g.with_names(ns),
                    None => g,
                });
            }
            "degree" => match rest.parse::<usize>() {
                Ok(d) if d > 0 => degree = Some(d),
                _ => return err(number, "expected `degree d` with d >= 1"),
            },
            "gen" => {
                let Some(d) = degree else {
                    return err(number, "`gen` needs a preceding `degree d`");
                };
                let p: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| ParseError { line: number, message: format!("bad point `{t}`") })
                    })
                    .collect::<Result<_, _>>()?;
                if p.len() != d || !GroupMap(p.clone()).is_bijection() {
                    return err(number, format!("not a permutation of 0..{d}"));
                }
                gens.push(p);
                gen_line = number;
            }
            "triangle" if kind == Kind::PostGroup => {
                let Some(g) = &group else {
                    return err(number, "`triangle` needs the group first");
                };
                let names = g.names().map(<[String]>::to_vec);
                triangle = Some(read_rows(lines, &mut k, number, g.order(), &names)?.0);
            }
            "map" if kind == Kind::RbGroup => {
                let Some(g) = &group else {
                    return err(number, "`map` needs the group first");
                };
                let names = g.names().map(<[String]>::to_vec);
                let mut m = vec![None; g.order()];
                while k < lines.len() && lines[k].text.contains("->") {
                    let Line { number, text } = lines[k];
                    k += 1;
                    let (a, b) = text.split_once("->").expect("checked");
                    let a = element(a.trim(), &names, g.order(), number)?;
                    let b = element(b.trim(), &names, g.order(), number)?;
                    if m[a].replace(b).is_some() {
                        return err(number, format!("image of {a} given twice"));
                    }
                }
                map = Some(m);
            }
            _ => return err(number, format!("unexpected line `{text}`")),
        }
        let last_gen = !gens.is_empty() && lines.get(k).is_none_or(|l| !l.text.starts_with("gen"));
        if let (None, Some(d), true) = (&group, degree, last_gen) {
            let (g, _) = expand_permutation_generators(d, &gens, cap)
                .map_err(|e| ParseError { line: gen_line, message: e.to_string() })?;
            group = Some(g);
        }
    }
    let Some(group) = group else {
        return err(0, "no group given (`order` + `table`, or `degree` + `gen`)");
    };
    Ok(match kind {
        Kind::Group => Document::Group(group),
        Kind::PostGroup => {
            let Some(rows) = triangle else {
                return err(0, "postgroup document lacks a `triangle` block");
            };
            Document::PostGroup(PostGroup::from_table(group, rows).expect("shape checked"))
        }
        Kind::RbGroup => {
            let Some(m) = map else {
                return err(0, "rb-group document lacks a `map` block");
            };
            if let Some(a) = m.iter().position(Option::is_none) {
                return err(0, format!("map lacks the image of {a}"));
            }
            Document::RbGroup { group, map: GroupMap(m.into_iter().map(|v| v.expect("checked")).collect()) }
        }
        _ => unreachable!(),
    })
}

fn render_lie_body(out: &mut String, l: &LieAlgebra) {
    let n = l.dim();
    out.push_str(&format!("dim {n}\n"));
    for i in 0..n {
        for j in i + 1..n {
            let v = l.bracket_basis(i, j);
            if !is_zero_vector(v) {
                out.push_str(&format!("[{},{}] = {}\n", i + 1, j + 1, render_linear_combination(v)));
            }
        }
    }
}

fn render_map(out: &mut String, keyword: &str, map: &LinearMap) {
    out.push_str(keyword);
    out.push('\n');
    for (j, v) in map.images().iter().enumerate() {
        out.push_str(&format!("{} -> {}\n", j + 1, render_linear_combination(v)));
    }
}

fn render_group_body(out: &mut String, g: &FiniteGroup) {
    out.push_str(&format!("order {}\n", g.order()));
    if let Some(ns) = g.names() {
        out.push_str(&format!("names {}\n", ns.join(" ")));
    }
    out.push_str("table\n");
    render_rows(out, &g.rows());
}

fn render_rows(out: &mut String, rows: &[Vec<usize>]) {
    for r in rows {
        out.push_str(&r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
}

/// Canonical text form; reparses to an equal document.
pub fn render_document(doc: &Document) -> String {
    let mut out = format!("{}\n", doc.kind().keyword());
    match doc {
        Document::Lie(l) => render_lie_body(&mut out, l),
        Document::PostLie { product: p, witness } => {
            render_lie_body(&mut out, p.base());
            let n = p.dim();
            for i in 0..n {
                for j in 0..n {
                    let v = p.triangle_basis(i, j);
                    if !is_zero_vector(v) {
                        out.push_str(&format!("{}>{} = {}\n", i + 1, j + 1, render_linear_combination(v)));
                    }
                }
            }
            if let Some(w) = witness {
                render_map(&mut out, "witness", w);
            }
        }
        Document::RbLie { algebra, map } => {
            render_lie_body(&mut out, algebra);
            render_map(&mut out, "map", map);
        }
        Document::Group(g) => render_group_body(&mut out, g),
        Document::PostGroup(p) => {
            render_group_body(&mut out, p.base());
            out.push_str("triangle\n");
            render_rows(&mut out, &p.rows());
        }
        Document::RbGroup { group, map } => {
            render_group_body(&mut out, group);
            out.push_str("map\n");
            for (a, b) in map.images().iter().enumerate() {
                out.push_str(&format!("{a} -> {b}\n"));
            }
        }
    }
    out
}
