//! Small named structures used by tests, the CLI and the search harness.

use crate::group::FiniteGroup;
use crate::lie::LieAlgebra;
use crate::postlie::{LinearMap, PostLieAlgebra};
use crate::scalar::{GaussianRational, Vector};

fn v(entries: &[GaussianRational]) -> Vector {
    entries.to_vec()
}

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn half(num: i64) -> GaussianRational {
    GaussianRational::ratio(num, 2)
}

fn half_i(num: i64) -> GaussianRational {
    GaussianRational::complex(0, 1, num, 2)
}

/// `sl₂` in the basis with `[e1,e2]=e3`, `[e2,e3]=e1`, `[e3,e1]=e2`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        &[(0, 1, v(&[q(0), q(0), q(1)])), (1, 2, v(&[q(1), q(0), q(0)])), (2, 0, v(&[q(0), q(1), q(0)]))],
    )
    .expect("sl2 table")
}

/// `P(e1)=e1`, `P(e2)=−½e2+(i/2)e3`, `P(e3)=−(i/2)e2−½e3`.
pub fn sl2_rota_baxter() -> LinearMap {
    LinearMap::from_images(&[v(&[q(1), q(0), q(0)]), v(&[q(0), half(-1), half_i(1)]), v(&[q(0), half_i(-1), half(-1)])])
}

/// The nine-entry product table on `sl₂`, entered directly.
pub fn sl2_post_lie() -> PostLieAlgebra {
    let z = q(0);
    let table: [[Vector; 3]; 3] = [
        [v(&[z.clone(), z.clone(), z.clone()]), v(&[z.clone(), z.clone(), q(1)]), v(&[z.clone(), q(-1), z.clone()])],
        [
            v(&[z.clone(), half_i(1), half(1)]),
            v(&[half_i(-1), z.clone(), z.clone()]),
            v(&[half(-1), z.clone(), z.clone()]),
        ],
        [v(&[z.clone(), half(-1), half_i(1)]), v(&[half(1), z.clone(), z.clone()]), v(&[half_i(-1), z.clone(), z])],
    ];
    PostLieAlgebra::from_fn(sl2(), |i, j| table[i][j].clone()).expect("3x3 table")
}

/// `r₂ ⊕ K`: `[e1,e2]=e2`, `e3` central.
pub fn solvable() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, v(&[q(0), q(1), q(0)]))]).expect("solvable table")
}

/// `φ(e1)=e1+αe3`, `φ(e2)=−e2+βe3`, `φ(e3)=γe3` on [`solvable`].
pub fn solvable_phi(alpha: GaussianRational, beta: GaussianRational, gamma: GaussianRational) -> LinearMap {
    LinearMap::from_images(&[v(&[q(1), q(0), alpha]), v(&[q(0), q(-1), beta]), v(&[q(0), q(0), gamma])])
}

/// Heisenberg algebra `[e1,e2]=e3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, v(&[q(0), q(0), q(1)]))]).expect("heisenberg table")
}

/// Post-Lie structure on [`solvable`] whose only nonzero product is
/// `e3 ▷ e3 = e3`; `L▷(e3)` is an outer derivation.
pub fn outer_post_lie() -> PostLieAlgebra {
    PostLieAlgebra::from_fn(solvable(), |i, j| if (i, j) == (2, 2) { v(&[q(0), q(0), q(1)]) } else { vec![q(0); 3] })
        .expect("3x3 table")
}

/// `⟨r, s | rⁿ = s² = e, srs = r⁻¹⟩` with element `rᵏsᶠ` at index `k + n·f`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let idx = |k: usize, f: usize| k + n * f;
    let table = (0..2 * n)
        .map(|x| {
            let (a, f) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (b, g) = (y % n, y / n);
                    let k = if f == 0 { a + b } else { a + n - b };
                    idx(k % n, (f + g) % 2)
                })
                .collect()
        })
        .collect();
    let power = |k: usize| match k {
        0 => String::new(),
        1 => "r".to_string(),
        k => format!("r{k}"),
    };
    let names = (0..2 * n)
        .map(|x| {
            let (k, f) = (x % n, x / n);
            match (k, f) {
                (0, 0) => "e".to_string(),
                (_, 0) => power(k),
                _ => format!("{}s", power(k)),
            }
        })
        .collect();
    FiniteGroup::from_table(table).expect("dihedral table").with_names(names)
}

/// `S₃ ≅ D₃`.
pub fn s3() -> FiniteGroup {
    dihedral(3)
}

/// Symmetries of the square, order 8.
pub fn d4() -> FiniteGroup {
    dihedral(4)
}

/// `ℤ/n₁ ⊕ … ⊕ ℤ/n_k` with mixed-radix element indices, first factor fastest.
pub fn product_of_cyclic(dims: &[usize]) -> FiniteGroup {
    let order: usize = dims.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        dims.iter()
            .map(|&d| {
                let r = x % d;
                x /= d;
                r
            })
            .collect()
    };
    let index = |ds: &[usize]| ds.iter().zip(dims).rev().fold(0, |acc, (&x, &d)| acc * d + x);
    let table = (0..order)
        .map(|a| {
            let da = digits(a);
            (0..order)
                .map(|b| {
                    let s: Vec<usize> = digits(b).iter().zip(&da).zip(dims).map(|((x, y), d)| (x + y) % d).collect();
                    index(&s)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table).expect("abelian table")
}
