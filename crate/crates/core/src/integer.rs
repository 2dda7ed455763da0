//! Integer matrices, Smith normal form and linear congruence systems.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries of `D` (including trailing zeros), `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|k| self.d[(k, k)].clone()).collect()
    }

    /// Diagonal entries different from 0 and 1.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        Self { rows: rows.len(), cols, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant via Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let d = f * &self[(src, j)];
            self[(dst, j)] += d;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let d = f * &self[(i, src)];
            self[(i, dst)] += d;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

/// Row operations applied to `a` are mirrored on the rows of `left`, column
/// operations on the columns of `right`. Starting from identities this yields
/// `U` and `V`; starting `left` at a right-hand side it yields `U·b`.
fn snf_core(a: &mut IntMatrix, left: &mut IntMatrix, right: &mut IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(a, t..m, t..n) else {
            return;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived; move it to the pivot
                let (pi, pj) = min_abs_cross(a, t);
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
}

fn min_abs_entry(a: &IntMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (at or after the diagonal).
fn min_abs_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut cands: Vec<(usize, usize)> = (t..a.rows).map(|i| (i, t)).collect();
    cands.extend((t + 1..a.cols).map(|j| (t, j)));
    cands
        .into_iter()
        .filter(|&(i, j)| !a[(i, j)].is_zero())
        .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()))
        .expect("cross contains a nonzero entry")
}

/// Smith normal form: `U · A · V = D`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    snf_core(&mut d, &mut u, &mut v);
    SmithForm { u, d, v }
}

/// Solves `A x ≡ b_j (mod moduli[j])` independently for every column `b_j` of
/// `rhs`. Free coordinates (in the Smith basis) are set to zero. Returns the
/// solution columns reduced into `[0, modulus)`, or `None` if any column is
/// inconsistent.
pub fn solve_congruences(a: &IntMatrix, rhs: &IntMatrix, moduli: &[BigInt]) -> Option<IntMatrix> {
    assert_eq!(a.rows, rhs.rows, "right-hand side row count");
    assert_eq!(rhs.cols, moduli.len(), "one modulus per right-hand side");
    let mut d = a.clone();
    let mut ub = rhs.clone();
    let mut v = IntMatrix::identity(a.cols);
    snf_core(&mut d, &mut ub, &mut v);

    let n = a.cols;
    let mut x = IntMatrix::zeros(n, rhs.cols);
    for (col, modulus) in moduli.iter().enumerate() {
        assert!(modulus.is_positive(), "moduli must be positive");
        let mut y = vec![BigInt::zero(); n];
        for i in 0..a.rows {
            let di = if i < n { d[(i, i)].clone() } else { BigInt::zero() };
            let r = ub[(i, col)].mod_floor(modulus);
            let g = di.gcd(modulus);
            if !r.is_multiple_of(&g) {
                return None;
            }
            if i >= n {
                continue;
            }
            let m = modulus / &g;
            if m.is_one() {
                continue;
            }
            let inv = mod_inverse(&(&di / &g).mod_floor(&m), &m).expect("coprime after dividing by gcd");
            y[i] = ((&r / &g) * inv).mod_floor(&m);
        }
        for i in 0..n {
            let mut acc = BigInt::zero();
            for (k, yk) in y.iter().enumerate() {
                acc += &v[(i, k)] * yk;
            }
            x[(i, col)] = acc.mod_floor(modulus);
        }
    }
    Some(x)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));

        let s = check_smith(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));

        let s = check_smith(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
    }

    #[test]
    fn snf_rectangular() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 0, 3]]);
        check_smith(&a);
        let a = IntMatrix::from_rows(&[vec![4, 6, 0, 2]]);
        let s = check_smith(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
    }

    #[test]
    fn congruences() {
        // 2x ≡ 1 (mod 4) has no solution, 2x ≡ 2 (mod 4) does.
        let a = IntMatrix::from_rows(&[vec![2]]);
        assert!(solve_congruences(&a, &IntMatrix::from_rows(&[vec![1]]), &[BigInt::from(4)]).is_none());
        let x = solve_congruences(&a, &IntMatrix::from_rows(&[vec![2]]), &[BigInt::from(4)]).unwrap();
        assert_eq!(x[(0, 0)], BigInt::one());

        // x + y ≡ 1, x - y ≡ 0 (mod 2) is inconsistent; mod 3 is fine.
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        let b = IntMatrix::from_rows(&[vec![1], vec![0]]);
        assert!(solve_congruences(&a, &b, &[BigInt::from(2)]).is_none());
        let x = solve_congruences(&a, &b, &[BigInt::from(3)]).unwrap();
        let (x0, x1) = (&x[(0, 0)], &x[(1, 0)]);
        assert_eq!((x0 + x1).mod_floor(&BigInt::from(3)), BigInt::one());
        assert_eq!((x0 - x1).mod_floor(&BigInt::from(3)), BigInt::zero());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c)
                .prop_map(move |v| IntMatrix::from_rows(&v.chunks(c).map(<[i64]>::to_vec).collect::<Vec<_>>()))
        })
    }

    proptest! {
        #[test]
        fn smith_is_certified(a in int_matrix()) {
            let s = smith_normal_form(&a);
            prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
            prop_assert!(s.d.is_diagonal());
            prop_assert_eq!(s.u.determinant().abs(), BigInt::one());
            prop_assert_eq!(s.v.determinant().abs(), BigInt::one());
            let diag = s.diagonal();
            for w in diag.windows(2) {
                prop_assert!(!w[0].is_negative() && !w[1].is_negative());
                let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
                prop_assert!(divides);
            }
        }

        #[test]
        fn congruence_solutions_verify(a in int_matrix(), m in 2i64..9, xs in proptest::collection::vec(0i64..9, 4)) {
            let modulus = BigInt::from(m);
            let x0: Vec<BigInt> = (0..a.cols()).map(|j| BigInt::from(xs[j % 4])).collect();
            let mut b = IntMatrix::zeros(a.rows(), 1);
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    b[(i, 0)] += &a[(i, j)] * &x0[j];
                }
            }
            let x = solve_congruences(&a, &b, std::slice::from_ref(&modulus)).expect("consistent by construction");
            for i in 0..a.rows() {
                let mut acc = BigInt::zero();
                for j in 0..a.cols() {
                    acc += &a[(i, j)] * &x[(j, 0)];
                }
                prop_assert_eq!((acc - &b[(i, 0)]).mod_floor(&modulus), BigInt::zero());
            }
        }
    }
}
