//! Exact Gaussian rationals, the field ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element `re + im·i` of ℚ(i).
///
/// Both parts are arbitrary-precision rationals kept in lowest terms with a
/// positive denominator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

pub type Vector = Vec<GaussianRational>;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a real Gaussian rational. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `(a/b) + (c/d)·i`.
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// True when `-self` prints more compactly than `self` (used by renderers
    /// to pull a leading minus sign out of a term).
    pub(crate) fn prefers_negation(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative() && !self.im.is_positive()
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero in GaussianRational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational { (&self).$m(rhs) }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussianRational {
    /// Renders as `a/b`, `c/d*i` or `a/b+c/d*i`; never uses decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}*i", self.re, -self.im.clone()),
            (false, false) => write!(f, "{}+{}*i", self.re, self.im),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = crate::expr::parse_expression(s)?;
        let mut acc = GaussianRational::zero();
        for term in terms {
            if term.basis.is_some() {
                return Err(format!("unexpected basis vector in scalar `{s}`"));
            }
            acc += &term.coefficient;
        }
        Ok(acc)
    }
}

/// `Σ coeffs[k] · vectors[k]`; all vectors must share the length `len`.
pub fn linear_combination<'a>(
    len: usize,
    terms: impl IntoIterator<Item = (&'a GaussianRational, &'a [GaussianRational])>,
) -> Vector {
    let mut out = zero_vector(len);
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        axpy(&mut out, c, v);
    }
    out
}

/// `y += a·x`.
pub fn axpy(y: &mut [GaussianRational], a: &GaussianRational, x: &[GaussianRational]) {
    debug_assert_eq!(y.len(), x.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(a * xi);
        }
    }
}

pub fn zero_vector(len: usize) -> Vector {
    vec![GaussianRational::zero(); len]
}

pub fn unit_vector(len: usize, k: usize) -> Vector {
    let mut v = zero_vector(len);
    v[k] = GaussianRational::one();
    v
}

pub fn is_zero_vector(v: &[GaussianRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sub_vectors(a: &[GaussianRational], b: &[GaussianRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vectors(a: &[GaussianRational], b: &[GaussianRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vector(c: &GaussianRational, v: &[GaussianRational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn reduced_and_canonical() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, 5), GaussianRational::zero());
        assert_eq!(q(0, -5).to_string(), "0");
    }

    #[test]
    fn field_operations() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
        let z = GaussianRational::complex(1, 2, 3, 4);
        let w = GaussianRational::complex(-2, 3, 1, 5);
        assert_eq!(&(&z + &w) - &w, z);
        assert_eq!(&(&z * &w) / &w, z);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_and_parse() {
        let cases = [
            (GaussianRational::complex(1, 2, 1, 2), "1/2+1/2*i"),
            (GaussianRational::complex(1, 2, -1, 2), "1/2-1/2*i"),
            (GaussianRational::complex(0, 1, -1, 2), "-1/2*i"),
            (q(-3, 1), "-3"),
        ];
        for (v, s) in cases {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<GaussianRational>().unwrap(), v);
        }
        assert_eq!("i/2".parse::<GaussianRational>().unwrap(), GaussianRational::complex(0, 1, 1, 2));
        assert_eq!("-i".parse::<GaussianRational>().unwrap(), -GaussianRational::i());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("e1".parse::<GaussianRational>().is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn gr() -> impl Strategy<Value = GaussianRational> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| GaussianRational::complex(a, b, c, d))
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in gr(), b in gr()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn display_parse_roundtrip(a in gr()) {
            prop_assert_eq!(a.to_string().parse::<GaussianRational>().unwrap(), a);
        }

        #[test]
        fn distributive(a in gr(), b in gr(), c in gr()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
