//! Exact scalars: rationals, elements of a real quadratic field `Q(sqrt d)`, and
//! complex numbers over those.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arithmetic needed by the elimination routines in [`crate::matrix`].
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// `a + b·sqrt(d)` with `a, b` rational and `d` square-free.
///
/// Canonical form: `b == 0` forces `d == 1`, so plain rationals combine with
/// elements of any field. Combining two irrational elements of different fields
/// panics; matrix constructors check this up front and return
/// [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

pub(crate) fn join_fields(d1: u64, d2: u64) -> Result<u64> {
    match (d1, d2) {
        (1, d) | (d, 1) => Ok(d),
        (x, y) if x == y => Ok(x),
        (x, y) => Err(Error::FieldMismatch(x, y)),
    }
}

fn join_or_panic(d1: u64, d2: u64) -> u64 {
    match join_fields(d1, d2) {
        Ok(d) => d,
        Err(e) => panic!("{e}"),
    }
}

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: BigRational, b: BigRational, d: u64) -> Self {
        if d == 1 {
            return Self { a: a + b, b: BigRational::zero(), d: 1 };
        }
        if b.is_zero() {
            Self { a, b, d: 1 }
        } else {
            Self { a, b, d }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: 1 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `sqrt(d)` for square-free `d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    /// The exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(Self::rational)
            .ok_or_else(|| Error::InvalidInput(alloc::format!("non-finite value {x}")))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * libm::sqrt(self.d as f64)
        }
    }

    /// Galois conjugate `a - b·sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² - d·b²`; nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger square wins
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        Self::canonical(&self.a / &n, -(&self.b / &n), self.d)
    }

    pub fn half(&self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        Self { a: &self.a / &two, b: &self.b / &two, d: self.d }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        join_fields(self.d, other.d).ok()?;
        Some((self.clone() - other.clone()).signum())
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let d = join_or_panic(self.d, rhs.d);
        ExactScalar::canonical(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let d = join_or_panic(self.d, rhs.d);
        ExactScalar::canonical(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let d = join_or_panic(self.d, rhs.d);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        ExactScalar::canonical(a, b, d)
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(ExactScalar, Add add, Sub sub, Mul mul, Div div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Field for ExactScalar {
    fn from_i64(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

/// `re + i·im` over a real quadratic field. Used for complex Hodge data.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexScalar {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl ComplexScalar {
    pub fn new(re: ExactScalar, im: ExactScalar) -> Self {
        Self { re, im }
    }

    pub fn real(re: ExactScalar) -> Self {
        Self { re, im: ExactScalar::zero() }
    }

    pub fn i() -> Self {
        Self { re: ExactScalar::zero(), im: ExactScalar::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + i({:?})", self.re, self.im)
    }
}

impl Add for ComplexScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ComplexScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl Div for ComplexScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        assert!(!den.is_zero(), "division by zero");
        let num = self * rhs.conj();
        Self { re: &num.re / &den, im: &num.im / &den }
    }
}

impl Neg for ComplexScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Zero for ComplexScalar {
    fn zero() -> Self {
        Self::real(ExactScalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexScalar {
    fn one() -> Self {
        Self::real(ExactScalar::one())
    }
}

impl Field for ComplexScalar {
    fn from_i64(n: i64) -> Self {
        Self::real(ExactScalar::int(n))
    }
}

/// Greatest common divisor of a list of integers (non-negative; 0 for an all-zero list).
pub(crate) fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub(crate) fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| if x.is_zero() { acc } else { acc.lcm(&x.abs()) })
}
