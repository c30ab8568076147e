//! Exact arithmetic in ℚ and in a single real quadratic field ℚ(√m).
//!
//! A [`QuadExt`] is `a + b√m` with rational `a`, `b` and a square-free radicand
//! `m ≥ 2`. Rational values always carry `m = 0` and `b = 0`, so structural
//! equality is numeric equality. Mixing two different irrational radicands is
//! an error rather than a lift into a composite field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds a rational from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Splits `n` into `(k, r)` with `n = k²·r` and `r` square-free.
pub fn square_free_part(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut k = 1u64;
    let mut r = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    r *= rest;
    (k, r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact real number `a + b√m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    m: u64,
}

impl QuadExt {
    /// `a + b√m`; the radicand is reduced to its square-free part.
    pub fn new(a: Rational, b: Rational, m: u64) -> Self {
        let (k, r) = square_free_part(m);
        let b = b * Rational::from_integer(BigInt::from(k));
        let (a, b, m) = match r {
            0 => (a, Rational::zero(), 0),
            1 => (a + b, Rational::zero(), 0),
            _ => (a, b, r),
        };
        Self::canonical(a, b, m)
    }

    fn canonical(a: Rational, b: Rational, m: u64) -> Self {
        if b.is_zero() {
            Self { a, b, m: 0 }
        } else {
            Self { a, b, m }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), m: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// The exact square root of a non-negative integer.
    pub fn sqrt_of(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand, `0` for rational values.
    pub fn radicand(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True iff the value is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn sign_of(&self) -> i8 {
        let sa = sign_rat(&self.a);
        let sb = sign_rat(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: the larger of a² and b²m wins; equality would make m a square
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * Rational::from_integer(BigInt::from(self.m));
        if a2 > b2m {
            sa
        } else {
            sb
        }
    }

    /// `a − b√m`.
    pub fn conjugate(&self) -> Self {
        Self::canonical(self.a.clone(), -self.b.clone(), self.m)
    }

    /// Field norm `a² − m b²` (rational).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.m))
    }

    pub fn abs(&self) -> Self {
        if self.sign_of() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Common radicand of two operands, if they are compatible.
    pub fn joint_radicand(&self, other: &Self) -> Result<u64> {
        match (self.m, other.m) {
            (0, m) | (m, 0) => Ok(m),
            (p, q) if p == q => Ok(p),
            (p, q) => Err(Error::MixedRadicands(p, q)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        Ok(Self::canonical(&self.a + &rhs.a, &self.b + &rhs.b, m))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        Ok(Self::canonical(&self.a - &rhs.a, &self.b - &rhs.b, m))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        let mr = Rational::from_integer(BigInt::from(m));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * mr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Self::canonical(a, b, m))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.is_rational() {
            return Ok(Self::canonical(&self.a / &rhs.a, &self.b / &rhs.a, m));
        }
        // multiply through by the conjugate
        let n = rhs.norm();
        let num = self.checked_mul(&rhs.conjugate())?;
        Ok(Self::canonical(&num.a / &n, &num.b / &n, m))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn arith(x: &Self, y: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => x.checked_add(y),
            ArithOp::Sub => x.checked_sub(y),
            ArithOp::Mul => x.checked_mul(y),
            ArithOp::Div => x.checked_div(y),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact comparison; fails only for mixed radicands.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.sign_of().cmp(&0))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.m as f64).sqrt()
    }

    /// Decimal rendering with 12 significant digits.
    pub fn to_decimal(&self) -> String {
        format_sig(self.to_f64(), 12)
    }
}

fn sign_rat(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Formats `x` with `digits` significant digits, trimming trailing zeros.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

impl PartialOrd for QuadExt {
    /// `None` when the operands live in different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl Default for QuadExt {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

// Operators panic on mixed radicands or division by zero; use the checked_* forms
// when operands are not known to share a field.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::canonical(-self.a, -self.b, self.m)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

impl std::iter::Sum for QuadExt {
    fn sum<I: Iterator<Item = QuadExt>>(iter: I) -> Self {
        iter.fold(QuadExt::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for QuadExt {
    fn product<I: Iterator<Item = QuadExt>>(iter: I) -> Self {
        iter.fold(QuadExt::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sb = if self.b.is_negative() { "-" } else { "+" };
        let babs = self.b.abs();
        let coeff = if babs.is_one() { String::new() } else { format!("{}*", babs) };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{}{}√{}", lead, coeff, self.m)
        } else {
            write!(f, "{} {} {}√{}", self.a, sb, coeff, self.m)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({})", self)
    }
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational `{}`", s)))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{}`", s)));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Wire form of an exact value: a bare rational string or an `{a, b, m}` object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuadText {
    Rational(String),
    Quad { a: String, b: String, m: u64 },
}

impl From<&QuadExt> for QuadText {
    fn from(x: &QuadExt) -> Self {
        if x.is_rational() {
            QuadText::Rational(render_rational(&x.a))
        } else {
            QuadText::Quad { a: render_rational(&x.a), b: render_rational(&x.b), m: x.m }
        }
    }
}

impl TryFrom<&QuadText> for QuadExt {
    type Error = Error;
    fn try_from(t: &QuadText) -> Result<Self> {
        match t {
            QuadText::Rational(s) => Ok(QuadExt::from_rational(parse_rational(s)?)),
            QuadText::Quad { a, b, m } => Ok(QuadExt::new(parse_rational(a)?, parse_rational(b)?, *m)),
        }
    }
}

impl Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        QuadText::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let t = QuadText::deserialize(de)?;
        QuadExt::try_from(&t).map_err(serde::de::Error::custom)
    }
}

/// Exact binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64), m: u64) -> QuadExt {
        QuadExt::new(rat(a.0, a.1), rat(b.0, b.1), m)
    }

    #[test]
    fn conjugate_product_and_sum() {
        let p = q((1, 1), (1, 1), 5) * q((1, 1), (-1, 1), 5);
        assert_eq!(p, QuadExt::from_int(-4));
        assert_eq!(p.radicand(), 0);
        let s = q((5, 2), (-1, 2), 5) + q((5, 2), (1, 2), 5);
        assert_eq!(s, QuadExt::from_int(5));
    }

    #[test]
    fn division_rationalizes() {
        let x = q((5, 2), (1, 2), 5);
        let r = x.checked_div(&QuadExt::sqrt_of(5)).unwrap();
        assert_eq!(r, q((1, 2), (1, 2), 5));
        assert_eq!(&r * &QuadExt::sqrt_of(5), x);
    }

    #[test]
    fn errors() {
        let e = QuadExt::sqrt_of(2).checked_add(&QuadExt::sqrt_of(5));
        assert_eq!(e, Err(Error::MixedRadicands(2, 5)));
        assert_eq!(QuadExt::one().checked_div(&QuadExt::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn signs() {
        assert_eq!(q((3, 1), (-2, 1), 2).sign_of(), 1);
        assert_eq!(QuadExt::zero().sign_of(), 0);
        assert_eq!(q((1, 1), (-1, 1), 5).sign_of(), -1);
        assert_eq!(q((-3, 1), (2, 1), 2).sign_of(), -1);
    }

    #[test]
    fn integrality() {
        assert!(QuadExt::from_frac(4, 2).is_integer());
        assert!(!q((1, 2), (1, 2), 5).is_integer());
        assert!(QuadExt::from_int(-3).is_integer());
        assert!(!QuadExt::from_frac(1, 2).is_integer());
    }

    #[test]
    fn radicand_normalization() {
        // √12 = 2√3, √9 = 3
        assert_eq!(QuadExt::sqrt_of(12), q((0, 1), (2, 1), 3));
        assert_eq!(QuadExt::sqrt_of(9), QuadExt::from_int(3));
        assert_eq!(QuadExt::sqrt_of(1), QuadExt::one());
        assert_eq!(square_free_part(72), (6, 2));
        assert_eq!(square_free_part(29), (1, 29));
    }

    #[test]
    fn text_round_trip() {
        for x in [q((1, 2), (-3, 7), 5), QuadExt::from_frac(-7, 3), QuadExt::zero()] {
            let s = serde_json::to_string(&x).unwrap();
            let y: QuadExt = serde_json::from_str(&s).unwrap();
            assert_eq!(x, y);
        }
        assert_eq!(serde_json::to_string(&QuadExt::from_frac(2, 4)).unwrap(), "\"1/2\"");
        assert_eq!(
            serde_json::to_string(&q((5, 2), (1, 2), 5)).unwrap(),
            r#"{"a":"5/2","b":"1/2","m":5}"#
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(q((1, 2), (1, 2), 5).to_decimal(), "1.61803398875");
        assert_eq!(format_sig(-2.0, 12), "-2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(20, 10), 184756);
    }
}
