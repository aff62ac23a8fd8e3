//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! Prime-field elements carry their modulus, so the modulus can come from
//! input data at runtime. Constructors that have no element to copy the
//! modulus from take an explicit context instead of relying on
//! `num_traits::Zero`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which exact field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

/// Largest supported prime; keeps products of two residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        let spec = FieldSpec::Prime { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime { p } => {
                if p > MAX_PRIME {
                    return Err(Error::InvalidField(format!(
                        "modulus {p} exceeds the supported maximum {MAX_PRIME}"
                    )));
                }
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("modulus {p} is not prime")));
                }
                Ok(())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } => p,
        }
    }

    /// Parses `q`, `Q`, `fp:P` or `Fp:P`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {t:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidField(format!(
            "expected q or fp:P, got {t:?}"
        )))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// An exact computable field element.
///
/// `Ctx` is whatever a value needs besides its own bits to be constructed
/// (nothing for rationals, the modulus for prime fields).
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn context(&self) -> Self::Ctx;
    fn ctx_from_spec(spec: &FieldSpec) -> Result<Self::Ctx>;
    fn spec_of(ctx: &Self::Ctx) -> FieldSpec;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// `num/den` mapped into the field; fails when `den` vanishes there.
    fn from_ratio(ctx: &Self::Ctx, num: &BigInt, den: &BigInt) -> Result<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }

    /// `self += a * b`, the inner loop of every contraction.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = Field::mul(a, b);
        self.add_assign(&prod);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Parses `"num"` or `"num/den"` (optional sign, surrounding whitespace).
    fn parse(ctx: &Self::Ctx, text: &str) -> Result<Self> {
        let (num, den) = parse_ratio(text)?;
        Self::from_ratio(ctx, &num, &den)
    }
}

fn parse_ratio(text: &str) -> Result<(BigInt, BigInt)> {
    let bad = |reason: &str| Error::ScalarParse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad("numerator is not an integer"))?;
    let den: BigInt = d.parse().map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok((num, den))
}

/// Rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    type Ctx = ();

    fn context(&self) {}

    fn ctx_from_spec(spec: &FieldSpec) -> Result<()> {
        match spec {
            FieldSpec::Rationals => Ok(()),
            other => Err(Error::InvalidField(format!(
                "rational scalars requested for field {other}"
            ))),
        }
    }

    fn spec_of(_: &()) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: &(), v: i64) -> Self {
        Rational::integer(v)
    }

    fn from_ratio(_: &(), num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ScalarParse {
                text: format!("{num}/{den}"),
                reason: "zero denominator".into(),
            });
        }
        Ok(Rational(BigRational::new(num.clone(), den.clone())))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn add_assign(&mut self, other: &Self) {
        if !other.0.is_zero() {
            self.0 += &other.0;
        }
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        // Integer fast path: almost every structure constant is an integer.
        if a.0.is_integer() && b.0.is_integer() && self.0.is_integer() {
            let v = self.0.numer() + a.0.numer() * b.0.numer();
            self.0 = BigRational::from_integer(v);
            return;
        }
        self.0 += &a.0 * &b.0;
    }
}

/// Residue modulo a prime `modulus`, stored in `[0, modulus)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = i64::from(modulus);
        Fp {
            value: value.rem_euclid(m) as u32,
            modulus,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    fn check(&self, other: &Self) {
        debug_assert_eq!(self.modulus, other.modulus, "mixed prime-field moduli");
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    type Ctx = u32;

    fn context(&self) -> u32 {
        self.modulus
    }

    fn ctx_from_spec(spec: &FieldSpec) -> Result<u32> {
        spec.validate()?;
        match *spec {
            FieldSpec::Prime { p } => Ok(p as u32),
            FieldSpec::Rationals => Err(Error::InvalidField(
                "prime-field scalars requested for Q".into(),
            )),
        }
    }

    fn spec_of(ctx: &u32) -> FieldSpec {
        FieldSpec::Prime { p: u64::from(*ctx) }
    }

    fn zero(ctx: &u32) -> Self {
        Fp {
            value: 0,
            modulus: *ctx,
        }
    }

    fn one(ctx: &u32) -> Self {
        Fp {
            value: 1 % *ctx,
            modulus: *ctx,
        }
    }

    fn from_i64(ctx: &u32, v: i64) -> Self {
        Fp::new(v, *ctx)
    }

    fn from_ratio(ctx: &u32, num: &BigInt, den: &BigInt) -> Result<Self> {
        let m = BigInt::from(*ctx);
        let reduce = |x: &BigInt| -> u32 { x.mod_floor(&m).to_u32().expect("residue fits") };
        let n = Fp {
            value: reduce(num),
            modulus: *ctx,
        };
        let d = Fp {
            value: reduce(den),
            modulus: *ctx,
        };
        let dinv = d.inv().ok_or_else(|| Error::ScalarParse {
            text: format!("{num}/{den}"),
            reason: format!("denominator vanishes modulo {ctx}"),
        })?;
        Ok(Field::mul(&n, &dinv))
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn is_one(&self) -> bool {
        self.value == 1
    }

    #[inline]
    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let s = u64::from(self.value) + u64::from(other.value);
        let m = u64::from(self.modulus);
        Fp {
            value: (if s >= m { s - m } else { s }) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let m = u64::from(self.modulus);
        let s = u64::from(self.value) + m - u64::from(other.value);
        Fp {
            value: (if s >= m { s - m } else { s }) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = u64::from(self.value) * u64::from(other.value);
        Fp {
            value: (p % u64::from(self.modulus)) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Extended Euclid on signed 64-bit values.
        let (mut a, mut b) = (i64::from(self.value), i64::from(self.modulus));
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        debug_assert_eq!(a, 1);
        Some(Fp::new(x0, self.modulus))
    }

    #[inline]
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let m = u64::from(self.modulus);
        let v = u64::from(self.value) + u64::from(a.value) * u64::from(b.value);
        self.value = (v % m) as u32;
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                Field::add(&self, &rhs)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                Field::sub(&self, &rhs)
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                Field::mul(&self, &rhs)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                Field::neg(&self)
            }
        }
    };
}

forward_ops!(Rational);
forward_ops!(Fp);

impl Signed for Rational {
    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
    fn abs_sub(&self, other: &Self) -> Self {
        Rational(self.0.abs_sub(&other.0))
    }
    fn signum(&self) -> Self {
        Rational(self.0.signum())
    }
    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl num_traits::Num for Rational {
    type FromStrRadixErr = num_rational::ParseRatioError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational)
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl std::ops::Rem for Rational {
    type Output = Rational;
    fn rem(self, rhs: Rational) -> Rational {
        Rational(self.0 % rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let a = Rational::new(2, -4);
        assert_eq!(a.numer(), &BigInt::from(-1));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(Rational::parse(&(), " 6/3 ").unwrap().to_string(), "2");
    }

    #[test]
    fn prime_field_inverse_and_parse() {
        for v in 1..101 {
            let x = Fp::new(v, 101);
            assert!(Field::mul(&x, &x.inv().unwrap()).is_one());
        }
        let half = Fp::parse(&7, "1/2").unwrap();
        assert_eq!(half.value(), 4);
        assert!(Fp::parse(&7, "1/7").is_err());
        assert_eq!(Fp::parse(&7, "-1").unwrap().value(), 6);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("fp:101").unwrap(), FieldSpec::Prime { p: 101 });
        assert!(FieldSpec::parse("fp:100").is_err());
        assert!(FieldSpec::parse("fp:1").is_err());
        let json = serde_json::to_string(&FieldSpec::Prime { p: 101 }).unwrap();
        assert_eq!(json, r#"{"kind":"Fp","p":101}"#);
        let back: FieldSpec = serde_json::from_str(r#"{"kind":"Q"}"#).unwrap();
        assert_eq!(back, FieldSpec::Rationals);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = Rational::new(3, 2);
        assert_eq!(x.pow(3), Rational::new(27, 8));
        assert!(Fp::new(5, 7).pow(6).is_one());
    }
}
