//! Exact scalars over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = u32::MAX as u64;

/// A prime modulus, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(Prime),
}

impl FieldSpec {
    /// GF(p); fails when `p` is composite.
    pub fn prime(p: u64) -> Result<Self> {
        Ok(FieldSpec::Prime(Prime::new(p)?))
    }

    /// Shorthand for tests and fixtures where `p` is known to be prime.
    pub fn gf(p: u64) -> Self {
        Self::prime(p).expect("modulus must be prime")
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p.get(),
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p.get()),
        }
    }

    pub fn is_prime_field(self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let p = p.get() as i128;
                Scalar::Residue {
                    value: (n as i128).rem_euclid(p) as u64,
                    modulus: p as u64,
                }
            }
        }
    }

    /// The fraction `num/den` as a field element.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den).inv().ok_or(Error::DivisionByZero)?;
        Ok(&n * &d)
    }

    /// Parses a scalar written in this field's syntax: `"a"` or `"a/b"` over
    /// Q, a plain (possibly negative) integer over GF(p).
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::InvalidParameters(format!("malformed scalar `{text}` for field {self}"));
        match self {
            FieldSpec::Rationals => {
                let r = match t.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
                };
                Ok(Scalar::Rational(r))
            }
            FieldSpec::Prime(p) => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                let p = BigInt::from(p.get());
                let r = ((n % &p) + &p) % &p;
                Ok(self.residue(r.try_into().expect("reduced below p")))
            }
        }
    }

    /// Residue class `r mod p`; only meaningful for prime fields.
    pub fn residue(self, r: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(r))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: r % p.get(),
                modulus: p.get(),
            },
        }
    }

    /// All field elements in residue order, or `None` over Q.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        self.modulus()
            .map(|p| (0..p).map(|r| self.residue(r)).collect())
    }

    pub fn zero_vector(self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    pub fn unit_vector(self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector(n);
        v[i] = self.one();
        v
    }

    pub fn vector_from_i64(self, entries: &[i64]) -> Vec<Scalar> {
        entries.iter().map(|&e| self.from_i64(e)).collect()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({})", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `q`, `GF(p)`, `gf(p)`, `GFp` or a bare `p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let lower = t.to_ascii_lowercase();
        let digits = lower
            .strip_prefix("gf")
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .unwrap_or(&lower);
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameters(format!("unknown field `{s}`")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator; residues are
/// always reduced modulo their prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(Prime(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero. Residues use extended Euclid.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn residue_value(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Square test within the field.
    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Rational(r) => {
                !r.is_negative() && is_perfect_square(r.numer()) && is_perfect_square(r.denom())
            }
            Scalar::Residue { value, modulus } => {
                let p = *modulus;
                *value == 0 || (0..p).any(|x| (x * x) % p == *value)
            }
        }
    }

    fn check_same(&self, other: &Scalar) {
        if let (Scalar::Residue { modulus: a, .. }, Scalar::Residue { modulus: b, .. }) =
            (self, other)
        {
            assert_eq!(a, b, "mixed scalars from GF({a}) and GF({b})");
        } else {
            assert_eq!(
                std::mem::discriminant(self),
                std::mem::discriminant(other),
                "mixed rational and residue scalars"
            );
        }
    }
}

pub(crate) fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `Σ a_i b_i`.
pub fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// `u += c * v` in place.
pub fn axpy(u: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in u.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}
