//! Exact rational probabilities with decimal rendering.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// An exact, reduced rational value.
///
/// Used for every probability, density and bound in the crate. Decimal
/// output is produced only on request, rounded half-to-even.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn zero() -> Self {
        ExactProb(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactProb(BigRational::one())
    }

    /// `numer / denom`; panics if `denom` is zero.
    pub fn from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactProb(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactProb(r)
    }

    /// `1 - 2^-i`
    pub fn one_minus_pow2_inv(i: u32) -> Self {
        let den = BigInt::one() << i;
        ExactProb(BigRational::new(&den - 1u32, den))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn complement(&self) -> Self {
        ExactProb(BigRational::one() - &self.0)
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactProb(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether the reduced denominator divides `2^bits`.
    pub fn denom_divides_pow2(&self, bits: u32) -> bool {
        let d = self.0.denom().magnitude();
        let pow = BigUint::one() << bits;
        (pow % d).is_zero()
    }

    /// "p/q" in lowest terms ("0/1" for zero).
    pub fn rational_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Parses "p/q" or a plain integer.
    pub fn parse_rational(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                if q.is_zero() {
                    None
                } else {
                    Some(ExactProb::from_ratio(p, q))
                }
            }
            None => s
                .parse::<BigInt>()
                .ok()
                .map(|p| ExactProb::from_ratio(p, 1)),
        }
    }

    /// Parses a plain decimal such as "0.4921875" exactly.
    pub fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let numer = if negative { -digits } else { digits };
        Some(ExactProb::from_ratio(numer, scale))
    }

    /// Decimal rendering with `digits` fractional digits, rounded toward zero.
    pub fn to_decimal_truncated(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let quot = (self.0.numer() * &scale) / self.0.denom();
        let rounded = ExactProb::from_ratio(quot, scale);
        rounded.to_decimal(digits)
    }

    /// Decimal rendering with `digits` fractional digits, rounded half to even.
    pub fn to_decimal(&self, digits: usize) -> String {
        let numer = self.0.numer();
        let denom = self.0.denom();
        let negative = numer.is_negative();
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let scaled = numer.abs() * scale;
        let (mut quot, rem) = scaled.div_rem(denom);
        let twice = rem * 2u32;
        if twice > *denom || (twice == *denom && quot.is_odd()) {
            quot += 1u32;
        }
        let mut s = quot.to_string();
        if digits > 0 {
            if s.len() <= digits {
                s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
            }
            s.insert(s.len() - digits, '.');
        }
        if negative && quot_is_nonzero(&s) {
            s.insert(0, '-');
        }
        s
    }
}

fn quot_is_nonzero(s: &str) -> bool {
    s.bytes().any(|b| b.is_ascii_digit() && b != b'0')
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational_string())
    }
}

impl Serialize for ExactProb {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.rational_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactProb {
            type Output = ExactProb;
            fn $method(self, rhs: ExactProb) -> ExactProb {
                ExactProb(self.0.$method(rhs.0))
            }
        }

        impl<'a> $tr<&'a ExactProb> for &'a ExactProb {
            type Output = ExactProb;
            fn $method(self, rhs: &'a ExactProb) -> ExactProb {
                ExactProb((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::iter::Product for ExactProb {
    fn product<I: Iterator<Item = ExactProb>>(iter: I) -> Self {
        iter.fold(ExactProb::one(), |acc, x| acc * x)
    }
}
