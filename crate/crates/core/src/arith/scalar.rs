use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Representation tier of the integer arithmetic used by a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    MachineWord,
    Arbitrary,
}

impl Display for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tier::MachineWord => "machine-word",
            Tier::Arbitrary => "arbitrary-precision",
        })
    }
}

/// Exact integer arithmetic that never wraps.
///
/// The machine-word implementation (`i64`) reports [`Error::Overflow`] as soon
/// as a result leaves its range; the arbitrary precision implementation
/// (`BigInt`) never fails. Algorithms are written once against this trait and
/// instantiated for both tiers.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Eq + PartialOrd + Ord + Hash + Send + Sync + 'static
{
    const TIER: Tier;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Result<Self>;
    fn to_bigint(&self) -> BigInt;

    fn add(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Result<Self>;
    /// Exact division; the caller guarantees `other` divides `self`.
    fn div_exact(&self, other: &Self) -> Result<Self>;
    /// Division rounding toward negative infinity.
    fn div_floor(&self, other: &Self) -> Result<Self>;
    /// Returns `(g, s, t)` with `g = s*self + t*other`, `g >= 0`.
    fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)>;

    fn is_zero(&self) -> bool;
    fn sign(&self) -> Ordering;

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn abs(&self) -> Result<Self> {
        if self.is_negative() {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }

    fn gcd(&self, other: &Self) -> Result<Self> {
        Ok(self.extended_gcd(other)?.0)
    }

    /// `a*b - c*d`
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.mul(b)?.sub(&c.mul(d)?)
    }

    /// `(a*b - c*d) / e`, exact. One fraction-free elimination step.
    fn mul_sub_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Result<Self> {
        Self::mul_sub(a, b, c, d)?.div_exact(e)
    }

    fn dot(a: &[Self], b: &[Self]) -> Result<Self> {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = Self::zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc = acc.add(&x.mul(y)?)?;
            }
        }
        Ok(acc)
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

impl Scalar for i64 {
    const TIER: Tier = Tier::MachineWord;

    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_bigint(v: &BigInt) -> Result<Self> {
        v.to_i64().ok_or(Error::Overflow)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(*other).ok_or(Error::Overflow)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(*other).ok_or(Error::Overflow)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(*other).ok_or(Error::Overflow)
    }
    fn neg(&self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        debug_assert!(*other != 0 && self % other == 0, "{self} / {other} not exact");
        self.checked_div(*other).ok_or(Error::Overflow)
    }
    fn div_floor(&self, other: &Self) -> Result<Self> {
        if *self == i64::MIN && *other == -1 {
            return Err(Error::Overflow);
        }
        Ok(Integer::div_floor(self, other))
    }
    fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        // i128 keeps |i64::MIN| representable during the iteration
        let (mut old_r, mut r) = (*self as i128, *other as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        let (mut old_t, mut t) = (0i128, 1i128);
        while r != 0 {
            let q = old_r.div_euclid(r);
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
            (old_t, t) = (t, old_t - q * t);
        }
        if old_r < 0 {
            old_r = -old_r;
            old_s = -old_s;
            old_t = -old_t;
        }
        Ok((narrow(old_r)?, narrow(old_s)?, narrow(old_t)?))
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }

    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        (*a as i128 * *b as i128)
            .checked_sub(*c as i128 * *d as i128)
            .ok_or(Error::Overflow)
            .and_then(narrow)
    }

    fn mul_sub_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Result<Self> {
        let num = (*a as i128 * *b as i128)
            .checked_sub(*c as i128 * *d as i128)
            .ok_or(Error::Overflow)?;
        debug_assert!(num % (*e as i128) == 0);
        narrow(num / *e as i128)
    }

    fn dot(a: &[Self], b: &[Self]) -> Result<Self> {
        let mut acc: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            acc = acc
                .checked_add(*x as i128 * *y as i128)
                .ok_or(Error::Overflow)?;
        }
        narrow(acc)
    }
}

impl Scalar for BigInt {
    const TIER: Tier = Tier::Arbitrary;

    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Result<Self> {
        Ok(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        Ok(self - other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn neg(&self) -> Result<Self> {
        Ok(-self)
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        debug_assert!(Zero::is_zero(&(self % other)));
        Ok(self / other)
    }
    fn div_floor(&self, other: &Self) -> Result<Self> {
        Ok(Integer::div_floor(self, other))
    }
    fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let e = Integer::extended_gcd(self, other);
        if Signed::is_negative(&e.gcd) {
            Ok((-e.gcd, -e.x, -e.y))
        } else {
            Ok((e.gcd, e.x, e.y))
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> Ordering {
        match Signed::signum(self).to_i8() {
            Some(1) => Ordering::Greater,
            Some(-1) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

/// Converts a slice of big integers into the requested tier.
pub fn convert_vec<N: Scalar>(v: &[BigInt]) -> Result<Vec<N>> {
    v.iter().map(N::from_bigint).collect()
}

pub fn to_big_vec<N: Scalar>(v: &[N]) -> Vec<BigInt> {
    v.iter().map(Scalar::to_bigint).collect()
}
