//! Coefficient fields: F2, prime fields Fp with a runtime modulus, and Q.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraError;

/// A coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    /// The prime field of order `p` (p = 2 is F2).
    Fp(u32),
    /// The rationals.
    Q,
}

impl Field {
    pub const F2: Field = Field::Fp(2);

    /// Characteristic (0 for Q).
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Fp(p) => p,
            Field::Q => 0,
        }
    }

    pub fn is_f2(self) -> bool {
        self == Field::F2
    }

    /// Builds `Fp`, rejecting composite moduli.
    pub fn prime(p: u32) -> Result<Field, AlgebraError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Fp(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F{p}"),
            Field::Q => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Q);
        }
        let digits =
            t.strip_prefix('F').or_else(|| t.strip_prefix('f')).ok_or_else(|| AlgebraError::BadField(s.to_string()))?;
        let p: u32 = digits.parse().map_err(|_| AlgebraError::BadField(s.to_string()))?;
        Field::prime(p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Every value knows enough about its field to
/// combine with values of the same field.
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn from_i64(n: i64, field: Field) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// True when the value is ±1, a cheap pivot that keeps entries small.
    fn is_unit_sized(&self) -> bool;

    fn zero(field: Field) -> Self {
        Self::from_i64(0, field)
    }
    fn one(field: Field) -> Self {
        Self::from_i64(1, field)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// Residue modulo a prime, stored canonically in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modp {
    v: u32,
    p: u32,
}

impl Modp {
    pub fn new(n: i64, p: u32) -> Self {
        Modp { v: n.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(self) -> u32 {
        self.v
    }
}

impl Scalar for Modp {
    fn from_i64(n: i64, field: Field) -> Self {
        match field {
            Field::Fp(p) => Modp::new(n, p),
            Field::Q => panic!("Modp cannot represent rationals"),
        }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.v as u64 + o.v as u64;
        Modp { v: (s % self.p as u64) as u32, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Modp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }
    fn neg(&self) -> Self {
        Modp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (self.v as u64, self.p as u64 - 2, 1u64);
        let m = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Modp { v: acc as u32, p: self.p }
    }
    fn is_unit_sized(&self) -> bool {
        self.v == 1 || self.v + 1 == self.p
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64, field: Field) -> Self {
        debug_assert_eq!(field, Field::Q);
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn is_unit_sized(&self) -> bool {
        self.is_integer() && self.numer().abs().is_one()
    }
}
