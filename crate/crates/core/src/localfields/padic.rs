//! Fixed-precision elements of ℚ_p.
//!
//! A nonzero [`PadicNumber`] is `p^valuation · unit` with the unit known
//! modulo `p^precision`, so the value is known modulo
//! `p^(valuation + precision)` (its *absolute precision*). A value that is
//! zero to the available precision is stored with `unit = 0`,
//! `precision = 0` and `valuation` equal to its absolute precision, i.e. it
//! stands for `O(p^valuation)`.
//!
//! Precision rules:
//! * sums and differences keep the smaller absolute precision of the inputs;
//! * products keep the smaller relative precision of the inputs (and for an
//!   `O(p^n)` factor, the absolute precision `n + v(other)`);
//! * negation keeps precision unchanged.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::residue::{mod_inverse, rational_valuation, valuation};
use super::RationalNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    valuation: i64,
    unit: BigInt,
    precision: u32,
}

/// Absolute precision used to stand in for an exactly known zero.
pub const EXACT: i64 = i64::MAX / 4;

pub(crate) fn pow_p(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

impl PadicNumber {
    /// `O(p^absolute)`.
    pub fn zero(prime: u64, absolute: i64) -> Self {
        PadicNumber { prime, valuation: absolute, unit: BigInt::zero(), precision: 0 }
    }

    /// The integer `n` known modulo `p^absolute`.
    pub fn from_integer(n: &BigInt, prime: u64, absolute: i64) -> Self {
        Self::from_scaled(n.clone(), 0, prime, absolute)
    }

    /// The rational `q` known modulo `p^absolute`.
    pub fn from_rational(q: &RationalNumber, prime: u64, absolute: i64) -> Self {
        if q.numer().is_zero() {
            return Self::zero(prime, absolute);
        }
        let (v, num, den) = rational_valuation(q, prime);
        if v >= absolute {
            return Self::zero(prime, absolute);
        }
        let rel = (absolute - v) as u32;
        let modulus = pow_p(prime, rel);
        let inv = mod_inverse(&den, &modulus).expect("denominator prime to p");
        PadicNumber { prime, valuation: v, unit: (num * inv).mod_floor(&modulus), precision: rel }
    }

    /// `p^shift · n` known modulo `p^absolute`; normalizes the valuation.
    fn from_scaled(n: BigInt, shift: i64, prime: u64, absolute: i64) -> Self {
        if n.is_zero() {
            return Self::zero(prime, absolute);
        }
        let (v, unit) = valuation(&n, prime);
        let v = v as i64 + shift;
        if v >= absolute {
            return Self::zero(prime, absolute);
        }
        let rel = (absolute - v).min(u32::MAX as i64) as u32;
        // skip the reduction when |unit| < p^rel already
        let fits = unit.sign() != num_bigint::Sign::Minus && (unit.bits() as f64) < rel as f64 * (prime as f64).log2();
        let unit = if fits { unit } else { unit.mod_floor(&pow_p(prime, rel)) };
        PadicNumber { prime, valuation: v, unit, precision: rel }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Valuation, or `None` when the value is zero to the available precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Relative precision (digits of the unit that are known).
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The value is known modulo `p^absolute_precision()`.
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Integer representative in `[0, p^absolute)`; requires a non-negative
    /// valuation.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.valuation < 0 {
            return None;
        }
        Some(&self.unit * pow_p(self.prime, self.valuation as u32))
    }

    /// Reduces the absolute precision to at most `absolute`.
    pub fn truncate(&self, absolute: i64) -> Self {
        if absolute >= self.absolute_precision() {
            return self.clone();
        }
        if self.is_zero() || absolute <= self.valuation {
            return Self::zero(self.prime, absolute.min(self.absolute_precision()));
        }
        let rel = (absolute - self.valuation) as u32;
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation,
            unit: self.unit.mod_floor(&pow_p(self.prime, rel)),
            precision: rel,
        }
    }

    /// `self^e`; `e = 0` gives one at the relative precision of `self`.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let rel = self.precision.max(1);
            return PadicNumber { prime: self.prime, valuation: 0, unit: BigInt::one(), precision: rel };
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self · n` for an exact integer `n`. Exact zero is returned as
    /// `O(p^EXACT)`.
    pub fn scale(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(self.prime, EXACT);
        }
        let (v, m) = valuation(n, self.prime);
        if self.is_zero() {
            return Self::zero(self.prime, self.valuation + v as i64);
        }
        let modulus = pow_p(self.prime, self.precision);
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation + v as i64,
            unit: (&self.unit * m).mod_floor(&modulus),
            precision: self.precision,
        }
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.prime, other.prime, "p-adic numbers over different primes");
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.prime, self.valuation)
        } else {
            write!(
                f,
                "{}^{}·{} + O({}^{})",
                self.prime,
                self.valuation,
                self.unit,
                self.prime,
                self.absolute_precision()
            )
        }
    }
}

impl Add for &PadicNumber {
    type Output = PadicNumber;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, other: &PadicNumber) -> PadicNumber {
        self.check_prime(other);
        let absolute = self.absolute_precision().min(other.absolute_precision());
        if self.is_zero() {
            return other.truncate(absolute);
        }
        if other.is_zero() {
            return self.truncate(absolute);
        }
        let m = self.valuation.min(other.valuation);
        let lift = |x: &PadicNumber| &x.unit * pow_p(x.prime, (x.valuation - m) as u32);
        let sum = lift(self) + lift(other);
        PadicNumber::from_scaled(sum, m, self.prime, absolute)
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = pow_p(self.prime, self.precision);
        PadicNumber { unit: (-&self.unit).mod_floor(&modulus), ..self.clone() }
    }
}

impl Sub for &PadicNumber {
    type Output = PadicNumber;

    fn sub(self, other: &PadicNumber) -> PadicNumber {
        self + &(-other)
    }
}

impl Mul for &PadicNumber {
    type Output = PadicNumber;

    fn mul(self, other: &PadicNumber) -> PadicNumber {
        self.check_prime(other);
        match (self.is_zero(), other.is_zero()) {
            (true, _) | (_, true) => PadicNumber::zero(self.prime, self.valuation.saturating_add(other.valuation)),
            (false, false) => {
                let rel = self.precision.min(other.precision);
                let modulus = pow_p(self.prime, rel);
                PadicNumber {
                    prime: self.prime,
                    valuation: self.valuation + other.valuation,
                    unit: (&self.unit * &other.unit).mod_floor(&modulus),
                    precision: rel,
                }
            }
        }
    }
}

impl Pow<u32> for &PadicNumber {
    type Output = PadicNumber;

    fn pow(self, e: u32) -> PadicNumber {
        PadicNumber::pow(self, e)
    }
}

impl PadicNumber {
    /// `p^s · self`.
    pub fn shift(&self, s: i64) -> Self {
        PadicNumber { valuation: self.valuation + s, ..self.clone() }
    }
}
