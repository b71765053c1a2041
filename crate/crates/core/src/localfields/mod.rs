//! Arithmetic over ℚ and its completions ℚ_v.

mod hensel;
mod padic;
pub mod primes;
mod residue;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use hensel::{hensel_lift_root, hensel_lift_root_with_gap, IntPoly};
pub(crate) use padic::pow_p;
pub use padic::{PadicNumber, EXACT};
pub use primes::{is_prime, primes_up_to};
pub(crate) use residue::is_cubic_residue;
pub use residue::{
    exact_root, is_rational_cube, is_rational_square, legendre_symbol, mod_inverse, mod_u64, rational_valuation,
    squarefree_part, squarefree_part_supported, squarefree_product, valuation,
};

use crate::error::{Error, Result};

/// Elements of ℚ, always stored in lowest terms with a positive denominator.
pub type RationalNumber = BigRational;

/// Default working precision (p-adic digits) for local computations.
pub const DEFAULT_PRECISION: u32 = 12;
/// Upper bound for automatic precision doubling.
pub const MAX_PRECISION: u32 = 96;

pub fn rational(n: i64) -> RationalNumber {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<RationalNumber> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::invalid(format!("not an integer: {t:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

/// A prime number, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::invalid(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// A place of ℚ: the real place or a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p.get()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("real"),
            Place::Finite(p) => write!(f, "{}", p.get()),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("real") || s.eq_ignore_ascii_case("inf") {
            return Ok(Place::Real);
        }
        let p: u64 = s.parse().map_err(|_| Error::invalid(format!("not a place: {s:?}")))?;
        Place::finite(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn nonzero(a: &RationalNumber) -> Result<()> {
    if a.is_zero() {
        Err(Error::invalid("zero has no square or cube class"))
    } else {
        Ok(())
    }
}

/// Whether `a` is a square in ℚ_v.
pub fn is_square_local(a: &RationalNumber, v: &Place) -> Result<bool> {
    nonzero(a)?;
    let p = match v {
        Place::Real => return Ok(a.is_positive()),
        Place::Finite(p) => p.get(),
    };
    let (val, num, den) = rational_valuation(a, p);
    if val % 2 != 0 {
        return Ok(false);
    }
    // num/den and num·den differ by the square den²
    let unit = num * den;
    if p == 2 {
        Ok(mod_u64(&unit, 8) == 1)
    } else {
        Ok(legendre_symbol(&unit, p)? == 1)
    }
}

/// Whether `a` is a cube in ℚ_v.
pub fn is_cube_local(a: &RationalNumber, v: &Place) -> Result<bool> {
    nonzero(a)?;
    let p = match v {
        Place::Real => return Ok(true),
        Place::Finite(p) => p.get(),
    };
    let (val, num, den) = rational_valuation(a, p);
    if val.rem_euclid(3) != 0 {
        return Ok(false);
    }
    // num/den and num·den² differ by the cube den³
    let unit = num * &den * &den;
    Ok(unit_is_cube(&unit, p))
}

fn unit_is_cube(unit: &BigInt, p: u64) -> bool {
    match p {
        3 => matches!(mod_u64(unit, 9), 1 | 8),
        _ => is_cubic_residue(mod_u64(unit, p), p),
    }
}

/// Whether a p-adic number is a cube, judged from its known digits.
pub fn is_cube_padic(x: &PadicNumber) -> Result<bool> {
    let val = x.valuation().ok_or_else(|| Error::Inconclusive(format!("{x} is zero to working precision")))?;
    if val.rem_euclid(3) != 0 {
        return Ok(false);
    }
    let needed = if x.prime() == 3 { 2 } else { 1 };
    if x.precision() < needed {
        return Err(Error::Inconclusive(format!("{x} has too few digits")));
    }
    Ok(unit_is_cube(x.unit(), x.prime()))
}

/// Order of ℚ_v^× / (ℚ_v^×)³.
pub fn local_cube_class_order(v: &Place) -> u64 {
    match v.prime() {
        None => 1,
        Some(3) => 9,
        Some(p) if p % 3 == 1 => 9,
        Some(_) => 3,
    }
}

pub(crate) fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&n| legendre_symbol(&BigInt::from(n), p) == Ok(-1)).expect("odd prime has a non-residue")
}

/// Canonical squarefree representative of the class of `a` in ℚ_v^×/(ℚ_v^×)².
///
/// Real: ±1. Odd p: one of 1, n, p, n·p with n the least non-residue.
/// p = 2: one of ±1, ±5, ±2, ±10.
pub fn local_square_class(a: &RationalNumber, v: &Place) -> Result<BigInt> {
    nonzero(a)?;
    let p = match v {
        Place::Real => return Ok(BigInt::from(if a.is_positive() { 1 } else { -1 })),
        Place::Finite(p) => p.get(),
    };
    let (val, num, den) = rational_valuation(a, p);
    let unit = num * den;
    let odd_part = if val.rem_euclid(2) == 1 { p } else { 1 };
    let unit_rep: i64 = if p == 2 {
        match mod_u64(&unit, 8) {
            1 => 1,
            3 => -5,
            5 => 5,
            _ => -1,
        }
    } else if legendre_symbol(&unit, p)? == 1 {
        1
    } else {
        least_nonresidue(p) as i64
    };
    Ok(BigInt::from(unit_rep) * BigInt::from(odd_part))
}

/// A root of `xⁿ = a` in ℚ_p known to relative precision `k`, if one exists.
pub fn nth_root_local(a: &RationalNumber, n: u32, v: &Place, k: u32) -> Result<Option<PadicNumber>> {
    nonzero(a)?;
    if n == 0 {
        return Err(Error::invalid("root of order zero"));
    }
    let p = match v {
        Place::Real => return Err(Error::Unsupported("roots at the real place; use the sign".into())),
        Place::Finite(p) => p.get(),
    };
    if k == 0 {
        return Err(Error::invalid("precision must be positive"));
    }
    let (val, num, den) = rational_valuation(a, p);
    if val.rem_euclid(n as i64) != 0 {
        return Ok(None);
    }
    let t = valuation(&BigInt::from(n), p).0;
    let m = 2 * t + 1;
    let work = k + 2 * t + 1;
    let modulus = pow_p(p, work);
    let unit = (num * mod_inverse(&den, &modulus).expect("unit denominator")).mod_floor(&modulus);
    let f = IntPoly::binomial(n as usize, &unit);

    if t == 0 {
        let g = (p - 1).gcd(&(n as u64));
        let r = mod_u64(&unit, p);
        if primes::mod_pow(r, (p - 1) / g, p) != 1 {
            return Ok(None);
        }
    }
    let small = pow_p(p, m);
    let small_u = num_traits::ToPrimitive::to_u64(&small).unwrap_or(u64::MAX);
    let start = (1..small_u).filter(|r| r % p != 0).map(BigInt::from).find(|r| f.eval(r).mod_floor(&small).is_zero());
    let Some(r0) = start else {
        return Ok(None);
    };
    let root = hensel_lift_root_with_gap(&f, p, &r0, work)?.truncate(k as i64);
    Ok(Some(root.shift(val / n as i64)))
}
