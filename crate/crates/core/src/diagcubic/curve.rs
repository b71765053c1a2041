use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::localfields::PadicNumber;

/// Ring operations needed to evaluate the cubic and covering forms, shared by
/// exact integers and p-adic approximations.
pub trait CoordRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, n: &BigInt) -> Self;

    fn cube(&self) -> Self {
        self.mul(self).mul(self)
    }
}

impl CoordRing for BigInt {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, n: &BigInt) -> Self {
        self * n
    }
}

impl CoordRing for PadicNumber {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, n: &BigInt) -> Self {
        PadicNumber::scale(self, n)
    }
}

/// A primitive integer point `(X:Y:Z)` of the projective plane.
///
/// Stored canonically: `gcd(X,Y,Z) = 1` and the first nonzero coordinate is
/// positive, so equality of projective points is equality of values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: [BigInt; 3],
}

impl ProjPoint {
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let g = x.gcd(&y).gcd(&z);
        if g.is_zero() {
            return Err(Error::invalid("(0:0:0) is not a projective point"));
        }
        let mut coords = [x / &g, y / &g, z / &g];
        if coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            coords = coords.map(|c| -c);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }

    /// max(|X|, |Y|, |Z|).
    pub fn height(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().expect("three coordinates")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x} : {y} : {z})")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The plane cubic `aX³ + bY³ + cZ³ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalCubic {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl DiagonalCubic {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::invalid("diagonal cubic coefficients must be nonzero"));
        }
        Ok(DiagonalCubic { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    /// The curve `x³ + y³ + d·z³ = 0`.
    pub fn elliptic(d: BigInt) -> Result<Self> {
        Self::new(BigInt::from(1), BigInt::from(1), d)
    }

    pub fn coefficients(&self) -> [&BigInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn eval<R: CoordRing>(&self, pt: &[R; 3]) -> R {
        let [x, y, z] = pt;
        x.cube().scale(&self.a).add(&y.cube().scale(&self.b)).add(&z.cube().scale(&self.c))
    }

    pub fn contains(&self, pt: &ProjPoint) -> bool {
        self.eval(pt.coords()).is_zero()
    }

    /// Whether a p-adic point satisfies the equation to relative precision `k`:
    /// the form value has valuation at least `k + 3·min v(coordinate)`.
    pub fn contains_padic(&self, pt: &[PadicNumber; 3], k: u32) -> Result<bool> {
        let m = pt
            .iter()
            .filter_map(|c| c.valuation())
            .min()
            .ok_or_else(|| Error::Inconclusive("all coordinates vanish to working precision".into()))?;
        let need = k as i64 + 3 * m;
        let value = self.eval(pt);
        match value.valuation() {
            Some(v) => Ok(v >= need),
            None if value.absolute_precision() >= need => Ok(true),
            None => Err(Error::Inconclusive(format!(
                "curve equation known only to O(p^{}), need {need}",
                value.absolute_precision()
            ))),
        }
    }
}

impl fmt::Display for DiagonalCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, var)) in [(&self.a, 'X'), (&self.b, 'Y'), (&self.c, 'Z')].into_iter().enumerate() {
            let mag = c.abs();
            let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{coeff}{var}^3")?,
                (0, true) => write!(f, "-{coeff}{var}^3")?,
                (_, false) => write!(f, " + {coeff}{var}^3")?,
                (_, true) => write!(f, " - {coeff}{var}^3")?,
            }
        }
        f.write_str(" = 0")
    }
}
