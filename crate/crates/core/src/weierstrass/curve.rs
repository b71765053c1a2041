use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::localfields::primes::factor_u64;
use crate::localfields::RationalNumber;

/// The elliptic curve `y² = (x−e₁)(x−e₂)(x−e₃)` with distinct integer roots.
///
/// The root order matters: `P₁ = (e₁, 0)` and `P₂ = (e₂, 0)` form the basis of
/// `E[2]` used by [`delta2`](super::delta2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredCubicCurve {
    roots: [BigInt; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine { x: RationalNumber, y: RationalNumber },
}

impl ECPoint {
    pub fn new(x: RationalNumber, y: RationalNumber) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        ECPoint::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn x(&self) -> Option<&RationalNumber> {
        match self {
            ECPoint::Infinity => None,
            ECPoint::Affine { x, .. } => Some(x),
        }
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => f.write_str("O"),
            ECPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for ECPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FactoredCubicCurve {
    pub fn new(e1: BigInt, e2: BigInt, e3: BigInt) -> Result<Self> {
        if e1 == e2 || e1 == e3 || e2 == e3 {
            return Err(Error::invalid(format!("roots {e1}, {e2}, {e3} are not distinct")));
        }
        Ok(FactoredCubicCurve { roots: [e1, e2, e3] })
    }

    pub fn from_i64(e1: i64, e2: i64, e3: i64) -> Result<Self> {
        Self::new(e1.into(), e2.into(), e3.into())
    }

    pub fn roots(&self) -> &[BigInt; 3] {
        &self.roots
    }

    /// `16·∏(eᵢ−eⱼ)²`.
    pub fn discriminant(&self) -> BigInt {
        let [a, b, c] = &self.roots;
        let d = (a - b) * (a - c) * (b - c);
        BigInt::from(16) * &d * &d
    }

    /// Primes dividing `2Δ`; the square classes in the image of δ₂ are
    /// supported on these.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let [a, b, c] = &self.roots;
        let mut out = vec![2u64];
        for diff in [a - b, a - c, b - c] {
            let m = diff
                .abs()
                .to_u64()
                .ok_or_else(|| Error::Unsupported(format!("root difference {diff} too large to factor")))?;
            out.extend(factor_u64(m).into_iter().map(|(p, _)| p));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `(x−e₁)(x−e₂)(x−e₃)`.
    pub fn rhs(&self, x: &RationalNumber) -> RationalNumber {
        self.roots.iter().map(|e| x - BigRational::from_integer(e.clone())).fold(BigRational::one(), |acc, t| acc * t)
    }

    pub fn contains(&self, pt: &ECPoint) -> bool {
        match pt {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    fn check(&self, pt: &ECPoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{pt} is not on the curve")))
        }
    }

    /// The nontrivial 2-torsion points `[P₁, P₂, P₃]` in root order.
    pub fn two_torsion(&self) -> [ECPoint; 3] {
        self.roots.clone().map(|e| ECPoint::new(BigRational::from_integer(e), BigRational::zero()))
    }

    // y² = x³ + a₂x² + a₄x + a₆
    fn a2(&self) -> RationalNumber {
        let [a, b, c] = &self.roots;
        BigRational::from_integer(-(a + b + c))
    }

    fn a4(&self) -> RationalNumber {
        let [a, b, c] = &self.roots;
        BigRational::from_integer(a * b + a * c + b * c)
    }

    pub fn negate(&self, p: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        Ok(match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::new(x.clone(), -y),
        })
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (ECPoint::Infinity, _) => return q.clone(),
            (_, ECPoint::Infinity) => return p.clone(),
            (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else if y1 == y2 && !y1.is_zero() {
            let three = BigRational::from_integer(3.into());
            let two = BigRational::from_integer(2.into());
            (three * x1 * x1 + &two * self.a2() * x1 + self.a4()) / (two * y1)
        } else {
            return ECPoint::Infinity;
        };
        let x3 = &slope * &slope - self.a2() - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        ECPoint::new(x3, y3)
    }

    /// `n·p` by double-and-add; negative `n` uses `-p`.
    pub fn scalar_mul(&self, n: i64, p: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        let base = if n < 0 { self.negate(p)? } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            pow = self.add_unchecked(&pow, &pow);
            k >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for FactoredCubicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("y^2 = ")?;
        for e in &self.roots {
            if e.is_zero() {
                f.write_str("x")?;
            } else if e.is_negative() {
                write!(f, "(x+{})", -e)?;
            } else {
                write!(f, "(x-{e})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dz() -> FactoredCubicCurve {
        FactoredCubicCurve::from_i64(1365, 1430, -2795).unwrap()
    }

    #[test]
    fn membership() {
        let e = dz();
        assert!(e.contains(&ECPoint::from_i64(341, 59136)));
        assert!(e.contains(&ECPoint::from_i64(1365, 0)));
        assert!(!e.contains(&ECPoint::from_i64(341, 59137)));
        let c = FactoredCubicCurve::from_i64(0, -80, -205).unwrap();
        assert!(!c.contains(&ECPoint::from_i64(1, 1)));
        assert!(c.contains(&ECPoint::Infinity));
    }

    #[test]
    fn repeated_roots_rejected() {
        assert!(FactoredCubicCurve::from_i64(1, 1, 2).is_err());
    }

    #[test]
    fn identities() {
        let e = dz();
        let p = ECPoint::from_i64(341, 59136);
        assert_eq!(e.add(&p, &ECPoint::Infinity).unwrap(), p);
        let t = ECPoint::from_i64(1365, 0);
        assert_eq!(e.add(&t, &t).unwrap(), ECPoint::Infinity);
        let np = e.negate(&p).unwrap();
        assert_eq!(e.add(&p, &np).unwrap(), ECPoint::Infinity);
        assert!(e.add(&p, &ECPoint::from_i64(0, 1)).is_err());
    }

    #[test]
    fn doubling_stays_on_curve() {
        let e = dz();
        let p = ECPoint::from_i64(341, 59136);
        let p2 = e.scalar_mul(2, &p).unwrap();
        assert!(e.contains(&p2));
        assert_eq!(e.scalar_mul(-2, &p).unwrap(), e.negate(&p2).unwrap());
        assert_eq!(e.scalar_mul(0, &p).unwrap(), ECPoint::Infinity);
    }

    #[test]
    fn discriminant_and_bad_primes() {
        let e = dz();
        assert_eq!(e.bad_primes().unwrap(), vec![2, 5, 13]);
        let c = FactoredCubicCurve::from_i64(0, -80, -205).unwrap();
        assert_eq!(c.bad_primes().unwrap(), vec![2, 5, 41]);
        assert!((c.discriminant() % BigInt::from(5)).is_zero());
    }
}
