//! Euler's 3-covering `C: aX³+bY³+cZ³ = 0 → E: x³+y³+(abc)z³ = 0`.
//!
//! The map is given by
//!
//! ```text
//! x + y = 9abc·X³Y³Z³
//! x − y = (aX³ − bY³)(bY³ − cZ³)(cZ³ − aX³)
//! z     = 3(ab·X³Y³ + bc·Y³Z³ + ca·Z³X³)·XYZ
//! ```
//!
//! All three forms are homogeneous of degree 9. We return the projective
//! point `((x+y)+(x−y) : (x+y)−(x−y) : 2z)`, which avoids halving.

use num_bigint::BigInt;
use num_traits::Zero;

use super::curve::{CoordRing, DiagonalCubic, ProjPoint};
use crate::error::{Error, Result};
use crate::localfields::PadicNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringMap {
    source: DiagonalCubic,
    target: DiagonalCubic,
}

impl CoveringMap {
    pub fn new(source: DiagonalCubic) -> Self {
        let [a, b, c] = source.coefficients();
        let target = DiagonalCubic::elliptic(a * b * c).expect("nonzero product");
        CoveringMap { source, target }
    }

    pub fn source(&self) -> &DiagonalCubic {
        &self.source
    }

    /// The curve `x³ + y³ + dz³ = 0` with `d = abc`.
    pub fn target(&self) -> &DiagonalCubic {
        &self.target
    }

    pub fn d(&self) -> &BigInt {
        self.target.coefficients()[2]
    }

    /// The three covering forms, scaled by 2 as described in the module docs.
    pub fn forms<R: CoordRing>(&self, pt: &[R; 3]) -> [R; 3] {
        let [a, b, c] = self.source.coefficients();
        let [x, y, z] = pt;
        let (x3, y3, z3) = (x.cube(), y.cube(), z.cube());
        let (ax3, by3, cz3) = (x3.scale(a), y3.scale(b), z3.scale(c));
        let sum = x3.mul(&y3).mul(&z3).scale(&(BigInt::from(9) * self.d()));
        let diff = ax3.sub(&by3).mul(&by3.sub(&cz3)).mul(&cz3.sub(&ax3));
        let quad = ax3.mul(&by3).add(&by3.mul(&cz3)).add(&cz3.mul(&ax3)).mul(x).mul(y).mul(z).scale(&BigInt::from(6));
        [sum.add(&diff), sum.sub(&diff), quad]
    }

    /// π(pt) as a canonical primitive point of the target curve.
    pub fn covering_eval(&self, pt: &ProjPoint) -> Result<ProjPoint> {
        if !self.source.contains(pt) {
            return Err(Error::invalid(format!("{pt} is not on {}", self.source)));
        }
        let [x, y, z] = self.forms(pt.coords());
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::Degenerate(format!("all covering forms vanish at {pt}")));
        }
        let image = ProjPoint::new(x, y, z)?;
        debug_assert!(self.target.contains(&image), "covering image off target");
        Ok(image)
    }

    pub fn covering_eval_padic(&self, pt: &[PadicNumber; 3]) -> [PadicNumber; 3] {
        self.forms(pt)
    }
}

/// `xyz = 0`: the locus on `x³+y³+dz³ = 0` cut out by the three flex lines,
/// which is exactly `E[3]`.
pub fn three_torsion_locus(pt: &ProjPoint) -> bool {
    pt.coords().iter().any(|c| c.is_zero())
}

/// Outcome of comparing two p-adic projective points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Congruence {
    /// All 2×2 minors vanish to relative precision `k`; `slack` is the sum
    /// of the minimal coordinate valuations that was added to `k`.
    Match { slack: i64 },
    /// Some minor has valuation `minor_valuation < k + slack`.
    Mismatch { minor_valuation: i64, slack: i64 },
}

/// Compares `u` and `w` as projective points over ℚ_p to relative precision `k`.
pub fn projective_congruence(u: &[PadicNumber; 3], w: &[PadicNumber; 3], k: u32) -> Result<Congruence> {
    let min_val = |pt: &[PadicNumber; 3]| {
        pt.iter()
            .filter_map(|c| c.valuation())
            .min()
            .ok_or_else(|| Error::Inconclusive("point vanishes to working precision".into()))
    };
    let slack = min_val(u)? + min_val(w)?;
    let need = k as i64 + slack;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let minor = &(&u[i] * &w[j]) - &(&u[j] * &w[i]);
        match minor.valuation() {
            Some(v) if v < need => return Ok(Congruence::Mismatch { minor_valuation: v, slack }),
            Some(_) => {}
            None if minor.absolute_precision() < need => {
                return Err(Error::Inconclusive(format!(
                    "minor known only to O(p^{}), need {need}",
                    minor.absolute_precision()
                )))
            }
            None => {}
        }
    }
    Ok(Congruence::Match { slack })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selmer_point_image() {
        let cov = CoveringMap::new(DiagonalCubic::from_i64(1, 3, 10).unwrap());
        assert_eq!(cov.d(), &BigInt::from(30));
        let q = ProjPoint::from_i64(-11, 3, 5).unwrap();
        let p = cov.covering_eval(&q).unwrap();
        let expected =
            ProjPoint::new(BigInt::from(1523698559i64), BigInt::from(-2736572309i64), BigInt::from(826803945i64))
                .unwrap();
        assert_eq!(p, expected);
        assert!(cov.target().contains(&p));
        assert!(!three_torsion_locus(&p));
    }

    #[test]
    fn flex_point_maps_to_identity() {
        let cov = CoveringMap::new(DiagonalCubic::from_i64(1, 1, 7).unwrap());
        let o = ProjPoint::from_i64(1, -1, 0).unwrap();
        assert_eq!(cov.covering_eval(&o).unwrap(), o);
    }

    #[test]
    fn off_curve_rejected() {
        let cov = CoveringMap::new(DiagonalCubic::from_i64(1, 3, 10).unwrap());
        let bad = ProjPoint::from_i64(1, 1, 1).unwrap();
        assert!(matches!(cov.covering_eval(&bad), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn torsion_locus() {
        assert!(three_torsion_locus(&ProjPoint::from_i64(1, -1, 0).unwrap()));
        assert!(three_torsion_locus(&ProjPoint::from_i64(0, -2, 1).unwrap()));
        assert!(!three_torsion_locus(&ProjPoint::from_i64(1, 2, 3).unwrap()));
    }
}
