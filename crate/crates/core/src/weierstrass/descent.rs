//! The 2-descent map δ₂ : E(K) → (K^×/K^{×2})² and its local images.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::curve::{ECPoint, FactoredCubicCurve};
use crate::error::{Error, Result};
use crate::localfields::{
    is_square_local, local_square_class, pow_p, squarefree_part_supported, squarefree_product, Place, RationalNumber,
};

/// A pair of square classes, each stored as its canonical squarefree
/// representative (over ℚ, or over a completion after [`localize`]).
///
/// [`localize`]: SquareClassPair::localize
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SquareClassPair {
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub c1: BigInt,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub c2: BigInt,
}

impl SquareClassPair {
    pub fn new(c1: BigInt, c2: BigInt) -> Result<Self> {
        if c1.is_zero() || c2.is_zero() {
            return Err(Error::invalid("square classes must be nonzero"));
        }
        Ok(SquareClassPair { c1, c2 })
    }

    pub fn from_i64(c1: i64, c2: i64) -> Self {
        SquareClassPair { c1: c1.into(), c2: c2.into() }
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.c1.is_one() && self.c2.is_one()
    }

    /// Product in (ℚ^×/ℚ^{×2})².
    pub fn mul(&self, other: &Self) -> Self {
        SquareClassPair { c1: squarefree_product(&self.c1, &other.c1), c2: squarefree_product(&self.c2, &other.c2) }
    }

    /// Image in (ℚ_v^×/ℚ_v^{×2})².
    pub fn localize(&self, v: &Place) -> Result<Self> {
        let loc = |c: &BigInt| local_square_class(&BigRational::from_integer(c.clone()), v);
        Ok(SquareClassPair { c1: loc(&self.c1)?, c2: loc(&self.c2)? })
    }

    /// Product of two local pairs, re-canonicalized at `v`.
    pub fn mul_local(&self, other: &Self, v: &Place) -> Result<Self> {
        SquareClassPair { c1: &self.c1 * &other.c1, c2: &self.c2 * &other.c2 }.localize(v)
    }

    /// Both coordinates are squares in ℚ_v.
    pub fn is_trivial_at(&self, v: &Place) -> Result<bool> {
        let sq = |c: &BigInt| is_square_local(&BigRational::from_integer(c.clone()), v);
        Ok(sq(&self.c1)? && sq(&self.c2)?)
    }
}

impl fmt::Display for SquareClassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

fn class_of(q: &RationalNumber, support: &[u64]) -> Result<BigInt> {
    squarefree_part_supported(&(q.numer() * q.denom()), support)
}

/// δ₂ of a rational point, relative to the basis `P₁ = (e₁,0)`, `P₂ = (e₂,0)`.
///
/// The generic value is `(x−e₁, x−e₂)`; at `P₁` and `P₂` the vanishing
/// coordinate is replaced by the product of the other two factors.
pub fn delta2(curve: &FactoredCubicCurve, point: &ECPoint) -> Result<SquareClassPair> {
    if !curve.contains(point) {
        return Err(Error::invalid(format!("{point} is not on {curve}")));
    }
    let x = match point {
        ECPoint::Infinity => return Ok(SquareClassPair::identity()),
        ECPoint::Affine { x, .. } => x,
    };
    let support = curve.bad_primes()?;
    let [e1, e2, e3] = curve.roots().clone().map(BigRational::from_integer);
    let t1 = x - &e1;
    let t2 = x - &e2;
    let (u1, u2) = if t1.is_zero() {
        ((&e1 - &e2) * (&e1 - &e3), t2)
    } else if t2.is_zero() {
        (t1, (&e2 - &e1) * (&e2 - &e3))
    } else {
        (t1, t2)
    };
    SquareClassPair::new(class_of(&u1, &support)?, class_of(&u2, &support)?)
}

/// δ₂(E(ℚ)[2]) = {δ₂(O), δ₂(P₁), δ₂(P₂), δ₂(P₃)}.
pub fn two_torsion_delta2_image(curve: &FactoredCubicCurve) -> Result<BTreeSet<SquareClassPair>> {
    let mut out = BTreeSet::from([SquareClassPair::identity()]);
    for t in curve.two_torsion() {
        out.insert(delta2(curve, &t)?);
    }
    Ok(out)
}

/// Whether `target ∈ δ₂(E(ℚ_v)[2])`: some torsion class `t` makes
/// `target·t` trivial in (ℚ_v^×/ℚ_v^{×2})².
pub fn local_torsion_delta2_membership(
    curve: &FactoredCubicCurve,
    target: &SquareClassPair,
    v: &Place,
) -> Result<bool> {
    for t in two_torsion_delta2_image(curve)? {
        if target.mul(&t).is_trivial_at(v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `target ∈ δ₂(E(ℚ)[2])`, i.e. membership over ℚ itself.
pub fn global_torsion_delta2_membership(curve: &FactoredCubicCurve, target: &SquareClassPair) -> Result<bool> {
    Ok(two_torsion_delta2_image(curve)?.contains(target))
}

/// Checks `δ₂(P+Q) = δ₂(P)·δ₂(Q)` for every ordered pair from `sample`.
pub fn delta2_is_homomorphism_check(curve: &FactoredCubicCurve, sample: &[ECPoint]) -> Result<bool> {
    let deltas: Vec<SquareClassPair> = sample.iter().map(|p| delta2(curve, p)).collect::<Result<_>>()?;
    for (i, p) in sample.iter().enumerate() {
        for (j, q) in sample.iter().enumerate().skip(i) {
            let sum = curve.add(p, q)?;
            if delta2(curve, &sum)? != deltas[i].mul(&deltas[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closes `gens` into the subgroup it generates in (ℚ_v^×/ℚ_v^{×2})².
fn local_span(gens: &BTreeSet<SquareClassPair>, v: &Place) -> Result<BTreeSet<SquareClassPair>> {
    let mut group = BTreeSet::from([SquareClassPair::identity()]);
    for g in gens {
        if group.contains(g) {
            continue;
        }
        let shifted: Vec<SquareClassPair> = group.iter().map(|h| h.mul_local(g, v)).collect::<Result<_>>()?;
        group.extend(shifted);
    }
    Ok(group)
}

/// Expected order of δ₂(E(ℚ_v)) = E(ℚ_v)/2E(ℚ_v) for full rational 2-torsion:
/// 4 at odd primes, 8 at 2, and 2 at the real place (two real components).
pub fn expected_local_image_order(v: &Place) -> usize {
    match v.prime() {
        None => 2,
        Some(2) => 8,
        Some(_) => 4,
    }
}

/// δ₂(E(ℚ_p)) at a good odd prime computed from E(𝔽_p): every 𝔽_p-point
/// lifts, and the kernel of reduction is 2-divisible, so the image is the set
/// of δ₂-values of lifts of 𝔽_p-points. Independent of [`local_kummer_image`].
pub fn image_by_reduction(curve: &FactoredCubicCurve, p: u64) -> Result<BTreeSet<SquareClassPair>> {
    if p == 2 || !super::reduction::good_reduction(curve, p)? {
        return Err(Error::invalid(format!("{p} is not a good odd prime for {curve}")));
    }
    let v = Place::finite(p)?;
    let mut out: BTreeSet<SquareClassPair> =
        two_torsion_delta2_image(curve)?.iter().map(|t| t.localize(&v)).collect::<Result<_>>()?;
    let roots = curve.roots().clone().map(|e| crate::localfields::mod_u64(&e, p));
    let sub = |x: u64, e: u64| BigInt::from((x + p - e) % p);
    for x in 0..p {
        if roots.contains(&x) {
            continue;
        }
        let rhs = roots.iter().fold(1u128, |acc, &e| acc * ((x + p - e) % p) as u128 % p as u128);
        if crate::localfields::legendre_symbol(&BigInt::from(rhs), p)? == 1 {
            out.insert(SquareClassPair::new(sub(x, roots[0]), sub(x, roots[1]))?.localize(&v)?);
        }
    }
    Ok(out)
}

/// Sampling budget for [`local_kummer_image`].
#[derive(Clone, Copy, Debug)]
pub struct KummerSampling {
    pub min_exponent: i64,
    pub max_exponent: i64,
    pub samples_per_stratum: usize,
    pub seed: u64,
}

impl Default for KummerSampling {
    fn default() -> Self {
        KummerSampling { min_exponent: -6, max_exponent: 6, samples_per_stratum: 10_000, seed: 0 }
    }
}

/// δ₂(E(ℚ_v)) as a set of local class pairs, found by sampling
/// `x = p^j·u` and keeping those `x` whose cubic value is a local square.
///
/// Sampling stops once the classes found span a subgroup of the expected
/// order; if the budget runs out first the result is inconclusive.
pub fn local_kummer_image(
    curve: &FactoredCubicCurve,
    v: &Place,
    k: u32,
    sampling: &KummerSampling,
) -> Result<BTreeSet<SquareClassPair>> {
    let expected = expected_local_image_order(v);
    let [e1, e2, _] = curve.roots().clone().map(BigRational::from_integer);
    let mut found = BTreeSet::new();
    let mut span = BTreeSet::from([SquareClassPair::identity()]);

    let consider = |x: RationalNumber,
                    found: &mut BTreeSet<SquareClassPair>,
                    span: &mut BTreeSet<SquareClassPair>|
     -> Result<bool> {
        let fx = curve.rhs(&x);
        if fx.is_zero() || !is_square_local(&fx, v)? {
            return Ok(false);
        }
        let pair = SquareClassPair::new(local_square_class(&(&x - &e1), v)?, local_square_class(&(&x - &e2), v)?)?;
        if found.insert(pair) {
            *span = local_span(found, v)?;
            if span.len() > expected {
                return Err(Error::Inconclusive(format!("local image at {v} exceeds the expected order {expected}")));
            }
        }
        Ok(span.len() == expected)
    };

    let p = match v {
        Place::Real => {
            let mut sorted = curve.roots().clone();
            sorted.sort();
            let [r1, r2, r3] = sorted.map(BigRational::from_integer);
            let two = BigRational::from_integer(2.into());
            let candidates =
                [(&r1 + &r2) / &two, (&r2 + &r3) / &two, &r3 + BigRational::one(), &r1 - BigRational::one()];
            for x in candidates {
                if consider(x, &mut found, &mut span)? {
                    return Ok(span);
                }
            }
            return Err(Error::Inconclusive("real image did not reach order 2".into()));
        }
        Place::Finite(p) => p.get(),
    };

    let modulus = pow_p(p, k.max(1));
    let pb = BigInt::from(p);
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed ^ p);
    // enumerate every unit below p^k when that is within budget
    let exhaustive = modulus <= BigInt::from(sampling.samples_per_stratum as u64);
    // units first, then outward; most classes appear at small |j|
    let mut strata: Vec<i64> = (sampling.min_exponent..=sampling.max_exponent).collect();
    strata.sort_by_key(|j| (j.abs(), *j < 0));
    for j in strata {
        let scale = if j >= 0 {
            BigRational::from_integer(pb.pow(j as u32))
        } else {
            BigRational::new(BigInt::one(), pb.pow((-j) as u32))
        };
        let units: Box<dyn Iterator<Item = BigInt>> = if exhaustive {
            let m: u64 = modulus.clone().try_into().expect("small modulus");
            Box::new((1..m).filter(move |u| u % p != 0).map(BigInt::from))
        } else {
            let mut draws = Vec::with_capacity(sampling.samples_per_stratum);
            let hi = modulus.clone();
            while draws.len() < sampling.samples_per_stratum {
                let u = random_below(&mut rng, &hi);
                if !(&u % &pb).is_zero() {
                    draws.push(u);
                }
            }
            Box::new(draws.into_iter())
        };
        for u in units {
            for sign in [1i64, -1] {
                let x = &scale * BigRational::from_integer(&u * sign);
                if consider(x, &mut found, &mut span)? {
                    return Ok(span);
                }
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "sampling at {v} reached order {} of expected {expected}; raise precision or budget",
        span.len()
    )))
}

fn random_below(rng: &mut ChaCha8Rng, bound: &BigInt) -> BigInt {
    let bits = bound.bits();
    loop {
        let words: Vec<u32> = (0..bits.div_ceil(32)).map(|_| rng.random()).collect();
        let mut n = BigInt::from_slice(num_bigint::Sign::Plus, &words);
        n %= BigInt::one() << bits;
        if &n < bound && n.is_positive() {
            return n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dz() -> FactoredCubicCurve {
        FactoredCubicCurve::from_i64(1365, 1430, -2795).unwrap()
    }

    fn wc() -> FactoredCubicCurve {
        FactoredCubicCurve::from_i64(0, -80, -205).unwrap()
    }

    fn fin(p: u64) -> Place {
        Place::finite(p).unwrap()
    }

    #[test]
    fn delta2_published_values() {
        let e = dz();
        let p = ECPoint::from_i64(341, 59136);
        assert_eq!(delta2(&e, &p).unwrap(), SquareClassPair::from_i64(-1, -1));
        assert_eq!(delta2(&e, &ECPoint::from_i64(1365, 0)).unwrap(), SquareClassPair::from_i64(-1, -65));
        assert_eq!(delta2(&e, &ECPoint::from_i64(1430, 0)).unwrap(), SquareClassPair::from_i64(65, 65));
        assert_eq!(delta2(&e, &ECPoint::Infinity).unwrap(), SquareClassPair::identity());
        assert!(delta2(&e, &ECPoint::from_i64(341, 59137)).is_err());
    }

    #[test]
    fn delta2_of_sum_with_torsion() {
        let e = dz();
        let p = ECPoint::from_i64(341, 59136);
        let p1 = ECPoint::from_i64(1365, 0);
        let s = e.add(&p, &p1).unwrap();
        assert_eq!(delta2(&e, &s).unwrap(), SquareClassPair::from_i64(1, 65));
        let p2 = e.scalar_mul(2, &p).unwrap();
        assert!(delta2(&e, &p2).unwrap().is_identity());
    }

    #[test]
    fn torsion_image_is_group_of_order_four() {
        for curve in [dz(), wc()] {
            let img = two_torsion_delta2_image(&curve).unwrap();
            assert_eq!(img.len(), 4);
            assert!(img.contains(&SquareClassPair::identity()));
            for a in &img {
                for b in &img {
                    assert!(img.contains(&a.mul(b)));
                }
            }
        }
        let img = two_torsion_delta2_image(&dz()).unwrap();
        assert!(img.contains(&SquareClassPair::from_i64(-65, -1)));
    }

    #[test]
    fn membership_dichotomy() {
        let e = dz();
        let target = SquareClassPair::from_i64(-1, -1);
        for v in [Place::Real, fin(2), fin(5), fin(13), fin(3), fin(7)] {
            assert!(local_torsion_delta2_membership(&e, &target, &v).unwrap(), "{v}");
        }
        assert!(!global_torsion_delta2_membership(&e, &target).unwrap());
    }

    #[test]
    fn homomorphism_on_small_sample() {
        let e = dz();
        let p = ECPoint::from_i64(341, 59136);
        let mut sample = vec![ECPoint::Infinity, p.clone()];
        sample.extend(e.two_torsion());
        sample.push(e.scalar_mul(3, &p).unwrap());
        assert!(delta2_is_homomorphism_check(&e, &sample).unwrap());
        assert!(delta2_is_homomorphism_check(&e, &[ECPoint::Infinity]).unwrap());
    }

    fn localized_torsion(curve: &FactoredCubicCurve, v: &Place) -> BTreeSet<SquareClassPair> {
        two_torsion_delta2_image(curve).unwrap().iter().map(|c| c.localize(v).unwrap()).collect()
    }

    fn unramified(p: u64) -> BTreeSet<SquareClassPair> {
        let n = BigInt::from(crate::localfields::least_nonresidue(p));
        let units = [BigInt::from(1), n];
        units
            .iter()
            .flat_map(|a| units.iter().map(move |b| SquareClassPair::new(a.clone(), b.clone()).unwrap()))
            .collect()
    }

    #[test]
    fn reduction_image_matches_sampling() {
        for p in [3u64, 7, 11, 17, 29, 37] {
            for curve in [dz(), wc()] {
                let img = local_kummer_image(&curve, &fin(p), 4, &KummerSampling::default()).unwrap();
                assert_eq!(image_by_reduction(&curve, p).unwrap(), img, "{curve} at {p}");
            }
        }
        assert!(image_by_reduction(&dz(), 5).is_err());
    }

    #[test]
    fn kummer_image_at_good_prime_is_unramified() {
        let img = local_kummer_image(&dz(), &fin(7), 4, &KummerSampling::default()).unwrap();
        assert_eq!(img, unramified(7));
        assert!(localized_torsion(&dz(), &fin(7)).is_subset(&img));
        let img = local_kummer_image(&wc(), &fin(3), 4, &KummerSampling::default()).unwrap();
        assert_eq!(img, unramified(3));
        assert!(localized_torsion(&wc(), &fin(3)).is_subset(&img));
    }

    #[test]
    fn kummer_image_at_bad_primes() {
        let img = local_kummer_image(&wc(), &fin(5), 6, &KummerSampling::default()).unwrap();
        assert_eq!(img.len(), 4);
        for t in localized_torsion(&wc(), &fin(5)) {
            assert!(img.contains(&t));
        }
        let img = local_kummer_image(&dz(), &fin(2), 8, &KummerSampling::default()).unwrap();
        assert_eq!(img.len(), 8);
    }

    #[test]
    fn kummer_image_at_real_place() {
        for curve in [dz(), wc()] {
            let img = local_kummer_image(&curve, &Place::Real, 1, &KummerSampling::default()).unwrap();
            assert_eq!(img.len(), 2);
            assert!(img.iter().all(|c| c.c1.abs().is_one() && c.c2.abs().is_one()));
        }
    }

    // Exhaustive low-precision enumeration: every x = ±p^j·u with |j| <= 4 and
    // u a unit below p^6. The image found must have exactly the order that
    // `expected_local_image_order` claims.
    #[test]
    fn expected_orders_match_exhaustive_enumeration() {
        for curve in [dz(), wc()] {
            for p in [2u64, 3, 5, 7] {
                let v = fin(p);
                let [e1, e2, _] = curve.roots().clone().map(BigRational::from_integer);
                let mut found = BTreeSet::new();
                let m = p.pow(6).min(4096);
                for j in -4i32..=4 {
                    let scale = BigRational::from_integer(BigInt::from(p)).pow(j);
                    for u in (1..m).filter(|u| u % p != 0) {
                        for s in [1i64, -1] {
                            let x = &scale * BigRational::from_integer(BigInt::from(u as i64 * s));
                            let fx = curve.rhs(&x);
                            if !fx.is_zero() && is_square_local(&fx, &v).unwrap() {
                                found.insert(
                                    SquareClassPair::new(
                                        local_square_class(&(&x - &e1), &v).unwrap(),
                                        local_square_class(&(&x - &e2), &v).unwrap(),
                                    )
                                    .unwrap(),
                                );
                            }
                        }
                    }
                }
                let span = local_span(&found, &v).unwrap();
                assert_eq!(span.len(), expected_local_image_order(&v), "{curve} at {p}");
            }
        }
    }
}
