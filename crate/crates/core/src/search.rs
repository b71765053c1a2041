//! Bounded-height rational point search on diagonal cubics and local
//! solvability over ℚ_p.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagcubic::{DiagonalCubic, ProjPoint};
use crate::error::{Error, Result};
use crate::localfields::{is_prime, mod_u64, pow_p, primes::factor_u64, valuation, Place};

/// Result of an exhaustive search up to a height bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub curve: String,
    pub height_bound: u64,
    /// Canonical, sorted and deduplicated.
    pub points: Vec<ProjPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub exhaustive: bool,
}

impl SearchReport {
    /// Points of height at most `h`.
    pub fn within(&self, h: u64) -> Vec<ProjPoint> {
        let h = BigInt::from(h);
        self.points.iter().filter(|p| p.height() <= h).cloned().collect()
    }
}

const MAX_HEIGHT: u64 = 1_000_000;
const MAX_FILTER_MODULUS: u64 = 1 << 22;

fn cube_mask(m: u64) -> Vec<bool> {
    let mut mask = vec![false; m as usize];
    for x in 0..m {
        mask[(x * x % m * x % m) as usize] = true;
    }
    mask
}

fn exact_cbrt(n: i128) -> Option<i128> {
    let guess = (n as f64).cbrt().round() as i128;
    (guess - 1..=guess + 1).find(|&r| r * r * r == n)
}

/// All primitive points with `max(|X|,|Y|,|Z|) <= height`.
///
/// The coordinate with the largest coefficient is solved for: for each pair
/// of the other two coordinates the equation forces its cube, and an exact
/// cube root decides. Pairs are prefiltered by the congruence modulo that
/// coefficient and by cubic residues modulo 7, 9 and 13.
pub fn point_search(curve: &DiagonalCubic, height: u64) -> Result<SearchReport> {
    if height == 0 {
        return Err(Error::invalid("height bound must be positive"));
    }
    if height > MAX_HEIGHT {
        return Err(Error::Unsupported(format!("height above {MAX_HEIGHT}")));
    }
    let start = Instant::now();
    let coeffs: Vec<i64> = curve
        .coefficients()
        .iter()
        .map(|c| c.to_i64().filter(|c| c.unsigned_abs() < 1 << 40))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Unsupported("coefficients too large for the search".into()))?;
    let pivot = (0..3).max_by_key(|&i| coeffs[i].unsigned_abs()).expect("three coefficients");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let (alpha, beta, gamma) = (coeffs[others[0]] as i128, coeffs[others[1]] as i128, coeffs[pivot] as i128);
    let h = height as i128;

    // residues of w mod g with beta·w³ ≡ t, indexed by t
    let g = gamma.unsigned_abs() as u64;
    let by_target: Option<Vec<Vec<u64>>> = (g > 1 && g <= MAX_FILTER_MODULUS).then(|| {
        let mut table = vec![Vec::new(); g as usize];
        for w in 0..g {
            let t = (beta.rem_euclid(g as i128) * (w as i128 * w as i128 % g as i128 * w as i128 % g as i128))
                .rem_euclid(g as i128);
            table[t as usize].push(w);
        }
        table
    });
    let masks = [(7i128, cube_mask(7)), (9, cube_mask(9)), (13, cube_mask(13))];

    let test = |u: i128, w: i128, out: &mut Vec<ProjPoint>| {
        if u == 0 && w == 0 {
            return;
        }
        let rhs = -(alpha * u * u * u + beta * w * w * w);
        if rhs % gamma != 0 {
            return;
        }
        let q = rhs / gamma;
        if masks.iter().any(|(m, mask)| !mask[q.rem_euclid(*m) as usize]) {
            return;
        }
        let Some(t) = exact_cbrt(q) else { return };
        if t.abs() > h || u.gcd(&w).gcd(&t) != 1 {
            return;
        }
        let mut xyz = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        xyz[others[0]] = BigInt::from(u);
        xyz[others[1]] = BigInt::from(w);
        xyz[pivot] = BigInt::from(t);
        let [x, y, z] = xyz;
        out.push(ProjPoint::new(x, y, z).expect("nonzero point"));
    };

    // (u, w) and (-u, -w) give the same projective point
    let mut points: Vec<ProjPoint> = (0..=h)
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut out = Vec::new();
            let w_lo = if u == 0 { 1 } else { -h };
            match &by_target {
                Some(table) => {
                    let gi = g as i128;
                    let t = (-(alpha * (u * u % gi) % gi * u)).rem_euclid(gi);
                    for &r in &table[t as usize] {
                        let r = r as i128;
                        let mut w = w_lo + (r - w_lo).rem_euclid(gi);
                        while w <= h {
                            test(u, w, &mut out);
                            w += gi;
                        }
                    }
                }
                None => {
                    for w in w_lo..=h {
                        test(u, w, &mut out);
                    }
                }
            }
            out
        })
        .collect();
    points.sort();
    points.dedup();
    debug_assert!(points.iter().all(|p| curve.contains(p)));
    Ok(SearchReport {
        curve: curve.to_string(),
        height_bound: height,
        points,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
        exhaustive: true,
    })
}

/// Node budget for [`locally_solvable`].
pub const LOCAL_NODE_BUDGET: usize = 2_000_000;

fn min_partial_valuation(curve: &DiagonalCubic, pt: &[BigInt; 3], p: u64, cap: u32) -> u32 {
    curve
        .coefficients()
        .iter()
        .zip(pt)
        .map(|(c, x)| {
            let d = BigInt::from(3) * *c * x * x;
            if d.is_zero() {
                cap
            } else {
                valuation(&d, p).0.min(cap)
            }
        })
        .min()
        .expect("three partials")
}

/// Whether the cubic has a ℚ_v-point.
///
/// Primitive solutions are grown digit by digit in the three affine charts
/// (one coordinate equal to 1, earlier coordinates divisible by p). A
/// solution modulo `p^j` whose smallest partial derivative valuation `t`
/// satisfies `j > 2t` lifts to a ℚ_p-point. If every branch dies the curve
/// has no ℚ_p-point. Reaching level `k` or the node budget first is
/// inconclusive.
pub fn locally_solvable(curve: &DiagonalCubic, v: &Place, k: u32) -> Result<bool> {
    let p = match v {
        Place::Real => return Ok(true),
        Place::Finite(p) => p.get(),
    };
    let mut nodes = 0usize;
    for chart in 0..3usize {
        let free: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        // level 1 in machine arithmetic; a smooth point mod p lifts at once
        let abc: Vec<u64> = curve.coefficients().iter().map(|c| mod_u64(c, p)).collect();
        let f1 = |pt: [u64; 3]| -> u64 {
            (0..3).fold(0u128, |acc, i| {
                let x = pt[i] as u128;
                acc + abc[i] as u128 * (x * x % p as u128 * x % p as u128)
            }) as u64
                % p
        };
        let mut alive: Vec<[BigInt; 3]> = Vec::new();
        for r0 in 0..p {
            for r1 in 0..p {
                let mut pt = [0u64; 3];
                pt[chart] = 1;
                pt[free[0]] = r0;
                pt[free[1]] = r1;
                if (0..chart).any(|i| pt[i] != 0) || f1(pt) != 0 {
                    continue;
                }
                let smooth = p != 3 && (0..3).any(|i| abc[i] != 0 && pt[i] != 0);
                if smooth {
                    return Ok(true);
                }
                alive.push(pt.map(BigInt::from));
            }
        }
        let mut level = 1u32;
        loop {
            if alive.is_empty() {
                break;
            }
            nodes += alive.len();
            if nodes > LOCAL_NODE_BUDGET {
                return Err(Error::Inconclusive(format!("node budget exhausted at {v}")));
            }
            for pt in &alive {
                let t = min_partial_valuation(curve, pt, p, level);
                if level > 2 * t {
                    return Ok(true);
                }
            }
            if level >= k {
                return Err(Error::Inconclusive(format!(
                    "solutions mod {p}^{k} exist but none satisfies the lifting criterion"
                )));
            }
            let step = pow_p(p, level);
            let next_mod = pow_p(p, level + 1);
            let mut next = Vec::new();
            for pt in &alive {
                for d0 in 0..p {
                    for d1 in 0..p {
                        let mut q = pt.clone();
                        q[free[0]] += &step * d0;
                        q[free[1]] += &step * d1;
                        if (curve.eval(&q) % &next_mod).is_zero() {
                            next.push(q);
                        }
                    }
                }
            }
            alive = next;
            level += 1;
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSolvability {
    /// The real place and every prime dividing `3abc`.
    pub places: BTreeMap<Place, bool>,
    /// Good primes checked directly (all returned true).
    pub spot_checked: Vec<u64>,
    pub everywhere: bool,
}

/// Local solvability at the real place and all primes dividing `3abc`, with
/// spot checks at random good primes (where a smooth 𝔽_p-point always exists
/// and lifts).
pub fn everywhere_locally_solvable(
    curve: &DiagonalCubic,
    k: u32,
    spot_checks: usize,
    seed: u64,
) -> Result<LocalSolvability> {
    let [a, b, c] = curve.coefficients();
    let prod = (BigInt::from(3) * a * b * c)
        .magnitude()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("coefficients too large to factor".into()))?;
    let mut places = BTreeMap::new();
    places.insert(Place::Real, true);
    for (p, _) in factor_u64(prod) {
        let v = Place::finite(p)?;
        places.insert(v, locally_solvable(curve, &v, k)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spot_checked = Vec::new();
    while spot_checked.len() < spot_checks {
        let p = rng.random_range(5u64..1000);
        if !is_prime(p) || prod % p == 0 || spot_checked.contains(&p) {
            continue;
        }
        if !locally_solvable(curve, &Place::finite(p)?, k)? {
            return Err(Error::Inconclusive(format!("good prime {p} reported insoluble")));
        }
        spot_checked.push(p);
    }
    spot_checked.sort_unstable();
    let everywhere = places.values().all(|&b| b);
    Ok(LocalSolvability { places, spot_checked, everywhere })
}
