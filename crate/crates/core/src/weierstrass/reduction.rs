//! Reduction modulo odd primes and the 2-primary torsion bound.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::curve::FactoredCubicCurve;
use crate::error::{Error, Result};
use crate::localfields::{is_prime, mod_u64, primes::mod_pow, primes_up_to};

fn odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `p ∤ Δ`, for an odd prime `p`.
pub fn good_reduction(curve: &FactoredCubicCurve, p: u64) -> Result<bool> {
    odd_prime(p)?;
    Ok(!curve.discriminant().mod_floor(&p.into()).is_zero())
}

/// `|E(𝔽_p)|`, counting `y² = f(x)` over all `x ∈ 𝔽_p` plus the point at infinity.
pub fn reduction_count(curve: &FactoredCubicCurve, p: u64) -> Result<u64> {
    if !good_reduction(curve, p)? {
        return Err(Error::invalid(format!("bad reduction at {p}")));
    }
    let roots = curve.roots().clone().map(|e| mod_u64(&e, p));
    let mut count = 1u64;
    for x in 0..p {
        let fx = roots.iter().fold(1u128, |acc, &e| acc * ((x + p - e) % p) as u128 % p as u128) as u64;
        count += match fx {
            0 => 1,
            _ if mod_pow(fx, (p - 1) / 2, p) == 1 => 2,
            _ => 0,
        };
    }
    Ok(count)
}

/// `(count − p − 1)² ≤ 4p`, in exact integer arithmetic.
pub fn within_hasse_bound(count: u64, p: u64) -> bool {
    let t = count as i128 - p as i128 - 1;
    t * t <= 4 * p as i128
}

/// A good odd prime `p` with `8 ∤ |E(𝔽_p)|`.
///
/// The prime-to-p torsion of E(ℚ) injects into E(𝔽_p). A rational point of
/// order 4 would give a subgroup of order 8 (together with E[2]), so such a
/// prime shows that E(ℚ)[2^∞] = E(ℚ)[2].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub prime: u64,
    pub count: u64,
}

impl TorsionCertificate {
    pub fn recheck(&self, curve: &FactoredCubicCurve) -> Result<bool> {
        Ok(self.prime != 2 && reduction_count(curve, self.prime)? == self.count && !self.count.is_multiple_of(8))
    }
}

/// Searches odd primes up to `bound` for a [`TorsionCertificate`].
pub fn two_primary_torsion_is_two_torsion(curve: &FactoredCubicCurve, bound: u64) -> Result<TorsionCertificate> {
    for p in primes_up_to(bound).into_iter().skip(1) {
        if !good_reduction(curve, p)? {
            continue;
        }
        let count = reduction_count(curve, p)?;
        if count % 8 != 0 {
            return Ok(TorsionCertificate { prime: p, count });
        }
    }
    Err(Error::Inconclusive(format!("every good prime up to {bound} has 8 | #E(F_p)")))
}
