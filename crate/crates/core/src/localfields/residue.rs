//! Residue symbols, valuations and square-class arithmetic on integers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::{factor_u64, is_prime, mod_pow};
use super::RationalNumber;
use crate::error::{Error, Result};

/// Least non-negative residue of `a` modulo `m`.
pub fn mod_u64(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    let r = mod_u64(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Whether the unit `a mod p` is a cube in 𝔽_p^×.
pub(crate) fn is_cubic_residue(a: u64, p: u64) -> bool {
    debug_assert!(!a.is_multiple_of(p));
    if p % 3 != 1 {
        return true;
    }
    mod_pow(a, (p - 1) / 3, p) == 1
}

/// `p`-adic valuation of a nonzero integer and its prime-to-`p` cofactor.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// Splits a nonzero rational as `p^v · num / den` with `num`, `den` prime to `p`.
pub fn rational_valuation(q: &RationalNumber, p: u64) -> (i64, BigInt, BigInt) {
    let (vn, num) = valuation(q.numer(), p);
    let (vd, den) = valuation(q.denom(), p);
    (vn as i64 - vd as i64, num, den)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Exact `k`-th root of an integer, if it exists (odd `k` allows negatives).
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}

pub fn is_rational_square(q: &RationalNumber) -> bool {
    exact_root(q.numer(), 2).is_some() && exact_root(q.denom(), 2).is_some()
}

pub fn is_rational_cube(q: &RationalNumber) -> bool {
    exact_root(q.numer(), 3).is_some() && exact_root(q.denom(), 3).is_some()
}

/// Squarefree part of a nonzero integer whose odd-exponent primes all lie in
/// `support`. Fails if the leftover cofactor is not a perfect square.
pub fn squarefree_part_supported(n: &BigInt, support: &[u64]) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::invalid("squarefree part of zero"));
    }
    let mut rest = n.abs();
    let mut part = BigInt::one();
    for &p in support {
        let (v, m) = valuation(&rest, p);
        rest = m;
        if v % 2 == 1 {
            part *= p;
        }
    }
    if exact_root(&rest, 2).is_none() {
        return Err(Error::invalid(format!("{n} has square class outside the support {support:?}")));
    }
    if n.sign() == Sign::Minus {
        part = -part;
    }
    Ok(part)
}

/// Squarefree part of an integer small enough to factor by trial division.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let m = n.abs().to_u64().ok_or_else(|| Error::Unsupported(format!("{n} is too large to factor")))?;
    let support: Vec<u64> = factor_u64(m).into_iter().map(|(p, _)| p).collect();
    squarefree_part_supported(n, &support)
}

/// Canonical representative of the class of `a·b` when `a`, `b` are squarefree.
pub fn squarefree_product(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    (a / &g) * (b / &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&big(65), 7).unwrap(), 1);
        assert_eq!(legendre_symbol(&big(0), 5).unwrap(), 0);
        assert_eq!(legendre_symbol(&big(-1), 5).unwrap(), 1);
        assert_eq!(legendre_symbol(&big(-1), 7).unwrap(), -1);
    }

    #[test]
    fn legendre_rejects_bad_moduli() {
        assert!(legendre_symbol(&big(3), 2).is_err());
        assert!(legendre_symbol(&big(3), 9).is_err());
    }

    #[test]
    fn legendre_matches_brute_force() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in -50i64..50 {
                let r = (a.rem_euclid(p as i64)) as u64;
                let expect = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(&big(a), p).unwrap(), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&big(-1024)).unwrap(), big(-1));
        assert_eq!(squarefree_part(&big(-4160 * 65)).unwrap(), big(-1));
        assert_eq!(squarefree_part(&big(65 * 4225)).unwrap(), big(65));
        assert!(squarefree_part_supported(&big(7), &[2, 3]).is_err());
        assert_eq!(squarefree_product(&big(-65), &big(65)), big(-1));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&big(-27), 3), Some(big(-3)));
        assert_eq!(exact_root(&big(-4), 2), None);
        assert_eq!(exact_root(&big(90), 3), None);
    }
}
