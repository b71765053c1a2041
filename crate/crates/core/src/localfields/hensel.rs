//! Newton–Hensel lifting of roots of integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::padic::{pow_p, PadicNumber};
use super::residue::{mod_inverse, valuation};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients from the constant term upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - a`.
    pub fn binomial(n: usize, a: &BigInt) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -a.clone();
        c[n] = BigInt::from(1);
        IntPoly(c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_padic(&self, x: &PadicNumber) -> PadicNumber {
        let p = x.prime();
        let mut acc = PadicNumber::zero(p, super::padic::EXACT);
        for c in self.0.iter().rev() {
            let term = PadicNumber::from_integer(c, p, x.absolute_precision().max(0) + 64);
            acc = &(&acc * x) + &term;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        IntPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }
}

fn val_or(n: &BigInt, p: u64, cap: u32) -> u32 {
    if n.is_zero() {
        cap
    } else {
        valuation(n, p).0.min(cap)
    }
}

/// Lifts a simple root `r0` of `f mod p` to a root modulo `p^k`.
///
/// Requires `f(r0) ≡ 0 (mod p)` and `f'(r0) ≢ 0 (mod p)`; otherwise returns
/// [`Error::NoLift`] and the caller should use [`hensel_lift_root_with_gap`].
/// The result `r` satisfies `f(r) ≡ 0 (mod p^k)`, `r ≡ r0 (mod p)`, and is
/// returned with absolute precision `k`.
pub fn hensel_lift_root(f: &IntPoly, p: u64, r0: &BigInt, k: u32) -> Result<PadicNumber> {
    let pb = BigInt::from(p);
    if !f.eval(r0).mod_floor(&pb).is_zero() {
        return Err(Error::NoLift(format!("{r0} is not a root mod {p}")));
    }
    if f.derivative().eval(r0).mod_floor(&pb).is_zero() {
        return Err(Error::NoLift(format!("{r0} is a repeated root mod {p}")));
    }
    hensel_lift_root_with_gap(f, p, r0, k)
}

/// Hensel lifting under the valuation-gap criterion `v(f(r0)) > 2·v(f'(r0))`.
///
/// With `t = v(f'(r0))`, the returned `r` satisfies `f(r) ≡ 0 (mod p^k)`; the
/// true root agrees with `r` modulo `p^(k-t)`, which is the absolute
/// precision of the result.
pub fn hensel_lift_root_with_gap(f: &IntPoly, p: u64, r0: &BigInt, k: u32) -> Result<PadicNumber> {
    let df = f.derivative();
    let d0 = df.eval(r0);
    if d0.is_zero() {
        return Err(Error::NoLift(format!("f'({r0}) = 0")));
    }
    let t = valuation(&d0, p).0;
    let f0 = f.eval(r0);
    let cap = 2 * t + k + 1;
    if val_or(&f0, p, cap) <= 2 * t {
        return Err(Error::NoLift(format!("v(f({r0})) must exceed 2·v(f'({r0})) = {}", 2 * t)));
    }
    if k <= t {
        return Err(Error::invalid(format!("precision {k} does not exceed v(f') = {t}")));
    }
    let work = pow_p(p, k + t);
    let pt = pow_p(p, t);
    let mut r = r0.mod_floor(&work);
    loop {
        let fr = f.eval(&r);
        if val_or(&fr, p, k) >= k {
            break;
        }
        let dr = df.eval(&r);
        debug_assert_eq!(valuation(&dr, p).0, t);
        let inv = mod_inverse(&(&dr / &pt), &work).expect("unit derivative");
        let step = ((&fr / &pt) * inv).mod_floor(&work);
        r = (&r - step).mod_floor(&work);
    }
    Ok(PadicNumber::from_integer(&r, p, (k - t) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn cube_root_of_three_in_q2() {
        let f = IntPoly::binomial(3, &big(3));
        let r = hensel_lift_root(&f, 2, &big(1), 6).unwrap();
        let r = r.to_integer().unwrap();
        assert!(f.eval(&r).mod_floor(&big(64)).is_zero());
        assert_eq!(r.mod_floor(&big(2)), big(1));
    }

    #[test]
    fn sqrt_minus_one_in_q5() {
        // brute-force oracle over residues mod 5^4
        let roots: Vec<i64> = (0..625).filter(|x| (x * x + 1) % 625 == 0).collect();
        assert_eq!(roots, vec![182, 443]);
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let r = hensel_lift_root(&f, 5, &big(2), 4).unwrap();
        assert_eq!(r.to_integer().unwrap(), big(182));
    }

    #[test]
    fn linear_polynomial() {
        let f = IntPoly::from_i64(&[-7, 1]);
        let r = hensel_lift_root(&f, 3, &big(1), 3).unwrap();
        assert_eq!(r.to_integer().unwrap(), big(7));
    }

    #[test]
    fn repeated_root_is_rejected() {
        let f = IntPoly::binomial(2, &big(65));
        assert!(matches!(hensel_lift_root(&f, 2, &big(1), 8), Err(Error::NoLift(_))));
        // the gap criterion handles it once r0 is good mod 8
        let r = hensel_lift_root_with_gap(&f, 2, &big(1), 10).unwrap();
        assert_eq!(r.absolute_precision(), 9);
        let r = r.to_integer().unwrap();
        // any representative mod 2^9 is a root mod 2^10 since 10 >= 2·v(f')
        assert!(f.eval(&r).mod_floor(&big(1 << 10)).is_zero());
        assert!(f.eval(&(&r + 512)).mod_floor(&big(1 << 10)).is_zero());
    }

    #[test]
    fn non_root_is_rejected() {
        let f = IntPoly::binomial(2, &big(3));
        assert!(hensel_lift_root(&f, 5, &big(1), 4).is_err());
    }
}
