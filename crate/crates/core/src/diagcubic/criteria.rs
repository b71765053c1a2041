//! Local criteria for the class of `C: X³ + 3Y³ + d′Z³ = 0` (with `d = 3d′`)
//! to lie in δ₃(E(K)[3]), and the rational 3-torsion of `x³ + y³ + dz³ = 0`.
//!
//! The five sufficient conditions over `K = ℚ_v`, numbered as cases:
//!
//! 1. `3` is a cube;
//! 2. `d′` is a cube;
//! 3. `3d` is a cube;
//! 4. `d` is a cube and `K` contains the 9th roots of unity;
//! 5. `d` is a cube and `K` contains a cube root of unity `ζ₃` with `3ζ₃` a cube.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::curve::ProjPoint;
use crate::error::{Error, Result};
use crate::localfields::primes::mod_pow;
use crate::localfields::{
    exact_root, hensel_lift_root, is_cube_local, is_cube_padic, is_cubic_residue, mod_u64, IntPoly, PadicNumber, Place,
};

pub type CaseId = u8;

pub(crate) fn split_d(d: &BigInt) -> Result<BigInt> {
    if d.is_zero() {
        return Err(Error::invalid("d must be nonzero"));
    }
    let (q, r) = d.div_rem(&BigInt::from(3));
    if !r.is_zero() {
        return Err(Error::invalid(format!("{d} is not divisible by 3")));
    }
    Ok(q)
}

fn cube_at(n: &BigInt, v: &Place) -> Result<bool> {
    is_cube_local(&BigRational::from_integer(n.clone()), v)
}

/// A root of unity of order `n | p - 1` modulo `p`, as `g^((p-1)/n)` for the
/// least non-cube `g` (order exactly `n` when `n` is a power of 3).
fn unity_root_mod(p: u64, n: u64) -> u64 {
    let g = (2..p).find(|&g| !is_cubic_residue(g, p)).expect("p ≡ 1 mod 3 has non-cubes");
    mod_pow(g, (p - 1) / n, p)
}

/// The two primitive cube roots of unity in ℚ_p (`p ≡ 1 mod 3`), lifted via
/// `x² + x + 1`.
pub fn zeta3_roots(p: u64, k: u32) -> Result<Vec<PadicNumber>> {
    if p % 3 != 1 {
        return Ok(Vec::new());
    }
    let z = unity_root_mod(p, 3);
    let f = IntPoly::from_i64(&[1, 1, 1]);
    let mut roots = [z, (z as u128 * z as u128 % p as u128) as u64];
    roots.sort_unstable();
    roots.iter().map(|&r| hensel_lift_root(&f, p, &BigInt::from(r), k)).collect()
}

/// A primitive 9th root of unity in ℚ_p (`p ≡ 1 mod 9`), a root of `x⁶ + x³ + 1`.
pub fn zeta9(p: u64, k: u32) -> Result<Option<PadicNumber>> {
    if p % 9 != 1 {
        return Ok(None);
    }
    let f = IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]);
    hensel_lift_root(&f, p, &BigInt::from(unity_root_mod(p, 9)), k).map(Some)
}

/// Primitive `ζ₃ ∈ ℚ_p` with `3ζ₃` a cube, if any.
pub fn zeta3_with_cube_multiple(p: u64, k: u32) -> Result<Option<PadicNumber>> {
    for z in zeta3_roots(p, k)? {
        if is_cube_padic(&z.scale(&BigInt::from(3)))? {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Whether the condition of `case` holds over ℚ_v.
pub fn case_holds(case: CaseId, d: &BigInt, v: &Place) -> Result<bool> {
    let dp = split_d(d)?;
    match case {
        1 => cube_at(&BigInt::from(3), v),
        2 => cube_at(&dp, v),
        3 => cube_at(&(d * 3), v),
        4 | 5 => {
            if !cube_at(d, v)? {
                return Ok(false);
            }
            let Some(p) = v.prime() else {
                // ℝ contains neither primitive 9th nor primitive cube roots of unity
                return Ok(false);
            };
            if case == 4 {
                Ok(p % 9 == 1)
            } else {
                Ok(zeta3_with_cube_multiple(p, 2)?.is_some())
            }
        }
        _ => Err(Error::invalid(format!("no case {case}"))),
    }
}

/// The least-numbered case that holds over ℚ_v, if any.
pub fn lemma42_case(d: &BigInt, v: &Place) -> Result<Option<CaseId>> {
    split_d(d)?;
    for case in 1..=5 {
        if case_holds(case, d, v)? {
            return Ok(Some(case));
        }
    }
    Ok(None)
}

/// Index of the cube class of a unit `a` in the cyclic group 𝔽_p^×/𝔽_p^{×3},
/// for `p ≡ 1 mod 3`, relative to the class of the least non-cube.
fn cube_class_index(a: u64, p: u64) -> u8 {
    let e = (p - 1) / 3;
    let g = (2..p).find(|&g| !is_cubic_residue(g, p)).expect("p ≡ 1 mod 3 has non-cubes");
    let omega = mod_pow(g, e, p);
    let chi = mod_pow(a, e, p);
    match chi {
        1 => 0,
        c if c == omega => 1,
        _ => 2,
    }
}

/// The case selected by the argument for good primes, as a function of
/// `p mod 9` and the cube classes (in ℤ/3) of `3` and `d′`.
///
/// For `p ≢ 1 mod 3` every unit is a cube, so the classes are ignored.
/// Otherwise cases 1–3 are tried in order; if none applies then `d = 3·d′`
/// is a cube, and case 4 or 5 applies according to whether `ζ₃` is a cube,
/// i.e. whether `p ≡ 1 mod 9`.
pub fn case_from_pattern(p_mod_9: u64, class3: u8, class_dprime: u8) -> Result<CaseId> {
    if p_mod_9 % 3 != 1 {
        return Ok(1);
    }
    let (c3, cd) = (class3 % 3, class_dprime % 3);
    if c3 == 0 {
        return Ok(1);
    }
    if cd == 0 {
        return Ok(2);
    }
    // 3d = 9d′ has class 2·c3 + cd
    if (2 * c3 + cd) % 3 == 0 {
        return Ok(3);
    }
    if (c3 + cd) % 3 != 0 {
        return Err(Error::CertificateFailure(format!("pattern ({p_mod_9}, {c3}, {cd}) leaves d a non-cube")));
    }
    // The class of 3 is a nonzero element of a group of order 3. If ζ₃ is not
    // a cube it generates that group, so some 3ζ₃^i is a cube.
    Ok(if p_mod_9 == 1 { 4 } else { 5 })
}

/// One row of the finite case analysis covering all good primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasePattern {
    pub p_mod_9: u64,
    pub class3: u8,
    pub class_dprime: u8,
    pub case: CaseId,
}

/// Every residue pattern a good prime can exhibit, with its case. The table is
/// total: a pattern without a case would be an error.
pub fn corollary43_case_table() -> Result<Vec<CasePattern>> {
    let mut rows = Vec::new();
    for p_mod_9 in [1u64, 2, 4, 5, 7, 8] {
        let classes: &[u8] = if p_mod_9 % 3 == 1 { &[0, 1, 2] } else { &[0] };
        for &class3 in classes {
            for &class_dprime in classes {
                let case = case_from_pattern(p_mod_9, class3, class_dprime)?;
                rows.push(CasePattern { p_mod_9, class3, class_dprime, case });
            }
        }
    }
    Ok(rows)
}

/// The case supplied by the good-prime argument at a prime `p ∤ d`.
pub fn corollary43_check(d: &BigInt, p: u64) -> Result<CaseId> {
    let dp = split_d(d)?;
    let v = Place::finite(p)?;
    if mod_u64(d, p) == 0 {
        return Err(Error::invalid(format!("{p} divides d = {d}")));
    }
    if p % 3 != 1 {
        return case_from_pattern(p % 9, 0, 0);
    }
    let class3 = cube_class_index(3 % p, p);
    let class_dprime = cube_class_index(mod_u64(&dp, p), p);
    let case = case_from_pattern(p % 9, class3, class_dprime)?;
    if case == 5 && zeta3_with_cube_multiple(p, 2)?.is_none() {
        return Err(Error::CertificateFailure(format!("no ζ₃ with 3ζ₃ a cube at {v}")));
    }
    Ok(case)
}

/// All rational points of `x³ + y³ + dz³ = 0` on `xyz = 0`.
pub fn rational_three_torsion(d: &BigInt) -> Result<Vec<ProjPoint>> {
    if d.is_zero() {
        return Err(Error::invalid("d must be nonzero"));
    }
    let mut out = vec![ProjPoint::from_i64(1, -1, 0)?];
    if let Some(r) = exact_root(d, 3) {
        out.push(ProjPoint::new(BigInt::zero(), -r.clone(), BigInt::from(1))?);
        out.push(ProjPoint::new(-r, BigInt::zero(), BigInt::from(1))?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}
