//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines always reach the output.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use divcheck_core::diagcubic::{projective_congruence, three_torsion_locus, Congruence};
use divcheck_core::localfields::{is_cube_local, is_square_local, nth_root_local, primes_up_to, EXACT};
use divcheck_core::verify::{run_scenario, Config, Report, Status};
use divcheck_core::weierstrass::{
    delta2, image_by_reduction, local_kummer_image, two_torsion_delta2_image, KummerSampling,
};
use divcheck_core::{CoveringMap, DiagonalCubic, ECPoint, FactoredCubicCurve, PadicNumber, Place};

struct Verdict {
    pass: bool,
    detail: String,
    /// A failure analysed and recorded as a property of the mathematics, not
    /// of the implementation.
    known: bool,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into(), known: false }
}

fn scenario_check(ids: &[String], required_steps: &[&str], limit: Duration) -> Verdict {
    let cfg = Config::default();
    let start = Instant::now();
    let reports: Vec<Report> = ids.iter().map(|id| run_scenario(id, &cfg).expect("registered")).collect();
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for r in &reports {
        for s in &r.steps {
            if s.status != Status::Pass {
                problems.push(format!("{}/{}: {}", r.scenario, s.name, s.detail));
            }
        }
        for name in required_steps {
            if r.step(name).is_none() {
                problems.push(format!("{}: missing step {name}", r.scenario));
            }
        }
    }
    let steps: usize = reports.iter().map(|r| r.steps.len()).sum();
    verdict(
        problems.is_empty() && elapsed < limit,
        format!(
            "{steps} steps, {:.2?} (limit {:?}){}",
            elapsed,
            limit,
            if problems.is_empty() { String::new() } else { format!("; {problems:?}") }
        ),
    )
}

fn criterion_1() -> Verdict {
    scenario_check(
        &["dz2".into()],
        &[
            "point-on-curve",
            "delta2-of-point",
            "two-torsion-image",
            "local-membership-bad-places",
            "local-membership-good-primes",
            "global-non-membership",
            "two-primary-torsion",
        ],
        Duration::from_secs(5),
    )
}

fn criterion_2() -> Verdict {
    scenario_check(
        &["selmer30".into()],
        &[
            "point-on-cover",
            "covering-image",
            "bad-place-cases",
            "local-certificate",
            "rational-three-torsion",
            "no-rational-flex",
        ],
        Duration::from_secs(10),
    )
}

fn criterion_3() -> Verdict {
    let ids: Vec<String> = [138, 165, 300, 354].iter().map(|d| format!("selmer-wc-{d}")).collect();
    scenario_check(
        &ids,
        &["d-prime-cube-at-3", "three-cube-at-d-prime", "local-certificate", "point-search"],
        Duration::from_secs(60),
    )
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let r = run_scenario("lemma42-suite", &Config::default()).unwrap();
    let elapsed = start.elapsed();
    let mut low_precision = Vec::new();
    for case in 1..=5 {
        let step = r.step(&format!("case-{case}")).expect("case step");
        let k = step.witness["precision"].as_u64().unwrap_or(0);
        if k < 8 {
            low_precision.push(case);
        }
    }
    let primes: Vec<String> =
        (1..=5).filter_map(|c| r.step(&format!("case-{c}")).map(|s| s.witness["prime"].to_string())).collect();
    verdict(
        r.status == Status::Pass && low_precision.is_empty() && elapsed < Duration::from_secs(30),
        format!("cases 1-5 at primes {primes:?}, precision >= 8, {:.2?} (limit 30s)", elapsed),
    )
}

fn square_oracle(unit: u64, v: i64, p: u64) -> bool {
    let m = if p == 2 { 8 } else { p };
    v % 2 == 0 && (1..m).any(|x| x % p != 0 && x * x % m == unit % m)
}

fn cube_oracle(unit: u64, v: i64, p: u64) -> bool {
    let m = if p == 3 { 9 } else { p };
    v.rem_euclid(3) == 0 && (1..m).any(|x| x % p != 0 && x * x % m * x % m == unit % m)
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    // exhaustive residue enumeration, p ≤ 50, a = u·p^e
    let mismatches: usize = primes_up_to(50)
        .par_iter()
        .map(|&p| {
            let v = Place::finite(p).unwrap();
            let mut bad = 0;
            for u in 1..=p * p * p {
                let (mut unit, mut val) = (u, 0i64);
                while unit % p == 0 {
                    unit /= p;
                    val += 1;
                }
                for e in -2i64..=2 {
                    let pe = BigInt::from(p).pow(e.unsigned_abs() as u32);
                    let a = if e >= 0 {
                        BigRational::from_integer(BigInt::from(u) * pe)
                    } else {
                        BigRational::new(BigInt::from(u), pe)
                    };
                    if is_square_local(&a, &v).unwrap() != square_oracle(unit, val + e, p)
                        || is_cube_local(&a, &v).unwrap() != cube_oracle(unit, val + e, p)
                    {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();

    // sampled Kummer image against E(F_p)-enumeration and against the torsion image
    let curves = [
        ("y²=(x−1365)(x−1430)(x+2795)", FactoredCubicCurve::from_i64(1365, 1430, -2795).unwrap()),
        ("y²=x(x+80)(x+205)", FactoredCubicCurve::from_i64(0, -80, -205).unwrap()),
    ];
    let mut reduction_mismatch = Vec::new();
    let mut torsion_differs = Vec::new();
    let mut torsion_differs_unexplained = Vec::new();
    for (name, e) in &curves {
        let bad = e.bad_primes().unwrap();
        for p in primes_up_to(50).into_iter().filter(|p| *p != 2 && !bad.contains(p)) {
            let v = Place::finite(p).unwrap();
            let sampled = local_kummer_image(e, &v, 6, &KummerSampling::default()).unwrap();
            let by_reduction = image_by_reduction(e, p).unwrap();
            if sampled != by_reduction {
                reduction_mismatch.push(format!("{name} at {p}"));
            }
            let torsion: BTreeSet<_> =
                two_torsion_delta2_image(e).unwrap().iter().map(|t| t.localize(&v).unwrap()).collect();
            if sampled != torsion {
                torsion_differs.push(format!("{name} at {p}"));
                // expected only when the torsion image is a proper subgroup of a full image
                if !(torsion.is_subset(&sampled) && sampled.len() == 4 && torsion.len() < 4) {
                    torsion_differs_unexplained.push(format!("{name} at {p}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let sound = mismatches == 0
        && reduction_mismatch.is_empty()
        && torsion_differs_unexplained.is_empty()
        && elapsed < Duration::from_secs(60);
    let pass = sound && torsion_differs.is_empty();
    let detail = format!(
        "square/cube oracle mismatches {mismatches}; sampled image vs E(F_p) image mismatches {reduction_mismatch:?}; \
         sampled image differs from the 2-torsion image at {torsion_differs:?} \
         (there the local image has order 4 but some 2-torsion point is divisible by 2 over Q_p); {:.2?} (limit 60s)",
        elapsed
    );
    Verdict { pass, detail, known: sound && !pass }
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let e = FactoredCubicCurve::from_i64(1365, 1430, -2795).unwrap();
    let p = ECPoint::from_i64(341, 59136);
    let t = e.two_torsion();
    let pool: Vec<ECPoint> = (-3..=3)
        .flat_map(|k| {
            let kp = e.scalar_mul(k, &p).unwrap();
            let mut v = vec![kp.clone()];
            v.extend(t.iter().map(|tt| e.add(&kp, tt).unwrap()));
            v
        })
        .collect();
    let pick = |rng: &mut ChaCha8Rng| pool[rng.random_range(0..pool.len())].clone();
    let mut failures = 0usize;
    let triples = 1000;
    for _ in 0..triples {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let ab = e.add(&a, &b).unwrap();
        if ab != e.add(&b, &a).unwrap() || e.add(&ab, &c).unwrap() != e.add(&a, &e.add(&b, &c).unwrap()).unwrap() {
            failures += 1;
        }
        if delta2(&e, &ab).unwrap() != delta2(&e, &a).unwrap().mul(&delta2(&e, &b).unwrap()) {
            failures += 1;
        }
        if !delta2(&e, &e.scalar_mul(2, &c).unwrap()).unwrap().is_identity() {
            failures += 1;
        }
    }

    // homogeneity on ℚ₁₁-points of X³ + 3Y³ + 10Z³ = 0
    let cov = CoveringMap::new(DiagonalCubic::from_i64(1, 3, 10).unwrap());
    let (q, k) = (11u64, 12u32);
    let mut homogeneity_checks = 0;
    while homogeneity_checks < 1000 {
        let (x, y) = (BigInt::from(rng.random_range(1u64..1 << 40)), BigInt::from(rng.random_range(0u64..1 << 40)));
        let rhs: BigInt = -(&x * &x * &x + BigInt::from(3) * &y * &y * &y);
        let Some(z) =
            nth_root_local(&BigRational::new(rhs, BigInt::from(10)), 3, &Place::finite(q).unwrap(), k + 4).unwrap()
        else {
            continue;
        };
        let pt = [PadicNumber::from_integer(&x, q, 60), PadicNumber::from_integer(&y, q, 60), z];
        let image = cov.covering_eval_padic(&pt);
        for lambda in [1i64, -1, 2, 3, 5] {
            let scaled = pt.clone().map(|c| c.scale(&BigInt::from(lambda)));
            if !matches!(
                projective_congruence(&image, &cov.covering_eval_padic(&scaled), k),
                Ok(Congruence::Match { .. })
            ) {
                failures += 1;
            }
        }
        homogeneity_checks += 1;
    }

    // flex collapse: (−∛3 : 1 : 0) over ℚ₂ and ℚ₅, (−∛10 : 0 : 1) over ℚ₃
    let mut flex_checks = 0;
    for (p, ratio, zero_at) in [(2u64, 3i64, 2usize), (5, 3, 2), (3, 10, 1)] {
        let r = nth_root_local(&BigRational::from_integer(BigInt::from(-ratio)), 3, &Place::finite(p).unwrap(), k + 6)
            .unwrap()
            .expect("root exists");
        let one = PadicNumber::from_integer(&BigInt::from(1), p, 60);
        let mut pt = [r, one.clone(), one];
        pt[zero_at] = PadicNumber::zero(p, EXACT);
        let image = cov.covering_eval_padic(&pt);
        let top = image.iter().filter_map(|c| c.valuation()).min().expect("nonzero image");
        if !image.iter().any(|c| c.valuation().is_none_or(|w| w >= top + k as i64)) {
            failures += 1;
        }
        flex_checks += 1;
    }
    let rational = cov.covering_eval(&divcheck_core::ProjPoint::from_i64(-11, 3, 5).unwrap()).unwrap();
    if three_torsion_locus(&rational) {
        failures += 1;
    }
    verdict(
        failures == 0,
        format!("{triples} group-law/δ₂ triples, {homogeneity_checks}×5 scalings, {flex_checks} flex points; {failures} failures"),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 6] = [
        ("dz2 scenario", criterion_1),
        ("selmer30 scenario", criterion_2),
        ("selmer-wc scenarios", criterion_3),
        ("lemma42 suite", criterion_4),
        ("oracle equivalence", criterion_5),
        ("algebraic properties", criterion_6),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        let tag = match (v.pass, v.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (analysed, see decisions ledger)",
            (false, false) => "FAIL",
        };
        println!("criterion {} [{name}]: {tag} - {}", i + 1, v.detail);
        if !v.pass && !v.known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
