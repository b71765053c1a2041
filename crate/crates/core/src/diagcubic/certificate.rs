//! Certificates that the covering class is locally a coboundary of 3-torsion
//! at every place.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::criteria::{corollary43_case_table, corollary43_check, lemma42_case, split_d, CaseId, CasePattern};
use crate::error::{Error, Result};
use crate::localfields::{is_prime, mod_u64, primes::factor_u64, primes_up_to, Place};

#[derive(Clone, Copy, Debug)]
pub struct CertificateOptions {
    /// Every good prime up to this bound is checked directly.
    pub good_prime_bound: u64,
    /// Additional good primes drawn at random above the bound.
    pub random_spot_checks: usize,
    pub random_prime_ceiling: u64,
    pub seed: u64,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            good_prime_bound: 10_000,
            random_spot_checks: 1_000,
            random_prime_ceiling: 10_000_000,
            seed: 0,
        }
    }
}

/// Direct checks at individual good primes, comparing the good-prime
/// argument against the explicit case test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub bound: u64,
    pub primes_below_bound: usize,
    pub random_primes: Vec<u64>,
    pub case_counts: BTreeMap<CaseId, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCertificate {
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub d: BigInt,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub d_prime: BigInt,
    /// The real place and every prime dividing `3d`, with the case used there.
    pub bad_places: BTreeMap<Place, CaseId>,
    /// Proof for all remaining primes: the case for each residue pattern.
    pub good_prime_table: Vec<CasePattern>,
    pub spot_checks: SpotCheck,
}

impl LocalCertificate {
    pub fn case_at(&self, v: &Place) -> Option<CaseId> {
        self.bad_places.get(v).copied()
    }
}

fn check_good_prime(d: &BigInt, p: u64) -> Result<CaseId> {
    let argued = corollary43_check(d, p)?;
    let direct = lemma42_case(d, &Place::finite(p)?)?;
    if direct != Some(argued) {
        return Err(Error::CertificateFailure(format!(
            "at {p} the good-prime argument gives case {argued} but the direct test gives {direct:?}"
        )));
    }
    Ok(argued)
}

/// Builds the all-places certificate for `d = 3d′`.
pub fn local_divisibility_certificate(d: &BigInt, opts: &CertificateOptions) -> Result<LocalCertificate> {
    let d_prime = split_d(d)?;
    let abs = d.abs().to_u64().ok_or_else(|| Error::Unsupported(format!("{d} too large to factor")))?;

    let mut bad_places = BTreeMap::new();
    let mut places = vec![Place::Real];
    for (p, _) in factor_u64(abs) {
        places.push(Place::finite(p)?);
    }
    for v in places {
        let case = lemma42_case(d, &v)?
            .ok_or_else(|| Error::CertificateFailure(format!("no local case applies at {v} for d = {d}")))?;
        bad_places.insert(v, case);
    }

    let good_prime_table = corollary43_case_table()?;

    let mut primes: Vec<u64> =
        primes_up_to(opts.good_prime_bound).into_iter().filter(|&p| mod_u64(d, p) != 0).collect();
    let primes_below_bound = primes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut random_primes = Vec::with_capacity(opts.random_spot_checks);
    let lo = opts.good_prime_bound.max(3) + 1;
    if opts.random_prime_ceiling > lo {
        while random_primes.len() < opts.random_spot_checks {
            let p = rng.random_range(lo..=opts.random_prime_ceiling);
            if is_prime(p) && mod_u64(d, p) != 0 {
                random_primes.push(p);
            }
        }
    }
    primes.extend(&random_primes);

    let cases: Vec<CaseId> = primes.par_iter().map(|&p| check_good_prime(d, p)).collect::<Result<_>>()?;
    let mut case_counts = BTreeMap::new();
    for c in cases {
        *case_counts.entry(c).or_insert(0) += 1;
    }

    Ok(LocalCertificate {
        d: d.clone(),
        d_prime,
        bad_places,
        good_prime_table,
        spot_checks: SpotCheck { bound: opts.good_prime_bound, primes_below_bound, random_primes, case_counts },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CertificateOptions {
        CertificateOptions { good_prime_bound: 500, random_spot_checks: 20, ..Default::default() }
    }

    #[test]
    fn d30() {
        let cert = local_divisibility_certificate(&BigInt::from(30), &small()).unwrap();
        let expected: BTreeMap<Place, CaseId> = [
            (Place::Real, 1),
            (Place::finite(2).unwrap(), 1),
            (Place::finite(3).unwrap(), 2),
            (Place::finite(5).unwrap(), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(cert.bad_places, expected);
        assert_eq!(cert.spot_checks.random_primes.len(), 20);
        assert!(serde_json::to_string(&cert).unwrap().contains("\"real\":1"));
    }

    #[test]
    fn wc_values() {
        for d in [138i64, 165, 300, 354] {
            let cert = local_divisibility_certificate(&BigInt::from(d), &small()).unwrap();
            assert_eq!(cert.case_at(&Place::finite(3).unwrap()), Some(2));
            for (v, case) in &cert.bad_places {
                if *v != Place::finite(3).unwrap() {
                    assert_eq!(*case, 1, "d = {d}, v = {v}");
                }
            }
        }
    }

    #[test]
    fn trivial_dprime() {
        let cert = local_divisibility_certificate(&BigInt::from(3), &small()).unwrap();
        assert_eq!(cert.case_at(&Place::finite(3).unwrap()), Some(2));
    }

    #[test]
    fn d6_fails_at_three() {
        let err = local_divisibility_certificate(&BigInt::from(6), &small()).unwrap_err();
        assert!(matches!(err, Error::CertificateFailure(_)));
    }
}
