//! Scenario orchestration: configuration, the built-in scenarios and the
//! structured report they produce.

mod config;
mod report;
mod scenarios;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serializer;

pub use config::{Config, Creutz2Config, Dz2Config, RemarkConfig, Selmer30Config, WcConfig};
pub use report::{Basis, Expectation, Outcome, Report, ReportBuilder, RunReport, Status, Step, SCHEMA};
pub use scenarios::{run_scenario, scenario_ids};

use crate::error::{Error, Result};

/// Serializes a big integer as a decimal string.
pub fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Runs the given scenarios, on `jobs` threads when `jobs > 1`. Reports come
/// back in the order of `ids` either way.
pub fn run_scenarios(ids: &[String], cfg: &Config, jobs: usize) -> Result<RunReport> {
    let reports = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| ids.par_iter().map(|id| run_scenario(id, cfg)).collect::<Result<Vec<_>>>())?
    } else {
        ids.iter().map(|id| run_scenario(id, cfg)).collect::<Result<Vec<_>>>()?
    };
    Ok(RunReport::new(cfg.clone(), reports))
}

/// Every built-in scenario.
pub fn run_all(cfg: &Config, jobs: usize) -> Result<RunReport> {
    run_scenarios(&scenario_ids(cfg), cfg, jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario() {
        let err = run_scenario("nope", &Config::default()).unwrap_err();
        assert!(matches!(err, Error::NotFound(_)));
        assert!(run_scenario("selmer-wc-x", &Config::default()).is_err());
    }

    #[test]
    fn registry() {
        let ids = scenario_ids(&Config::default());
        assert_eq!(ids.len(), 9);
        assert!(ids.contains(&"selmer-wc-354".to_string()));
    }
}
