//! Run configuration, loadable from TOML. Every field has a default, so an
//! empty document is the built-in configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Seed for every randomized step.
    pub seed: u64,
    /// Height bound for the absence searches on the wc curves.
    pub height: u64,
    /// Relative p-adic precision for explicit local points.
    pub precision: u32,
    /// Good primes up to this bound are checked one by one.
    pub good_prime_bound: u64,
    /// Random good primes above the bound.
    pub random_spot_checks: usize,
    pub dz2: Dz2Config,
    pub creutz2: Creutz2Config,
    pub selmer30: Selmer30Config,
    pub wc: WcConfig,
    pub remark: RemarkConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Dz2Config {
    /// `y² = (x−e₁)(x−e₂)(x−e₃)`, with `P₁ = (e₁,0)` and `P₂ = (e₂,0)`.
    pub roots: [i64; 3],
    pub point: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Creutz2Config {
    pub roots: [i64; 3],
    /// Precision of the sampled x-coordinates.
    pub kummer_precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Selmer30Config {
    pub d: i64,
    /// Coefficients `(a, b, c)` of the covering curve, `abc = d`.
    pub cover: [i64; 3],
    pub point: [i64; 3],
    /// Expected image on `x³ + y³ + dz³ = 0`.
    pub image: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WcConfig {
    pub d_list: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RemarkConfig {
    pub d_list: Vec<i64>,
    pub height: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            height: 10_000,
            precision: 12,
            good_prime_bound: 10_000,
            random_spot_checks: 1_000,
            dz2: Dz2Config::default(),
            creutz2: Creutz2Config::default(),
            selmer30: Selmer30Config::default(),
            wc: WcConfig::default(),
            remark: RemarkConfig::default(),
        }
    }
}

impl Default for Dz2Config {
    fn default() -> Self {
        Dz2Config { roots: [1365, 1430, -2795], point: [341, 59136] }
    }
}

impl Default for Creutz2Config {
    fn default() -> Self {
        Creutz2Config { roots: [0, -80, -205], kummer_precision: 6 }
    }
}

impl Default for Selmer30Config {
    fn default() -> Self {
        Selmer30Config { d: 30, cover: [1, 3, 10], point: [-11, 3, 5], image: [1523698559, -2736572309, 826803945] }
    }
}

impl Default for WcConfig {
    fn default() -> Self {
        WcConfig { d_list: vec![138, 165, 300, 354] }
    }
}

impl Default for RemarkConfig {
    fn default() -> Self {
        RemarkConfig { d_list: vec![51, 132, 159, 213, 219, 246, 267, 321, 348, 402, 435], height: 1_000 }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_default() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn round_trip_and_override() {
        let c = Config::default();
        assert_eq!(Config::from_toml(&c.to_toml()).unwrap(), c);
        let c = Config::from_toml("seed = 7\n[dz2]\npoint = [341, 59137]\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.dz2.point, [341, 59137]);
        assert_eq!(c.dz2.roots, [1365, 1430, -2795]);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Config::from_toml("sed = 1").is_err());
    }
}
