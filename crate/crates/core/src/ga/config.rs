use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};

/// Tunable parameters of a GA run.
///
/// `Default` is the single source of truth for defaults; the CLI only
/// overrides fields that were passed explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    /// Probability that a selected parent pair is recombined.
    pub crossover_rate: f64,
    /// Probability that a child receives one random swap.
    pub mutation_rate: f64,
    pub max_generations: u64,
    /// Stop as soon as the best cost is at or below this value.
    pub target_cost: Option<i64>,
    pub time_limit: Option<Duration>,
    pub elitism_count: usize,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 500,
            crossover_rate: 0.8,
            mutation_rate: 0.2,
            max_generations: 5000,
            target_cost: None,
            time_limit: None,
            elitism_count: 25,
            rng_seed: 0,
        }
    }
}

const KEYS: &[&str] = &[
    "population_size",
    "crossover_rate",
    "mutation_rate",
    "max_generations",
    "target_cost",
    "time_limit_s",
    "elitism_count",
    "rng_seed",
];

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::InvalidConfig(format!("`{key}`: cannot parse `{raw}`")))
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::PopulationTooSmall(self.population_size));
        }
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidConfig(format!("{name} {rate} is outside [0, 1]")));
            }
        }
        if self.elitism_count > self.population_size {
            return Err(Error::InvalidConfig(format!(
                "elitism_count {} exceeds population_size {}",
                self.elitism_count, self.population_size
            )));
        }
        Ok(())
    }

    /// Applies one `key = value` setting. `none` clears optional fields.
    pub fn set(&mut self, key: &str, raw: &str) -> Result<()> {
        let raw = raw.trim();
        match key {
            "population_size" => self.population_size = parse_value(key, raw)?,
            "crossover_rate" => self.crossover_rate = parse_value(key, raw)?,
            "mutation_rate" => self.mutation_rate = parse_value(key, raw)?,
            "max_generations" => self.max_generations = parse_value(key, raw)?,
            "target_cost" => {
                self.target_cost = match raw {
                    "none" => None,
                    _ => Some(parse_value(key, raw)?),
                }
            }
            "time_limit_s" => {
                self.time_limit = match raw {
                    "none" => None,
                    _ => {
                        let secs: f64 = parse_value(key, raw)?;
                        Some(Duration::try_from_secs_f64(secs).map_err(|_| {
                            Error::InvalidConfig(format!("`{key}`: invalid duration `{raw}`"))
                        })?)
                    }
                }
            }
            "elitism_count" => self.elitism_count = parse_value(key, raw)?,
            "rng_seed" => self.rng_seed = parse_value(key, raw)?,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unknown key `{key}` (expected one of: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Reads a flat `key = value` file on top of the defaults. `#` starts a comment.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = GaConfig::default();
        cfg.apply_kv_str(text)?;
        Ok(cfg)
    }

    pub fn apply_kv_str(&mut self, text: &str) -> Result<()> {
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected `key = value`", idx + 1))
            })?;
            self.set(key.trim(), value)
                .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", idx + 1)))?;
        }
        self.validate()
    }
}

impl fmt::Display for GaConfig {
    /// Renders the config in the `key = value` format accepted by [`GaConfig::from_kv_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "population_size = {}", self.population_size)?;
        writeln!(f, "crossover_rate = {}", self.crossover_rate)?;
        writeln!(f, "mutation_rate = {}", self.mutation_rate)?;
        writeln!(f, "max_generations = {}", self.max_generations)?;
        match self.target_cost {
            Some(t) => writeln!(f, "target_cost = {t}")?,
            None => writeln!(f, "target_cost = none")?,
        }
        match self.time_limit {
            Some(d) => writeln!(f, "time_limit_s = {}", d.as_secs_f64())?,
            None => writeln!(f, "time_limit_s = none")?,
        }
        writeln!(f, "elitism_count = {}", self.elitism_count)?;
        writeln!(f, "rng_seed = {}", self.rng_seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = GaConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.crossover_rate, 0.8);
        assert_eq!(cfg.mutation_rate, 0.2);
        assert_eq!(cfg.population_size, 500);
        assert_eq!(cfg.elitism_count, 25);
    }

    #[test]
    fn kv_round_trip() {
        let mut cfg = GaConfig::default();
        cfg.target_cost = Some(578);
        cfg.time_limit = Some(Duration::from_millis(1500));
        cfg.rng_seed = 42;
        let parsed = GaConfig::from_kv_str(&cfg.to_string()).unwrap();
        assert_eq!(parsed, cfg);
    }

    #[test]
    fn kv_comments_and_blank_lines() {
        let cfg = GaConfig::from_kv_str("# tuned\n\npopulation_size = 40  # small\nmutation_rate=0.5\n").unwrap();
        assert_eq!(cfg.population_size, 40);
        assert_eq!(cfg.mutation_rate, 0.5);
        assert_eq!(cfg.crossover_rate, 0.8);
    }

    #[test]
    fn kv_errors() {
        assert!(GaConfig::from_kv_str("popsize = 3").is_err());
        assert!(GaConfig::from_kv_str("population_size 3").is_err());
        assert!(GaConfig::from_kv_str("crossover_rate = 1.5").is_err());
        assert!(GaConfig::from_kv_str("population_size = 1").is_err());
        assert!(GaConfig::from_kv_str("elitism_count = 501").is_err());
        assert!(GaConfig::from_kv_str("time_limit_s = -1").is_err());
    }
}
