use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Seed, MAX_VERTICES};
use crate::moments::{PkMode, PkiMode};
use crate::search::{DEFAULT_ITERATION_BUDGET, DEFAULT_NODE_BUDGET};

/// Largest order searched exactly when the search mode is `auto`.
pub const DEFAULT_EXACT_CAP: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Largest induced regular subgraph of seeded G(n, 1/2) samples.
    Sweep,
    /// Variance bound summaries over a grid of (n, k).
    Moments,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Exact up to `exact_cap`, heuristic above.
    #[default]
    Auto,
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: ExperimentKind,
    pub n_values: Vec<u64>,
    /// Used by `moments` only.
    #[serde(default)]
    pub k_values: Vec<u64>,
    #[serde(default = "one")]
    pub trials: u64,
    pub seed: Seed,
    /// How p_k enters log E[X]. `exact` falls back to the estimate above
    /// the exact budget.
    #[serde(default = "exact_pk")]
    pub pk_mode: PkMode,
    #[serde(default = "lemma_bound")]
    pub pki_mode: PkiMode,
    #[serde(default)]
    pub search: SearchMode,
    #[serde(default = "exact_cap")]
    pub exact_cap: usize,
    #[serde(default = "node_budget")]
    pub node_budget: u64,
    #[serde(default = "iteration_budget")]
    pub iteration_budget: u64,
    #[serde(default)]
    pub output: Option<String>,
}

fn one() -> u64 {
    1
}
fn exact_pk() -> PkMode {
    PkMode::Exact
}
fn lemma_bound() -> PkiMode {
    PkiMode::LemmaBound
}
fn exact_cap() -> usize {
    DEFAULT_EXACT_CAP
}
fn node_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}
fn iteration_budget() -> u64 {
    DEFAULT_ITERATION_BUDGET
}

impl ExperimentConfig {
    /// A sweep with default modes and budgets.
    pub fn sweep(n_values: Vec<u64>, trials: u64, seed: Seed) -> Self {
        ExperimentConfig {
            command: ExperimentKind::Sweep,
            n_values,
            k_values: Vec::new(),
            trials,
            seed,
            pk_mode: exact_pk(),
            pki_mode: lemma_bound(),
            search: SearchMode::Auto,
            exact_cap: DEFAULT_EXACT_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            iteration_budget: DEFAULT_ITERATION_BUDGET,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::config("n_values", "must not be empty"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        match self.command {
            ExperimentKind::Sweep => {
                if let Some(&n) = self.n_values.iter().find(|&&n| n == 0 || n as usize > MAX_VERTICES) {
                    return Err(Error::config(
                        "n_values",
                        format!("{n} outside 1..={MAX_VERTICES}"),
                    ));
                }
                if self.search == SearchMode::Exact {
                    if let Some(&n) = self.n_values.iter().find(|&&n| n as usize > self.exact_cap) {
                        return Err(Error::config(
                            "search",
                            format!("exact search requested for n = {n}, above the cap {}", self.exact_cap),
                        ));
                    }
                }
            }
            ExperimentKind::Moments => {
                if self.k_values.is_empty() {
                    return Err(Error::config("k_values", "must not be empty"));
                }
                if let Some(&k) = self.k_values.iter().find(|&&k| k < 3 || k % 2 == 0) {
                    return Err(Error::config("k_values", format!("{k} is not an odd k >= 3")));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| Error::config("json", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut cfg = ExperimentConfig::sweep(vec![20, 30], 5, Seed(42));
        cfg.output = Some("out.csv".into());
        let back = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = ExperimentConfig::from_json(r#"{"command":"sweep","n_values":[10],"seed":3}"#).unwrap();
        assert_eq!(cfg.trials, 1);
        assert_eq!(cfg.exact_cap, DEFAULT_EXACT_CAP);
        assert_eq!(cfg.search, SearchMode::Auto);
    }

    #[test]
    fn validation_names_the_field() {
        let field = |cfg: ExperimentConfig| match cfg.validate() {
            Err(Error::Config { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(field(ExperimentConfig::sweep(vec![], 1, Seed(0))), "n_values");
        assert_eq!(field(ExperimentConfig::sweep(vec![10], 0, Seed(0))), "trials");
        assert_eq!(field(ExperimentConfig::sweep(vec![65], 1, Seed(0))), "n_values");
        let mut exact = ExperimentConfig::sweep(vec![30], 1, Seed(0));
        exact.search = SearchMode::Exact;
        assert_eq!(field(exact), "search");
        let mut moments = ExperimentConfig::sweep(vec![1000], 1, Seed(0));
        moments.command = ExperimentKind::Moments;
        assert_eq!(field(moments.clone()), "k_values");
        moments.k_values = vec![10];
        assert_eq!(field(moments), "k_values");
        assert!(matches!(
            ExperimentConfig::from_json(r#"{"command":"sweep","n_values":[10],"seed":3,"bogus":1}"#),
            Err(Error::Config { .. })
        ));
    }
}
