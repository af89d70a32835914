use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{MutationBudget, Preference};

/// Which operator set drives the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Directional crossover plus structure-aware mutation.
    #[default]
    Oe,
    /// Uniform crossover plus independent bit-flip mutation.
    Baseline,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Oe => "oe",
            Variant::Baseline => "baseline",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Variant::Oe => "OE-NSGA-II",
            Variant::Baseline => "NSGA-II",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "oe" | "oe-nsga-ii" | "oe_nsga2" => Ok(Variant::Oe),
            "baseline" | "nsga-ii" | "nsga2" => Ok(Variant::Baseline),
            other => Err(Error::config(format!("unknown variant `{other}` (expected oe or baseline)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub pop_size: usize,
    pub generations: usize,
    pub seed: u64,
    pub variant: Variant,
    pub alpha: f64,
    pub gamma: f64,
    pub k_bias: f64,
    /// Mutation budget ratio.
    pub beta: f64,
    pub l_min: usize,
    /// Baseline crossover probability.
    pub crossover_prob: f64,
    /// Baseline per-bit mutation probability.
    pub mutation_prob: f64,
    /// Drop repeated bit strings before truncation.
    pub eliminate_duplicates: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            generations: 500,
            seed: 2023,
            variant: Variant::Oe,
            alpha: 0.7,
            gamma: 1.3,
            k_bias: 0.3,
            beta: 0.05,
            l_min: 1,
            crossover_prob: 0.9,
            mutation_prob: 0.05,
            eliminate_duplicates: true,
        }
    }
}

impl SolverConfig {
    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_generations(mut self, generations: usize) -> Self {
        self.generations = generations;
        self
    }

    pub fn with_pop_size(mut self, pop_size: usize) -> Self {
        self.pop_size = pop_size;
        self
    }

    pub fn preference(&self) -> Preference {
        Preference {
            alpha: self.alpha,
            gamma: self.gamma,
            k_bias: self.k_bias,
        }
    }

    pub fn budget(&self) -> Result<MutationBudget> {
        MutationBudget::new(self.beta, self.l_min)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 4 || !self.pop_size.is_multiple_of(2) {
            return Err(Error::config(format!("pop_size must be even and at least 4, got {}", self.pop_size)));
        }
        if self.generations < 1 {
            return Err(Error::config("generations must be at least 1"));
        }
        self.preference().validate()?;
        self.budget()?;
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        Ok(())
    }
}
