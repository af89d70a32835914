use rand::Rng;
use rand_distr::{Beta, Distribution};

use crate::error::{Error, Result};
use crate::model::{Flip, Instance, RunningStats};

/// Guards the min-max denominator.
pub const NORMALIZE_EPS: f64 = 1e-9;

/// Shared knobs of the directional operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preference {
    /// Shape of the symmetric Beta the return/risk weight is drawn from.
    pub alpha: f64,
    /// Risk weight.
    pub gamma: f64,
    /// Strength of the regional shortfall bias.
    pub k_bias: f64,
}

impl Default for Preference {
    fn default() -> Self {
        Self {
            alpha: 0.7,
            gamma: 1.3,
            k_bias: 0.3,
        }
    }
}

impl Preference {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::config(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::config(format!("gamma must be non-negative, got {}", self.gamma)));
        }
        if !(self.k_bias >= 0.0 && self.k_bias.is_finite()) {
            return Err(Error::config(format!("k_bias must be non-negative, got {}", self.k_bias)));
        }
        Ok(())
    }

    /// Draws `rho ~ Beta(alpha, alpha)`, kept strictly inside (0, 1).
    pub fn draw_rho<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let beta = Beta::new(self.alpha, self.alpha).expect("alpha validated positive");
        beta.sample(rng).clamp(1e-12, 1.0 - 1e-12)
    }
}

/// `(u - min) / (max - min + eps)`. Empty input gives an empty vector.
pub fn minmax_normalize(u: &[f64], eps: f64) -> Vec<f64> {
    let Some(lo) = u.iter().copied().reduce(f64::min) else {
        return Vec::new();
    };
    let hi = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let den = hi - lo + eps;
    u.iter().map(|x| (x - lo) / den).collect()
}

/// `k * max(0, quota - count)`.
pub fn shortfall_bias(quota: u32, count: u32, k_bias: f64) -> f64 {
    k_bias * quota.saturating_sub(count) as f64
}

/// Selected projects per region-and-kind group.
pub fn group_counts(instance: &Instance, bits: &[bool]) -> Vec<u32> {
    let mut counts = vec![0u32; instance.group_quota().len()];
    for (g, b) in instance.groups().iter().zip(bits) {
        if *b {
            counts[*g] += 1;
        }
    }
    counts
}

/// Shortfall bias of locus `i` under selection `bits`.
pub fn region_bias(instance: &Instance, bits: &[bool], i: usize, k_bias: f64) -> f64 {
    let g = instance.groups()[i];
    let count = instance.groups().iter().zip(bits).filter(|(h, b)| **h == g && **b).count() as u32;
    shortfall_bias(instance.group_quota()[g], count, k_bias)
}

/// Direction(1) and Direction(0) of one locus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionScores {
    pub to_one: f64,
    pub to_zero: f64,
}

/// Normalized returns and risk deltas over a candidate set, with the drawn
/// preference. Vectors are indexed by position in `candidates`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionContext {
    pub rho: f64,
    pub gamma: f64,
    pub candidates: Vec<usize>,
    pub g_hat: Vec<f64>,
    pub d_plus_hat: Vec<f64>,
    pub d_minus_hat: Vec<f64>,
}

impl DirectionContext {
    /// Risk deltas are taken against the statistics of `bits` and the whole
    /// candidate set is normalized at once.
    pub fn build(instance: &Instance, bits: &[bool], candidates: Vec<usize>, rho: f64, gamma: f64) -> Self {
        let returns = instance.returns();
        let stats = selection_stats(returns, bits);
        let g: Vec<f64> = candidates.iter().map(|&i| returns[i]).collect();
        let d_plus: Vec<f64> = candidates.iter().map(|&i| stats.delta_m(returns[i], Flip::Add)).collect();
        let d_minus: Vec<f64> = candidates.iter().map(|&i| stats.delta_m(returns[i], Flip::Remove)).collect();
        Self {
            rho,
            gamma,
            g_hat: minmax_normalize(&g, NORMALIZE_EPS),
            d_plus_hat: minmax_normalize(&d_plus, NORMALIZE_EPS),
            d_minus_hat: minmax_normalize(&d_minus, NORMALIZE_EPS),
            candidates,
        }
    }

    /// Scores of the `j`-th candidate with bias `bias`.
    pub fn scores(&self, j: usize, bias: f64) -> DirectionScores {
        direction_scores(self.rho, self.gamma, self.g_hat[j], self.d_plus_hat[j], self.d_minus_hat[j], bias)
    }

    /// Normalized return spread over a full-length vector, zero off the
    /// candidate set.
    pub fn g_hat_by_locus(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (j, &i) in self.candidates.iter().enumerate() {
            out[i] = self.g_hat[j];
        }
        out
    }
}

pub fn direction_scores(rho: f64, gamma: f64, g_hat: f64, d_plus_hat: f64, d_minus_hat: f64, bias: f64) -> DirectionScores {
    DirectionScores {
        to_one: rho * g_hat - (1.0 - rho) * gamma * d_plus_hat + bias,
        to_zero: -rho * g_hat - (1.0 - rho) * gamma * d_minus_hat,
    }
}

/// Desirability of flipping a bit currently at `bit`.
pub fn flip_gain(bit: bool, scores: DirectionScores) -> f64 {
    if bit {
        -scores.to_zero
    } else {
        scores.to_one
    }
}

pub(crate) fn selection_stats(returns: &[f64], bits: &[bool]) -> RunningStats {
    RunningStats::from_values(returns.iter().zip(bits).filter(|(_, b)| **b).map(|(g, _)| *g))
}
