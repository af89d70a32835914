//! Expert three-point elicitation and its Beta–Binomial fusion with history.

use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum / mode / maximum assessment of one quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreePointEstimate {
    pub min: f64,
    pub mode: f64,
    pub max: f64,
}

impl ThreePointEstimate {
    pub fn new(min: f64, mode: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && mode.is_finite() && max.is_finite()) {
            return Err(Error::input("three-point estimate must be finite"));
        }
        if !(min <= mode && mode <= max) {
            return Err(Error::input(format!(
                "three-point estimate requires min <= mode <= max, got ({min}, {mode}, {max})"
            )));
        }
        Ok(Self { min, mode, max })
    }

    pub fn constant(value: f64) -> Self {
        Self {
            min: value,
            mode: value,
            max: value,
        }
    }

    /// A point mass (`min == max`).
    pub fn is_degenerate(&self) -> bool {
        self.min == self.max
    }

    /// Mean of the triangular density on `[min, max]` with the given mode.
    pub fn triangular_mean(&self) -> f64 {
        (self.min + self.mode + self.max) / 3.0
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.is_degenerate() {
            return self.min;
        }
        // open interval: random() is in [0, 1)
        let mut u: f64 = rng.random();
        while u <= 0.0 {
            u = rng.random();
        }
        triangular_inv_cdf(u, self).expect("u drawn in (0, 1)")
    }
}

/// Inverse CDF of the triangular distribution.
///
/// Both branches meet at `u = (mode - min) / (max - min)` where the value is
/// the mode; the upper branch uses `(max - min)(max - mode)`.
pub fn triangular_inv_cdf(u: f64, est: &ThreePointEstimate) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::input(format!("uniform variate must lie in (0, 1), got {u}")));
    }
    let ThreePointEstimate { min: a, mode: b, max: c } = *est;
    if a == c {
        return Ok(a);
    }
    let split = (b - a) / (c - a);
    let x = if u < split {
        a + (u * (c - a) * (b - a)).sqrt()
    } else {
        c - ((1.0 - u) * (c - a) * (c - b)).sqrt()
    };
    Ok(x.clamp(a, c))
}

/// Mode-weighted PERT mean `(min + 4 mode + max) / 6`.
pub fn pert_mean(est: &ThreePointEstimate) -> f64 {
    if est.is_degenerate() {
        return est.mode;
    }
    (est.min + 4.0 * est.mode + est.max) / 6.0
}

/// Beta distribution over a success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaPosterior {
    pub alpha: f64,
    pub beta: f64,
}

impl BetaPosterior {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::input(format!(
                "Beta parameters must be positive and finite, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    /// Both shape parameters exceed one, so the density has an interior mode.
    pub fn is_unimodal(&self) -> bool {
        self.alpha > 1.0 && self.beta > 1.0
    }

    pub fn sampler(&self) -> Beta<f64> {
        Beta::new(self.alpha, self.beta).expect("validated shape parameters")
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        let dist = self.sampler();
        (0..n).map(|_| dist.sample(rng)).collect()
    }
}

/// Beta prior centred on the PERT mean with concentration `k`.
///
/// `k > 2` gives a unimodal prior; `0 < k <= 2` is accepted as long as both
/// shape parameters stay positive (check [`BetaPosterior::is_unimodal`]).
pub fn beta_prior_from_pert(mu_pert: f64, k: f64) -> Result<BetaPosterior> {
    if !(mu_pert > 0.0 && mu_pert < 1.0) {
        return Err(Error::input(format!("prior mean must lie in (0, 1), got {mu_pert}")));
    }
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::input(format!("concentration must be positive, got {k}")));
    }
    BetaPosterior::new(mu_pert * (k - 2.0) + 1.0, (1.0 - mu_pert) * (k - 2.0) + 1.0)
}

/// Conjugate update with `successes` and `failures` observed outcomes.
pub fn beta_posterior_update(prior: BetaPosterior, successes: u64, failures: u64) -> BetaPosterior {
    BetaPosterior {
        alpha: prior.alpha + successes as f64,
        beta: prior.beta + failures as f64,
    }
}
