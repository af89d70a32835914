use rand::Rng;

use super::repair::{cmp_desc_then_index, greedy_well_repair};
use super::scoring::{flip_gain, group_counts, shortfall_bias, DirectionContext, Preference};
use crate::error::{Error, Result};
use crate::model::{Chromosome, Instance};

/// Number of flips per mutation: `max(l_min, ceil(beta * n))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationBudget {
    beta: f64,
    l_min: usize,
}

impl MutationBudget {
    pub fn new(beta: f64, l_min: usize) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::config(format!("mutation budget ratio must lie in (0, 1), got {beta}")));
        }
        if l_min < 1 {
            return Err(Error::config("minimum flip count must be at least 1"));
        }
        Ok(Self { beta, l_min })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn l_min(&self) -> usize {
        self.l_min
    }

    pub fn flips(&self, n: usize) -> usize {
        self.l_min.max((self.beta * n as f64 - 1e-12).ceil() as usize)
    }
}

impl Default for MutationBudget {
    fn default() -> Self {
        Self { beta: 0.05, l_min: 1 }
    }
}

/// Structure-aware mutation: flips the `L` non-mandatory loci with the
/// highest flip gain (lower index wins ties), then restores mandatory bits
/// and repairs the well count over all loci.
pub fn sam_mutation<R: Rng + ?Sized>(
    instance: &Instance,
    x: &[bool],
    budget: &MutationBudget,
    pref: &Preference,
    rng: &mut R,
) -> Chromosome {
    let rho = pref.draw_rho(rng);
    sam_with_rho(instance, x, budget, pref, rho)
}

/// [`sam_mutation`] with a fixed preference draw.
pub fn sam_with_rho(instance: &Instance, x: &[bool], budget: &MutationBudget, pref: &Preference, rho: f64) -> Chromosome {
    let n = instance.len();
    let mut bits = x.to_vec();
    let ctx = DirectionContext::build(instance, x, (0..n).collect(), rho, pref.gamma);
    let counts = group_counts(instance, x);
    let groups = instance.groups();
    let quota = instance.group_quota();
    let mut gains: Vec<(usize, f64)> = (0..n)
        .filter(|&i| !instance.mandatory()[i])
        .map(|i| {
            let bias = shortfall_bias(quota[groups[i]], counts[groups[i]], pref.k_bias);
            (i, flip_gain(x[i], ctx.scores(i, bias)))
        })
        .collect();
    gains.sort_by(|a, b| cmp_desc_then_index(*a, *b));
    for &(i, _) in gains.iter().take(budget.flips(n)) {
        bits[i] = !bits[i];
    }
    instance.enforce_mandatory(&mut bits);
    let pool: Vec<usize> = (0..n).filter(|&i| instance.wells()[i] >= 1).collect();
    let ok = greedy_well_repair(instance, &mut bits, &pool, &ctx.g_hat, rho, pref.gamma, pref.k_bias);
    let mut child = Chromosome::new(bits);
    child.repair_failed = !ok;
    child
}
