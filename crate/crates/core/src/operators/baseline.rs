//! Classical operators for the reference NSGA-II: uniform crossover and
//! independent bit-flip mutation, followed by the same mandatory
//! enforcement and well repair as the directional operators.

use rand::Rng;

use super::repair::greedy_well_repair;
use super::scoring::{minmax_normalize, Preference, NORMALIZE_EPS};
use crate::model::{Chromosome, Instance};

/// With probability `prob`, swaps each locus between the children with
/// probability one half; otherwise the children copy their parents.
pub fn uniform_crossover<R: Rng + ?Sized>(a: &[bool], b: &[bool], prob: f64, rng: &mut R) -> (Vec<bool>, Vec<bool>) {
    let mut c1 = a.to_vec();
    let mut c2 = b.to_vec();
    if rng.random_bool(prob.clamp(0.0, 1.0)) {
        for i in 0..a.len().min(b.len()) {
            if rng.random_bool(0.5) {
                std::mem::swap(&mut c1[i], &mut c2[i]);
            }
        }
    }
    (c1, c2)
}

/// Flips each locus independently with probability `pm`.
pub fn bit_flip_mutation<R: Rng + ?Sized>(bits: &mut [bool], pm: f64, rng: &mut R) {
    let pm = pm.clamp(0.0, 1.0);
    for b in bits.iter_mut() {
        if rng.random_bool(pm) {
            *b = !*b;
        }
    }
}

/// Mandatory bits, then greedy repair over every locus with a fresh
/// preference draw.
pub fn finish_child<R: Rng + ?Sized>(instance: &Instance, mut bits: Vec<bool>, pref: &Preference, rng: &mut R) -> Chromosome {
    instance.enforce_mandatory(&mut bits);
    let rho = pref.draw_rho(rng);
    let g_hat = minmax_normalize(instance.returns(), NORMALIZE_EPS);
    let pool: Vec<usize> = (0..instance.len()).filter(|&i| instance.wells()[i] >= 1).collect();
    let ok = greedy_well_repair(instance, &mut bits, &pool, &g_hat, rho, pref.gamma, pref.k_bias);
    let mut child = Chromosome::new(bits);
    child.repair_failed = !ok;
    child
}
