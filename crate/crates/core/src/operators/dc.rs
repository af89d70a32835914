use rand::Rng;

use super::repair::greedy_well_repair;
use super::scoring::{group_counts, shortfall_bias, DirectionContext, Preference};
use crate::error::{Error, Result};
use crate::model::{Chromosome, Instance};

/// Directional crossover. Loci where the parents agree are inherited; each
/// differing locus is set by comparing its Direction(1) and Direction(0)
/// scores. The first child starts from `a` with weight `rho`, the second
/// from `b` with `1 - rho`.
pub fn dc_crossover<R: Rng + ?Sized>(
    instance: &Instance,
    a: &[bool],
    b: &[bool],
    pref: &Preference,
    rng: &mut R,
) -> Result<(Chromosome, Chromosome)> {
    if a.len() != b.len() || a.len() != instance.len() {
        return Err(Error::input(format!(
            "parent lengths {} and {} do not match the {} projects",
            a.len(),
            b.len(),
            instance.len()
        )));
    }
    let differing: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    let rho = pref.draw_rho(rng);
    Ok((
        directional_child(instance, a, &differing, rho, pref),
        directional_child(instance, b, &differing, 1.0 - rho, pref),
    ))
}

/// One child of [`dc_crossover`] for a fixed `rho`.
pub fn directional_child(
    instance: &Instance,
    parent: &[bool],
    differing: &[usize],
    rho: f64,
    pref: &Preference,
) -> Chromosome {
    let mut bits = parent.to_vec();
    let ctx = DirectionContext::build(instance, parent, differing.to_vec(), rho, pref.gamma);
    if !differing.is_empty() {
        let groups = instance.groups();
        let quota = instance.group_quota();
        let mut counts = group_counts(instance, &bits);
        for (j, &i) in differing.iter().enumerate() {
            let g = groups[i];
            let bias = shortfall_bias(quota[g], counts[g], pref.k_bias);
            let s = ctx.scores(j, bias);
            let next = s.to_one >= s.to_zero;
            if next != bits[i] {
                if next {
                    counts[g] += 1;
                } else {
                    counts[g] -= 1;
                }
                bits[i] = next;
            }
        }
    }
    instance.enforce_mandatory(&mut bits);
    let pool: Vec<usize> = differing.iter().copied().filter(|&i| instance.wells()[i] >= 1).collect();
    let g_hat = ctx.g_hat_by_locus(instance.len());
    let ok = greedy_well_repair(instance, &mut bits, &pool, &g_hat, rho, pref.gamma, pref.k_bias);
    let mut child = Chromosome::new(bits);
    child.repair_failed = !ok;
    child
}
