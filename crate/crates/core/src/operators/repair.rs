use std::cmp::Ordering;

use super::scoring::{group_counts, minmax_normalize, selection_stats, shortfall_bias, NORMALIZE_EPS};
use crate::model::{Flip, Instance};

/// Flips candidates in unit-well benefit order until the well deficit
/// `delta` is closed. Positive `delta` adds unselected candidates, best
/// first; negative removes selected ones, worst first. A candidate whose
/// well count would overshoot what is left is skipped. Returns the deficit
/// that remains.
pub fn repair_by_benefit(bits: &mut [bool], wells: &[u32], candidates: &[(usize, f64)], delta: i64) -> i64 {
    let adding = delta > 0;
    let mut order: Vec<(usize, f64)> = candidates
        .iter()
        .filter(|(i, _)| bits[*i] != adding && wells[*i] >= 1)
        .map(|&(i, b)| (i, b / wells[i].max(1) as f64))
        .collect();
    order.sort_by(|x, y| {
        let by_ratio = if adding { y.1.total_cmp(&x.1) } else { x.1.total_cmp(&y.1) };
        by_ratio.then(x.0.cmp(&y.0))
    });
    let mut left = delta;
    for (i, _) in order {
        if left == 0 {
            break;
        }
        let w = wells[i] as i64;
        if w > left.abs() {
            continue;
        }
        bits[i] = adding;
        left += if adding { -w } else { w };
    }
    left
}

/// Greedy well-count repair over `pool`. Benefits combine the operator's
/// normalized return `g_hat` (indexed by locus), the risk delta normalized
/// within the eligible pool and the shortfall bias. Mandatory loci are never
/// cleared. When no exact pass closes the deficit, the best remaining
/// candidate is flipped anyway and the opposite direction gets a turn.
/// Returns whether the well target is met exactly.
pub fn greedy_well_repair(
    instance: &Instance,
    bits: &mut [bool],
    pool: &[usize],
    g_hat: &[f64],
    rho: f64,
    gamma: f64,
    k_bias: f64,
) -> bool {
    const PASSES: usize = 4;
    let mut delta = instance.well_target() as i64 - instance.well_sum(bits);
    let wells = instance.wells();
    for pass in 0..PASSES {
        if delta == 0 {
            break;
        }
        let adding = delta > 0;
        let benefits = pool_benefits(instance, bits, pool, g_hat, rho, gamma, k_bias, adding);
        if benefits.is_empty() {
            break;
        }
        delta = repair_by_benefit(bits, wells, &benefits, delta);
        if delta != 0 && pass + 1 < PASSES {
            let mut ranked: Vec<(usize, f64)> = benefits
                .iter()
                .filter(|(i, _)| bits[*i] != adding)
                .map(|&(i, b)| (i, b / wells[i].max(1) as f64))
                .collect();
            ranked.sort_by(|x, y| if adding { cmp_desc_then_index(*x, *y) } else { cmp_desc_then_index(*y, *x) });
            if let Some(&(i, _)) = ranked.first() {
                bits[i] = adding;
                delta += if adding { -(wells[i] as i64) } else { wells[i] as i64 };
            }
        }
    }
    delta == 0
}

#[allow(clippy::too_many_arguments)]
fn pool_benefits(
    instance: &Instance,
    bits: &[bool],
    pool: &[usize],
    g_hat: &[f64],
    rho: f64,
    gamma: f64,
    k_bias: f64,
    adding: bool,
) -> Vec<(usize, f64)> {
    let wells = instance.wells();
    let returns = instance.returns();
    let mandatory = instance.mandatory();
    let eligible: Vec<usize> = pool
        .iter()
        .copied()
        .filter(|&i| wells[i] >= 1 && bits[i] != adding && (adding || !mandatory[i]))
        .collect();
    if eligible.is_empty() {
        return Vec::new();
    }
    let stats = selection_stats(returns, bits);
    let flip = if adding { Flip::Add } else { Flip::Remove };
    let d: Vec<f64> = eligible.iter().map(|&i| stats.delta_m(returns[i], flip)).collect();
    let d_hat = minmax_normalize(&d, NORMALIZE_EPS);
    let counts = group_counts(instance, bits);
    let groups = instance.groups();
    let quota = instance.group_quota();
    eligible
        .iter()
        .zip(&d_hat)
        .map(|(&i, dh)| {
            let bias = shortfall_bias(quota[groups[i]], counts[groups[i]], k_bias);
            (i, rho * g_hat[i] - (1.0 - rho) * gamma * dh + bias)
        })
        .collect()
}

pub(crate) fn cmp_desc_then_index(a: (usize, f64), b: (usize, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then(a.0.cmp(&b.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PlanTargets, Project};

    #[test]
    fn adds_best_unit_benefit_first() {
        let mut bits = vec![false; 3];
        let left = repair_by_benefit(&mut bits, &[1, 1, 1], &[(0, 0.9), (1, 0.5), (2, 0.1)], 2);
        assert_eq!(left, 0);
        assert_eq!(bits, [true, true, false]);
    }

    #[test]
    fn removes_worst_first() {
        let mut bits = vec![true, true, false];
        let left = repair_by_benefit(&mut bits, &[1, 1, 1], &[(0, 0.9), (1, 0.5)], -1);
        assert_eq!(left, 0);
        assert_eq!(bits, [true, false, false]);
    }

    #[test]
    fn zero_delta_is_identity() {
        let mut bits = vec![true, false];
        assert_eq!(repair_by_benefit(&mut bits, &[1, 1], &[(0, 1.0), (1, 2.0)], 0), 0);
        assert_eq!(bits, [true, false]);
    }

    #[test]
    fn skips_overshooting_wells() {
        let mut bits = vec![false; 3];
        let left = repair_by_benefit(&mut bits, &[3, 1, 1], &[(0, 9.0), (1, 0.5), (2, 0.1)], 2);
        assert_eq!(left, 0);
        assert_eq!(bits, [false, true, true]);
    }

    #[test]
    fn never_clears_mandatory() {
        let projects = vec![
            Project::trap("M", "A", 0.0, 0.0, 0.0, 1.0, 0.5).with_mandatory(true),
            Project::trap("T", "A", 0.0, 0.0, 0.0, 5.0, 0.5),
        ];
        let inst = Instance::new(projects, PlanTargets::wells_only(1)).unwrap();
        let mut bits = vec![true, true];
        let ok = greedy_well_repair(&inst, &mut bits, &[0, 1], &[0.0, 1.0], 0.5, 1.3, 0.3);
        assert!(ok);
        assert_eq!(bits, [true, false]);
    }

    #[test]
    fn unreachable_target_is_flagged() {
        let projects = vec![
            Project::trap("T", "A", 0.0, 0.0, 0.0, 1.0, 0.5),
            Project::trap("U", "A", 0.0, 0.0, 0.0, 5.0, 0.5),
        ];
        let inst = Instance::new(projects, PlanTargets::wells_only(2)).unwrap();
        let mut bits = vec![false, false];
        assert!(!greedy_well_repair(&inst, &mut bits, &[0], &[0.0, 0.0], 0.5, 1.3, 0.0));
        assert_eq!(bits, [true, false]);
    }
}
