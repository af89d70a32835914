use super::project::Project;

/// Total EMV of the selected projects (to be maximised).
pub fn objective_emv(bits: &[bool], projects: &[Project]) -> f64 {
    projects
        .iter()
        .zip(bits)
        .filter(|(_, b)| **b)
        .map(|(p, _)| p.emv_contribution())
        .sum()
}

/// Square root of the summed squared deviations of the selected expected
/// returns from their mean (to be minimised). Two-pass.
pub fn objective_risk(bits: &[bool], projects: &[Project]) -> f64 {
    let values: Vec<f64> = projects
        .iter()
        .zip(bits)
        .filter(|(_, b)| **b)
        .map(|(p, _)| p.expected_return())
        .collect();
    if values.len() < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RunningStats;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn ql3() -> Project {
        Project::trap("QL3", "E", 38.8, 3.7, 3087.0, 13515.0, 0.53)
    }

    fn sb12x() -> Project {
        Project::appraisal("SB12X", "A", (0.0, 460.0), (0.0, 0.0), 0.0, 83450.0, 0.6, 0)
    }

    fn with_value(v: f64) -> Project {
        Project::trap("X", "R", 0.0, 0.0, 0.0, v, 1.0)
    }

    #[test]
    fn emv_examples() {
        assert_eq!(objective_emv(&[false, false], &[ql3(), sb12x()]), 0.0);
        assert_abs_diff_eq!(objective_emv(&[true, false], &[ql3(), sb12x()]), 4075.95, epsilon = 1e-9);
        assert_abs_diff_eq!(objective_emv(&[false, true], &[ql3(), sb12x()]), 16690.0, epsilon = 1e-9);
    }

    #[test]
    fn risk_examples() {
        assert_eq!(objective_risk(&[true], &[ql3()]), 0.0);
        assert_eq!(objective_risk(&[true, true], &[with_value(5.0), with_value(5.0)]), 0.0);
        assert_abs_diff_eq!(
            objective_risk(&[true, true], &[with_value(10.0), with_value(20.0)]),
            50f64.sqrt(),
            epsilon = 1e-9
        );
    }

    fn arb_projects() -> impl Strategy<Value = (Vec<Project>, Vec<bool>, Vec<bool>)> {
        proptest::collection::vec((0.0f64..1e5, 0.0f64..1.0, 0.0f64..1e4, any::<bool>(), 0u8..3), 1..30)
            .prop_map(|rows| {
                let mut projects = Vec::new();
                let mut a = Vec::new();
                let mut b = Vec::new();
                for (i, (npv, pos, cost, trap, side)) in rows.into_iter().enumerate() {
                    let p = if trap {
                        Project::trap(&format!("T{i}"), "R", 0.0, 0.0, cost, npv, pos)
                    } else {
                        Project::appraisal(&format!("A{i}"), "R", (0.0, 0.0), (0.0, 0.0), cost, npv, pos, 1)
                    };
                    projects.push(p);
                    a.push(side == 1);
                    b.push(side == 2);
                }
                (projects, a, b)
            })
    }

    proptest! {
        #[test]
        fn risk_squared_equals_welford(
            (projects, a, _) in arb_projects()
        ) {
            let r = objective_risk(&a, &projects);
            let stats = RunningStats::from_values(
                projects.iter().zip(&a).filter(|(_, s)| **s).map(|(p, _)| p.expected_return()),
            );
            let scale = stats.m2.abs().max(1.0);
            prop_assert!((r * r - stats.m2).abs() <= 1e-9 * scale);
        }

        #[test]
        fn emv_additive_over_disjoint((projects, a, b) in arb_projects()) {
            let union: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x || *y).collect();
            let lhs = objective_emv(&union, &projects);
            let rhs = objective_emv(&a, &projects) + objective_emv(&b, &projects);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
        }

        #[test]
        fn objectives_permutation_invariant((projects, a, _) in arb_projects(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut idx: Vec<usize> = (0..projects.len()).collect();
            idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let p2: Vec<Project> = idx.iter().map(|&i| projects[i].clone()).collect();
            let a2: Vec<bool> = idx.iter().map(|&i| a[i]).collect();
            let e1 = objective_emv(&a, &projects);
            let e2 = objective_emv(&a2, &p2);
            prop_assert!((e1 - e2).abs() <= 1e-9 * e1.abs().max(1.0));
            let r1 = objective_risk(&a, &projects);
            let r2 = objective_risk(&a2, &p2);
            prop_assert!((r1 - r2).abs() <= 1e-9 * r1.abs().max(1.0));
            assert_relative_eq!(r1, r2, max_relative = 1e-9, epsilon = 1e-9);
        }
    }
}
