//! Front quality indicators on canonical `(-emv, risk)` points, both
//! minimised.

use serde::{Deserialize, Serialize};

use crate::solver::pareto_dominates;

pub type Point = [f64; 2];

/// Share of the objective range added beyond the worst point.
pub const REFERENCE_MARGIN: f64 = 0.1;

/// Non-dominated, duplicate-free subset sorted by the first objective.
pub fn nondominated(points: &[Point]) -> Vec<Point> {
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut out: Vec<Point> = Vec::new();
    for p in sorted {
        match out.last() {
            Some(last) if p[1] >= last[1] => {}
            _ => out.push(p),
        }
    }
    out
}

/// Exact 2-D hypervolume by sweeping the non-dominated subset. Points that
/// do not strictly dominate `r` add nothing.
pub fn hypervolume(points: &[Point], r: Point) -> f64 {
    let inside: Vec<Point> = points.iter().copied().filter(|p| p[0] < r[0] && p[1] < r[1]).collect();
    let front = nondominated(&inside);
    let mut area = 0.0;
    for (k, p) in front.iter().enumerate() {
        let next_x = front.get(k + 1).map_or(r[0], |q| q[0]);
        area += (next_x - p[0]) * (r[1] - p[1]);
    }
    area
}

/// Points that fall outside the box below `r` and so add no volume.
pub fn points_outside(points: &[Point], r: Point) -> usize {
    points.iter().filter(|p| !(p[0] < r[0] && p[1] < r[1])).count()
}

/// Componentwise worst over all fronts, pushed out by `margin` of each
/// objective's range (or of its magnitude when the range is zero).
pub fn reference_point(fronts: &[&[Point]], margin: f64) -> Option<Point> {
    let all: Vec<Point> = fronts.iter().flat_map(|f| f.iter().copied()).collect();
    if all.is_empty() {
        return None;
    }
    let mut r = [0.0; 2];
    for (m, slot) in r.iter_mut().enumerate() {
        let lo = all.iter().map(|p| p[m]).fold(f64::INFINITY, f64::min);
        let hi = all.iter().map(|p| p[m]).fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        let pad = if span > 0.0 { margin * span } else { margin * hi.abs().max(1.0) };
        *slot = hi + pad;
    }
    Some(r)
}

/// Non-dominated subset of the union of all fronts.
pub fn reference_front(fronts: &[&[Point]]) -> Vec<Point> {
    let all: Vec<Point> = fronts.iter().flat_map(|f| f.iter().copied()).collect();
    nondominated(&all)
}

fn euclid(a: Point, b: Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Mean distance from each reference point to its nearest neighbour in
/// `pf`. `None` when either set is empty.
pub fn igd(pf: &[Point], pf_star: &[Point]) -> Option<f64> {
    if pf.is_empty() || pf_star.is_empty() {
        return None;
    }
    let total: f64 = pf_star
        .iter()
        .map(|y| pf.iter().map(|x| euclid(*x, *y)).fold(f64::INFINITY, f64::min))
        .sum();
    Some(total / pf_star.len() as f64)
}

/// Sample standard deviation of nearest-neighbour Manhattan distances.
/// `None` for fewer than two points.
pub fn spacing(pf: &[Point]) -> Option<f64> {
    let n = pf.len();
    if n < 2 {
        return None;
    }
    let d: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| (pf[i][0] - pf[j][0]).abs() + (pf[i][1] - pf[j][1]).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Some(var.sqrt())
}

/// Fraction of `b` strictly dominated by some member of `a`. `None` when
/// `b` is empty.
pub fn set_coverage(a: &[Point], b: &[Point]) -> Option<f64> {
    if b.is_empty() {
        return None;
    }
    let covered = b.iter().filter(|q| a.iter().any(|p| pareto_dominates(*p, **q))).count();
    Some(covered as f64 / b.len() as f64)
}

/// One line of a comparison table. Coverage is measured against the first
/// (reference) front and is absent on its own row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub name: String,
    pub hv: f64,
    pub igd: Option<f64>,
    pub spacing: Option<f64>,
    pub sc_ref_over: Option<f64>,
    pub sc_over_ref: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricTable {
    pub reference_point: Point,
    pub reference_front: Vec<Point>,
    pub rows: Vec<MetricRow>,
}

/// Compares named fronts under a shared reference point and reference
/// front. The first front plays the role of the proposed method.
pub fn compare_fronts(named: &[(String, Vec<Point>)]) -> Option<MetricTable> {
    compare_fronts_with_margin(named, REFERENCE_MARGIN)
}

pub fn compare_fronts_with_margin(named: &[(String, Vec<Point>)], margin: f64) -> Option<MetricTable> {
    let fronts: Vec<&[Point]> = named.iter().map(|(_, f)| f.as_slice()).collect();
    let r = reference_point(&fronts, margin)?;
    let pf_star = reference_front(&fronts);
    let first = fronts[0];
    let rows = named
        .iter()
        .enumerate()
        .map(|(k, (name, f))| MetricRow {
            name: name.clone(),
            hv: hypervolume(f, r),
            igd: igd(f, &pf_star),
            spacing: spacing(f),
            sc_ref_over: if k == 0 { None } else { set_coverage(first, f) },
            sc_over_ref: if k == 0 { None } else { set_coverage(f, first) },
        })
        .collect();
    Some(MetricTable {
        reference_point: r,
        reference_front: pf_star,
        rows,
    })
}

/// Hypervolume of each archive snapshot under a fixed reference point.
pub fn hv_trace<'a, I: IntoIterator<Item = &'a [Point]>>(snapshots: I, r: Point) -> Vec<f64> {
    snapshots.into_iter().map(|s| hypervolume(s, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    #[test]
    fn hv_examples() {
        assert_eq!(hypervolume(&[[4.0, 4.0]], [4.0, 4.0]), 0.0);
        assert_eq!(hypervolume(&[[2.0, 2.0]], [4.0, 4.0]), 4.0);
        assert_eq!(hypervolume(&[[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]], [4.0, 4.0]), 6.0);
        assert_eq!(hypervolume(&[], [4.0, 4.0]), 0.0);
        assert_eq!(points_outside(&[[5.0, 1.0], [1.0, 1.0]], [4.0, 4.0]), 1);
    }

    #[test]
    fn hv_ignores_dominated_and_grows_with_points() {
        let base = [[1.0, 3.0], [3.0, 1.0]];
        let with_dominated = [[1.0, 3.0], [3.0, 1.0], [3.5, 3.5]];
        assert_eq!(hypervolume(&base, [4.0, 4.0]), hypervolume(&with_dominated, [4.0, 4.0]));
        assert!(hypervolume(&[[1.0, 3.0], [3.0, 1.0], [2.0, 2.0]], [4.0, 4.0]) > hypervolume(&base, [4.0, 4.0]));
    }

    fn monte_carlo_area(points: &[Point], r: Point, lo: Point, samples: usize, seed: u64) -> f64 {
        let mut rng = substream(seed, &[]);
        let mut hits = 0usize;
        for _ in 0..samples {
            let z = [rng.random_range(lo[0]..r[0]), rng.random_range(lo[1]..r[1])];
            if points.iter().any(|p| p[0] <= z[0] && p[1] <= z[1]) {
                hits += 1;
            }
        }
        hits as f64 / samples as f64 * (r[0] - lo[0]) * (r[1] - lo[1])
    }

    #[test]
    fn hv_matches_monte_carlo_on_example() {
        let pts = [[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]];
        let mc = monte_carlo_area(&pts, [4.0, 4.0], [0.0, 0.0], 1_000_000, 1);
        assert!((mc - 6.0).abs() / 6.0 < 0.01, "{mc}");
    }

    #[test]
    fn igd_examples() {
        let star = [[0.0, 0.0], [1.0, 1.0]];
        assert_eq!(igd(&star, &star), Some(0.0));
        assert_abs_diff_eq!(igd(&[[0.0, 0.0]], &star).unwrap(), 2f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(igd(&[], &star), None);
    }

    #[test]
    fn spacing_examples() {
        assert_eq!(spacing(&[[0.0, 0.0], [5.0, 1.0]]), Some(0.0));
        assert_eq!(spacing(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]), Some(0.0));
        assert_abs_diff_eq!(spacing(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]).unwrap(), (1.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert_eq!(spacing(&[[0.0, 0.0]]), None);
    }

    #[test]
    fn coverage_examples() {
        assert_eq!(set_coverage(&[[0.0, 0.0]], &[[1.0, 1.0]]), Some(1.0));
        assert_eq!(set_coverage(&[[1.0, 1.0]], &[[0.0, 0.0]]), Some(0.0));
        let a = [[0.0, 2.0], [2.0, 0.0]];
        assert_eq!(set_coverage(&a, &a), Some(0.0));
        assert_eq!(set_coverage(&a, &[[1.0, 1.0], [3.0, 3.0]]), Some(0.5));
        assert_eq!(set_coverage(&a, &[]), None);
    }

    #[test]
    fn metrics_are_permutation_invariant() {
        let mut rng = substream(4, &[]);
        let pts: Vec<Point> = (0..30).map(|_| [rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)]).collect();
        let mut rev = pts.clone();
        rev.reverse();
        let r = [11.0, 11.0];
        assert_eq!(hypervolume(&pts, r), hypervolume(&rev, r));
        assert_eq!(spacing(&pts), spacing(&rev));
        let star = nondominated(&pts);
        assert_abs_diff_eq!(igd(&pts, &star).unwrap(), igd(&rev, &star).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn reference_point_pads_range() {
        let a = [[0.0, 10.0], [10.0, 0.0]];
        assert_eq!(reference_point(&[&a], 0.1), Some([11.0, 11.0]));
        assert_eq!(reference_point(&[&[[2.0, 2.0]]], 0.1), Some([2.2, 2.2]));
        assert_eq!(reference_point(&[], 0.1), None);
    }

    #[test]
    fn comparison_table_layout() {
        let named = vec![
            ("oe".to_string(), vec![[0.0, 2.0], [2.0, 0.0]]),
            ("baseline".to_string(), vec![[1.0, 3.0], [3.0, 1.0]]),
        ];
        let t = compare_fronts(&named).unwrap();
        assert_eq!(t.rows[0].sc_ref_over, None);
        assert_eq!(t.rows[0].igd, Some(0.0));
        assert_eq!(t.rows[1].sc_ref_over, Some(1.0));
        assert_eq!(t.rows[1].sc_over_ref, Some(0.0));
        assert!(t.rows[0].hv > t.rows[1].hv);
    }
}
