//! Representative solutions on a front and risk-tier stratification. Points
//! are canonical `(-emv, risk)` pairs; ties always go to the lower risk.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{hypervolume, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMethod {
    Ideal,
    Knee,
    HvContribution,
}

impl SelectionMethod {
    pub const ALL: [SelectionMethod; 3] = [SelectionMethod::Ideal, SelectionMethod::Knee, SelectionMethod::HvContribution];

    pub fn name(self) -> &'static str {
        match self {
            SelectionMethod::Ideal => "ideal",
            SelectionMethod::Knee => "knee",
            SelectionMethod::HvContribution => "hv",
        }
    }
}

impl fmt::Display for SelectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ideal" | "ideal_point" => Ok(SelectionMethod::Ideal),
            "knee" => Ok(SelectionMethod::Knee),
            "hv" | "hv_contribution" => Ok(SelectionMethod::HvContribution),
            other => Err(Error::config(format!("unknown selection method `{other}` (expected ideal, knee or hv)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepresentativeChoice {
    pub method: SelectionMethod,
    /// Index into the input front.
    pub index: usize,
    /// Min-max normalized objectives of the chosen point.
    pub normalized: Point,
    /// Distance to the ideal corner, chord distance or HV contribution.
    pub score: f64,
    /// The knee rule had too few or collinear points and the ideal point
    /// was used instead.
    pub fallback: bool,
}

/// Min-max normalization per objective over the front; a flat objective
/// maps to 0.
pub fn normalize_front(points: &[Point]) -> Vec<Point> {
    let mut out = vec![[0.0; 2]; points.len()];
    for m in 0..2 {
        let lo = points.iter().map(|p| p[m]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p[m]).fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        for (o, p) in out.iter_mut().zip(points) {
            o[m] = if span > 0.0 { (p[m] - lo) / span } else { 0.0 };
        }
    }
    out
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Index with the best score (`better` says whether x beats y); near ties
/// go to the lower raw risk, then the lower index.
fn pick(points: &[Point], scores: &[f64], better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best = 0;
    for i in 1..points.len() {
        let (s, t) = (scores[i], scores[best]);
        if close(s, t) {
            if points[i][1] < points[best][1] {
                best = i;
            }
        } else if better(s, t) {
            best = i;
        }
    }
    best
}

/// Closest point to the normalized ideal corner `(0, 0)`.
pub fn ideal_point_select(points: &[Point]) -> Option<RepresentativeChoice> {
    if points.is_empty() {
        return None;
    }
    let norm = normalize_front(points);
    let dist: Vec<f64> = norm.iter().map(|p| p[0].hypot(p[1])).collect();
    let index = pick(points, &dist, |a, b| a < b);
    Some(RepresentativeChoice {
        method: SelectionMethod::Ideal,
        index,
        normalized: norm[index],
        score: dist[index],
        fallback: false,
    })
}

/// Point farthest from the chord joining the two extremes of the
/// normalized front. Falls back to the ideal point for fewer than three
/// points or a straight front.
pub fn knee_select(points: &[Point]) -> Option<RepresentativeChoice> {
    if points.is_empty() {
        return None;
    }
    let fallback = || {
        ideal_point_select(points).map(|c| RepresentativeChoice {
            method: SelectionMethod::Knee,
            fallback: true,
            ..c
        })
    };
    if points.len() < 3 {
        return fallback();
    }
    let norm = normalize_front(points);
    let extreme = |m: usize| {
        (0..norm.len())
            .min_by(|&a, &b| norm[a][m].total_cmp(&norm[b][m]).then(norm[a][1 - m].total_cmp(&norm[b][1 - m])))
            .expect("front is nonempty")
    };
    let (a, b) = (norm[extreme(0)], norm[extreme(1)]);
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return fallback();
    }
    let dist: Vec<f64> = norm.iter().map(|p| (dx * (a[1] - p[1]) - dy * (a[0] - p[0])).abs() / len).collect();
    let index = pick(points, &dist, |x, y| x > y);
    if dist[index] <= 1e-12 {
        return fallback();
    }
    Some(RepresentativeChoice {
        method: SelectionMethod::Knee,
        index,
        normalized: norm[index],
        score: dist[index],
        fallback: false,
    })
}

/// Hypervolume lost when each point is left out.
pub fn hv_contributions(points: &[Point], r: Point) -> Vec<f64> {
    let total = hypervolume(points, r);
    (0..points.len())
        .map(|i| {
            let rest: Vec<Point> = points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| *p).collect();
            total - hypervolume(&rest, r)
        })
        .collect()
}

/// Point whose removal loses the most hypervolume.
pub fn hv_contribution_select(points: &[Point], r: Point) -> Option<RepresentativeChoice> {
    if points.is_empty() {
        return None;
    }
    let contrib = hv_contributions(points, r);
    let index = pick(points, &contrib, |a, b| a > b);
    Some(RepresentativeChoice {
        method: SelectionMethod::HvContribution,
        index,
        normalized: normalize_front(points)[index],
        score: contrib[index],
        fallback: false,
    })
}

/// Dispatches on `method`; `r` is only read by the hypervolume rule.
pub fn select(points: &[Point], method: SelectionMethod, r: Point) -> Option<RepresentativeChoice> {
    match method {
        SelectionMethod::Ideal => ideal_point_select(points),
        SelectionMethod::Knee => knee_select(points),
        SelectionMethod::HvContribution => hv_contribution_select(points, r),
    }
}

/// Equal-width bands over the normalized risk axis, lowest risk first.
pub fn stratify_by_risk(points: &[Point], tiers: usize) -> Vec<Vec<usize>> {
    let tiers = tiers.max(1);
    let mut out = vec![Vec::new(); tiers];
    let lo = points.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    for (i, p) in points.iter().enumerate() {
        let t = if span > 0.0 { (p[1] - lo) / span } else { 0.0 };
        let k = ((t * tiers as f64).floor() as usize).min(tiers - 1);
        out[k].push(i);
    }
    out
}

/// Runs `method` inside each risk tier. Indices refer to the full front;
/// empty tiers give `None`.
pub fn select_per_tier(points: &[Point], method: SelectionMethod, tiers: usize, r: Point) -> Vec<Option<RepresentativeChoice>> {
    stratify_by_risk(points, tiers)
        .into_iter()
        .map(|members| {
            let sub: Vec<Point> = members.iter().map(|&i| points[i]).collect();
            select(&sub, method, r).map(|c| RepresentativeChoice {
                index: members[c.index],
                ..c
            })
        })
        .collect()
}
