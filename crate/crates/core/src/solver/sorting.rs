use crate::model::Evaluation;

/// Strict Pareto dominance for minimised objective pairs.
pub fn pareto_dominates(a: [f64; 2], b: [f64; 2]) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])
}

/// Feasibility-first dominance: a feasible solution beats an infeasible
/// one, two infeasible ones compare by total violation, two feasible ones
/// by Pareto dominance on `(-emv, risk)`.
pub fn dominates(a: &Evaluation, b: &Evaluation) -> bool {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation() < b.violation(),
        (true, true) => pareto_dominates(a.canonical(), b.canonical()),
    }
}

/// Partitions `0..n` into successive non-dominated fronts under `dom`.
pub fn nondominated_fronts_by<F: Fn(usize, usize) -> bool>(n: usize, dom: F) -> Vec<Vec<usize>> {
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            if dom(p, q) {
                dominated_by[p].push(q);
                counts[q] += 1;
            } else if dom(q, p) {
                dominated_by[q].push(p);
                counts[p] += 1;
            }
        }
    }
    for (p, c) in counts.iter().enumerate() {
        if *c == 0 {
            current.push(p);
        }
    }
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                counts[q] -= 1;
                if counts[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Fast non-dominated sort under [`dominates`].
pub fn fast_nondominated_sort(evals: &[&Evaluation]) -> Vec<Vec<usize>> {
    nondominated_fronts_by(evals.len(), |a, b| dominates(evals[a], evals[b]))
}

/// Crowding distance of each point in one front. Boundary points and fronts
/// of at most two points get infinity.
pub fn crowding_distance(points: &[[f64; 2]]) -> Vec<f64> {
    let n = points.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    for m in 0..2 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| points[a][m].total_cmp(&points[b][m]).then(a.cmp(&b)));
        let lo = points[order[0]][m];
        let hi = points[order[n - 1]][m];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for k in 1..n - 1 {
            let i = order[k];
            if dist[i].is_finite() {
                dist[i] += (points[order[k + 1]][m] - points[order[k - 1]][m]) / span;
            }
        }
    }
    dist
}
