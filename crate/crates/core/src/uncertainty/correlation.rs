//! Rank correlation estimation, nearest-PSD repair and Iman–Conover
//! correlation induction.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::seq::SliceRandom;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::rng;

/// Default eigenvalue floor used when repairing correlation matrices.
pub const DEFAULT_PSD_EPS: f64 = 1e-6;

const SYMMETRY_TOL: f64 = 1e-9;

/// `N x d` Monte Carlo samples stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    columns: Vec<Vec<f64>>,
}

impl SampleMatrix {
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::input("sample matrix needs at least one column"));
        };
        let n = first.len();
        if n < 2 {
            return Err(Error::input("sample matrix needs at least two rows"));
        }
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::input("sample matrix columns differ in length"));
        }
        if columns.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::input("sample matrix contains non-finite values"));
        }
        Ok(Self { columns })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::input("sample rows differ in length"));
        }
        let columns = (0..d).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self::from_columns(columns)
    }

    pub fn nrows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn row(&self, t: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[t]).collect()
    }

    /// Indices of columns whose values are all identical.
    pub fn constant_columns(&self) -> Vec<usize> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().all(|v| *v == c[0]))
            .map(|(j, _)| j)
            .collect()
    }
}

/// Symmetric matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    inner: DMatrix<f64>,
}

impl CorrelationMatrix {
    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    /// Validates symmetry, unit diagonal and entries in `[-1, 1]`.
    pub fn new(inner: DMatrix<f64>) -> Result<Self> {
        if !inner.is_square() || inner.nrows() == 0 {
            return Err(Error::input("correlation matrix must be square and non-empty"));
        }
        let d = inner.nrows();
        for i in 0..d {
            if (inner[(i, i)] - 1.0).abs() > SYMMETRY_TOL {
                return Err(Error::input(format!("diagonal entry {i} is {} not 1", inner[(i, i)])));
            }
            for j in 0..d {
                let v = inner[(i, j)];
                if !v.is_finite() || v.abs() > 1.0 + SYMMETRY_TOL {
                    return Err(Error::input(format!("entry ({i}, {j}) = {v} outside [-1, 1]")));
                }
                if (v - inner[(j, i)]).abs() > SYMMETRY_TOL {
                    return Err(Error::input("correlation matrix is not symmetric"));
                }
            }
        }
        Ok(Self { inner })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::input("correlation matrix must be square"));
        }
        Self::new(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.inner.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Frobenius distance to another matrix of the same size.
    pub fn frobenius_distance(&self, other: &CorrelationMatrix) -> f64 {
        (&self.inner - &other.inner).norm()
    }
}

/// Average ranks (1-based), ties share the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

fn pearson_matrix(columns: &[Vec<f64>]) -> DMatrix<f64> {
    let d = columns.len();
    let mut m = DMatrix::identity(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            let r = pearson(&columns[i], &columns[j]);
            m[(i, j)] = r;
            m[(j, i)] = r;
        }
    }
    m
}

/// Spearman rank-correlation matrix of the columns of `history`.
///
/// Pairs involving a constant column get coefficient 0; see
/// [`SampleMatrix::constant_columns`] to detect them.
pub fn estimate_spearman(history: &SampleMatrix) -> Result<CorrelationMatrix> {
    if history.nrows() < 3 {
        return Err(Error::input("Spearman estimation needs at least 3 rows"));
    }
    let ranks: Vec<Vec<f64>> = history.columns().iter().map(|c| average_ranks(c)).collect();
    Ok(CorrelationMatrix {
        inner: pearson_matrix(&ranks),
    })
}

fn clip_and_rescale(m: &DMatrix<f64>, eps: f64) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let clipped = eig.eigenvalues.map(|l| l.max(eps));
    let b = &eig.eigenvectors * DMatrix::from_diagonal(&clipped) * eig.eigenvectors.transpose();
    let d = DVector::from_iterator(b.nrows(), (0..b.nrows()).map(|i| 1.0 / b[(i, i)].sqrt()));
    let mut out = DMatrix::from_fn(b.nrows(), b.ncols(), |i, j| d[i] * b[(i, j)] * d[j]);
    // symmetrise and pin the diagonal against round-off
    for i in 0..out.nrows() {
        out[(i, i)] = 1.0;
        for j in (i + 1)..out.ncols() {
            let v = 0.5 * (out[(i, j)] + out[(j, i)]);
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    out
}

/// Nearest positive-definite correlation matrix by eigenvalue clipping.
///
/// `R = Q diag(l) Q^T`, `B = Q diag(max(l, eps)) Q^T`, result `D B D` with
/// `D = diag(B)^(-1/2)`. The rescaling can pull the smallest eigenvalue
/// slightly below `eps`, so the step is repeated until it is within 1% of
/// the floor. Inputs already at or above the floor are returned unchanged.
pub fn nearest_psd_correlation(r: &CorrelationMatrix, eps: f64) -> Result<CorrelationMatrix> {
    if !(eps > 0.0) {
        return Err(Error::input("eigenvalue floor must be positive"));
    }
    let mut m = r.inner.clone();
    for _ in 0..64 {
        let min_ev = SymmetricEigen::new(m.clone()).eigenvalues.min();
        if min_ev >= eps * 0.99 {
            break;
        }
        m = clip_and_rescale(&m, eps);
    }
    Ok(CorrelationMatrix { inner: m })
}

/// Van der Waerden scores `Phi^-1(i / (n + 1))`, `i = 1..=n`.
pub fn van_der_waerden_scores(n: usize) -> Vec<f64> {
    let normal = Normal::standard();
    (1..=n)
        .map(|i| normal.inverse_cdf(i as f64 / (n as f64 + 1.0)))
        .collect()
}

/// Reorders each column of `x` so the joint rank structure follows `target`.
///
/// Marginals are preserved exactly: every output column is a permutation of
/// the corresponding input column. Normal scores are permuted at random,
/// decorrelated against their own sample correlation and re-correlated with
/// the Cholesky factor of the Pearson equivalent of the Spearman target
/// (`2 sin(pi r / 6)`); each data column then takes the rank order of its
/// score column.
pub fn iman_conover(x: &SampleMatrix, target: &CorrelationMatrix, seed: u64) -> Result<SampleMatrix> {
    let d = x.ncols();
    let n = x.nrows();
    if target.dim() != d {
        return Err(Error::input(format!(
            "target correlation is {}x{} but samples have {d} columns",
            target.dim(),
            target.dim()
        )));
    }
    if target.inner.clone().cholesky().is_none() {
        return Err(Error::NotPositiveDefinite);
    }
    if d == 1 {
        return Ok(x.clone());
    }

    let pearson_target = target.inner.map(|r| 2.0 * (std::f64::consts::PI * r / 6.0).sin());
    let pearson_target = match pearson_target.clone().cholesky() {
        Some(_) => pearson_target,
        None => clip_and_rescale(&pearson_target, DEFAULT_PSD_EPS),
    };
    let p = pearson_target
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?
        .l();

    let base = van_der_waerden_scores(n);
    let mut stream = rng::substream(seed, &[0x1c]);
    let scores: Vec<Vec<f64>> = (0..d)
        .map(|_| {
            let mut col = base.clone();
            col.shuffle(&mut stream);
            col
        })
        .collect();

    // F: Cholesky factor of the scores' own correlation. Falls back to the
    // identity when a random permutation happens to be degenerate.
    let e = pearson_matrix(&scores);
    let transform = match e.cholesky() {
        Some(f) => {
            let f_inv = f.l().try_inverse().ok_or(Error::NotPositiveDefinite)?;
            &p * f_inv
        }
        None => p,
    };

    let mut induced = vec![vec![0.0; n]; d];
    let mut row = DVector::zeros(d);
    for t in 0..n {
        for j in 0..d {
            row[j] = scores[j][t];
        }
        let out = &transform * &row;
        for j in 0..d {
            induced[j][t] = out[j];
        }
    }

    let columns = (0..d)
        .map(|j| {
            let mut sorted = x.column(j).to_vec();
            sorted.sort_by(f64::total_cmp);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| induced[j][a].total_cmp(&induced[j][b]).then(a.cmp(&b)));
            let mut col = vec![0.0; n];
            for (rank, &t) in order.iter().enumerate() {
                col[t] = sorted[rank];
            }
            col
        })
        .collect();
    SampleMatrix::from_columns(columns)
}
