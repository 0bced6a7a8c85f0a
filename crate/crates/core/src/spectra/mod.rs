//! Adjacency spectra of hypergraphs.

pub mod eigen;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub use eigen::{tridiagonal_eigenvalues, tridiagonalize};

/// Default tolerance for eigenvalue comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Eigenvalues closer than this are merged into one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Eigenvalues in non-increasing order with multiplicity clusters.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    clusters: Vec<(f64, usize)>,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>, ctol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let mut clusters: Vec<(f64, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=values.len() {
            if i == values.len() || values[i - 1] - values[i] > ctol {
                let group = &values[start..i];
                if !group.is_empty() {
                    clusters.push((group.iter().sum::<f64>() / group.len() as f64, group.len()));
                }
                start = i;
            }
        }
        Spectrum { eigenvalues: values, clusters }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `(representative, multiplicity)` from largest to smallest.
    pub fn clusters(&self) -> &[(f64, usize)] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn distinct(&self) -> Vec<f64> {
        self.clusters.iter().map(|c| c.0).collect()
    }
}

/// All eigenvalues of a real symmetric matrix.
pub fn symmetric_eigenvalues(m: &[Vec<f64>], tol: f64) -> Result<Spectrum> {
    let n = m.len();
    if tol <= 0.0 {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }
    if let Some(i) = m.iter().position(|row| row.len() != n) {
        return Err(Error::InvalidParams(format!("row {i} has length {} in a {n}x{n} matrix", m[i].len())));
    }
    for i in 0..n {
        for j in 0..i {
            let diff = (m[i][j] - m[j][i]).abs();
            if diff > 1e-12 {
                return Err(Error::NotSymmetric { row: i, col: j, diff });
            }
        }
    }
    let (d, e) = tridiagonalize(m.to_vec());
    let values = tridiagonal_eigenvalues(&d, &e)?;
    let trace: f64 = (0..n).map(|i| m[i][i]).sum();
    let scale = m.iter().flatten().fold(1.0f64, |acc, x| acc.max(x.abs()));
    if (values.iter().sum::<f64>() - trace).abs() > n as f64 * tol.max(1e-12 * scale) * scale {
        return Err(Error::NoConvergence(0));
    }
    Ok(Spectrum::from_values(values, CLUSTER_TOL))
}

pub fn adjacency_spectrum(h: &Hypergraph, tol: f64) -> Result<Spectrum> {
    symmetric_eigenvalues(&h.adjacency().to_f64(), tol)
}

/// Second eigenvalue and spectral gap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecondEigenvalue {
    pub tau2: f64,
    pub gap: f64,
}

pub fn second_eigenvalue(h: &Hypergraph, tol: f64) -> Result<SecondEigenvalue> {
    let params = h.params()?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let spec = adjacency_spectrum(h, tol)?;
    let tau2 = spec.eigenvalues().get(1).copied().ok_or_else(|| Error::Precondition("need at least 2 vertices".into()))?;
    Ok(SecondEigenvalue { tau2, gap: params.k() as f64 - tau2 })
}

/// `|tau_2 - (u-2)| <= 2 sqrt(q)`, with slack `tol`.
pub fn is_ramanujan(h: &Hypergraph, tol: f64) -> Result<bool> {
    let params = h.params()?;
    let tau2 = second_eigenvalue(h, tol)?.tau2;
    Ok((tau2 - (params.u() as f64 - 2.0)).abs() <= 2.0 * (params.q() as f64).sqrt() + tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub passed: bool,
    pub max_diff: f64,
    /// First mismatch, if any.
    pub detail: Option<String>,
}

/// Compares the squared incidence-graph spectrum with the shifted spectra of
/// the hypergraph and its dual, and the two shifted spectra with each other
/// after zero padding.
pub fn spectrum_correspondence_check(h: &Hypergraph, tol: f64) -> Result<CorrespondenceReport> {
    let (r, u) = h.check_regular_uniform()?;
    if r < 2 {
        return Err(Error::Precondition(format!("need every vertex in at least 2 edges, got r = {r}")));
    }
    let dual = h.dual()?;
    let shifted = |s: Spectrum, by: usize| s.eigenvalues().iter().map(|x| x + by as f64).collect::<Vec<f64>>();
    let mut primal = shifted(adjacency_spectrum(h, tol)?, r);
    let mut dual_vals = shifted(adjacency_spectrum(&dual, tol)?, u);
    let mut squared: Vec<f64> = symmetric_eigenvalues(&h.incidence_graph().to_f64(), tol)?
        .eigenvalues()
        .iter()
        .map(|x| x * x)
        .collect();

    let mut union = primal.clone();
    union.extend_from_slice(&dual_vals);
    let (ok1, d1, at1) = compare_multisets(&mut squared, &mut union, tol);

    let pad = primal.len().abs_diff(dual_vals.len());
    if primal.len() < dual_vals.len() {
        primal.extend(std::iter::repeat(0.0).take(pad));
    } else {
        dual_vals.extend(std::iter::repeat(0.0).take(pad));
    }
    let (ok2, d2, at2) = compare_multisets(&mut primal, &mut dual_vals, tol);

    let detail = match (at1, at2) {
        (Some((a, b)), _) => Some(format!("squared incidence eigenvalue {a} vs shifted value {b}")),
        (None, Some((a, b))) => Some(format!("A+rI eigenvalue {a} vs dual A*+uI eigenvalue {b}")),
        _ => None,
    };
    Ok(CorrespondenceReport { passed: ok1 && ok2, max_diff: d1.max(d2), detail })
}

fn compare_multisets(a: &mut [f64], b: &mut [f64], tol: f64) -> (bool, f64, Option<(f64, f64)>) {
    if a.len() != b.len() {
        return (false, f64::INFINITY, Some((a.len() as f64, b.len() as f64)));
    }
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let mut max_diff = 0.0f64;
    let mut first = None;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = (x - y).abs();
        max_diff = max_diff.max(d);
        if d > tol && first.is_none() {
            first = Some((*x, *y));
        }
    }
    (first.is_none(), max_diff, first)
}
