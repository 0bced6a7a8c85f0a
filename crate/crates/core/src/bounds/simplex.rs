//! Two-phase revised simplex with Bland's rule.
//!
//! Solves `maximize c.x` subject to rows `a_i.x (<=|>=|=) b_i`, `x >= 0`, and
//! returns the primal solution together with the row duals. The basis is
//! refactored from the original data at every pivot, so the column
//! generation loop in the LP bound sees duals accurate to working precision
//! even after thousands of pivots on nearly dependent columns.

use crate::error::{Error, Result};

const EPS: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// One dual value per row, in the sign convention of the original rows.
    pub duals: Vec<f64>,
}

/// Column-major constraint data with `b >= 0`.
struct Problem {
    m: usize,
    cols: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl Problem {
    fn basis_matrix(&self, basis: &[usize]) -> Vec<Vec<f64>> {
        (0..self.m).map(|i| basis.iter().map(|&j| self.cols[j][i]).collect()).collect()
    }

    fn basis_transpose(&self, basis: &[usize]) -> Vec<Vec<f64>> {
        basis.iter().map(|&j| self.cols[j].clone()).collect()
    }

    fn singular() -> Error {
        Error::LpStatus("singular basis".into())
    }

    /// Maximizes `cost.x` from the feasible `basis`; columns flagged in `blocked` never enter.
    fn optimize(&self, cost: &[f64], basis: &mut [usize], blocked: &[bool]) -> Result<()> {
        let m = self.m;
        let scale = cost.iter().fold(1.0f64, |a, c| a.max(c.abs()));
        for _ in 0..MAX_PIVOTS {
            let xb = solve_dense(self.basis_matrix(basis), self.b.clone()).ok_or_else(Self::singular)?;
            let cb: Vec<f64> = basis.iter().map(|&j| cost[j]).collect();
            let y = solve_dense(self.basis_transpose(basis), cb).ok_or_else(Self::singular)?;
            let candidates: Vec<usize> = (0..self.cols.len())
                .filter(|&j| !blocked[j] && !basis.contains(&j) && cost[j] - dot(&y, &self.cols[j]) > EPS * scale)
                .collect();
            if candidates.is_empty() {
                return Ok(());
            }
            let mut pivoted = false;
            for q in candidates {
                let w = solve_dense(self.basis_matrix(basis), self.cols[q].clone()).ok_or_else(Self::singular)?;
                let wmax = w.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
                let mut best: Option<(f64, usize)> = None;
                for i in 0..m {
                    if w[i] > PIVOT_TOL * wmax {
                        let ratio = xb[i].max(0.0) / w[i];
                        best = match best {
                            None => Some((ratio, i)),
                            Some((br, bi)) => {
                                let tie = (ratio - br).abs() <= EPS * br.abs().max(1.0);
                                if (!tie && ratio < br) || (tie && basis[i] < basis[bi]) {
                                    Some((ratio, i))
                                } else {
                                    Some((br, bi))
                                }
                            }
                        };
                    }
                }
                let Some((_, row)) = best else {
                    return Err(Error::LpStatus("unbounded".into()));
                };
                let old = basis[row];
                basis[row] = q;
                // A numerically singular pivot is skipped in favour of the next candidate.
                if solve_dense(self.basis_matrix(basis), self.b.clone()).is_some() {
                    pivoted = true;
                    break;
                }
                basis[row] = old;
            }
            if !pivoted {
                return Ok(());
            }
        }
        Err(Error::LpStatus(format!("pivot limit {MAX_PIVOTS} reached")))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `max c.x` s.t. `rows[i].0 . x  rows[i].1  rows[i].2`, `x >= 0`.
pub fn solve(c: &[f64], rows: &[(Vec<f64>, Relation, f64)]) -> Result<LpSolution> {
    let n = c.len();
    let m = rows.len();
    if let Some(i) = rows.iter().position(|r| r.0.len() != n) {
        return Err(Error::InvalidParams(format!("row {i} has wrong length")));
    }
    // Normalize to b >= 0, remembering flips for the duals.
    let mut flipped = vec![false; m];
    let norm: Vec<(Vec<f64>, Relation, f64)> = rows
        .iter()
        .enumerate()
        .map(|(i, (a, rel, b))| {
            if *b < 0.0 {
                flipped[i] = true;
                let rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (a.iter().map(|v| -v).collect(), rel, -b)
            } else {
                (a.clone(), *rel, *b)
            }
        })
        .collect();

    // Column layout: x (n) | one slack/surplus per row (m) | one artificial per row (m)
    let ncols = n + 2 * m;
    let mut cols = vec![vec![0.0; m]; ncols];
    let mut blocked = vec![false; ncols];
    let mut basis = vec![0; m];
    for (i, (a, rel, _)) in norm.iter().enumerate() {
        for j in 0..n {
            cols[j][i] = a[j];
        }
        cols[n + m + i][i] = 1.0;
        match rel {
            Relation::Le => {
                cols[n + i][i] = 1.0;
                basis[i] = n + i;
                blocked[n + m + i] = true;
            }
            Relation::Ge => {
                cols[n + i][i] = -1.0;
                basis[i] = n + m + i;
            }
            Relation::Eq => {
                blocked[n + i] = true;
                basis[i] = n + m + i;
            }
        }
    }
    let prob = Problem { m, cols, b: norm.iter().map(|r| r.2).collect() };

    // Phase 1: maximize -(sum of artificials).
    if basis.iter().any(|&j| j >= n + m) {
        let cost: Vec<f64> = (0..ncols).map(|j| if j >= n + m { -1.0 } else { 0.0 }).collect();
        prob.optimize(&cost, &mut basis, &blocked)?;
        let xb = solve_dense(prob.basis_matrix(&basis), prob.b.clone()).ok_or_else(Problem::singular)?;
        let infeas: f64 = basis.iter().zip(&xb).filter(|(&j, _)| j >= n + m).map(|(_, v)| v).sum();
        if infeas > 1e-9 * (1.0 + prob.b.iter().sum::<f64>()) {
            return Err(Error::LpStatus("infeasible".into()));
        }
        // Drive remaining (zero-level) artificials out of the basis where possible.
        for i in 0..m {
            if basis[i] < n + m {
                continue;
            }
            let bt = prob.basis_transpose(&basis);
            let mut e = vec![0.0; m];
            e[i] = 1.0;
            // Row i of B^{-1}: solve B^T z = e_i.
            let Some(z) = solve_dense(bt, e) else { continue };
            if let Some(j) = (0..n + m).find(|&j| !blocked[j] && !basis.contains(&j) && dot(&z, &prob.cols[j]).abs() > PIVOT_TOL) {
                basis[i] = j;
            }
        }
        for j in n + m..ncols {
            blocked[j] = true;
        }
    }

    // Phase 2.
    let cost: Vec<f64> = (0..ncols).map(|j| if j < n { c[j] } else { 0.0 }).collect();
    prob.optimize(&cost, &mut basis, &blocked)?;

    let xb = solve_dense(prob.basis_matrix(&basis), prob.b.clone()).ok_or_else(Problem::singular)?;
    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = xb[i].max(0.0);
        }
    }
    let cb: Vec<f64> = basis.iter().map(|&j| cost[j]).collect();
    let w = solve_dense(prob.basis_transpose(&basis), cb).ok_or_else(Problem::singular)?;
    let duals = (0..m).map(|i| if flipped[i] { -w[i] } else { w[i] }).collect();
    let objective = dot(c, &x);
    Ok(LpSolution { objective, x, duals })
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let m = b.len();
    let amax = a.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-15 * amax {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for i in col + 1..m {
            let f = a[i][col] / a[col][col];
            if f != 0.0 {
                for j in col..m {
                    a[i][j] -= f * a[col][j];
                }
                b[i] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_max() {
        // max 3x + 5y; x <= 4; 2y <= 12; 3x + 2y <= 18 -> (2, 6), 36, duals (0, 3/2, 1)
        let s = solve(
            &[3.0, 5.0],
            &[
                (vec![1.0, 0.0], Relation::Le, 4.0),
                (vec![0.0, 2.0], Relation::Le, 12.0),
                (vec![3.0, 2.0], Relation::Le, 18.0),
            ],
        )
        .unwrap();
        assert!((s.objective - 36.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-9 && (s.x[1] - 6.0).abs() < 1e-9);
        for (got, want) in s.duals.iter().zip([0.0, 1.5, 1.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn needs_phase_one() {
        // max -x - y; x + y >= 2; x - y = 0 -> x = y = 1, objective -2
        let s = solve(
            &[-1.0, -1.0],
            &[(vec![1.0, 1.0], Relation::Ge, 2.0), (vec![1.0, -1.0], Relation::Eq, 0.0)],
        )
        .unwrap();
        assert!((s.objective + 2.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9 && (s.x[1] - 1.0).abs() < 1e-9);
        // strong duality: b.y equals the objective
        assert!((2.0 * s.duals[0] + 0.0 * s.duals[1] - s.objective).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let inf = solve(&[1.0], &[(vec![1.0], Relation::Le, 1.0), (vec![1.0], Relation::Ge, 2.0)]);
        assert_eq!(inf, Err(Error::LpStatus("infeasible".into())));
        let unb = solve(&[1.0, 0.0], &[(vec![0.0, 1.0], Relation::Le, 1.0)]);
        assert_eq!(unb, Err(Error::LpStatus("unbounded".into())));
    }

    #[test]
    fn negative_rhs_is_flipped() {
        // max x; -x >= -3  (x <= 3)
        let s = solve(&[1.0], &[(vec![-1.0], Relation::Ge, -3.0)]).unwrap();
        assert!((s.objective - 3.0).abs() < 1e-9);
        assert!((-3.0 * s.duals[0] - s.objective).abs() < 1e-9);
    }
}
