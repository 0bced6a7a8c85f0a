//! The linear programming bound: certificate evaluation and optimization.

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::result::{BoundResult, BoundValue, LpEquality, Theorem};
use super::simplex::{self, Relation};
use crate::error::{Error, Result};
use crate::orthopoly::{f_values_f64, FPoly, Params};
use crate::poly::{certify_nonpositive, int, to_f64, Poly};
use crate::scalar::Scalar;

/// Absolute slack allowed when a hypothesis can only be checked in floating point.
pub const FLOAT_TOL: f64 = 1e-9;
/// Grid size for the floating-point interval check.
pub const INTERVAL_GRID: usize = 10_000;

/// Where the certificate must be non-positive.
#[derive(Clone, Debug, PartialEq)]
pub enum TauSet {
    /// The non-trivial distinct eigenvalues.
    Points(Vec<Scalar>),
    /// Every point of `[-r, theta]`.
    Interval(Scalar),
}

/// `f(k) / f_0` after checking every hypothesis of the LP bound.
pub fn lp_bound_evaluate(params: &Params, f: &FPoly, taus: &TauSet) -> Result<BoundResult> {
    if f.params() != params {
        return Err(Error::InvalidParams("certificate parameters differ from the requested ones".into()));
    }
    let fail = |condition: &str, witness: String| Err(Error::LpHypothesis { condition: condition.into(), witness });
    let f0 = f.coeff(0);
    if !f0.is_positive() {
        return fail("f_0 > 0", format!("f_0 = {f0}"));
    }
    if let Some((i, c)) = f.coeffs().iter().enumerate().skip(1).find(|(_, c)| c.is_negative()) {
        return fail("f_i >= 0 for i >= 1", format!("f_{i} = {c}"));
    }
    let fk = f.eval_at_k();
    if !fk.is_positive() {
        return fail("f(k) > 0", format!("f(k) = {fk}"));
    }

    let mut zero_at_taus = Vec::new();
    let mut notes = Vec::new();
    let theta = match taus {
        TauSet::Points(points) => {
            for tau in points {
                match tau.as_exact() {
                    Some(t) => {
                        let v = f.eval(t);
                        if v.is_positive() {
                            return fail("f(tau) <= 0", format!("f({tau}) = {v}"));
                        }
                        zero_at_taus.push(v.is_zero());
                    }
                    None => {
                        let v = f.eval_f64(tau.approx());
                        if v > FLOAT_TOL * scale_of(f) {
                            return fail("f(tau) <= 0", format!("f({tau}) = {v:e}"));
                        }
                        zero_at_taus.push(v.abs() <= FLOAT_TOL * scale_of(f));
                    }
                }
            }
            None
        }
        TauSet::Interval(theta) => {
            let lo = -(params.r() as i64);
            match theta.as_exact() {
                Some(t) => {
                    if let Err(x) = certify_nonpositive(&f.to_monomial(), &int(lo), t) {
                        return fail("f(x) <= 0 on [-r, theta]", format!("f({x}) > 0"));
                    }
                    notes.push("interval hypothesis certified exactly (Sturm sequences)".to_string());
                }
                None => {
                    if let Err(x) = verify_interval_f64(f, lo as f64, theta.approx()) {
                        return fail("f(x) <= 0 on [-r, theta]", format!("f({x}) = {:e}", f.eval_f64(x)));
                    }
                    notes.push(format!("interval hypothesis checked in floating point, tolerance {FLOAT_TOL:e}"));
                }
            }
            Some(theta.clone())
        }
    };

    let positive_coeffs = f.coeffs().iter().enumerate().skip(1).filter(|(_, c)| c.is_positive()).map(|(i, _)| i).collect();
    let mut out = BoundResult::new(BoundValue::Exact(fk / f0), Theorem::LpCert, *params);
    out.theta = theta;
    out.certificate = Some(f.clone());
    out.lp_equality = Some(LpEquality { zero_at_taus, positive_coeffs });
    out.notes = notes;
    Ok(out)
}

fn scale_of(f: &FPoly) -> f64 {
    f.coeffs().iter().map(|c| to_f64(c).abs()).fold(1.0, f64::max)
}

/// Checks `f <= FLOAT_TOL * scale` on `[lo, hi]` with a grid plus a
/// second-derivative bound on each cell. Returns a violating point on failure.
fn verify_interval_f64(f: &FPoly, lo: f64, hi: f64) -> std::result::Result<(), f64> {
    if hi < lo {
        return Ok(());
    }
    let p = f.to_monomial();
    let dp = p.derivative();
    let coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let radius = lo.abs().max(hi.abs());
    // |p''(x)| <= sum |a_i| i (i-1) R^(i-2)
    let m2: f64 = coeffs
        .iter()
        .enumerate()
        .skip(2)
        .map(|(i, a)| a.abs() * (i * (i - 1)) as f64 * radius.powi(i as i32 - 2))
        .sum();
    let tol = FLOAT_TOL * scale_of(f);
    let h = (hi - lo) / INTERVAL_GRID as f64;
    for cell in 0..INTERVAL_GRID {
        let a = lo + h * cell as f64;
        let b = if cell + 1 == INTERVAL_GRID { hi } else { a + h };
        check_cell(&p, &dp, m2, tol, a, b, 0)?;
    }
    Ok(())
}

fn check_cell(p: &Poly, dp: &Poly, m2: f64, tol: f64, a: f64, b: f64, depth: usize) -> std::result::Result<(), f64> {
    for x in [a, b] {
        if p.eval_f64(x) > tol {
            return Err(x);
        }
    }
    let m = 0.5 * (a + b);
    let w = 0.5 * (b - a);
    let pm = p.eval_f64(m);
    if pm > tol {
        return Err(m);
    }
    if pm + dp.eval_f64(m).abs() * w + 0.5 * m2 * w * w <= tol {
        return Ok(());
    }
    if depth >= 60 {
        return Err(m);
    }
    check_cell(p, dp, m2, tol, a, m, depth + 1)?;
    check_cell(p, dp, m2, tol, m, b, depth + 1)
}

/// Options for [`lp_bound_optimize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpOptions {
    pub initial_points: usize,
    pub scan_points: usize,
    pub violation_tol: f64,
    pub max_rounds: usize,
    /// Margin subtracted from `f_0` before exact re-verification.
    pub safety_margin: f64,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { initial_points: 200, scan_points: 10_000, violation_tol: 1e-8, max_rounds: 100, safety_margin: 1e-9 }
    }
}

/// Numerically optimizes the LP bound over certificates of degree `s` that
/// are non-positive on `[-r, theta]`, then re-verifies the rounded certificate.
pub fn lp_bound_optimize(params: &Params, theta: &Scalar, s: usize) -> Result<BoundResult> {
    lp_bound_optimize_with(params, theta, s, &LpOptions::default())
}

pub fn lp_bound_optimize_with(params: &Params, theta: &Scalar, s: usize, opts: &LpOptions) -> Result<BoundResult> {
    if s == 0 {
        return Err(Error::InvalidParams("degree must be at least 1".into()));
    }
    let lo = -(params.r() as f64);
    let hi = theta.approx();
    if hi >= params.spectral_limit() {
        return Err(Error::InvalidParams(format!("theta = {theta} must be below u-2+2sqrt(q) = {}", params.spectral_limit())));
    }
    if hi < lo {
        return Err(Error::InvalidParams(format!("theta = {theta} lies below -r")));
    }
    let fk: Vec<f64> = (0..=s).map(|j| to_f64(&params.f_at_k(j))).collect();
    // Column for a point tau: a_j = -F_j(tau) / F_j(k), j = 1..s.
    let column = |tau: f64| -> Vec<f64> {
        let fv = f_values_f64(params, s, tau);
        (1..=s).map(|j| -fv[j] / fk[j]).collect()
    };
    let n0 = opts.initial_points.max(2);
    let mut points: Vec<f64> = (0..n0).map(|i| lo + (hi - lo) * i as f64 / (n0 - 1) as f64).collect();

    let mut rounds = 0;
    let (y, violation) = loop {
        rounds += 1;
        if rounds > opts.max_rounds {
            return Err(Error::LpStatus(format!("no convergence after {} rounds", opts.max_rounds)));
        }
        let cols: Vec<Vec<f64>> = points.iter().map(|&t| column(t)).collect();
        let rows: Vec<(Vec<f64>, Relation, f64)> =
            (0..s).map(|j| (cols.iter().map(|c| c[j]).collect(), Relation::Le, 1.0)).collect();
        let sol = match simplex::solve(&vec![1.0; points.len()], &rows) {
            Ok(sol) => sol,
            Err(Error::LpStatus(msg)) if msg == "unbounded" => {
                return Err(Error::LpStatus(format!("no certificate of degree {s} exists for theta = {theta}")));
            }
            Err(e) => return Err(e),
        };
        let y: Vec<f64> = sol.duals.iter().map(|v| v.max(0.0)).collect();
        // f(x) = 1 + sum_j (y_j / F_j(k)) F_j(x)
        let f = |x: f64| -> f64 {
            let fv = f_values_f64(params, s, x);
            1.0 + (1..=s).map(|j| y[j - 1] / fk[j] * fv[j]).sum::<f64>()
        };
        let found = most_violated(&f, lo, hi, opts.scan_points);
        let worst = found.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        if worst <= opts.violation_tol {
            break (y, worst.max(0.0));
        }
        for (x, v) in found {
            if v > opts.violation_tol {
                points.push(x);
            }
        }
    };

    // Rational certificate with f_0 lowered by the residual violation and a margin.
    let mut coeffs = Vec::with_capacity(s + 1);
    let shift = violation + opts.safety_margin;
    coeffs.push(BigRational::one() - BigRational::from_f64(shift).unwrap_or_else(BigRational::zero));
    for j in 1..=s {
        let fj = y[j - 1] / fk[j];
        coeffs.push(BigRational::from_f64(fj).unwrap_or_else(BigRational::zero));
    }
    let cert = FPoly::new(*params, coeffs);
    let mut out = lp_bound_evaluate(params, &cert, &TauSet::Interval(theta.clone()))?;
    out.theorem = Theorem::LpOpt;
    out.notes.push(format!("column generation converged in {rounds} rounds with {} constraint points", points.len()));
    Ok(out)
}

/// Local maxima of `f` on a fine grid over `[lo, hi]`, refined by golden-section search.
fn most_violated(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let n = n.max(2);
    let h = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i + 1 == n { hi } else { lo + h * i as f64 }).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let left = if i == 0 { f64::NEG_INFINITY } else { vs[i - 1] };
        let right = if i + 1 == n { f64::NEG_INFINITY } else { vs[i + 1] };
        if vs[i] >= left && vs[i] >= right {
            let a = if i == 0 { lo } else { xs[i - 1] };
            let b = if i + 1 == n { hi } else { xs[i + 1] };
            out.push(golden_max(f, a, b, xs[i], vs[i]));
        }
    }
    out.sort_by(|a, b| b.1.total_cmp(&a.1));
    out.truncate(16);
    out
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, x0: f64, v0: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let (xm, vm) = if fc >= fd { (c, fc) } else { (d, fd) };
    let (fa, fb) = (f(a), f(b));
    [(x0, v0), (xm, vm), (a, fa), (b, fb)].into_iter().fold((x0, v0), |best, p| if p.1 > best.1 { p } else { best })
}
