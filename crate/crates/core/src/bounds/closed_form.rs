//! The closed-form order bound `M(r, u, d, c)` and its integrality cuts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::result::{BoundResult, BoundValue, Refinement, Theorem};
use crate::error::{Error, Result};
use crate::orthopoly::{f_eval, f_eval_f64, g_eval, g_eval_f64, g_poly, gc_poly, largest_zero_g, FPoly, Params};
use crate::poly::{count_roots, int, Poly};
use crate::scalar::Scalar;

/// Tolerance when comparing a floating threshold with a zero `lambda_j`;
/// values within it count as lying on the inclusive side `theta <= lambda_j`.
pub const ZTOL: f64 = 1e-9;
/// Upper limit on the `d` searched for.
pub const MAX_D: usize = 500;

/// `M(r,u,d,c) = 1 + sum_{j=0}^{d-2} k q^j + k q^{d-1} / c`.
pub fn moore_geometry_order(params: &Params, d: usize, c: &Scalar) -> Result<Scalar> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    if c.approx() <= 0.0 {
        return Err(Error::InvalidParams(format!("c must be positive, got {c}")));
    }
    let head = params.moore_order(d - 1);
    let tail = params.f_at_k(d);
    Ok(match c.as_exact() {
        Some(c) => Scalar::exact(head + tail / c),
        None => Scalar::float(crate::poly::to_f64(&head) + crate::poly::to_f64(&tail) / c.approx()),
    })
}

/// Whether `lambda_j >= x` (`lambda_0 = -infinity`).
pub fn lambda_at_least(params: &Params, j: usize, x: &Scalar) -> Result<bool> {
    if j == 0 {
        return Ok(false);
    }
    match x.as_exact() {
        Some(t) => {
            let g = g_poly(params, j);
            Ok(g.eval(t).is_zero() || count_roots(&g, t, &(params.k_rat() + int(1))) > 0)
        }
        None => Ok(largest_zero_g(params, j, 1e-12)? >= x.approx() - ZTOL),
    }
}

/// Whether `x >= lambda_j`, with boundary values counted as equal.
pub fn at_least_lambda(params: &Params, j: usize, x: &Scalar) -> Result<bool> {
    if j == 0 {
        return Ok(true);
    }
    match x.as_exact() {
        Some(t) => {
            let g = g_poly(params, j);
            Ok(g.eval(t).is_zero() || count_roots(&g, t, &(params.k_rat() + int(1))) == 0)
        }
        None => Ok(x.approx() >= largest_zero_g(params, j, 1e-12)? - ZTOL),
    }
}

/// Smallest `d >= 1` with `theta <= lambda_d`.
pub fn select_d(params: &Params, theta: &Scalar) -> Result<usize> {
    for d in 1..=MAX_D {
        if lambda_at_least(params, d, theta)? {
            return Ok(d);
        }
    }
    Err(Error::Precondition(format!("theta = {theta} is too close to the spectral limit (d > {MAX_D})")))
}

/// `c = -F_d(theta) / G_{d-1}(theta)`.
pub fn c_value(params: &Params, d: usize, theta: &Scalar) -> Scalar {
    match theta.as_exact() {
        Some(t) => Scalar::exact(-f_eval(params, d, t) / g_eval(params, d - 1, t)),
        None => {
            let t = theta.approx();
            Scalar::float(-f_eval_f64(params, d, t) / g_eval_f64(params, d - 1, t))
        }
    }
}

/// Upper bound on the order of an `(r,u)` hypergraph with second eigenvalue at most `theta`.
///
/// Accepts `-k <= theta < u-2+2sqrt(q)`. Below `-1` the bound is `1 + k/c`
/// with `c = -theta` (`d = 1`).
pub fn closed_form_h_bound(params: &Params, theta: &Scalar) -> Result<BoundResult> {
    let limit = params.spectral_limit();
    if theta.approx() >= limit {
        return Err(Error::InvalidParams(format!("theta = {theta} must be below u-2+2sqrt(q) = {limit:.6}")));
    }
    let below_min = match theta.as_exact() {
        Some(t) => *t < -params.k_rat(),
        None => theta.approx() < -(params.k() as f64) - ZTOL,
    };
    if below_min {
        return Err(Error::InvalidParams(format!("theta = {theta} must be at least -k = -{}", params.k())));
    }

    let d = select_d(params, theta)?;
    let mut c = c_value(params, d, theta);
    let mut notes = Vec::new();
    if c.approx() < 1.0 {
        if c.is_exact() || c.approx() < 1.0 - 1e-6 {
            return Err(Error::Precondition(format!("c = {c} < 1 for theta = {theta}, d = {d}")));
        }
        notes.push(format!("c = {} rounded up to 1 (theta within tolerance of lambda_{d})", c.approx()));
        c = Scalar::integer(1);
    }
    let m = moore_geometry_order(params, d, &c)?;
    let mut out = BoundResult::new(m.clone().into(), Theorem::ClosedForm, *params);
    out.d = Some(d);
    out.c = Some(c.clone());
    out.theta = Some(theta.clone());
    out.notes = notes;
    out.notes.push(format!(
        "equality only for a generalized Moore geometry with intersection array T({}, {}, {d}, {c})",
        params.r(),
        params.u()
    ));
    if !theta.is_exact() {
        out.notes.push(format!("theta compared with the zeros lambda_j within {ZTOL:e}"));
    }
    if let (Some(t), Some(cq)) = (theta.as_exact(), c.as_exact()) {
        if let Some(cert) = closed_form_certificate(params, d, cq, t) {
            if m.as_exact().is_some_and(|mq| cert.eval_at_k() / cert.coeff(0) == *mq) {
                out.certificate = Some(cert);
            }
        }
    }
    out.equality_possible = Some(c.is_integer(1e-9) && m.is_integer(1e-9));
    Ok(out)
}

/// The certificate `g_c(x)^2 / (x - theta)` in the F-basis.
pub fn closed_form_certificate(params: &Params, d: usize, c: &BigRational, theta: &BigRational) -> Option<FPoly> {
    let g = gc_poly(params, d, c);
    let (q, r) = (&g * &g).div_rem(&Poly::linear_root(theta));
    r.is_zero().then(|| FPoly::from_monomial(*params, &q))
}

/// Integer cuts applied to an order bound: equality exclusion (non-integral
/// `c`, or excluded by the caller), then the divisibility `u | r v`.
pub fn integrality_refinements(b: &BoundResult, equality_excluded: bool) -> BoundResult {
    let params = b.params;
    let m = b.value.to_scalar();
    let c_fractional = b.c.as_ref().is_some_and(|c| !c.is_integer(1e-9));
    let snapped = m.is_integer(1e-9);
    let floor = m.floor_int(1e-9);

    let mut out = b.clone();
    out.theorem = Theorem::Integrality;
    let mut current = b.value.clone();
    let step1 = if (c_fractional || equality_excluded) && snapped { &floor - 1 } else { floor.clone() };
    let name = if c_fractional {
        "c-integrality"
    } else if equality_excluded && snapped {
        "equality-excluded"
    } else {
        "floor"
    };
    let v1 = BoundValue::Exact(BigRational::from_integer(step1.clone()));
    if v1 != current {
        out.refinements.push(Refinement { name: name.into(), before: current.clone(), after: v1.clone() });
        current = v1;
    }

    let (r, u) = (BigInt::from(params.r()), BigInt::from(params.u()));
    // r v = 0 mod u  <=>  v = 0 mod u / gcd(r, u)
    let step = &u / r.gcd(&u);
    let v2 = if step.is_one() { step1.clone() } else { step1.div_floor(&step) * &step };
    let v2 = BoundValue::Exact(BigRational::from_integer(v2));
    if v2 != current {
        out.refinements.push(Refinement { name: "divisibility".into(), before: current, after: v2.clone() });
    }
    out.value = v2;
    out
}
