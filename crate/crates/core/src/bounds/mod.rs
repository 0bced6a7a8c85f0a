//! Order bounds for regular uniform hypergraphs and the matching lower bounds
//! on the second eigenvalue.

pub mod closed_form;
pub mod lp;
mod result;
pub mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

pub use closed_form::{
    at_least_lambda, c_value, closed_form_h_bound, integrality_refinements, lambda_at_least, moore_geometry_order,
    select_d, ZTOL,
};
pub use lp::{lp_bound_evaluate, lp_bound_optimize, lp_bound_optimize_with, LpOptions, TauSet};
pub use result::{BoundResult, BoundValue, LpEquality, Refinement, Theorem};

use crate::error::{Error, Result};
use crate::orthopoly::{f_eval, f_eval_f64, g_eval, g_eval_f64, largest_zero_g, largest_zero_gc, Params};
use crate::poly::{int, to_f64};
use crate::scalar::Scalar;

/// `u - 2 + 2 sqrt(q) - (2 sqrt(q) - 1) / ell`.
pub fn feng_li_threshold(params: &Params, ell: u64) -> Result<f64> {
    if ell == 0 {
        return Err(Error::InvalidParams("ell must be at least 1".into()));
    }
    let sq = (params.q() as f64).sqrt();
    Ok(params.u() as f64 - 2.0 + 2.0 * sq - (2.0 * sq - 1.0) / ell as f64)
}

/// Order bound `1 + sum_{j<2 ell} k q^j` for hypergraphs with second eigenvalue
/// at least the Feng-Li threshold for `ell`.
pub fn diameter_order_bound(params: &Params, ell: u64) -> Result<BoundResult> {
    if ell == 0 {
        return Err(Error::InvalidParams("ell must be at least 1".into()));
    }
    if params.r() < 3 {
        return Err(Error::InvalidParams("r must be at least 3".into()));
    }
    let mut out = BoundResult::new(
        BoundValue::Exact(params.moore_order(2 * ell as usize)),
        Theorem::Diam,
        *params,
    );
    out.ell = Some(ell);
    out.equality_possible = Some((params.r(), params.u(), ell) == (3, 2, 1));
    Ok(out)
}

/// Outcome of the generalized distance-spectrum check.
#[derive(Clone, Debug, PartialEq)]
pub struct DssCheck {
    pub passed: bool,
    /// `G_d(k) - n - |G_d(lambda)|`; negative means no such hypergraph.
    pub slack: BoundValue,
    /// `|G_d(lambda)|`.
    pub g_abs: BoundValue,
    /// The rearranged order bound `n <= G_d(k) - |G_d(lambda)|`.
    pub order_bound: BoundResult,
}

/// Checks `|G_d(lambda)| <= G_d(k) - n` for an eigenvalue `lambda != k` of a
/// hypergraph of order `n` and diameter `d`.
pub fn dss_gen_bound(params: &Params, d: usize, n: u64, lambda: &Scalar) -> Result<DssCheck> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    let top = params.moore_order(d);
    let (g_abs, slack, order) = match lambda.as_exact() {
        Some(l) => {
            if *l == params.k_rat() {
                return Err(Error::InvalidParams("lambda must differ from k".into()));
            }
            let g = g_eval(params, d, l).abs();
            let slack = &top - BigRational::from_integer(BigInt::from(n)) - &g;
            (BoundValue::Exact(g.clone()), BoundValue::Exact(slack), BoundValue::Exact(&top - g))
        }
        None => {
            let l = lambda.approx();
            if (l - params.k() as f64).abs() < 1e-12 {
                return Err(Error::InvalidParams("lambda must differ from k".into()));
            }
            let g = g_eval_f64(params, d, l).abs();
            let t = to_f64(&top);
            (BoundValue::Real(g), BoundValue::Real(t - n as f64 - g), BoundValue::Real(t - g))
        }
    };
    let passed = match &slack {
        BoundValue::Exact(s) => !s.is_negative(),
        BoundValue::Real(s) => *s >= -1e-9 * to_f64(&top),
    };
    let mut order_bound = BoundResult::new(order, Theorem::Dss, *params);
    order_bound.d = Some(d);
    order_bound.theta = Some(lambda.clone());
    order_bound.n = Some(n);
    Ok(DssCheck { passed, slack, g_abs, order_bound })
}

/// Order bound for a hypergraph of diameter `d` with second eigenvalue `tau2`.
pub fn imp2_bound(params: &Params, d: usize, tau2: &Scalar) -> Result<BoundResult> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    let mut out = if at_least_lambda(params, d, tau2)? {
        let v = match tau2.as_exact() {
            Some(t) => BoundValue::Exact(params.moore_order(d) - g_eval(params, d, t)),
            None => BoundValue::Real(to_f64(&params.moore_order(d)) - g_eval_f64(params, d, tau2.approx())),
        };
        BoundResult::new(v, Theorem::Imp2, *params).note("case tau2 >= lambda_d: G_d(k) - G_d(tau2)")
    } else if !lambda_at_least(params, d - 1, tau2)? {
        let c = c_value(params, d, tau2);
        let m = moore_geometry_order(params, d, &c)?;
        let cap = match tau2.as_exact() {
            Some(t) => to_f64(&(params.moore_order(d) + g_eval(params, d, t))),
            None => to_f64(&params.moore_order(d)) + g_eval_f64(params, d, tau2.approx()),
        };
        let (mv, strict_needed) = (m.approx(), params.q() >= 6);
        let ok = if strict_needed { mv < cap } else { mv <= cap + 1e-9 * cap.abs() };
        let mut b = BoundResult::new(m.into(), Theorem::Imp2, *params)
            .note("case lambda_{d-1} < tau2 < lambda_d: M(r,u,d,c)")
            .note(format!(
                "M = {mv:.6} {} G_d(k) + G_d(tau2) = {cap:.6}: {}",
                if strict_needed { "<" } else { "<=" },
                if ok { "holds" } else { "FAILS" }
            ));
        b.c = Some(c);
        b
    } else {
        BoundResult::new(BoundValue::Exact(params.moore_order(d - 1)), Theorem::Imp2, *params)
            .note("case tau2 <= lambda_{d-1}: 1 + sum_{j<d-1} k q^j")
    };
    out.d = Some(d);
    out.theta = Some(tau2.clone());
    Ok(out)
}

/// Smallest defect `e` compatible with diameter `d` and second eigenvalue `tau2`.
pub fn defect_lower_bounds(params: &Params, d: usize, tau2: &Scalar) -> Result<BoundValue> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    let kq = params.f_at_k(d);
    if at_least_lambda(params, d, tau2)? {
        return Ok(match tau2.as_exact() {
            Some(t) => BoundValue::Exact(g_eval(params, d, t)),
            None => BoundValue::Real(g_eval_f64(params, d, tau2.approx())),
        });
    }
    if lambda_at_least(params, d - 1, tau2)? {
        return Ok(BoundValue::Exact(kq));
    }
    Ok(match tau2.as_exact() {
        Some(t) => BoundValue::Exact(&kq * g_eval(params, d, t) / f_eval(params, d, t)),
        None => {
            let t = tau2.approx();
            BoundValue::Real(to_f64(&kq) * g_eval_f64(params, d, t) / f_eval_f64(params, d, t))
        }
    })
}

/// Interval for the second eigenvalue of a hypergraph with diameter `d` and defect `e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DefectRegion {
    pub lower: f64,
    /// Largest zero of `G_d`.
    pub lambda_d: f64,
    pub upper: f64,
}

/// `lower` is the largest zero of `g_K` with `K = kq^{d-1}/(kq^{d-1} - e)`;
/// `upper` solves `G_d(x) = e` above `lambda_d`.
pub fn defect_region(params: &Params, d: usize, e: u64) -> Result<DefectRegion> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    let kq = params.f_at_k(d);
    let e_rat = int(e as i64);
    if e_rat >= kq {
        return Err(Error::InvalidParams(format!("defect e = {e} must be below k q^(d-1) = {kq}")));
    }
    let big_k = &kq / (&kq - &e_rat);
    let lower = largest_zero_gc(params, d, &big_k, 1e-12)?;
    let lambda_d = largest_zero_g(params, d, 1e-13)?;
    let ef = e as f64;
    let h = |x: f64| g_eval_f64(params, d, x) - ef;
    let (mut lo, mut hi) = (lambda_d, params.k() as f64);
    if h(hi) < 0.0 {
        return Err(Error::Precondition("G_d(k) < e".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(DefectRegion { lower, lambda_d, upper: 0.5 * (lo + hi) })
}

/// The diameter-2 region through its quadratic closed forms.
pub fn defect_region_d2(params: &Params, e: u64) -> Result<DefectRegion> {
    let kq = (params.k() * params.q()) as f64;
    if e as f64 >= kq {
        return Err(Error::InvalidParams(format!("defect e = {e} must be below kq = {kq}")));
    }
    let (u, q, e) = (params.u() as f64, params.q() as f64, e as f64);
    let big_k = kq / (kq - e);
    Ok(DefectRegion {
        lower: (u - 2.0 - big_k + ((u - big_k).powi(2) + 4.0 * q).sqrt()) / 2.0,
        lambda_d: (u - 3.0 + ((u - 1.0).powi(2) + 4.0 * q).sqrt()) / 2.0,
        upper: (u - 3.0 + ((u - 1.0).powi(2) + 4.0 * q + 4.0 * e).sqrt()) / 2.0,
    })
}

/// Dual parameters: `h(r, u, theta) = scale * h(u, r, theta + r - u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualParams {
    pub r: u64,
    pub u: u64,
    pub theta: Scalar,
    pub scale: BigRational,
}

pub fn duality_transform(r: u64, u: u64, theta: &Scalar) -> Result<DualParams> {
    Params::new(r, u)?;
    Ok(DualParams {
        r: u,
        u: r,
        theta: theta.add_int(r as i64 - u as i64),
        scale: BigRational::new(BigInt::from(u), BigInt::from(r)),
    })
}

/// Transfers an order bound for `(u, r, theta + r - u)` to `(r, u, theta)`.
pub fn duality_bound(r: u64, u: u64, dual: &BoundResult) -> Result<BoundResult> {
    let t = duality_transform(r, u, &Scalar::integer(0))?;
    if (dual.params.r(), dual.params.u()) != (u, r) {
        return Err(Error::InvalidParams("bound is not for the dual parameters".into()));
    }
    let value = match &dual.value {
        BoundValue::Exact(q) => BoundValue::Exact(q * &t.scale),
        BoundValue::Real(x) => BoundValue::Real(x * to_f64(&t.scale)),
    };
    let mut out = BoundResult::new(value, Theorem::Duality, Params::new(r, u)?);
    out.theta = dual.theta.as_ref().map(|th| th.add_int(u as i64 - r as i64));
    Ok(out)
}

/// `h(r, u, 1) <= u (r + 1)` once `r >= max(7u - 5, u^2 - 1)`.
pub fn ru1_bound(r: u64, u: u64) -> Result<Option<BoundResult>> {
    if u < 3 {
        return Err(Error::InvalidParams("u must be at least 3".into()));
    }
    let params = Params::new(r, u)?;
    if r < (7 * u - 5).max(u * u - 1) {
        return Ok(None);
    }
    let mut out = BoundResult::new(BoundValue::Exact(int((u * (r + 1)) as i64)), Theorem::Ru1, params)
        .note(format!("tight iff OA({}, {}) exists", u + 1, r + 1));
    out.theta = Some(Scalar::integer(1));
    Ok(Some(out))
}

/// Lower bound on the second eigenvalue of any `(r,u)` hypergraph on `n` vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Tau2Lower {
    pub d: usize,
    pub c: BigRational,
    pub lambda: f64,
}

impl Tau2Lower {
    pub fn to_bound(&self, params: &Params, n: u64) -> BoundResult {
        let mut b = BoundResult::new(BoundValue::Real(self.lambda), Theorem::Tau2Lower, *params);
        b.d = Some(self.d);
        b.c = Some(Scalar::exact(self.c.clone()));
        b.n = Some(n);
        b
    }
}

pub fn tau2_lower(params: &Params, n: u64, tol: f64) -> Result<Tau2Lower> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    let nq = int(n as i64);
    let mut d = 1;
    while params.moore_order(d) < nq {
        d += 1;
    }
    let c = params.f_at_k(d) / (&nq - params.moore_order(d - 1));
    let lambda = largest_zero_gc(params, d, &c, tol)?;
    Ok(Tau2Lower { d, c, lambda })
}

/// Bound on `|V_1| + |V_2|` for the `(r,u)`-biregular incidence graph.
pub fn biregular_bound(params: &Params, base: &BoundResult) -> BoundValue {
    let s = BigRational::new(BigInt::from(params.r() + params.u()), BigInt::from(params.u()));
    match &base.value {
        BoundValue::Exact(q) => BoundValue::Exact(q * s),
        BoundValue::Real(x) => BoundValue::Real(x * to_f64(&s)),
    }
}

/// `h(r,u,theta) = k + 1` for `-1 <= theta < 0` when a `2-(k+1, u, 1)` design exists.
pub fn design_value(params: &Params, theta: &Scalar, design_exists: bool) -> Option<BoundResult> {
    let t = theta.approx();
    if !design_exists || !(-1.0..0.0).contains(&t) {
        return None;
    }
    let mut b = BoundResult::new(BoundValue::Exact(int(params.k() as i64 + 1)), Theorem::Design, *params)
        .note(format!("attained by a 2-({}, {}, 1) design", params.k() + 1, params.u()));
    b.theta = Some(theta.clone());
    b.equality_possible = Some(true);
    Some(b)
}

/// `h(r,u,theta) = ru` when an `OA(u, r)` exists, for `theta = 0` (and `0 <= theta < 1` when `u >= 3`).
pub fn oa_value(params: &Params, theta: &Scalar, oa_exists: bool) -> Option<BoundResult> {
    let in_range = if params.u() >= 3 {
        (0.0..1.0).contains(&theta.approx())
    } else {
        theta.is_zero()
    };
    if !oa_exists || !in_range {
        return None;
    }
    let mut b = BoundResult::new(BoundValue::Exact(int((params.r() * params.u()) as i64)), Theorem::OrthogonalArray, *params)
        .note(format!("attained by OA({}, {})", params.u(), params.r()));
    b.theta = Some(theta.clone());
    b.equality_possible = Some(true);
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(r: u64, u: u64) -> Params {
        Params::new(r, u).unwrap()
    }

    #[test]
    fn feng_li_examples() {
        assert!((feng_li_threshold(&p(3, 2), 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((feng_li_threshold(&p(3, 3), 1).unwrap() - 2.0).abs() < 1e-12);
        let lim = p(4, 3).spectral_limit();
        assert!((feng_li_threshold(&p(4, 3), 1_000_000).unwrap() - lim).abs() < 1e-5);
        assert!(feng_li_threshold(&p(3, 2), 0).is_err());
    }

    #[test]
    fn diameter_examples() {
        let b = diameter_order_bound(&p(3, 2), 1).unwrap();
        assert_eq!((b.value, b.equality_possible), (BoundValue::Exact(int(10)), Some(true)));
        let b = diameter_order_bound(&p(3, 3), 1).unwrap();
        assert_eq!((b.value, b.equality_possible), (BoundValue::Exact(int(31)), Some(false)));
        assert_eq!(diameter_order_bound(&p(4, 2), 2).unwrap().value, BoundValue::Exact(int(161)));
        assert!(diameter_order_bound(&p(2, 3), 1).is_err());
    }

    #[test]
    fn dss_examples() {
        for l in [1, -2] {
            let c = dss_gen_bound(&p(3, 2), 2, 10, &Scalar::integer(l)).unwrap();
            assert!(c.passed);
            assert_eq!(c.slack, BoundValue::Exact(int(0)));
            assert_eq!(c.order_bound.value, BoundValue::Exact(int(10)));
        }
        let c = dss_gen_bound(&p(5, 2), 2, 32, &Scalar::integer(2)).unwrap();
        assert!(!c.passed);
        assert_eq!(c.g_abs, BoundValue::Exact(int(2)));
        assert_eq!(c.slack, BoundValue::Exact(int(-8)));
        assert!(dss_gen_bound(&p(3, 2), 2, 10, &Scalar::integer(3)).is_err());
    }

    #[test]
    fn imp2_examples() {
        let tau = Scalar::float(largest_zero_g(&p(8, 2), 2, 1e-13).unwrap());
        let b = imp2_bound(&p(8, 2), 2, &tau).unwrap();
        assert!((b.approx() - 65.0).abs() < 1e-6);
        let b = imp2_bound(&p(3, 2), 2, &Scalar::exact(rat(1, 2))).unwrap();
        assert_eq!(b.c.as_ref().unwrap().as_exact(), Some(&rat(11, 6)));
        assert_eq!(b.value, BoundValue::Exact(rat(80, 11)));
        assert!(b.notes.iter().any(|n| n.ends_with("holds")));
        let b = imp2_bound(&p(3, 2), 2, &Scalar::integer(-1)).unwrap();
        assert_eq!(b.value, BoundValue::Exact(int(4)));
    }

    #[test]
    fn defect_lower_examples() {
        assert_eq!(defect_lower_bounds(&p(3, 2), 2, &Scalar::integer(1)).unwrap(), BoundValue::Exact(int(0)));
        assert_eq!(defect_lower_bounds(&p(3, 2), 2, &Scalar::integer(-1)).unwrap(), BoundValue::Exact(int(6)));
        assert_eq!(defect_lower_bounds(&p(4, 2), 2, &Scalar::integer(2)).unwrap(), BoundValue::Exact(int(3)));
        // between lambda_1 and lambda_2: kq G_2 / F_2 at x = 0 for (3,2) is 6 * (-2) / (-3) = 4
        assert_eq!(defect_lower_bounds(&p(3, 2), 2, &Scalar::integer(0)).unwrap(), BoundValue::Exact(int(4)));
    }

    #[test]
    fn defect_region_matches_closed_forms() {
        for (r, u, e) in [(8, 2, 8), (10, 2, 10), (3, 3, 5), (4, 3, 0)] {
            let a = defect_region(&p(r, u), 2, e).unwrap();
            let b = defect_region_d2(&p(r, u), e).unwrap();
            assert!((a.lower - b.lower).abs() < 1e-9, "{r} {u} {e}");
            assert!((a.lambda_d - b.lambda_d).abs() < 1e-9);
            assert!((a.upper - b.upper).abs() < 1e-9);
        }
        let z = defect_region(&p(5, 3), 2, 0).unwrap();
        assert!((z.lower - z.lambda_d).abs() < 1e-9);
        let t = defect_region(&p(8, 2), 2, 8).unwrap();
        assert!((t.lower - 2.09503).abs() < 5e-6 && (t.lambda_d - 2.19258).abs() < 5e-6 && (t.upper - 3.40512).abs() < 5e-6);
        assert!(defect_region(&p(3, 2), 2, 6).is_err());
    }

    #[test]
    fn duality_examples() {
        let t = duality_transform(4, 3, &Scalar::integer(1)).unwrap();
        assert_eq!((t.r, t.u, t.theta.as_exact().cloned()), (3, 4, Some(int(2))));
        assert_eq!(t.scale, rat(3, 4));
        let dual = BoundResult::new(BoundValue::Exact(int(20)), Theorem::LpCert, p(3, 4));
        assert_eq!(duality_bound(4, 3, &dual).unwrap().value, BoundValue::Exact(int(15)));
        let s = duality_transform(3, 3, &Scalar::parse("sqrt3").unwrap()).unwrap();
        assert_eq!(s.scale, int(1));
        assert_eq!(s.theta.approx(), 3f64.sqrt());
        let once = duality_transform(5, 3, &Scalar::integer(2)).unwrap();
        let twice = duality_transform(once.r, once.u, &once.theta).unwrap();
        assert_eq!((twice.r, twice.u, twice.theta.as_exact().cloned()), (5, 3, Some(int(2))));
        assert_eq!(&once.scale * &twice.scale, int(1));
    }

    #[test]
    fn ru1_examples() {
        assert_eq!(ru1_bound(16, 3).unwrap().unwrap().value, BoundValue::Exact(int(51)));
        assert!(ru1_bound(8, 3).unwrap().is_none());
        assert_eq!(ru1_bound(24, 4).unwrap().unwrap().value, BoundValue::Exact(int(100)));
        assert!(ru1_bound(16, 2).is_err());
    }

    #[test]
    fn tau2_lower_examples() {
        let t = tau2_lower(&p(3, 2), 10, 1e-12).unwrap();
        assert_eq!((t.d, t.c.clone()), (2, int(1)));
        assert!((t.lambda - 1.0).abs() < 1e-9);
        let t = tau2_lower(&p(4, 3), 2, 1e-12).unwrap();
        assert_eq!((t.d, t.c.clone()), (1, int(8)));
        assert!((t.lambda + 8.0).abs() < 1e-9);
        let t = tau2_lower(&p(3, 2), 4, 1e-12).unwrap();
        assert_eq!((t.d, t.c.clone()), (1, int(1)));
        assert!((t.lambda + 1.0).abs() < 1e-9);
        assert!(tau2_lower(&p(3, 2), 1, 1e-12).is_err());
    }

    #[test]
    fn biregular_examples() {
        let b = BoundResult::new(BoundValue::Exact(int(10)), Theorem::ClosedForm, p(3, 2));
        assert_eq!(biregular_bound(&p(3, 2), &b), BoundValue::Exact(int(25)));
        let b = BoundResult::new(BoundValue::Exact(int(9)), Theorem::OrthogonalArray, p(3, 3));
        assert_eq!(biregular_bound(&p(3, 3), &b), BoundValue::Exact(int(18)));
    }

    #[test]
    fn conditional_values() {
        assert_eq!(design_value(&p(3, 3), &Scalar::integer(-1), true).unwrap().value, BoundValue::Exact(int(7)));
        assert!(design_value(&p(3, 3), &Scalar::integer(0), true).is_none());
        assert!(design_value(&p(3, 3), &Scalar::integer(-1), false).is_none());
        assert_eq!(oa_value(&p(4, 3), &Scalar::integer(0), true).unwrap().value, BoundValue::Exact(int(12)));
        assert!(oa_value(&p(4, 2), &Scalar::exact(rat(1, 2)), true).is_none());
        assert!(oa_value(&p(4, 3), &Scalar::exact(rat(1, 2)), true).is_some());
    }
}
