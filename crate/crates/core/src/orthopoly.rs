//! The polynomial families `F_i` and `G_i` attached to an `(r, u)` pair.
//!
//! `F_i` are the distance polynomials of the infinite distance-regular graph
//! whose vertices lie on `r` cliques of size `u`: `F_0 = 1`, `F_1 = x`,
//! `F_2 = x^2 - (u-2)x - k`, then
//! `F_{i+1} = (x - u + 2) F_i - q F_{i-1}`. `G_i` is the partial sum
//! `F_0 + ... + F_i`. Everything here is exact over the rationals except the
//! zero finders and the quadrature check.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, to_f64, Poly};
use crate::scalar::parse_rational;
use crate::spectra::eigen::tridiagonal_eigenvalues;

/// Default absolute accuracy for real-valued zeros.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// The pair `(r, u)`: every vertex lies in `r` edges, every edge has `u` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    r: u64,
    u: u64,
}

impl Params {
    pub fn new(r: u64, u: u64) -> Result<Self> {
        if r < 2 || u < 2 {
            return Err(Error::InvalidParams(format!("need r >= 2 and u >= 2, got r={r}, u={u}")));
        }
        Ok(Params { r, u })
    }

    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn u(&self) -> u64 {
        self.u
    }
    /// Valency of the point graph, `r(u-1)`.
    pub fn k(&self) -> u64 {
        self.r * (self.u - 1)
    }
    /// `(r-1)(u-1)`
    pub fn q(&self) -> u64 {
        (self.r - 1) * (self.u - 1)
    }
    pub fn s(&self) -> u64 {
        self.u - 1
    }
    pub fn t(&self) -> u64 {
        self.r - 1
    }

    /// Upper end of the spectral interval, `u - 2 + 2 sqrt(q)`.
    pub fn spectral_limit(&self) -> f64 {
        self.u as f64 - 2.0 + 2.0 * (self.q() as f64).sqrt()
    }

    /// The interval `[u-2-2sqrt(q), u-2+2sqrt(q)]`.
    pub fn interval(&self) -> (f64, f64) {
        let c = self.u as f64 - 2.0;
        let w = 2.0 * (self.q() as f64).sqrt();
        (c - w, c + w)
    }

    pub(crate) fn k_rat(&self) -> BigRational {
        int(self.k() as i64)
    }
    pub(crate) fn q_rat(&self) -> BigRational {
        int(self.q() as i64)
    }
    fn shift(&self) -> i64 {
        self.u as i64 - 2
    }

    /// `F_i(k) = k q^{i-1}` for `i >= 1`, and `1` for `i = 0`.
    pub fn f_at_k(&self, i: usize) -> BigRational {
        if i == 0 {
            return BigRational::one();
        }
        self.k_rat() * num_traits::pow(self.q_rat(), i - 1)
    }

    /// The Moore-type order `G_d(k) = 1 + sum_{j<d} k q^j`.
    pub fn moore_order(&self, d: usize) -> BigRational {
        (0..=d).map(|i| self.f_at_k(i)).fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Values `F_0(x), ..., F_n(x)`.
pub fn f_values(params: &Params, n: usize, x: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigRational::one());
    if n >= 1 {
        out.push(x.clone());
    }
    if n >= 2 {
        out.push(x * x - int(params.shift()) * x - params.k_rat());
    }
    let a = x - int(params.shift());
    let q = params.q_rat();
    for i in 3..=n {
        let next = &a * &out[i - 1] - &q * &out[i - 2];
        out.push(next);
    }
    out
}

/// `F_i(x)` evaluated exactly.
pub fn f_eval(params: &Params, i: usize, x: &BigRational) -> BigRational {
    f_values(params, i, x).pop().expect("non-empty")
}

/// `G_i(x) = F_0(x) + ... + F_i(x)` evaluated exactly.
pub fn g_eval(params: &Params, i: usize, x: &BigRational) -> BigRational {
    f_values(params, i, x).into_iter().fold(BigRational::zero(), |a, b| a + b)
}

pub fn f_values_f64(params: &Params, n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    if n >= 2 {
        out.push(x * x - params.shift() as f64 * x - params.k() as f64);
    }
    let a = x - params.shift() as f64;
    let q = params.q() as f64;
    for i in 3..=n {
        out.push(a * out[i - 1] - q * out[i - 2]);
    }
    out
}

pub fn f_eval_f64(params: &Params, i: usize, x: f64) -> f64 {
    *f_values_f64(params, i, x).last().expect("non-empty")
}

pub fn g_eval_f64(params: &Params, i: usize, x: f64) -> f64 {
    f_values_f64(params, i, x).iter().sum()
}

/// Checks `G_i(x)(x - k) = F_{i+1}(x) - q F_i(x)` exactly.
pub fn g_identity_check(params: &Params, i: usize, x: &BigRational) -> Result<bool> {
    if *x == params.k_rat() {
        return Err(Error::Precondition("identity check requires x != k".into()));
    }
    if i == 0 {
        return Err(Error::Precondition("identity holds for i >= 1 only".into()));
    }
    let fs = f_values(params, i + 1, x);
    let g: BigRational = fs[..=i].iter().fold(BigRational::zero(), |a, b| a + b);
    Ok(g * (x - params.k_rat()) == &fs[i + 1] - params.q_rat() * &fs[i])
}

/// Monomial-basis expansions of `F_0, ..., F_n`.
pub fn f_basis(params: &Params, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    if n >= 1 {
        out.push(Poly::x());
    }
    if n >= 2 {
        out.push(Poly::from_ints(&[-(params.k() as i64), -params.shift(), 1]));
    }
    let a = Poly::from_ints(&[-params.shift(), 1]);
    let q = Poly::constant(params.q_rat());
    for i in 3..=n {
        let next = &(&a * &out[i - 1]) - &(&q * &out[i - 2]);
        out.push(next);
    }
    out
}

/// `G_d` in the monomial basis.
pub fn g_poly(params: &Params, d: usize) -> Poly {
    f_basis(params, d).iter().fold(Poly::zero(), |acc, p| &acc + p)
}

/// `g_c = c (F_0 + ... + F_{d-1}) + F_d` in the monomial basis.
pub fn gc_poly(params: &Params, d: usize, c: &BigRational) -> Poly {
    let basis = f_basis(params, d);
    let head = basis[..d].iter().fold(Poly::zero(), |acc, p| &acc + p);
    &head.scale(c) + &basis[d]
}

/// A polynomial written in the `F`-basis with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPoly {
    params: Params,
    coeffs: Vec<BigRational>,
}

impl FPoly {
    pub fn new(params: Params, coeffs: Vec<BigRational>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { params, coeffs }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Highest index with a nonzero coefficient (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let n = self.coeffs.len().saturating_sub(1);
        f_values(&self.params, n, x)
            .iter()
            .zip(&self.coeffs)
            .fold(BigRational::zero(), |acc, (f, c)| acc + f * c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let n = self.coeffs.len().saturating_sub(1);
        f_values_f64(&self.params, n, x)
            .iter()
            .zip(&self.coeffs)
            .map(|(f, c)| f * to_f64(c))
            .sum()
    }

    /// `f(k) = f_0 + sum_{i>=1} f_i k q^{i-1}`.
    pub fn eval_at_k(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, c)| acc + c * self.params.f_at_k(i))
    }

    pub fn to_monomial(&self) -> Poly {
        let n = self.coeffs.len().saturating_sub(1);
        f_basis(&self.params, n)
            .iter()
            .zip(&self.coeffs)
            .fold(Poly::zero(), |acc, (f, c)| &acc + &f.scale(c))
    }

    /// Re-expands a monomial polynomial by back-substitution against the
    /// monic basis `F_n, F_{n-1}, ..., F_0`.
    pub fn from_monomial(params: Params, p: &Poly) -> Self {
        let Some(n) = p.degree() else {
            return FPoly::new(params, Vec::new());
        };
        let basis = f_basis(&params, n);
        let mut rem = p.clone();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in (0..=n).rev() {
            let c = rem.coeff(i);
            if !c.is_zero() {
                rem = &rem - &basis[i].scale(&c);
            }
            coeffs[i] = c;
        }
        debug_assert!(rem.is_zero());
        FPoly::new(params, coeffs)
    }
}

/// Certificate file format: `r u s`, then `f_0 ... f_s` as rationals.
impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.coeffs.len().saturating_sub(1);
        writeln!(f, "{} {} {s}", self.params.r(), self.params.u())?;
        let cs: Vec<String> = if self.coeffs.is_empty() {
            vec!["0".into()]
        } else {
            self.coeffs.iter().map(|c| c.to_string()).collect()
        };
        writeln!(f, "{}", cs.join(" "))
    }
}

impl FromStr for FPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty certificate".into() })?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line: hl, msg: format!("bad integer `{t}`") }))
            .collect::<Result<_>>()?;
        let [r, u, s] = nums[..] else {
            return Err(Error::Parse { line: hl, msg: "header must be `r u s`".into() });
        };
        let params = Params::new(r, u).map_err(|e| Error::Parse { line: hl, msg: e.to_string() })?;
        let (cl, body) = lines.next().ok_or(Error::Parse { line: hl + 1, msg: "missing coefficients".into() })?;
        let coeffs: Vec<BigRational> = body
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| Error::Parse { line: cl, msg: format!("bad rational `{t}`") }))
            .collect::<Result<_>>()?;
        if coeffs.len() as u64 != s + 1 {
            return Err(Error::Parse { line: cl, msg: format!("expected {} coefficients, found {}", s + 1, coeffs.len()) });
        }
        if let Some((l, _)) = lines.next() {
            return Err(Error::Parse { line: l, msg: "trailing data".into() });
        }
        Ok(FPoly::new(params, coeffs))
    }
}

/// Coefficients `p_l(i, j)` with `F_i F_j = sum_l p_l(i, j) F_l`; zero entries omitted.
pub fn linearization(params: &Params, i: usize, j: usize) -> BTreeMap<usize, BigRational> {
    let basis = f_basis(params, i.max(j));
    let prod = &basis[i] * &basis[j];
    FPoly::from_monomial(*params, &prod)
        .coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// The `(d+1) x (d+1)` tridiagonal intersection matrix of a generalized
/// Moore geometry with last `c`-entry `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagonalArray {
    params: Params,
    d: usize,
    c: BigRational,
}

impl TridiagonalArray {
    pub fn new(params: Params, d: usize, c: BigRational) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("tridiagonal array needs d >= 1".into()));
        }
        if c < BigRational::one() {
            return Err(Error::InvalidParams(format!("tridiagonal array needs c >= 1, got {c}")));
        }
        Ok(TridiagonalArray { params, d, c })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn c(&self) -> &BigRational {
        &self.c
    }

    /// `(c_1, ..., c_d) = (1, ..., 1, c)`
    pub fn superdiagonal(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::one(); self.d];
        v[self.d - 1] = self.c.clone();
        v
    }

    /// `(a_0, ..., a_d) = (0, s-1, ..., s-1, k-c)`
    pub fn diagonal(&self) -> Vec<BigRational> {
        let mut v = vec![int(self.params.s() as i64 - 1); self.d + 1];
        v[0] = BigRational::zero();
        v[self.d] = self.params.k_rat() - &self.c;
        v
    }

    /// `(b_0, ..., b_{d-1}) = (k, q, ..., q)`
    pub fn subdiagonal(&self) -> Vec<BigRational> {
        let mut v = vec![self.params.q_rat(); self.d];
        v[0] = self.params.k_rat();
        v
    }

    /// Dense matrix with `T[i-1][i] = c_i`, `T[i][i] = a_i`, `T[i+1][i] = b_i`.
    pub fn dense(&self) -> Vec<Vec<BigRational>> {
        let n = self.d + 1;
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (i, a) in self.diagonal().into_iter().enumerate() {
            m[i][i] = a;
        }
        for (i, c) in self.superdiagonal().into_iter().enumerate() {
            m[i][i + 1] = c;
        }
        for (i, b) in self.subdiagonal().into_iter().enumerate() {
            m[i + 1][i] = b;
        }
        m
    }

    /// `det(xI - T)` by the continuant recurrence.
    pub fn char_poly(&self) -> Poly {
        let a = self.diagonal();
        let b = self.subdiagonal();
        let c = self.superdiagonal();
        let mut prev = Poly::one();
        let mut cur = Poly::linear_root(&a[0]);
        for i in 1..=self.d {
            let next = &(&Poly::linear_root(&a[i]) * &cur) - &prev.scale(&(&b[i - 1] * &c[i - 1]));
            prev = cur;
            cur = next;
        }
        cur
    }

    /// The polynomial `g_c` whose largest zero is the second eigenvalue of `T`.
    pub fn gc(&self) -> Poly {
        gc_poly(&self.params, self.d, &self.c)
    }

    /// Diagonal similarity to a symmetric tridiagonal matrix.
    pub fn symmetrized(&self) -> (Vec<f64>, Vec<f64>) {
        let diag = self.diagonal().iter().map(to_f64).collect();
        let off = self
            .subdiagonal()
            .iter()
            .zip(self.superdiagonal())
            .map(|(b, c)| to_f64(&(b * c)).sqrt())
            .collect();
        (diag, off)
    }

    /// Eigenvalues in non-increasing order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (diag, off) = self.symmetrized();
        let mut ev = tridiagonal_eigenvalues(&diag, &off)?;
        ev.sort_by(|a, b| b.total_cmp(a));
        Ok(ev)
    }
}

/// Verifies `det(xI - T) = (x - k) g_c(x)` exactly.
pub fn char_poly_check(ta: &TridiagonalArray) -> bool {
    let lhs = ta.char_poly();
    let rhs = &Poly::linear_root(&ta.params.k_rat()) * &ta.gc();
    lhs == rhs
}

/// Largest zero of `G_j` by bisection on the interlacing bracket, cross-checked
/// against the second eigenvalue of `T(r, u, j, 1)`.
pub fn largest_zero_g(params: &Params, j: usize, tol: f64) -> Result<f64> {
    let bisect = largest_zero_g_bisect(params, j, tol)?;
    let ta = TridiagonalArray::new(*params, j, BigRational::one())?;
    let eigen = ta.eigenvalues()?[1];
    let allowed = 10.0 * tol + 1e-9 * params.k() as f64;
    if (bisect - eigen).abs() > allowed {
        return Err(Error::ZeroMismatch { bisection: bisect, eigen });
    }
    Ok(bisect)
}

/// Bisection-only route for the largest zero of `G_j`.
pub(crate) fn largest_zero_g_bisect(params: &Params, j: usize, tol: f64) -> Result<f64> {
    if j == 0 {
        return Err(Error::Precondition("G_0 = 1 has no zeros".into()));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }
    let g = |x: f64| g_eval_f64(params, j, x);
    let centre = params.u() as f64 - 2.0;
    let w = 2.0 * (params.q() as f64).sqrt();
    let lo = centre + w * (PI / j as f64).cos();
    let hi = centre + w * (PI / (j + 1) as f64).cos();
    if g(lo) == 0.0 {
        return Ok(lo);
    }
    if g(lo) < 0.0 && g(hi) > 0.0 {
        return Ok(bisect(g, lo, hi, tol));
    }
    // Fallback: scan down from the top of the hull of the orthogonality
    // measure for the first sign change.
    let top = centre + w;
    let bottom = (centre - w).min(-(params.r() as f64));
    let steps = 64 * (j + 1);
    let h = (top - bottom) / steps as f64;
    let mut x1 = top + h;
    let mut v1 = g(x1);
    for _ in 0..=steps + 1 {
        let x0 = x1 - h;
        let v0 = g(x0);
        if v0 == 0.0 {
            return Ok(x0);
        }
        if (v0 < 0.0) != (v1 < 0.0) {
            return Ok(bisect(g, x0, x1, tol));
        }
        x1 = x0;
        v1 = v0;
    }
    Err(Error::Precondition(format!("no sign change found for G_{j}")))
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let neg_at_lo = f(lo) < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest zero of `g_c`, read off as the second eigenvalue of `T(r, u, d, c)`.
pub fn largest_zero_gc(params: &Params, d: usize, c: &BigRational, tol: f64) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }
    let ta = TridiagonalArray::new(*params, d, c.clone())?;
    Ok(ta.eigenvalues()?[1])
}

/// `<F_i, F_j>` under the orthogonality measure, by the midpoint rule after
/// the substitution `x = u - 2 + 2 sqrt(q) cos(phi)`, plus the atom at `-r`
/// when `r < u`.
pub fn orthogonality_quadrature_check(params: &Params, i: usize, j: usize, npoints: usize) -> Result<f64> {
    if npoints < 1000 {
        return Err(Error::Precondition("quadrature needs at least 1000 points".into()));
    }
    let (r, k) = (params.r() as f64, params.k() as f64);
    let sq = (params.q() as f64).sqrt();
    let centre = params.u() as f64 - 2.0;
    let n = i.max(j);
    let h = PI / npoints as f64;
    let mut total = 0.0;
    for m in 0..npoints {
        let phi = (m as f64 + 0.5) * h;
        let x = centre + 2.0 * sq * phi.cos();
        let fs = f_values_f64(params, n, x);
        let sin = phi.sin();
        let w = r * (2.0 * sq * sin).powi(2) / (2.0 * PI * (k - x) * (r + x));
        total += fs[i] * fs[j] * w;
    }
    total *= h;
    if params.r() < params.u() {
        let fs = f_values_f64(params, n, -r);
        total += (params.u() - params.r()) as f64 / params.u() as f64 * fs[i] * fs[j];
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::poly::rat;

    fn p(r: u64, u: u64) -> Params {
        Params::new(r, u).unwrap()
    }

    #[test]
    fn f_eval_examples() {
        assert_eq!(f_eval(&p(3, 3), 0, &int(5)), int(1));
        assert_eq!(f_eval(&p(3, 3), 3, &int(6)), int(96));
        assert_eq!(f_eval(&p(3, 3), 2, &int(2)), int(-4));
    }

    #[test]
    fn g_eval_examples() {
        assert_eq!(g_eval(&p(3, 2), 1, &int(-1)), int(0));
        assert_eq!(g_eval(&p(3, 3), 2, &int(3)), int(4));
        assert_eq!(g_eval(&p(5, 4), 0, &rat(-7, 3)), int(1));
    }

    #[test]
    fn g_identity_examples() {
        assert!(g_identity_check(&p(3, 3), 2, &int(0)).unwrap());
        assert!(g_identity_check(&p(4, 3), 5, &rat(7, 2)).unwrap());
        assert!(g_identity_check(&p(3, 2), 1, &int(-1)).unwrap());
        assert!(g_identity_check(&p(3, 2), 1, &int(3)).is_err());
    }

    #[test]
    fn params_rejects_small() {
        assert!(Params::new(1, 3).is_err());
        assert!(Params::new(3, 1).is_err());
        let pr = p(4, 3);
        assert_eq!((pr.k(), pr.q(), pr.s(), pr.t()), (8, 6, 2, 3));
    }

    #[test]
    fn linearization_examples() {
        let lin = linearization(&p(3, 3), 1, 1);
        let want: BTreeMap<usize, BigRational> = [(0, int(6)), (1, int(1)), (2, int(1))].into_iter().collect();
        assert_eq!(lin, want);
        let lin = linearization(&p(4, 2), 0, 5);
        assert_eq!(lin, [(5, int(1))].into_iter().collect());
        let lin = linearization(&p(3, 3), 2, 2);
        assert_eq!(lin[&0], int(24));
        assert!((0..=4).all(|l| lin.get(&l).is_some_and(|v| v.is_positive())));
    }

    #[test]
    fn fpoly_k_evaluation_matches_closed_form() {
        let f = FPoly::new(p(6, 2), vec![rat(153, 2), int(64), rat(121, 4), int(9), int(1)]);
        assert_eq!(f.eval_at_k(), f.eval(&int(6)));
        assert_eq!(f.eval_at_k() / f.coeff(0), rat(136, 3));
    }

    #[test]
    fn char_poly_examples() {
        let ta = TridiagonalArray::new(p(3, 2), 2, int(1)).unwrap();
        assert!(char_poly_check(&ta));
        // (x-3)(x+2)(x-1) = x^3 - 2x^2 - 5x + 6
        assert_eq!(ta.char_poly(), Poly::from_ints(&[6, -5, -2, 1]));
        assert!(char_poly_check(&TridiagonalArray::new(p(3, 3), 1, int(1)).unwrap()));
        assert!(char_poly_check(&TridiagonalArray::new(p(8, 2), 2, int(1)).unwrap()));
    }

    #[test]
    fn tridiagonal_column_sums() {
        let ta = TridiagonalArray::new(p(5, 3), 4, rat(5, 2)).unwrap();
        let m = ta.dense();
        for col in 0..=4 {
            let s: BigRational = (0..=4).map(|row| m[row][col].clone()).fold(BigRational::zero(), |a, b| a + b);
            assert_eq!(s, int(10));
        }
        assert!(TridiagonalArray::new(p(5, 3), 0, int(1)).is_err());
        assert!(TridiagonalArray::new(p(5, 3), 2, rat(1, 2)).is_err());
    }

    #[test]
    fn largest_zero_g_examples() {
        for r in 2..9 {
            let z = largest_zero_g(&p(r, 2), 1, 1e-12).unwrap();
            assert!((z + 1.0).abs() < 1e-10);
        }
        let z = largest_zero_g(&p(8, 2), 2, 1e-12).unwrap();
        assert!((z - 2.19258).abs() < 1e-5);
        let z = largest_zero_g(&p(3, 2), 2, 1e-12).unwrap();
        assert!((z - 1.0).abs() < 1e-10);
        assert!(largest_zero_g(&p(3, 2), 0, 1e-9).is_err());
    }

    #[test]
    fn largest_zero_gc_examples() {
        assert!((largest_zero_gc(&p(3, 2), 2, &int(1), 1e-10).unwrap() - 1.0).abs() < 1e-10);
        assert!((largest_zero_gc(&p(5, 3), 2, &int(1), 1e-10).unwrap() - 3.0).abs() < 1e-10);
        assert!((largest_zero_gc(&p(3, 2), 1, &int(3), 1e-10).unwrap() + 3.0).abs() < 1e-10);
    }

    #[test]
    fn quadrature_examples() {
        assert!(orthogonality_quadrature_check(&p(4, 3), 1, 2, 4096).unwrap().abs() <= 1e-6);
        assert!(orthogonality_quadrature_check(&p(3, 4), 0, 1, 4096).unwrap().abs() <= 1e-6);
        assert!(orthogonality_quadrature_check(&p(3, 3), 2, 2, 4096).unwrap() > 0.0);
        assert!(orthogonality_quadrature_check(&p(3, 3), 2, 2, 10).is_err());
    }

    #[test]
    fn quadrature_norms_are_f_at_k() {
        // <F_i, F_i> = k q^{i-1}, for both weight shapes.
        for (r, u) in [(4, 3), (3, 4), (5, 2), (3, 3)] {
            let pr = p(r, u);
            for i in 0..5 {
                let got = orthogonality_quadrature_check(&pr, i, i, 4096).unwrap();
                let want = to_f64(&pr.f_at_k(i));
                assert!((got - want).abs() < 1e-8 * want.max(1.0), "({r},{u}) i={i}: {got} vs {want}");
            }
        }
    }
}
