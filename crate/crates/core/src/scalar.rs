//! Real numbers that remember an exact rational value when one is known.
//!
//! Bound routines take parameters such as the eigenvalue threshold as a
//! [`Scalar`]: a rational input (`2`, `7/2`, `0.5`) keeps exact arithmetic all
//! the way through, while irrational inputs (`sqrt2`, `3sqrt3`) fall back to
//! `f64` with their symbolic label preserved for reporting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, to_f64};

#[derive(Clone, Debug, PartialEq)]
pub struct Scalar {
    approx: f64,
    exact: Option<BigRational>,
    label: Option<String>,
}

impl Scalar {
    pub fn exact(q: BigRational) -> Self {
        Scalar { approx: to_f64(&q), exact: Some(q), label: None }
    }

    pub fn float(x: f64) -> Self {
        Scalar { approx: x, exact: None, label: None }
    }

    pub fn integer(n: i64) -> Self {
        Scalar::exact(int(n))
    }

    /// `coef * sqrt(n)`; exact whenever `n` is a perfect square.
    pub fn sqrt_of(coef: BigRational, n: u64) -> Self {
        let root = n.sqrt();
        if root * root == n {
            return Scalar::exact(coef * int(root as i64));
        }
        Scalar { approx: to_f64(&coef) * (n as f64).sqrt(), exact: None, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Parses `7`, `-1`, `7/2`, `0.25`, `sqrt5`, `2sqrt2`, `3*sqrt3`, `-sqrt2`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidParams(format!("cannot parse number `{s}`"));
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(pos) = t.find("sqrt") {
            let head = t[..pos].trim_end_matches('*').trim();
            let coef = match head {
                "" | "+" => int(1),
                "-" => int(-1),
                h => parse_rational(h).ok_or_else(bad)?,
            };
            let radicand: u64 = t[pos + 4..]
                .trim_start_matches('(')
                .trim_end_matches(')')
                .trim()
                .parse()
                .map_err(|_| bad())?;
            return Ok(Scalar::sqrt_of(coef, radicand).with_label(t));
        }
        parse_rational(t).map(Scalar::exact).ok_or_else(bad)
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn add_int(&self, n: i64) -> Scalar {
        let mut out = match &self.exact {
            Some(q) => Scalar::exact(q + int(n)),
            None => Scalar::float(self.approx + n as f64),
        };
        if let Some(l) = &self.label {
            out.label = Some(match n.signum() {
                0 => l.clone(),
                1 => format!("{l}+{n}"),
                _ => format!("{l}{n}"),
            });
        }
        out
    }

    pub fn mul_rational(&self, s: &BigRational) -> Scalar {
        match &self.exact {
            Some(q) => Scalar::exact(q * s),
            None => Scalar::float(self.approx * to_f64(s)),
        }
    }

    pub fn abs(&self) -> Scalar {
        match &self.exact {
            Some(q) => Scalar::exact(q.abs()),
            None => Scalar::float(self.approx.abs()),
        }
    }

    /// Integrality test: exact when possible, otherwise within `tol` (relative to magnitude).
    pub fn is_integer(&self, tol: f64) -> bool {
        match &self.exact {
            Some(q) => q.is_integer(),
            None => (self.approx - self.approx.round()).abs() <= tol * self.approx.abs().max(1.0),
        }
    }

    /// Floor with tolerance for floating values sitting just below an integer.
    pub fn floor_int(&self, tol: f64) -> BigInt {
        match &self.exact {
            Some(q) => q.floor().to_integer(),
            None => {
                let r = self.approx.round();
                let f = if (self.approx - r).abs() <= tol * self.approx.abs().max(1.0) {
                    r
                } else {
                    self.approx.floor()
                };
                BigInt::from(f as i128)
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.exact {
            Some(q) => q.is_negative(),
            None => self.approx < 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(q) => q.is_zero(),
            None => self.approx == 0.0,
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::exact(q)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::float(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            return write!(f, "{l}");
        }
        match &self.exact {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.approx),
        }
    }
}

/// Parses `p`, `p/q`, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = BigInt::from(10).pow(frac.len() as u32);
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn parses_forms() {
        assert_eq!(Scalar::parse("7/2").unwrap().as_exact(), Some(&rat(7, 2)));
        assert_eq!(Scalar::parse("-0.25").unwrap().as_exact(), Some(&rat(-1, 4)));
        assert_eq!(Scalar::parse("sqrt9").unwrap().as_exact(), Some(&int(3)));
        let s = Scalar::parse("3sqrt3").unwrap();
        assert!(!s.is_exact());
        assert!((s.approx() - 3.0 * 3f64.sqrt()).abs() < 1e-15);
        assert!((Scalar::parse("2*sqrt2").unwrap().approx() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!((Scalar::parse("-sqrt2").unwrap().approx() + 2f64.sqrt()).abs() < 1e-15);
        assert!(Scalar::parse("abc").is_err());
        assert!(Scalar::parse("1/0").is_err());
    }

    #[test]
    fn floor_tolerates_float_noise() {
        assert_eq!(Scalar::float(90.99999999999997).floor_int(1e-9), BigInt::from(91));
        assert_eq!(Scalar::float(19.1088).floor_int(1e-9), BigInt::from(19));
        assert_eq!(Scalar::exact(rat(77, 2)).floor_int(1e-9), BigInt::from(38));
    }
}
