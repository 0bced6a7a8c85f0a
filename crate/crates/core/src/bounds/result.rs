use std::fmt;

use num_rational::BigRational;

use crate::orthopoly::{FPoly, Params};
use crate::poly::to_f64;
use crate::scalar::Scalar;

/// Which argument produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    LpCert,
    LpOpt,
    ClosedForm,
    Diam,
    Dss,
    Imp2,
    Defect,
    Tau2Lower,
    Ru1,
    Duality,
    Integrality,
    /// Value conditional on a 2-design existing.
    Design,
    /// Value conditional on an orthogonal array existing.
    OrthogonalArray,
}

impl Theorem {
    pub fn tag(&self) -> &'static str {
        match self {
            Theorem::LpCert => "LP_CERT",
            Theorem::LpOpt => "LP_OPT",
            Theorem::ClosedForm => "CLOSED_FORM",
            Theorem::Diam => "DIAM",
            Theorem::Dss => "DSS",
            Theorem::Imp2 => "IMP2",
            Theorem::Defect => "DEFECT",
            Theorem::Tau2Lower => "TAU2_LOWER",
            Theorem::Ru1 => "RU1",
            Theorem::Duality => "DUALITY",
            Theorem::Integrality => "INTEGRALITY",
            Theorem::Design => "DESIGN",
            Theorem::OrthogonalArray => "OA",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A bound value, exact when every input was rational.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Real(f64),
}

impl BoundValue {
    pub fn approx(&self) -> f64 {
        match self {
            BoundValue::Exact(q) => to_f64(q),
            BoundValue::Real(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            BoundValue::Exact(q) => Some(q),
            BoundValue::Real(_) => None,
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        match self {
            BoundValue::Exact(q) => Scalar::exact(q.clone()),
            BoundValue::Real(x) => Scalar::float(*x),
        }
    }
}

impl From<Scalar> for BoundValue {
    fn from(s: Scalar) -> Self {
        match s.as_exact() {
            Some(q) => BoundValue::Exact(q.clone()),
            None => BoundValue::Real(s.approx()),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(q) => write!(f, "{q}"),
            BoundValue::Real(x) => write!(f, "{x}"),
        }
    }
}

/// One step of a refinement chain.
#[derive(Clone, Debug, PartialEq)]
pub struct Refinement {
    pub name: String,
    pub before: BoundValue,
    pub after: BoundValue,
}

/// Equality information reported by the LP bound.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LpEquality {
    /// Whether `f` vanishes at each supplied eigenvalue, in input order.
    pub zero_at_taus: Vec<bool>,
    /// Indices `i >= 1` with `f_i > 0`.
    pub positive_coeffs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub value: BoundValue,
    pub theorem: Theorem,
    pub params: Params,
    pub d: Option<usize>,
    pub c: Option<Scalar>,
    pub theta: Option<Scalar>,
    pub ell: Option<u64>,
    pub e: Option<u64>,
    pub n: Option<u64>,
    pub certificate: Option<FPoly>,
    pub refinements: Vec<Refinement>,
    pub lp_equality: Option<LpEquality>,
    /// Whether the bound can be attained, when the argument decides it.
    pub equality_possible: Option<bool>,
    pub notes: Vec<String>,
}

impl BoundResult {
    pub fn new(value: BoundValue, theorem: Theorem, params: Params) -> Self {
        BoundResult {
            value,
            theorem,
            params,
            d: None,
            c: None,
            theta: None,
            ell: None,
            e: None,
            n: None,
            certificate: None,
            refinements: Vec::new(),
            lp_equality: None,
            equality_possible: None,
            notes: Vec::new(),
        }
    }

    pub fn approx(&self) -> f64 {
        self.value.approx()
    }

    pub(crate) fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] (r={}, u={})", self.value, self.theorem, self.params.r(), self.params.u())?;
        if let Some(d) = self.d {
            write!(f, " d={d}")?;
        }
        if let Some(c) = &self.c {
            write!(f, " c={c}")?;
        }
        if let Some(t) = &self.theta {
            write!(f, " theta={t}")?;
        }
        for r in &self.refinements {
            write!(f, " {}: {} -> {}", r.name, r.before, r.after)?;
        }
        Ok(())
    }
}
