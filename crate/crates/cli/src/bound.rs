use std::path::PathBuf;

use clap::{Args, Subcommand};
use hyplp::bounds::closed_form::{closed_form_h_bound, integrality_refinements};
use hyplp::bounds::{
    defect_region, diameter_order_bound, dss_gen_bound, feng_li_threshold, imp2_bound, lp_bound_evaluate,
    lp_bound_optimize, ru1_bound, tau2_lower, TauSet,
};
use hyplp::{FPoly, Params, Scalar};

use crate::report::{bound_record, value_cell, Cell, Record};
use crate::{read_input, CliResult};

#[derive(Args, Debug, Clone, Copy)]
pub struct Shape {
    /// Vertex degree
    #[arg(long)]
    pub r: u64,
    /// Edge size
    #[arg(long)]
    pub u: u64,
}

impl Shape {
    pub fn params(&self) -> CliResult<Params> {
        Ok(Params::new(self.r, self.u)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum BoundKind {
    /// Closed-form order bound for second eigenvalue at most theta
    ClosedForm {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Apply the integrality cuts
        #[arg(long)]
        refine: bool,
        /// Assume the extremal object does not exist (implies --refine)
        #[arg(long)]
        equality_excluded: bool,
    },
    /// Linear programming bound: optimize, or evaluate a certificate file
    Lp {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Certificate degree; default 8 when optimizing
        #[arg(long)]
        degree: Option<usize>,
        /// Certificate file: "r u s" then f_0 .. f_s
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Comma-separated eigenvalues to check instead of [-r, theta]
        #[arg(long, allow_hyphen_values = true)]
        taus: Option<String>,
    },
    /// Distance-polynomial test for order n, diameter d and eigenvalue theta
    Dss {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Order bound from diameter d and second eigenvalue theta
    Imp2 {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Order bound when every eigenvalue other than k is at most ell
    Diam {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        ell: u64,
    },
    /// h(r, u, 1) <= u(r + 1) for large r
    Ru1 {
        #[command(flatten)]
        shape: Shape,
    },
    /// Lower bound on the second eigenvalue for order n
    Tau2Lower {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Second-eigenvalue region for diameter d and defect e
    DefectRegion {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

fn scalar(s: &str) -> CliResult<Scalar> {
    Ok(Scalar::parse(s)?)
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| format!("--{flag} is required").into())
}

pub fn run(kind: &BoundKind) -> CliResult<Record> {
    Ok(match kind {
        BoundKind::ClosedForm { shape, theta, refine, equality_excluded } => {
            let b = closed_form_h_bound(&shape.params()?, &scalar(theta)?)?;
            if *refine || *equality_excluded {
                bound_record(&integrality_refinements(&b, *equality_excluded))
            } else {
                bound_record(&b)
            }
        }
        BoundKind::Lp { shape, theta, degree, cert, taus } => {
            let params = shape.params()?;
            match cert {
                Some(path) => {
                    let f: FPoly = read_input(path.to_str().unwrap_or("-"))?.parse()?;
                    if let Some(s) = degree {
                        if f.degree() != Some(*s) {
                            return Err(format!("certificate has degree {:?}, --degree says {s}", f.degree()).into());
                        }
                    }
                    let set = match taus {
                        Some(list) => TauSet::Points(list.split(',').map(scalar).collect::<CliResult<_>>()?),
                        None => TauSet::Interval(scalar(require(theta, "theta or --taus")?)?),
                    };
                    let mut b = lp_bound_evaluate(&params, &f, &set)?;
                    if let TauSet::Interval(t) = set {
                        b.theta = Some(t);
                    }
                    bound_record(&b)
                }
                None => {
                    if taus.is_some() {
                        return Err("--taus needs --cert".into());
                    }
                    let th = scalar(require(theta, "theta")?)?;
                    bound_record(&lp_bound_optimize(&params, &th, degree.unwrap_or(8))?)
                }
            }
        }
        BoundKind::Dss { shape, d, n, theta } => {
            let check = dss_gen_bound(&shape.params()?, *d, *n, &scalar(theta)?)?;
            let mut rec = bound_record(&check.order_bound);
            rec.push("passed", Cell::Bool(check.passed));
            rec.push("slack", value_cell(&check.slack));
            rec.push("g_abs", value_cell(&check.g_abs));
            rec
        }
        BoundKind::Imp2 { shape, d, theta } => bound_record(&imp2_bound(&shape.params()?, *d, &scalar(theta)?)?),
        BoundKind::Diam { shape, ell } => {
            let params = shape.params()?;
            let mut rec = bound_record(&diameter_order_bound(&params, *ell)?);
            rec.push("threshold", Cell::Num(feng_li_threshold(&params, *ell)?));
            rec
        }
        BoundKind::Ru1 { shape } => match ru1_bound(shape.r, shape.u)? {
            Some(b) => bound_record(&b),
            None => {
                let need = (7 * shape.u - 5).max(shape.u * shape.u - 1);
                return Err(format!("precondition violated: r >= max(7u - 5, u^2 - 1) = {need}").into());
            }
        },
        BoundKind::Tau2Lower { shape, n, tol } => {
            let params = shape.params()?;
            bound_record(&tau2_lower(&params, *n, *tol)?.to_bound(&params, *n))
        }
        BoundKind::DefectRegion { shape, e, d } => {
            let reg = defect_region(&shape.params()?, *d, *e)?;
            let mut rec = Record::new();
            rec.push("r", Cell::Int(shape.r as i64))
                .push("u", Cell::Int(shape.u as i64))
                .push("d", Cell::Int(*d as i64))
                .push("e", Cell::Int(*e as i64))
                .push("lower", Cell::Num(reg.lower))
                .push("lambda_d", Cell::Num(reg.lambda_d))
                .push("upper", Cell::Num(reg.upper));
            rec
        }
    })
}
