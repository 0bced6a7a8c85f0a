use hyplp::bounds::closed_form::closed_form_h_bound;
use hyplp::bounds::{design_value, oa_value, tau2_lower};
use hyplp::hypergraph::TraceGirth;
use hyplp::poly::int;
use hyplp::spectra::{adjacency_spectrum, is_ramanujan, second_eigenvalue, spectrum_correspondence_check, DEFAULT_TOL};
use hyplp::{Hypergraph, Params, Scalar};

use crate::report::{fmt_num, value_cell, Cell, Record};

/// Longest walk length tried by the trace girth test.
const TRACE_GIRTH_MAX: usize = 12;

/// Snaps a computed eigenvalue to an integer or a square root when it is within `1e-8` of one.
fn snap(x: f64) -> Scalar {
    let n = x.round();
    if (x - n).abs() <= 1e-8 {
        return Scalar::integer(n as i64);
    }
    let sq = (x * x).round();
    if x > 0.0 && (x - sq.sqrt()).abs() <= 1e-8 {
        return Scalar::sqrt_of(int(1), sq as u64).with_label(format!("sqrt{sq}"));
    }
    Scalar::float(x)
}

fn error_cell(e: impl std::fmt::Display) -> Cell {
    Cell::text(format!("n/a ({e})"))
}

pub fn analyze(h: &Hypergraph) -> Record {
    let mut rec = Record::new();
    let n = h.n();
    rec.push("vertices", Cell::Int(n as i64));
    rec.push("edges", Cell::Int(h.num_edges() as i64));
    let shape = h.check_regular_uniform();
    match &shape {
        Ok((r, u)) => rec.push("regular_uniform", Cell::text(format!("r = {r}, u = {u}"))),
        Err(e) => rec.push("regular_uniform", Cell::text(format!("no: {e}"))),
    };
    let dist = h.distance_matrix();
    rec.push("connected", Cell::Bool(dist.connected));
    rec.push("diameter", dist.diameter.map(|d| Cell::Int(d as i64)).unwrap_or(Cell::Empty));
    rec.push("girth", h.girth().map(|g| Cell::Int(g as i64)).unwrap_or(Cell::text("none")));
    let trace = match h.girth_via_trace(TRACE_GIRTH_MAX) {
        Ok(TraceGirth::Found(g)) => Cell::Int(g as i64),
        Ok(TraceGirth::Exceeds(m)) => Cell::text(format!("> {m}")),
        Err(e) => error_cell(e),
    };
    rec.push("girth_trace", trace);

    match adjacency_spectrum(h, DEFAULT_TOL) {
        Ok(spec) => {
            let clusters = spec.clusters().iter().map(|(v, m)| format!("{} x{m}", fmt_num(*v, 6))).collect();
            rec.push("spectrum", Cell::List(clusters));
        }
        Err(e) => {
            rec.push("spectrum", error_cell(e));
        }
    }

    let Ok((r, u)) = shape else {
        return rec;
    };
    let params = match Params::new(r as u64, u as u64) {
        Ok(p) => p,
        Err(e) => {
            rec.push("bounds", error_cell(e));
            return rec;
        }
    };
    let tau2 = match second_eigenvalue(h, DEFAULT_TOL) {
        Ok(t) => t,
        Err(e) => {
            rec.push("tau2", error_cell(e));
            return rec;
        }
    };
    rec.push("tau2", Cell::Num(tau2.tau2));
    rec.push("spectral_gap", Cell::Num(tau2.gap));
    rec.push("ramanujan", is_ramanujan(h, DEFAULT_TOL).map(Cell::Bool).unwrap_or_else(error_cell));

    match h.distance_regularity_check() {
        Ok(ix) if ix.valid => {
            let b: Vec<String> = ix.b.iter().map(u64::to_string).collect();
            let c: Vec<String> = ix.c.iter().map(u64::to_string).collect();
            rec.push("distance_regular", Cell::text(format!("yes {{{}; {}}}", b.join(", "), c.join(", "))));
        }
        Ok(ix) => {
            let w = ix.witness.map(|(x, y, d)| format!(" (pair {x}, {y} at distance {d})")).unwrap_or_default();
            rec.push("distance_regular", Cell::text(format!("no{w}")));
        }
        Err(e) => {
            rec.push("distance_regular", error_cell(e));
        }
    }
    rec.push(
        "correspondence",
        match spectrum_correspondence_check(h, 1e-7) {
            Ok(c) if c.passed => Cell::text(format!("pass (max diff {:.1e})", c.max_diff)),
            Ok(c) => Cell::text(format!("FAIL: {}", c.detail.unwrap_or_default())),
            Err(e) => error_cell(e),
        },
    );

    let theta = snap(tau2.tau2);
    match closed_form_h_bound(&params, &theta) {
        Ok(b) => {
            let m = b.approx();
            let verdict = if (n as f64 - m).abs() <= 1e-6 * m {
                "met with equality"
            } else if (n as f64) < m {
                "below the bound"
            } else {
                "EXCEEDS the bound"
            };
            rec.push("closed_form_bound", Cell::tagged(value_cell(&b.value), b.theorem.tag()));
            rec.push("closed_form_theta", Cell::text(theta.to_string()));
            rec.push("order_vs_bound", Cell::text(verdict));
        }
        Err(e) => {
            rec.push("closed_form_bound", error_cell(e));
        }
    }
    // Values that hold exactly once the extremal object exists; this instance may be one.
    if let Some(b) = oa_value(&params, &theta, true).or_else(|| design_value(&params, &theta, true)) {
        let v = b.approx();
        let verdict = if (n as f64 - v).abs() < 0.5 {
            "met with equality"
        } else if (n as f64) < v {
            "below the value"
        } else {
            "EXCEEDS the value"
        };
        rec.push("exact_value", Cell::tagged(value_cell(&b.value), b.theorem.tag()));
        rec.push("order_vs_exact", Cell::text(verdict));
    }
    match tau2_lower(&params, n as u64, 1e-12) {
        Ok(t) => {
            rec.push("tau2_lower", Cell::Num(t.lambda));
            let verdict = if (tau2.tau2 - t.lambda).abs() <= 1e-7 {
                "met with equality"
            } else if tau2.tau2 > t.lambda {
                "above the lower bound"
            } else {
                "BELOW the lower bound"
            };
            rec.push("tau2_vs_lower", Cell::text(verdict));
        }
        Err(e) => {
            rec.push("tau2_lower", error_cell(e));
        }
    }
    rec
}
