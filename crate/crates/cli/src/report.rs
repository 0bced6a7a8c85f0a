//! Records and tables rendered as text, csv or json.
//!
//! Every real number is formatted once, at the requested precision, and the
//! same string feeds all three encodings.

use std::fmt::Write as _;

use clap::ValueEnum;
use hyplp::bounds::{BoundResult, BoundValue};
use hyplp::Scalar;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    /// A number with its own number of decimals.
    Fixed(f64, usize),
    Text(String),
    Bool(bool),
    List(Vec<String>),
    /// A value with its provenance tag, printed `value^TAG` in text.
    Tagged(Box<Cell>, String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn tagged(c: Cell, tag: impl Into<String>) -> Cell {
        Cell::Tagged(Box::new(c), tag.into())
    }

    fn plain(&self, prec: usize) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(x) => fmt_num(*x, prec),
            Cell::Fixed(x, p) => fmt_num(*x, *p),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(v) => v.join("; "),
            Cell::Tagged(c, tag) => format!("{}^{tag}", c.plain(prec)),
            Cell::Empty => "-".into(),
        }
    }

    fn json(&self, prec: usize) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Num(x) if x.is_finite() => serde_json::from_str(&fmt_num(*x, prec)).unwrap_or(Value::Null),
            Cell::Fixed(x, p) if x.is_finite() => serde_json::from_str(&fmt_num(*x, *p)).unwrap_or(Value::Null),
            Cell::Num(_) | Cell::Fixed(..) => Value::Null,
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::List(v) => Value::from(v.clone()),
            Cell::Tagged(c, tag) => {
                let mut m = Map::new();
                m.insert("value".into(), c.json(prec));
                m.insert("tag".into(), Value::from(tag.clone()));
                Value::Object(m)
            }
            Cell::Empty => Value::Null,
        }
    }
}

/// Fixed-point with `prec` decimals and no negative zero.
pub fn fmt_num(x: f64, prec: usize) -> String {
    let s = format!("{x:.prec$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// An ordered list of named cells.
#[derive(Clone, Debug, Default)]
pub struct Record {
    pub fields: Vec<(String, Cell)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push(&mut self, key: impl Into<String>, cell: Cell) -> &mut Self {
        self.fields.push((key.into(), cell));
        self
    }

    pub fn render(&self, fmt: Format, prec: usize) -> String {
        let mut out = String::new();
        match fmt {
            Format::Text => {
                let w = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, c) in &self.fields {
                    let _ = writeln!(out, "{k:<w$}  {}", c.plain(prec));
                }
            }
            Format::Csv => {
                out.push_str("field,value\n");
                for (k, c) in &self.fields {
                    let _ = writeln!(out, "{},{}", csv_field(k), csv_field(&c.plain(prec)));
                }
            }
            Format::Json => {
                let m: Map<String, Value> = self.fields.iter().map(|(k, c)| (k.clone(), c.json(prec))).collect();
                out = serde_json::to_string_pretty(&Value::Object(m)).expect("json") + "\n";
            }
        }
        out
    }
}

/// Rows of cells under fixed column names.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn render(&self, fmt: Format, prec: usize) -> String {
        let mut out = String::new();
        match fmt {
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|c| c.plain(prec)).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|j| cells.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: &[String]| -> String {
                    let parts: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                out.push_str(&line(&self.columns));
                for r in &cells {
                    out.push_str(&line(r));
                }
            }
            Format::Csv => {
                // Tagged columns split into `name` and `name_tag`.
                let tagged: Vec<bool> =
                    (0..self.columns.len()).map(|j| self.rows.iter().any(|r| matches!(r[j], Cell::Tagged(..)))).collect();
                let mut head = Vec::new();
                for (name, &t) in self.columns.iter().zip(&tagged) {
                    head.push(csv_field(name));
                    if t {
                        head.push(csv_field(&format!("{name}_tag")));
                    }
                }
                out.push_str(&(head.join(",") + "\n"));
                for r in &self.rows {
                    let mut fields = Vec::new();
                    for (c, &t) in r.iter().zip(&tagged) {
                        match c {
                            Cell::Tagged(inner, tag) => {
                                fields.push(csv_field(&inner.plain(prec)));
                                fields.push(csv_field(tag));
                            }
                            _ => {
                                fields.push(csv_field(&c.plain(prec)));
                                if t {
                                    fields.push(String::new());
                                }
                            }
                        }
                    }
                    out.push_str(&(fields.join(",") + "\n"));
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(|c| c.json(prec))).collect()))
                    .collect();
                out = serde_json::to_string_pretty(&Value::Array(rows)).expect("json") + "\n";
            }
        }
        out
    }
}

pub fn value_cell(v: &BoundValue) -> Cell {
    match v {
        BoundValue::Exact(q) if q.is_integer() => q.to_integer().try_into().map(Cell::Int).unwrap_or_else(|_| Cell::text(q.to_string())),
        BoundValue::Exact(q) => Cell::text(q.to_string()),
        BoundValue::Real(x) => Cell::Num(*x),
    }
}

/// Exact rationals and labelled irrationals as text, other reals at the output precision.
pub fn scalar_cell(s: &Scalar) -> Cell {
    match (s.as_exact(), s.label()) {
        (Some(q), _) => Cell::text(q.to_string()),
        (None, Some(l)) => Cell::text(l),
        (None, None) => Cell::Num(s.approx()),
    }
}

pub fn bound_record(b: &BoundResult) -> Record {
    let mut rec = Record::new();
    rec.push("value", value_cell(&b.value));
    rec.push("approx", Cell::Num(b.approx()));
    rec.push("theorem", Cell::text(b.theorem.tag()));
    rec.push("r", Cell::Int(b.params.r() as i64));
    rec.push("u", Cell::Int(b.params.u() as i64));
    if let Some(t) = &b.theta {
        rec.push("theta", scalar_cell(t));
    }
    if let Some(d) = b.d {
        rec.push("d", Cell::Int(d as i64));
    }
    if let Some(c) = &b.c {
        rec.push("c", scalar_cell(c));
    }
    for (key, v) in [("ell", b.ell), ("e", b.e), ("n", b.n)] {
        if let Some(v) = v {
            rec.push(key, Cell::Int(v as i64));
        }
    }
    if let Some(eq) = b.equality_possible {
        rec.push("equality_possible", Cell::Bool(eq));
    }
    if !b.refinements.is_empty() {
        let chain = b.refinements.iter().map(|r| format!("{}: {} -> {}", r.name, r.before, r.after)).collect();
        rec.push("refinements", Cell::List(chain));
    }
    if let Some(eq) = &b.lp_equality {
        let zeros: Vec<String> = eq.zero_at_taus.iter().map(bool::to_string).collect();
        if !zeros.is_empty() {
            rec.push("zero_at_taus", Cell::List(zeros));
        }
        rec.push("positive_coeffs", Cell::List(eq.positive_coeffs.iter().map(usize::to_string).collect()));
    }
    if let Some(cert) = &b.certificate {
        rec.push("certificate", Cell::List(cert.coeffs().iter().map(|c| c.to_string()).collect()));
    }
    if !b.notes.is_empty() {
        rec.push("notes", Cell::List(b.notes.clone()));
    }
    rec
}
