//! Data shipped with the crate: defect-region rows, the order-bound catalog, a
//! certificate and an orthogonal array.

use std::str::FromStr;

use crate::bounds::closed_form::{closed_form_h_bound, integrality_refinements};
use crate::bounds::{design_value, oa_value, BoundResult};
use crate::constructions::OrthogonalArray;
use crate::error::{Error, Result};
use crate::orthopoly::{FPoly, Params};
use crate::scalar::Scalar;

pub const TABLE1_TSV: &str = include_str!("../../../fixtures/table1.tsv");
pub const H_CATALOG_TSV: &str = include_str!("../../../fixtures/h_catalog.tsv");
pub const V62_FPOLY: &str = include_str!("../../../fixtures/v62.fpoly");
pub const OA33_TXT: &str = include_str!("../../../fixtures/oa33.txt");

/// A largest known `r`-regular graph of diameter `d` with order `v` and defect `e`,
/// and the expected `tau2` region.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub r: u64,
    pub d: usize,
    pub v: u64,
    pub e: u64,
    pub lower: f64,
    pub lambda_d: f64,
    pub upper: f64,
}

/// How a catalog value was obtained from the closed-form bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogTag {
    /// Truncated to one decimal.
    Lp,
    /// After integrality refinements.
    LpC,
    /// After the non-integral `c` cut.
    CNotInt,
    /// After refinements with equality excluded.
    NoSrg,
    OrthogonalArray,
    SteinerTriple,
}

impl CatalogTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogTag::Lp => "LP",
            CatalogTag::LpC => "LP_c",
            CatalogTag::CNotInt => "cZ",
            CatalogTag::NoSrg => "noSRG",
            CatalogTag::OrthogonalArray => "OA",
            CatalogTag::SteinerTriple => "STS",
        }
    }
}

impl FromStr for CatalogTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "LP" => CatalogTag::Lp,
            "LP_c" => CatalogTag::LpC,
            "cZ" => CatalogTag::CNotInt,
            "noSRG" => CatalogTag::NoSrg,
            "OA" => CatalogTag::OrthogonalArray,
            "STS" => CatalogTag::SteinerTriple,
            _ => return Err(Error::InvalidParams(format!("unknown catalog tag `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogRow {
    pub r: u64,
    pub u: u64,
    pub theta: Scalar,
    pub cited: f64,
    pub tag: CatalogTag,
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').map(str::trim).collect()))
}

fn field<T: FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("bad field `{s}`") })
}

pub fn parse_table1(text: &str) -> Result<Vec<Table1Row>> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 7 {
                return Err(Error::Parse { line, msg: format!("expected 7 fields, found {}", f.len()) });
            }
            Ok(Table1Row {
                r: field(line, f[0])?,
                d: field(line, f[1])?,
                v: field(line, f[2])?,
                e: field(line, f[3])?,
                lower: field(line, f[4])?,
                lambda_d: field(line, f[5])?,
                upper: field(line, f[6])?,
            })
        })
        .collect()
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRow>> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 5 {
                return Err(Error::Parse { line, msg: format!("expected 5 fields, found {}", f.len()) });
            }
            Ok(CatalogRow {
                r: field(line, f[0])?,
                u: field(line, f[1])?,
                theta: Scalar::parse(f[2]).map_err(|e| Error::Parse { line, msg: e.to_string() })?,
                cited: field(line, f[3])?,
                tag: f[4].parse().map_err(|e: Error| Error::Parse { line, msg: e.to_string() })?,
            })
        })
        .collect()
}

pub fn table1() -> Vec<Table1Row> {
    parse_table1(TABLE1_TSV).expect("shipped table1 fixture parses")
}

pub fn h_catalog() -> Vec<CatalogRow> {
    parse_catalog(H_CATALOG_TSV).expect("shipped catalog fixture parses")
}

/// The degree-4 certificate for `(6, 2)`, `theta = 2`.
pub fn v62_certificate() -> FPoly {
    V62_FPOLY.parse().expect("shipped certificate parses")
}

pub fn oa33() -> OrthogonalArray {
    OA33_TXT.parse().expect("shipped OA parses")
}

/// A catalog row recomputed from scratch.
#[derive(Clone, Debug)]
pub struct CatalogCheck {
    pub row: CatalogRow,
    pub bound: BoundResult,
    /// The computed value in the same form as the cited one.
    pub displayed: f64,
    pub matches: bool,
}

pub fn check_catalog_row(row: &CatalogRow) -> Result<CatalogCheck> {
    let params = Params::new(row.r, row.u)?;
    let missing = || Error::InvalidParams(format!("theta = {} is outside the range of the {} value", row.theta, row.tag.as_str()));
    let bound = match row.tag {
        CatalogTag::Lp => closed_form_h_bound(&params, &row.theta)?,
        CatalogTag::LpC | CatalogTag::CNotInt => integrality_refinements(&closed_form_h_bound(&params, &row.theta)?, false),
        CatalogTag::NoSrg => integrality_refinements(&closed_form_h_bound(&params, &row.theta)?, true),
        CatalogTag::OrthogonalArray => oa_value(&params, &row.theta, true).ok_or_else(missing)?,
        CatalogTag::SteinerTriple => design_value(&params, &row.theta, true).ok_or_else(missing)?,
    };
    let v = bound.approx();
    let displayed = match row.tag {
        CatalogTag::Lp => (10.0 * v + 1e-6).floor() / 10.0,
        _ => v,
    };
    let matches = (displayed - row.cited).abs() < 1e-9;
    Ok(CatalogCheck { row: row.clone(), bound, displayed, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_files_parse() {
        assert_eq!(table1().len(), 11);
        let cat = h_catalog();
        assert!(cat.iter().any(|r| r.tag == CatalogTag::NoSrg));
        assert!(cat.iter().all(|r| r.tag.as_str().parse::<CatalogTag>().unwrap() == r.tag));
        assert_eq!(v62_certificate().degree(), Some(4));
        assert_eq!(oa33(), crate::constructions::mols_oa(3, 3).unwrap());
    }

    #[test]
    fn catalog_rows_reproduce() {
        for row in h_catalog() {
            let c = check_catalog_row(&row).unwrap();
            assert!(c.matches, "{row:?}: computed {}", c.displayed);
        }
    }

    #[test]
    fn bad_rows_report_lines() {
        assert!(matches!(parse_table1("# c\n8\t2\t57\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_catalog("3\t3\tx\t1\tLP\n"), Err(Error::Parse { line: 1, .. })));
    }
}
