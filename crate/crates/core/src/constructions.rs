//! Orthogonal arrays, cyclic MOLS and the fixture catalog.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectra::{second_eigenvalue, DEFAULT_TOL};

/// `rows x cols` array over symbols `0..alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    alphabet: usize,
    cells: Vec<Vec<usize>>,
}

/// Why an array fails to be orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OaWitness {
    Shape(String),
    SymbolOutOfRange { row: usize, col: usize, symbol: usize },
    /// Rows `rows` show the pair `pair` in both columns `cols`.
    Pair { rows: (usize, usize), pair: (usize, usize), cols: Vec<usize> },
}

impl OrthogonalArray {
    pub fn new(alphabet: usize, cells: Vec<Vec<usize>>) -> Self {
        OrthogonalArray { alphabet, cells }
    }

    /// The two-row array listing every ordered pair once.
    pub fn two_rows(s: usize) -> Self {
        let top = (0..s * s).map(|c| c / s).collect();
        let bottom = (0..s * s).map(|c| c % s).collect();
        OrthogonalArray::new(s, vec![top, bottom])
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row][col]
    }
}

/// Checks that every pair of rows shows every ordered symbol pair exactly once.
pub fn oa_validate(oa: &OrthogonalArray) -> std::result::Result<(), OaWitness> {
    let s = oa.alphabet;
    if oa.rows() < 2 {
        return Err(OaWitness::Shape("need at least two rows".into()));
    }
    if s == 0 || oa.cols() != s * s {
        return Err(OaWitness::Shape(format!("{} columns, expected {}", oa.cols(), s * s)));
    }
    if let Some(row) = oa.cells.iter().position(|r| r.len() != s * s) {
        return Err(OaWitness::Shape(format!("row {row} has {} entries", oa.cells[row].len())));
    }
    for (row, r) in oa.cells.iter().enumerate() {
        if let Some(col) = r.iter().position(|&x| x >= s) {
            return Err(OaWitness::SymbolOutOfRange { row, col, symbol: r[col] });
        }
    }
    for a in 0..oa.rows() {
        for b in a + 1..oa.rows() {
            let mut seen: Vec<Option<usize>> = vec![None; s * s];
            for col in 0..s * s {
                let key = oa.cells[a][col] * s + oa.cells[b][col];
                if let Some(prev) = seen[key] {
                    return Err(OaWitness::Pair {
                        rows: (a, b),
                        pair: (oa.cells[a][col], oa.cells[b][col]),
                        cols: vec![prev, col],
                    });
                }
                seen[key] = Some(col);
            }
        }
    }
    Ok(())
}

impl fmt::Display for OaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OaWitness::Shape(msg) => f.write_str(msg),
            OaWitness::SymbolOutOfRange { row, col, symbol } => write!(f, "symbol {symbol} at row {row}, column {col} is out of range"),
            OaWitness::Pair { rows, pair, cols } => {
                write!(f, "rows {} and {} repeat the pair {:?} in columns {:?}", rows.0, rows.1, pair, cols)
            }
        }
    }
}

impl fmt::Display for OrthogonalArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows(), self.cols(), self.alphabet)?;
        for r in &self.cells {
            let line: Vec<String> = r.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for OrthogonalArray {
    type Err = Error;

    /// Header `rows cols alphabet`, then one line per row; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_nums = |line: usize, l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("bad integer `{t}`") }))
                .collect()
        };
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let h = parse_nums(hl, header)?;
        let [rows, cols, alphabet] = h[..] else {
            return Err(Error::Parse { line: hl, msg: "header must be `rows cols alphabet`".into() });
        };
        let mut cells = Vec::with_capacity(rows);
        for _ in 0..rows {
            let (ln, l) = lines.next().ok_or(Error::Parse { line: hl, msg: format!("expected {rows} rows") })?;
            let r = parse_nums(ln, l)?;
            if r.len() != cols {
                return Err(Error::Parse { line: ln, msg: format!("expected {cols} entries, found {}", r.len()) });
            }
            if let Some(x) = r.iter().find(|&&x| x >= alphabet) {
                return Err(Error::Parse { line: ln, msg: format!("symbol {x} outside alphabet {alphabet}") });
            }
            cells.push(r);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, msg: "trailing data".into() });
        }
        Ok(OrthogonalArray::new(alphabet, cells))
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `L_a(i, j) = (a i + j) mod p` for `a = 1..=m`.
pub fn mols_cyclic(p: usize, m: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    if m == 0 || m >= p {
        return Err(Error::InvalidParams(format!("need 1 <= m <= {}", p - 1)));
    }
    Ok((1..=m)
        .map(|a| (0..p).map(|i| (0..p).map(|j| (a * i + j) % p).collect()).collect())
        .collect())
}

/// Rows `i`, `j`, `L_1(i,j)`, ... over the columns `(i, j)` in lexicographic order.
pub fn oa_from_mols(p: usize, squares: &[Vec<Vec<usize>>]) -> OrthogonalArray {
    let mut cells = vec![(0..p * p).map(|c| c / p).collect::<Vec<_>>(), (0..p * p).map(|c| c % p).collect()];
    for l in squares {
        cells.push((0..p * p).map(|c| l[c / p][c % p]).collect());
    }
    OrthogonalArray::new(p, cells)
}

/// `OA(rows, p)` from `rows - 2` cyclic MOLS of prime order `p`.
pub fn mols_oa(p: usize, rows: usize) -> Result<OrthogonalArray> {
    if rows < 2 {
        return Err(Error::InvalidParams("an orthogonal array needs at least two rows".into()));
    }
    if rows == 2 {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        return Ok(OrthogonalArray::two_rows(p));
    }
    Ok(oa_from_mols(p, &mols_cyclic(p, rows - 2)?))
}

fn check_oa(oa: &OrthogonalArray) -> Result<()> {
    oa_validate(oa).map_err(|w| Error::InvalidOa(format!("{w:?}")))
}

/// Vertex `row * alphabet + symbol`; column `j` gives the edge `{(i, oa[i][j])}`.
pub fn hypergraph_from_oa(oa: &OrthogonalArray) -> Result<Hypergraph> {
    check_oa(oa)?;
    let s = oa.alphabet;
    let edges = (0..oa.cols()).map(|j| (0..oa.rows()).map(|i| i * s + oa.get(i, j)).collect()).collect();
    Hypergraph::new(oa.rows() * s, edges)
}

/// Drops the last row and the columns whose last entry is `symbol`.
pub fn oa_minus_transversal(oa: &OrthogonalArray, symbol: usize) -> Result<Hypergraph> {
    check_oa(oa)?;
    let (rows, s) = (oa.rows(), oa.alphabet);
    if rows < 3 {
        return Err(Error::InvalidOa("need at least three rows".into()));
    }
    if symbol >= s {
        return Err(Error::InvalidParams(format!("symbol {symbol} outside alphabet {s}")));
    }
    let last = rows - 1;
    let removed: Vec<usize> = (0..oa.cols()).filter(|&j| oa.get(last, j) == symbol).collect();
    if removed.len() != s {
        return Err(Error::InvalidOa(format!("|I_{symbol}| = {}, expected {s}", removed.len())));
    }
    let edges = (0..oa.cols())
        .filter(|j| !removed.contains(j))
        .map(|j| (0..last).map(|i| i * s + oa.get(i, j)).collect())
        .collect();
    Hypergraph::new(last * s, edges)
}

/// Expected invariants of a catalog hypergraph.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureMeta {
    pub r: usize,
    pub u: usize,
    pub tau2: f64,
    pub girth: Option<usize>,
    pub diameter: usize,
    pub order: usize,
}

fn complete(n: usize) -> Result<Hypergraph> {
    let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Hypergraph::from_graph(n, &pairs)
}

fn complete_bipartite(n: usize, minus_matching: bool) -> Result<Hypergraph> {
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| !(minus_matching && i == j))
        .map(|(i, j)| (i, n + j))
        .collect();
    Hypergraph::from_graph(2 * n, &pairs)
}

pub fn petersen() -> Hypergraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Hypergraph::from_graph(10, &pairs).expect("petersen")
}

pub fn fano() -> Hypergraph {
    Hypergraph::new(7, (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect()).expect("fano")
}

/// Point-line incidence graph of the Fano plane.
pub fn heawood() -> Hypergraph {
    let pairs: Vec<_> = (0..7).flat_map(|l| [0, 1, 3].map(|o| ((l + o) % 7, 7 + l))).collect();
    Hypergraph::from_graph(14, &pairs).expect("heawood")
}

fn parse_size(s: &str) -> Option<usize> {
    s.parse().ok().filter(|&n| n >= 2)
}

/// Builds a catalog hypergraph and its expected invariants.
///
/// Names: `petersen`, `fano`, `heawood`, `oa33`, `oa45-minus`, `k<n>`,
/// `k<n>,<n>`, `k<n>,<n>-minus`.
pub fn named_fixture_unchecked(name: &str) -> Result<(Hypergraph, FixtureMeta)> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let meta = |r, u, tau2, girth, diameter, order| FixtureMeta { r, u, tau2, girth, diameter, order };
    Ok(match name {
        "petersen" => (petersen(), meta(3, 2, 1.0, Some(5), 2, 10)),
        "fano" => (fano(), meta(3, 3, -1.0, Some(3), 1, 7)),
        "heawood" => (heawood(), meta(3, 2, 2f64.sqrt(), Some(6), 3, 14)),
        "oa33" => (hypergraph_from_oa(&mols_oa(3, 3)?)?, meta(3, 3, 0.0, Some(3), 2, 9)),
        "oa45-minus" => (oa_minus_transversal(&mols_oa(5, 4)?, 0)?, meta(4, 3, 1.0, Some(3), 2, 15)),
        _ => {
            let rest = name.strip_prefix('k').ok_or_else(unknown)?;
            let (body, minus) = match rest.strip_suffix("-minus") {
                Some(b) => (b, true),
                None => (rest, false),
            };
            match body.split_once(',') {
                None if !minus => {
                    let n = parse_size(body).filter(|&n| n >= 3).ok_or_else(unknown)?;
                    (complete(n)?, meta(n - 1, 2, -1.0, Some(3), 1, n))
                }
                Some((a, b)) if a == b => {
                    let n = parse_size(a).ok_or_else(unknown)?;
                    if minus {
                        if n < 3 {
                            return Err(unknown());
                        }
                        let girth = if n == 3 { 6 } else { 4 };
                        (complete_bipartite(n, true)?, meta(n - 1, 2, 1.0, Some(girth), 3, 2 * n))
                    } else {
                        (complete_bipartite(n, false)?, meta(n, 2, 0.0, Some(4), 2, 2 * n))
                    }
                }
                _ => return Err(unknown()),
            }
        }
    })
}

/// [`named_fixture_unchecked`] followed by a check of every metadata field.
pub fn named_fixture(name: &str) -> Result<Hypergraph> {
    let (h, meta) = named_fixture_unchecked(name)?;
    let fail = |msg: String| Error::FixtureCheck { name: name.to_string(), msg };
    let (r, u) = h.check_regular_uniform()?;
    if (r, u, h.n()) != (meta.r, meta.u, meta.order) {
        return Err(fail(format!("(r,u,n) = ({r},{u},{}), expected ({},{},{})", h.n(), meta.r, meta.u, meta.order)));
    }
    let tau2 = second_eigenvalue(&h, DEFAULT_TOL)?.tau2;
    if (tau2 - meta.tau2).abs() > 1e-8 {
        return Err(fail(format!("tau2 = {tau2}, expected {}", meta.tau2)));
    }
    if h.girth() != meta.girth {
        return Err(fail(format!("girth {:?}, expected {:?}", h.girth(), meta.girth)));
    }
    let dist = h.distance_matrix();
    if dist.diameter != Some(meta.diameter) {
        return Err(fail(format!("diameter {:?}, expected {}", dist.diameter, meta.diameter)));
    }
    Ok(h)
}

/// Names accepted by [`named_fixture`] without a size parameter.
pub const FIXTURE_NAMES: &[&str] = &["petersen", "fano", "heawood", "oa33", "oa45-minus", "k4", "k3,3", "k4,4-minus"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oa33_and_oa45_validate() {
        let a = mols_oa(3, 3).unwrap();
        assert_eq!((a.rows(), a.cols(), a.alphabet()), (3, 9, 3));
        assert!(oa_validate(&a).is_ok());
        let b = mols_oa(5, 4).unwrap();
        assert_eq!((b.rows(), b.cols()), (4, 25));
        assert!(oa_validate(&b).is_ok());
    }

    #[test]
    fn duplicated_column_is_caught() {
        let mut a = mols_oa(3, 3).unwrap();
        let c0: Vec<usize> = (0..3).map(|i| a.get(i, 0)).collect();
        for (i, v) in c0.into_iter().enumerate() {
            a.cells[i][1] = v;
        }
        match oa_validate(&a) {
            Err(OaWitness::Pair { cols, .. }) => assert_eq!(cols, vec![0, 1]),
            other => panic!("{other:?}"),
        }
        assert!(hypergraph_from_oa(&a).is_err());
    }

    #[test]
    fn mols_examples() {
        let l = mols_cyclic(3, 1).unwrap();
        assert_eq!(l[0], vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert!(mols_cyclic(4, 1).is_err());
        assert!(mols_cyclic(5, 5).is_err());
        for p in [2, 3, 5, 7, 11, 13] {
            let oa = mols_oa(p, p + 1).unwrap();
            assert!(oa_validate(&oa).is_ok(), "p = {p}");
        }
    }

    #[test]
    fn oa_hypergraphs() {
        let h = hypergraph_from_oa(&mols_oa(3, 3).unwrap()).unwrap();
        assert_eq!((h.n(), h.num_edges()), (9, 9));
        assert_eq!(h.check_regular_uniform().unwrap(), (3, 3));
        assert!(second_eigenvalue(&h, DEFAULT_TOL).unwrap().tau2.abs() < 1e-8);

        let kk = hypergraph_from_oa(&OrthogonalArray::two_rows(4)).unwrap();
        assert_eq!((kk.n(), kk.num_edges()), (8, 16));
        assert!(second_eigenvalue(&kk, DEFAULT_TOL).unwrap().tau2.abs() < 1e-8);

        let m = oa_minus_transversal(&mols_oa(5, 4).unwrap(), 0).unwrap();
        assert_eq!(m.n(), 15);
        assert_eq!(m.check_regular_uniform().unwrap(), (4, 3));
        assert!((second_eigenvalue(&m, DEFAULT_TOL).unwrap().tau2 - 1.0).abs() < 1e-8);

        // u = 2: K_{r+1,r+1} minus a perfect matching
        let b = oa_minus_transversal(&mols_oa(5, 3).unwrap(), 2).unwrap();
        assert_eq!(b.check_regular_uniform().unwrap(), (4, 2));
        assert_eq!(b.num_edges(), 20);
        assert!(b.edges().iter().all(|e| e[0] < 5 && e[1] >= 5));

        assert!(oa_minus_transversal(&mols_oa(5, 4).unwrap(), 5).is_err());
    }

    #[test]
    fn oa_text_roundtrip() {
        let a = mols_oa(5, 4).unwrap();
        let b: OrthogonalArray = a.to_string().parse().unwrap();
        assert_eq!(a, b);
        assert!(matches!("2 4 2\n0 0 1 1\n0 1 0".parse::<OrthogonalArray>(), Err(Error::Parse { line: 3, .. })));
        assert!(matches!("2 1 2\n0\n5".parse::<OrthogonalArray>(), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn catalog_self_checks() {
        for name in FIXTURE_NAMES.iter().copied().chain(["k5", "k3,3-minus", "k5,5"]) {
            named_fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(matches!(named_fixture("dodecahedron"), Err(Error::UnknownFixture(_))));
        assert!(matches!(named_fixture("k3,4"), Err(Error::UnknownFixture(_))));
    }
}
