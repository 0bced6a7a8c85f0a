//! Finite hypergraphs: structure queries, walks and distance-regularity.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::orthopoly::Params;

/// Longest walk the exhaustive enumerator will attempt.
pub const ORACLE_MAX_LENGTH: usize = 8;
/// Cap on the number of walks enumerated per call.
pub const ORACLE_MAX_WALKS: u64 = 10_000_000;

/// A hypergraph on vertices `0..n`. Edges are stored as sorted vertex lists;
/// repeated edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Square matrix of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> u64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).iter().map(|&v| v as f64).collect()).collect()
    }

    fn to_i128(&self) -> Vec<Vec<i128>> {
        (0..self.n).map(|i| self.row(i).iter().map(|&v| v as i128).collect()).collect()
    }
}

/// Hop distances in the point graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances {
    /// `None` when the pair lies in different components.
    pub dist: Vec<Vec<Option<usize>>>,
    pub connected: bool,
    /// Largest finite distance when connected.
    pub diameter: Option<usize>,
}

/// Result of [`Hypergraph::girth_via_trace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceGirth {
    Found(usize),
    Exceeds(usize),
}

/// Intersection numbers of the point graph. `b[i]` for `0 <= i < d`,
/// `c[i-1]` holds `c_i` for `1 <= i <= d`, `a[i]` for `0 <= i <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    pub diameter: usize,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub valid: bool,
    /// `(x, y, distance)` of the first pair whose counts differ from earlier pairs.
    pub witness: Option<(usize, usize, usize)>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (idx, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e.len() < 2 {
                return Err(Error::InvalidParams(format!("edge {idx} has fewer than 2 vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParams(format!("edge {idx} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidParams(format!("edge {idx} uses vertex {v} >= n = {n}")));
            }
            sorted.push(e);
        }
        Ok(Hypergraph { n, edges: sorted })
    }

    /// A simple graph viewed as a 2-uniform hypergraph.
    pub fn from_graph(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Hypergraph::new(n, pairs.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// For each vertex, the indices of edges containing it.
    pub fn incidences(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (idx, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(idx);
            }
        }
        inc
    }

    /// Returns `(r, u)` when every vertex has degree `r` and every edge size `u`.
    pub fn check_regular_uniform(&self) -> Result<(usize, usize)> {
        let Some(first) = self.edges.first() else {
            return Err(Error::NotRegularUniform("no edges".into()));
        };
        let u = first.len();
        if let Some((idx, e)) = self.edges.iter().enumerate().find(|(_, e)| e.len() != u) {
            return Err(Error::NotRegularUniform(format!("edge {idx} has size {} but edge 0 has size {u}", e.len())));
        }
        let deg = self.degrees();
        let r = deg[0];
        if let Some((v, d)) = deg.iter().enumerate().find(|(_, &d)| d != r) {
            return Err(Error::NotRegularUniform(format!("vertex {v} has degree {d} but vertex 0 has degree {r}")));
        }
        Ok((r, u))
    }

    /// Like [`check_regular_uniform`](Self::check_regular_uniform) but also
    /// requires `r, u >= 2` and returns [`Params`].
    pub fn params(&self) -> Result<Params> {
        let (r, u) = self.check_regular_uniform()?;
        Params::new(r as u64, u as u64)
    }

    /// `A[x][y]` counts edges containing both `x` and `y`.
    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n);
        for e in &self.edges {
            for (i, &x) in e.iter().enumerate() {
                for &y in &e[i + 1..] {
                    a.set(x, y, a.get(x, y) + 1);
                    a.set(y, x, a.get(y, x) + 1);
                }
            }
        }
        a
    }

    /// Vertices become edges and vice versa.
    pub fn dual(&self) -> Result<Hypergraph> {
        let inc = self.incidences();
        if let Some((v, list)) = inc.iter().enumerate().find(|(_, l)| l.len() <= 1) {
            return Err(Error::Precondition(format!("vertex {v} has degree {}; dual edge would be too small", list.len())));
        }
        Hypergraph::new(self.edges.len(), inc)
    }

    /// Bipartite vertex/edge incidence graph; vertices first, then edges.
    pub fn incidence_graph(&self) -> IntMatrix {
        let n = self.n + self.edges.len();
        let mut m = IntMatrix::zeros(n);
        for (idx, e) in self.edges.iter().enumerate() {
            for &v in e {
                m.set(v, self.n + idx, 1);
                m.set(self.n + idx, v, 1);
            }
        }
        m
    }

    /// Point-graph neighbour lists (multiplicities dropped).
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let a = self.adjacency();
        (0..self.n).map(|x| (0..self.n).filter(|&y| a.get(x, y) > 0).collect()).collect()
    }

    pub fn distance_matrix(&self) -> Distances {
        let nb = self.neighbours();
        let dist: Vec<Vec<Option<usize>>> = (0..self.n).map(|s| bfs(&nb, s)).collect();
        let connected = dist.iter().flatten().all(Option::is_some);
        let diameter = connected.then(|| dist.iter().flatten().flatten().copied().max().unwrap_or(0));
        Distances { dist, connected, diameter }
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && bfs(&self.neighbours(), 0).iter().all(Option::is_some)
    }

    /// Length of the shortest Berge cycle, `None` when there is none.
    /// Berge cycles are exactly the cycles of the incidence graph, at twice the length.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n + self.edges.len();
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in self.edges.iter().enumerate() {
            for &v in e {
                adj[v].push(self.n + idx);
                adj[self.n + idx].push(v);
            }
        }
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                    break;
                }
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best.map(|b| b / 2)
    }

    /// Counts non-backtracking walks of length `i` from `x` to `y` by exhaustive enumeration.
    pub fn nbw_count_oracle(&self, x: usize, y: usize, i: usize) -> Result<u64> {
        if y >= self.n {
            return Err(Error::InvalidParams(format!("vertex {y} out of range")));
        }
        Ok(self.nbw_row(x, i)?[y])
    }

    /// Endpoint tallies of all non-backtracking walks of length `i` from `x`.
    pub fn nbw_row(&self, x: usize, i: usize) -> Result<Vec<u64>> {
        if x >= self.n {
            return Err(Error::InvalidParams(format!("vertex {x} out of range")));
        }
        if i > ORACLE_MAX_LENGTH {
            return Err(Error::OracleLimit(format!("length {i} exceeds {ORACLE_MAX_LENGTH}")));
        }
        let inc = self.incidences();
        let mut tally = vec![0u64; self.n];
        let mut walks = 0u64;
        self.nbw_dfs(&inc, x, None, i, &mut tally, &mut walks)?;
        Ok(tally)
    }

    fn nbw_dfs(
        &self,
        inc: &[Vec<usize>],
        at: usize,
        last: Option<usize>,
        left: usize,
        tally: &mut [u64],
        walks: &mut u64,
    ) -> Result<()> {
        if left == 0 {
            *walks += 1;
            if *walks > ORACLE_MAX_WALKS {
                return Err(Error::OracleLimit(format!("more than {ORACLE_MAX_WALKS} walks")));
            }
            tally[at] += 1;
            return Ok(());
        }
        for &e in &inc[at] {
            if Some(e) == last {
                continue;
            }
            for &next in &self.edges[e] {
                if next != at {
                    self.nbw_dfs(inc, next, Some(e), left - 1, tally, walks)?;
                }
            }
        }
        Ok(())
    }

    /// `F_i(A)` by the matrix three-term recurrence, in exact integers.
    pub fn nbw_count_matrix(&self, i: usize) -> Result<IntMatrix> {
        let params = self.params()?;
        let n = self.n;
        let a = self.adjacency().to_i128();
        let shift = params.u() as i128 - 2;
        let (k, q) = (params.k() as i128, params.q() as i128);
        let identity: Vec<Vec<i128>> = (0..n).map(|x| (0..n).map(|y| (x == y) as i128).collect()).collect();

        // (A - shift I) M - coef P, entrywise with overflow checks
        let step = |m: &Vec<Vec<i128>>, p: &Vec<Vec<i128>>, coef: i128| -> Result<Vec<Vec<i128>>> {
            let overflow = || Error::Overflow(format!("F_{i}(A)"));
            let mut out = vec![vec![0i128; n]; n];
            for x in 0..n {
                for y in 0..n {
                    let mut acc: i128 = 0;
                    for z in 0..n {
                        if a[x][z] != 0 {
                            acc = acc.checked_add(a[x][z].checked_mul(m[z][y]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                        }
                    }
                    acc = acc.checked_sub(shift.checked_mul(m[x][y]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    acc = acc.checked_sub(coef.checked_mul(p[x][y]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    out[x][y] = acc;
                }
            }
            Ok(out)
        };

        let result = match i {
            0 => identity,
            1 => a.clone(),
            _ => {
                // F_2 = (A - shift I) A - k I, then F_{j+1} = (A - shift I) F_j - q F_{j-1}
                let mut prev = a.clone();
                let mut cur = step(&a, &identity, k)?;
                for _ in 3..=i {
                    let next = step(&cur, &prev, q)?;
                    prev = cur;
                    cur = next;
                }
                cur
            }
        };

        let mut out = IntMatrix::zeros(n);
        for x in 0..n {
            for y in 0..n {
                let v = result[x][y];
                if v < 0 {
                    return Err(Error::Precondition(format!("F_{i}(A) has negative entry {v} at ({x},{y})")));
                }
                out.set(x, y, u64::try_from(v).map_err(|_| Error::Overflow(format!("F_{i}(A)")))?);
            }
        }
        Ok(out)
    }

    /// Least `g <= max_i` with `tr F_g(A) != 0`.
    pub fn girth_via_trace(&self, max_i: usize) -> Result<TraceGirth> {
        for g in 1..=max_i {
            if self.nbw_count_matrix(g)?.trace() != 0 {
                return Ok(TraceGirth::Found(g));
            }
        }
        Ok(TraceGirth::Exceeds(max_i))
    }

    /// Checks whether the point multigraph is distance-regular.
    pub fn distance_regularity_check(&self) -> Result<IntersectionNumbers> {
        let dm = self.distance_matrix();
        if !dm.connected {
            return Err(Error::Disconnected);
        }
        let d = dm.diameter.unwrap_or(0);
        let a = self.adjacency();
        let mut seen: Vec<Option<(u64, u64, u64)>> = vec![None; d + 1];
        let mut witness = None;
        'outer: for x in 0..self.n {
            for y in 0..self.n {
                let i = dm.dist[x][y].expect("connected");
                let (mut ci, mut ai, mut bi) = (0u64, 0u64, 0u64);
                for z in 0..self.n {
                    let m = a.get(y, z);
                    if m == 0 {
                        continue;
                    }
                    let dz = dm.dist[x][z].expect("connected");
                    if dz + 1 == i {
                        ci += m;
                    } else if dz == i {
                        ai += m;
                    } else {
                        bi += m;
                    }
                }
                match seen[i] {
                    None => seen[i] = Some((ci, ai, bi)),
                    Some(prev) if prev != (ci, ai, bi) => {
                        witness = Some((x, y, i));
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
        let counts: Vec<(u64, u64, u64)> = seen.into_iter().map(|s| s.unwrap_or((0, 0, 0))).collect();
        Ok(IntersectionNumbers {
            diameter: d,
            a: counts.iter().map(|t| t.1).collect(),
            b: counts[..d].iter().map(|t| t.2).collect(),
            c: counts[1..].iter().map(|t| t.0).collect(),
            valid: witness.is_none(),
            witness,
        })
    }
}

fn bfs(nb: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; nb.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("queued");
        for &w in &nb[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let nums = parse_usizes(hline, header)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
        };
        let mut edges = Vec::with_capacity(m);
        for (lineno, l) in lines {
            if edges.len() == m {
                return Err(Error::Parse { line: lineno, msg: format!("more than {m} edges") });
            }
            let e = parse_usizes(lineno, l)?;
            Hypergraph::new(n, vec![e.clone()]).map_err(|err| Error::Parse { line: lineno, msg: err.to_string() })?;
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse { line: s.lines().count().max(1), msg: format!("expected {m} edges, found {}", edges.len()) });
        }
        Hypergraph::new(n, edges)
    }
}

fn parse_usizes(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("`{t}` is not a non-negative integer") }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn petersen() -> Hypergraph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Hypergraph::from_graph(10, &pairs).unwrap()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::from_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn fano() -> Hypergraph {
        let lines = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        Hypergraph::new(7, lines).unwrap()
    }

    #[test]
    fn regular_uniform_checks() {
        assert_eq!(petersen().check_regular_uniform().unwrap(), (3, 2));
        let path = Hypergraph::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(path.check_regular_uniform(), Err(Error::NotRegularUniform(_))));
        assert!(Hypergraph::new(3, vec![vec![0]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn adjacency_counts_multiplicity() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let a = h.adjacency();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(a.get(x, y), (x != y) as u64);
            }
        }
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(h.adjacency().get(0, 1), 2);
        assert_eq!(h.girth(), Some(2));
    }

    #[test]
    fn dual_and_incidence() {
        let p = petersen();
        let d = p.dual().unwrap();
        assert_eq!(d.n(), 15);
        assert_eq!(d.check_regular_uniform().unwrap(), (2, 3));
        assert_eq!(d.dual().unwrap(), p);
        assert!(Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap().dual().is_err());

        let single = Hypergraph::from_graph(2, &[(0, 1)]).unwrap();
        let b = single.incidence_graph();
        assert_eq!(b.size(), 3);
        assert_eq!((b.get(0, 2), b.get(1, 2), b.get(0, 1)), (1, 1, 0));
        let heawood = fano().incidence_graph();
        assert!(heawood.is_symmetric());
        assert!((0..14).all(|i| heawood.row(i).iter().sum::<u64>() == 3));
    }

    #[test]
    fn distances_and_girth() {
        let p = petersen();
        let dm = p.distance_matrix();
        assert!(dm.connected);
        assert_eq!(dm.diameter, Some(2));
        assert_eq!(p.girth(), Some(5));
        assert_eq!(fano().girth(), Some(3));
        let tree = Hypergraph::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(tree.girth(), None);
        let split = Hypergraph::from_graph(4, &[(0, 1), (2, 3)]).unwrap();
        let dm = split.distance_matrix();
        assert!(!dm.connected);
        assert_eq!(dm.dist[0][2], None);
        assert_eq!(dm.diameter, None);
    }

    #[test]
    fn nbw_oracle_examples() {
        let t = triangle();
        assert_eq!(t.nbw_count_oracle(0, 0, 2).unwrap(), 0);
        assert_eq!(t.nbw_count_oracle(0, 1, 2).unwrap(), 1);
        assert_eq!(t.nbw_count_oracle(0, 0, 0).unwrap(), 1);
        assert_eq!(t.nbw_count_oracle(0, 1, 0).unwrap(), 0);
        assert!(matches!(t.nbw_count_oracle(0, 1, 9), Err(Error::OracleLimit(_))));
    }

    #[test]
    fn nbw_matrix_matches_oracle_on_petersen() {
        let p = petersen();
        for i in 0..=6 {
            let m = p.nbw_count_matrix(i).unwrap();
            for x in 0..10 {
                assert_eq!(m.row(x), &p.nbw_row(x, i).unwrap()[..], "i={i} x={x}");
            }
        }
        let f2 = p.nbw_count_matrix(2).unwrap();
        assert_eq!(f2.trace(), 0);
        let traces: Vec<u64> = (1..=5).map(|i| p.nbw_count_matrix(i).unwrap().trace()).collect();
        assert_eq!(&traces[..4], &[0, 0, 0, 0]);
        assert!(traces[4] > 0);
    }

    #[test]
    fn girth_via_trace_examples() {
        assert_eq!(petersen().girth_via_trace(8).unwrap(), TraceGirth::Found(5));
        assert_eq!(fano().girth_via_trace(8).unwrap(), TraceGirth::Found(3));
        let k4 = Hypergraph::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.girth_via_trace(8).unwrap(), TraceGirth::Found(3));
        assert_eq!(petersen().girth_via_trace(4).unwrap(), TraceGirth::Exceeds(4));
    }

    #[test]
    fn distance_regularity_examples() {
        let dr = petersen().distance_regularity_check().unwrap();
        assert!(dr.valid);
        assert_eq!((dr.b.clone(), dr.c.clone(), dr.a.clone()), (vec![3, 2], vec![1, 1], vec![0, 0, 2]));
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        pairs.pop();
        let broken = Hypergraph::from_graph(10, &pairs).unwrap().distance_regularity_check().unwrap();
        assert!(!broken.valid);
        assert!(broken.witness.is_some());
    }

    #[test]
    fn text_format_roundtrip() {
        let p = petersen();
        let back: Hypergraph = p.to_string().parse().unwrap();
        assert_eq!(back, p);
        let h: Hypergraph = "# a comment\n3 1\n2 0 1 # trailing\n".parse().unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);
        assert!(matches!("3 2\n0 1\n".parse::<Hypergraph>(), Err(Error::Parse { .. })));
        assert!(matches!("3 1\n0 x\n".parse::<Hypergraph>(), Err(Error::Parse { line: 2, .. })));
        assert!(matches!("3 1\n0 5\n".parse::<Hypergraph>(), Err(Error::Parse { line: 2, .. })));
    }
}
