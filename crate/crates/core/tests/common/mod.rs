#![allow(dead_code)]

use hyplp::Hypergraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(r, u)` pairs with `k = r(u-1) <= 8`.
pub const SHAPES: &[(usize, usize)] = &[(3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (4, 3), (2, 4), (2, 5)];

/// Simple connected `r`-regular `u`-uniform hypergraph on `n` vertices from
/// the configuration model, or `None` after too many rejected pairings.
/// With `linear`, no two edges share two vertices.
pub fn random_regular_uniform(rng: &mut impl Rng, n: usize, r: usize, u: usize, linear: bool) -> Option<Hypergraph> {
    if (n * r) % u != 0 || n < u {
        return None;
    }
    for _ in 0..2000 {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(r)).collect();
        points.shuffle(rng);
        let mut edges: Vec<Vec<usize>> = points.chunks(u).map(|c| c.to_vec()).collect();
        let mut ok = true;
        for e in edges.iter_mut() {
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut sorted = edges.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        if linear && shares_pair(&edges) {
            continue;
        }
        let h = Hypergraph::new(n, edges).ok()?;
        if h.is_connected() {
            return Some(h);
        }
    }
    None
}

fn shares_pair(edges: &[Vec<usize>]) -> bool {
    let mut pairs: Vec<(usize, usize)> =
        edges.iter().flat_map(|e| e.iter().enumerate().flat_map(move |(i, &a)| e[i + 1..].iter().map(move |&b| (a, b)))).collect();
    let before = pairs.len();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.len() != before
}

/// `count` hypergraphs with at most 25 vertices, deterministic in `seed`.
pub fn corpus(seed: u64, count: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let &(r, u) = SHAPES.choose(&mut rng).unwrap();
        let n = rng.gen_range(u + 2..=25);
        let linear = out.len() % 2 == 1;
        if let Some(h) = random_regular_uniform(&mut rng, n, r, u, linear) {
            out.push(h);
        }
    }
    out
}

pub fn petersen() -> Hypergraph {
    hyplp::constructions::petersen()
}
