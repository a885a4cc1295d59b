//! Seeded graph generators for test corpora and batch runs. Everything is
//! driven by an explicit seed through a fixed-stream generator, so runs are
//! reproducible across platforms.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Hypergraph, VertexSet};

/// Each r-subset of `0..n` becomes an edge independently with probability
/// `p`, scanned in lexicographic order.
pub fn random_hypergraph(r: usize, n: usize, p: f64, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<VertexSet> = (0..n as u32)
        .combinations(r)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Hypergraph::new(r, n, edges).expect("distinct subsets are distinct edges")
}

/// Complete 3-graph on `n` vertices minus `delete` distinct random edges.
pub fn complete_minus(n: usize, delete: usize, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<VertexSet> = (0..n as u32).combinations(3).collect();
    let total = edges.len();
    let keep = total.saturating_sub(delete);
    edges.shuffle(&mut rng);
    edges.truncate(keep);
    Hypergraph::new(3, n, edges).expect("subset of distinct edges")
}

/// Random maximal partial Steiner triple system on `n` points: triples in a
/// seeded random order, each accepted when all three of its pairs are still
/// uncovered. No two edges of the result share more than one vertex.
pub fn random_linear_host(n: usize, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples: Vec<VertexSet> = (0..n as u32).combinations(3).collect();
    triples.shuffle(&mut rng);
    let mut pair_used = vec![false; n * n];
    let mut edges: Vec<VertexSet> = Vec::new();
    for t in triples {
        let pairs =
            [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].map(|(a, b)| a as usize * n + b as usize);
        if pairs.iter().any(|&i| pair_used[i]) {
            continue;
        }
        for i in pairs {
            pair_used[i] = true;
        }
        edges.push(t);
    }
    Hypergraph::new(3, n, edges).expect("pairwise compatible triples are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        assert_eq!(random_hypergraph(3, 9, 0.4, 7), random_hypergraph(3, 9, 0.4, 7));
        assert_eq!(complete_minus(10, 5, 3), complete_minus(10, 5, 3));
        assert_eq!(random_linear_host(12, 9), random_linear_host(12, 9));
    }

    #[test]
    fn complete_minus_counts() {
        let g = complete_minus(10, 7, 1);
        assert_eq!(g.edge_count(), 120 - 7);
    }

    #[test]
    fn linear_host_has_codegree_one() {
        let g = random_linear_host(15, 2);
        assert!(!g.is_empty());
        for d in g.codegrees().values() {
            assert_eq!(*d, 1);
        }
    }
}
