//! Uniform hypergraphs over dense integer vertex ids, with shadows, links,
//! codegrees, exact default weights, and the min-codegree peeling procedure.
//!
//! A `Hypergraph` is immutable after construction: every operation is a pure
//! function of the canonical edge set, so values can be shared freely across
//! threads.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::rational::{floor_usize, rat_usize, recip_usize, Rational};

/// Sorted list of distinct vertex ids. Shadow elements, links and edges all
/// use this shape.
pub type VertexSet = Vec<u32>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {0:?} has wrong size (uniformity {1})")]
    WrongEdgeSize(VertexSet, usize),
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(VertexSet),
    #[error("edge {0:?} uses vertex {1} outside 0..{2}")]
    VertexOutOfRange(VertexSet, u32, usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(VertexSet),
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("query set size {0} invalid here (uniformity {1})")]
    BadQuerySize(usize, usize),
    #[error("set {0:?} lies in no edge")]
    NotInShadow(VertexSet),
    #[error("operation undefined on an empty hypergraph")]
    EmptyHypergraph,
}

/// An `r`-uniform hypergraph on vertices `0..n`. Edges are kept as sorted
/// vertex lists in lexicographic order with no duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<VertexSet>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(r={}, n={}, edges={:?})", self.r, self.n, self.edges)
    }
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalizing edge order. Rejects malformed or
    /// duplicate edges.
    pub fn new(
        r: usize,
        n: usize,
        edges: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, HypergraphError> {
        if r < 2 {
            return Err(HypergraphError::BadUniformity(r));
        }
        let mut canon: Vec<VertexSet> = Vec::new();
        for mut e in edges {
            if e.len() != r {
                return Err(HypergraphError::WrongEdgeSize(e, r));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex(e));
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(HypergraphError::VertexOutOfRange(e, v, n));
            }
            canon.push(e);
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge(w[0].clone()));
        }
        Ok(Hypergraph { r, n, edges: canon })
    }

    /// The complete `r`-graph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Self {
        let edges = (0..n as u32).combinations(r).collect_vec();
        Hypergraph::new(r, n, edges).expect("complete graph is well formed")
    }

    /// The empty `r`-graph on `n` vertices.
    pub fn empty(r: usize, n: usize) -> Self {
        Hypergraph::new(r, n, []).expect("empty graph is well formed")
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &VertexSet {
        &self.edges[i]
    }

    /// Binary search over the canonical edge list; `e` must be sorted.
    pub fn contains_edge(&self, e: &[u32]) -> bool {
        debug_assert!(e.windows(2).all(|w| w[0] < w[1]));
        self.edges.binary_search_by(|probe| probe.as_slice().cmp(e)).is_ok()
    }

    /// Vertices that appear in at least one edge, ascending.
    pub fn support(&self) -> VertexSet {
        let mut present = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                present[v as usize] = true;
            }
        }
        (0..self.n as u32).filter(|&v| present[v as usize]).collect()
    }

    /// Per-vertex degrees, indexed by vertex id.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// All (r-1)-sets contained in at least one edge.
    pub fn shadow(&self) -> Vec<VertexSet> {
        self.codegrees().into_keys().collect()
    }

    pub fn shadow_size(&self) -> usize {
        self.codegrees().len()
    }

    /// Degree of every shadow element: map from (r-1)-set to the number of
    /// edges containing it.
    pub fn codegrees(&self) -> BTreeMap<VertexSet, usize> {
        let mut map = BTreeMap::new();
        for e in &self.edges {
            for d in e.iter().copied().combinations(self.r - 1) {
                *map.entry(d).or_insert(0) += 1;
            }
        }
        map
    }

    /// Residues `e \ d` of the edges containing `d`. For |d| = r-1 the
    /// residues are single vertices, the neighborhood of `d`.
    pub fn link(&self, d: &[u32]) -> Result<Vec<VertexSet>, HypergraphError> {
        if d.len() >= self.r {
            return Err(HypergraphError::BadQuerySize(d.len(), self.r));
        }
        let mut out = Vec::new();
        for e in &self.edges {
            if is_subset(d, e) {
                out.push(e.iter().copied().filter(|v| !d.contains(v)).collect());
            }
        }
        Ok(out)
    }

    /// Vertices completing `d` to an edge; `d` must have r-1 vertices.
    pub fn neighborhood(&self, d: &[u32]) -> Result<VertexSet, HypergraphError> {
        if d.len() != self.r - 1 {
            return Err(HypergraphError::BadQuerySize(d.len(), self.r));
        }
        Ok(self.link(d)?.into_iter().map(|s| s[0]).collect())
    }

    /// Number of edges containing `d` (any |d| <= r).
    pub fn degree(&self, d: &[u32]) -> usize {
        self.edges.iter().filter(|e| is_subset(d, e)).count()
    }

    /// Minimum degree over `p`-sets contained in at least one edge. Sets not
    /// covered by any edge do not participate. Errors on an empty graph.
    pub fn min_p_degree(&self, p: usize) -> Result<usize, HypergraphError> {
        if p == 0 || p > self.r - 1 {
            return Err(HypergraphError::BadQuerySize(p, self.r));
        }
        if self.edges.is_empty() {
            return Err(HypergraphError::EmptyHypergraph);
        }
        let mut map: BTreeMap<VertexSet, usize> = BTreeMap::new();
        for e in &self.edges {
            for d in e.iter().copied().combinations(p) {
                *map.entry(d).or_insert(0) += 1;
            }
        }
        Ok(map.into_values().min().expect("nonempty graph has covered sets"))
    }

    /// Default weight of a shadow element: 1/degree. Errors when `d` lies in
    /// no edge.
    pub fn pair_weight(&self, d: &[u32]) -> Result<Rational, HypergraphError> {
        if d.len() != self.r - 1 {
            return Err(HypergraphError::BadQuerySize(d.len(), self.r));
        }
        match self.degree(d) {
            0 => Err(HypergraphError::NotInShadow(d.to_vec())),
            k => Ok(recip_usize(k)),
        }
    }

    /// Default weight of an edge: the sum of the r weights of its
    /// (r-1)-subsets.
    pub fn edge_weight(&self, e: &[u32]) -> Result<Rational, HypergraphError> {
        if !self.contains_edge(e) {
            return Err(HypergraphError::NotInShadow(e.to_vec()));
        }
        let mut w = Rational::from_integer(0.into());
        for d in e.iter().copied().combinations(self.r - 1) {
            w += recip_usize(self.degree(&d));
        }
        Ok(w)
    }

    /// Edge weights for every edge at once, via one codegree pass.
    pub fn edge_weights(&self) -> Vec<Rational> {
        let codeg = self.codegrees();
        self.edges
            .iter()
            .map(|e| {
                e.iter()
                    .copied()
                    .combinations(self.r - 1)
                    .map(|d| recip_usize(codeg[&d]))
                    .sum()
            })
            .collect()
    }

    /// Checks the identity: the edge weights sum exactly to the shadow size.
    /// Holds for every hypergraph; `equal` is returned for reporting.
    pub fn weight_identity_check(&self) -> WeightIdentity {
        let lhs: Rational = self.edge_weights().into_iter().sum();
        let rhs = self.shadow_size();
        let equal = lhs == rat_usize(rhs);
        WeightIdentity { lhs, rhs, equal }
    }

    /// Repeatedly deletes all edges through any (r-1)-set whose current
    /// degree is at most floor(q), until no such set remains. The fixed point
    /// is the unique maximal subgraph with minimum codegree over floor(q);
    /// deletions are batched per round so runs are reproducible.
    pub fn peel_to_min_codegree(&self, q: &Rational) -> PeelOutcome {
        let zero = Rational::from_integer(0.into());
        let threshold = floor_usize(q.max(&zero));
        let edge_subs: Vec<Vec<VertexSet>> = self
            .edges
            .iter()
            .map(|e| e.iter().copied().combinations(self.r - 1).collect_vec())
            .collect();
        let mut alive: Vec<bool> = vec![true; self.edges.len()];
        let mut rounds = 0usize;
        loop {
            let mut counts: BTreeMap<&VertexSet, usize> = BTreeMap::new();
            for (i, subs) in edge_subs.iter().enumerate() {
                if alive[i] {
                    for d in subs {
                        *counts.entry(d).or_insert(0) += 1;
                    }
                }
            }
            counts.retain(|_, c| *c <= threshold);
            if counts.is_empty() {
                break;
            }
            rounds += 1;
            for (i, subs) in edge_subs.iter().enumerate() {
                if alive[i] && subs.iter().any(|d| counts.contains_key(d)) {
                    alive[i] = false;
                }
            }
        }
        let kept: Vec<VertexSet> =
            self.edges.iter().zip(&alive).filter(|(_, &a)| a).map(|(e, _)| e.clone()).collect();
        let graph = Hypergraph::new(self.r, self.n, kept).expect("peel keeps edges canonical");
        let empty = graph.is_empty();
        PeelOutcome { graph, empty, rounds, min_codegree_floor: threshold }
    }
}

/// Result of `weight_identity_check`.
#[derive(Debug, Clone)]
pub struct WeightIdentity {
    pub lhs: Rational,
    pub rhs: usize,
    pub equal: bool,
}

/// Result of peeling; `empty` flags the valid-but-degenerate outcome.
#[derive(Debug, Clone)]
pub struct PeelOutcome {
    pub graph: Hypergraph,
    pub empty: bool,
    pub rounds: usize,
    /// floor(q): surviving shadow elements have degree strictly above this.
    pub min_codegree_floor: usize,
}

/// True when every element of `small` (sorted) occurs in `big` (sorted).
pub fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    'outer: for &s in small {
        for &b in it.by_ref() {
            if b == s {
                continue 'outer;
            }
            if b > s {
                return false;
            }
        }
        return false;
    }
    true
}

/// Sorted union of two sorted sets.
pub fn set_union(a: &[u32], b: &[u32]) -> VertexSet {
    let mut out: VertexSet = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Sorted intersection of two sorted sets.
pub fn set_intersection(a: &[u32], b: &[u32]) -> VertexSet {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

/// Sorted difference `a \ b`.
pub fn set_difference(a: &[u32], b: &[u32]) -> VertexSet {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn fano() -> Hypergraph {
        Hypergraph::new(
            3,
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_canonicalizes_and_validates() {
        let g = Hypergraph::new(3, 5, vec![vec![2, 1, 0], vec![0, 3, 1]]).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1, 2], vec![0, 1, 3]]);
        assert!(matches!(
            Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 0, 1]]),
            Err(HypergraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1, 3]]),
            Err(HypergraphError::VertexOutOfRange(_, 3, 3))
        ));
        assert!(matches!(
            Hypergraph::new(3, 5, vec![vec![0, 1, 1]]),
            Err(HypergraphError::RepeatedVertex(_))
        ));
    }

    #[test]
    fn shadow_examples() {
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(single.shadow(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(Hypergraph::empty(3, 4).shadow(), Vec::<VertexSet>::new());
        let k4 = Hypergraph::complete(3, 4);
        assert_eq!(k4.shadow_size(), 6);
    }

    #[test]
    fn link_examples() {
        let k4 = Hypergraph::complete(3, 4);
        assert_eq!(k4.link(&[0, 1]).unwrap(), vec![vec![2], vec![3]]);
        let single = Hypergraph::new(3, 4, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(single.link(&[3]).unwrap(), Vec::<VertexSet>::new());
        let k5 = Hypergraph::complete(3, 5);
        assert_eq!(k5.link(&[0]).unwrap().len(), 6);
        assert!(k5.link(&[0, 1, 2]).is_err());
    }

    #[test]
    fn degree_examples() {
        let k5 = Hypergraph::complete(3, 5);
        assert_eq!(k5.degree(&[0, 1]), 3);
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(single.degree(&[0, 1, 2]), 1);
        let f = fano();
        for d in f.codegrees().values() {
            assert_eq!(*d, 1);
        }
    }

    #[test]
    fn min_p_degree_examples() {
        assert_eq!(Hypergraph::complete(3, 5).min_p_degree(2).unwrap(), 3);
        let g = Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(g.min_p_degree(2).unwrap(), 1);
        assert_eq!(Hypergraph::complete(3, 22).min_p_degree(2).unwrap(), 20);
        assert!(matches!(
            Hypergraph::empty(3, 4).min_p_degree(2),
            Err(HypergraphError::EmptyHypergraph)
        ));
    }

    #[test]
    fn weight_examples() {
        let k4 = Hypergraph::complete(3, 4);
        assert_eq!(k4.edge_weight(&[0, 1, 2]).unwrap(), rat(3, 2));
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(single.edge_weight(&[0, 1, 2]).unwrap(), rat_int(3));
        let k25 = Hypergraph::complete(3, 25);
        assert_eq!(k25.edge_weight(&[0, 1, 2]).unwrap(), rat(3, 23));
        assert!(single.pair_weight(&[0, 3]).is_err());
    }

    #[test]
    fn weight_identity_examples() {
        let k4 = Hypergraph::complete(3, 4);
        let id = k4.weight_identity_check();
        assert_eq!(id.lhs, rat_int(6));
        assert_eq!(id.rhs, 6);
        assert!(id.equal);

        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let id = single.weight_identity_check();
        assert_eq!(id.lhs, rat_int(3));
        assert_eq!(id.rhs, 3);
        assert!(id.equal);
    }

    #[test]
    fn peel_examples() {
        let k5 = Hypergraph::complete(3, 5);
        let out = k5.peel_to_min_codegree(&rat_int(2));
        assert!(!out.empty);
        assert_eq!(out.graph.edge_count(), 10);

        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let out = single.peel_to_min_codegree(&rat_int(1));
        assert!(out.empty);

        let k22 = Hypergraph::complete(3, 22);
        let out = k22.peel_to_min_codegree(&rat(19, 3));
        assert!(!out.empty);
        assert_eq!(out.graph.edge_count(), k22.edge_count());
    }

    #[test]
    fn degree_equals_link_size() {
        let f = fano();
        for d in f.shadow() {
            assert_eq!(f.degree(&d), f.link(&d).unwrap().len());
        }
    }
}
