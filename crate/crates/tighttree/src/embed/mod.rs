//! Embeddings of one 3-graph into another: the constructive trunk-2
//! pipeline, the discharging-based special-pair finders it relies on, and an
//! independent exhaustive backtracking embedder used as an oracle.

mod backtrack;
mod discharge;
mod pipeline;

pub use backtrack::{embed_backtracking, BacktrackOutcome};
pub use discharge::{
    find_min_codegree_pair, find_strong_pair, verify_min_codegree_pair, verify_strong_pair,
    DischargeError, DischargeTrace, FinderRoute, MarkCase, MarkRecord, MinCodegreeReport,
    StrongPairReport, Transfer,
};
pub use pipeline::{
    embed_trunk2, CaseTrace, EmbedError, GateRecord, Placement, PreconditionFailure, Route,
};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::hypergraph::{set_intersection, set_union, Hypergraph, VertexSet};
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("edge {0:?} is not in the host")]
    MissingEdge(VertexSet),
    #[error("edges must share exactly two vertices")]
    BadIntersection,
    #[error("query vertices must lie in the union of the two edges")]
    QueryOutsideUnion,
}

/// Codegree of `{x, y}` counted outside the four vertices spanned by the
/// adjacent edges `e` and `f`: the number of host vertices `z` outside that
/// quadruple with `{x, y, z}` an edge.
pub fn outside_codegree(
    g: &Hypergraph,
    e: &[u32],
    f: &[u32],
    x: u32,
    y: u32,
) -> Result<usize, PairError> {
    if !g.contains_edge(e) {
        return Err(PairError::MissingEdge(e.to_vec()));
    }
    if !g.contains_edge(f) {
        return Err(PairError::MissingEdge(f.to_vec()));
    }
    if set_intersection(e, f).len() != 2 {
        return Err(PairError::BadIntersection);
    }
    let quad = set_union(e, f);
    if x == y || !quad.contains(&x) || !quad.contains(&y) {
        return Err(PairError::QueryOutsideUnion);
    }
    Ok(outside_codegree_quad(g, &quad, x, y))
}

/// Same count with the quadruple already at hand; used internally where the
/// preconditions are known to hold.
pub(crate) fn outside_codegree_quad(g: &Hypergraph, quad: &[u32], x: u32, y: u32) -> usize {
    let pair = if x < y { vec![x, y] } else { vec![y, x] };
    g.neighborhood(&pair)
        .expect("pair query on a 3-graph")
        .into_iter()
        .filter(|z| !quad.contains(z))
        .count()
}

/// Which discharging argument certified a special pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Strong clauses: light edge, light shared pair, outside-codegree
    /// floors on the b-side, and the weight-or-codegree alternative on the
    /// d-side. Requires a minimum-codegree floor in the host.
    Strong,
    /// Minimum-codegree clauses: light edge, shared pair realizing its
    /// minimum codegree, and a weight cap on the partner edge.
    MinCodegree,
}

/// Two adjacent host edges `e = {a,b,c}` and `f = {a,c,d}` sharing the pair
/// `{a,c}`, with the degree and weight data certifying one of the two
/// discharging arguments.
#[derive(Debug, Clone)]
pub struct SpecialPair {
    pub e: VertexSet,
    pub f: VertexSet,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    /// Outside codegrees for all six pairs of `{a,b,c,d}`, keyed by sorted
    /// pair.
    pub outside_codegrees: BTreeMap<(u32, u32), usize>,
    pub weight_e: Rational,
    pub weight_f: Rational,
    pub weight_shared: Rational,
    pub kind: PairKind,
}

impl SpecialPair {
    pub(crate) fn build(
        g: &Hypergraph,
        e: VertexSet,
        f: VertexSet,
        a: u32,
        b: u32,
        c: u32,
        d: u32,
        kind: PairKind,
    ) -> SpecialPair {
        let quad = set_union(&e, &f);
        debug_assert_eq!(quad.len(), 4);
        let mut outside_codegrees = BTreeMap::new();
        let verts = [a, b, c, d];
        for i in 0..4 {
            for j in (i + 1)..4 {
                let (x, y) = (verts[i].min(verts[j]), verts[i].max(verts[j]));
                outside_codegrees.insert((x, y), outside_codegree_quad(g, &quad, x, y));
            }
        }
        let weight_e = g.edge_weight(&e).expect("e is a host edge");
        let weight_f = g.edge_weight(&f).expect("f is a host edge");
        let shared = if a < c { vec![a, c] } else { vec![c, a] };
        let weight_shared = g.pair_weight(&shared).expect("shared pair is covered");
        SpecialPair { e, f, a, b, c, d, outside_codegrees, weight_e, weight_f, weight_shared, kind }
    }

    pub fn shared_pair(&self) -> VertexSet {
        if self.a < self.c {
            vec![self.a, self.c]
        } else {
            vec![self.c, self.a]
        }
    }

    pub fn quad(&self) -> VertexSet {
        set_union(&self.e, &self.f)
    }

    /// Stored outside codegree for two of the four labeled vertices.
    pub fn dp(&self, x: u32, y: u32) -> usize {
        self.outside_codegrees[&(x.min(y), x.max(y))]
    }

    /// Relabels the shared pair: a and c switch roles. All clause forms are
    /// symmetric in a and c, so this preserves certification.
    pub fn swap_shared_labels(&mut self) {
        std::mem::swap(&mut self.a, &mut self.c);
    }
}

/// An injective vertex map carrying its edge images. `map` is indexed by
/// pattern vertex id; vertices outside the pattern's support may be unmapped.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub map: Vec<Option<u32>>,
    pub edge_images: Vec<VertexSet>,
}

impl Embedding {
    pub fn image_of(&self, v: u32) -> Option<u32> {
        self.map.get(v as usize).copied().flatten()
    }
}

/// Re-derives everything from scratch: every support vertex mapped, the map
/// injective, and every pattern edge landing on a host edge.
pub fn validate_embedding(pattern: &Hypergraph, host: &Hypergraph, emb: &Embedding) -> bool {
    if emb.map.len() < pattern.vertex_count() {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    for img in emb.map.iter().flatten() {
        if !seen.insert(*img) || *img as usize >= host.vertex_count() {
            return false;
        }
    }
    for e in pattern.edges() {
        let mut img = Vec::with_capacity(e.len());
        for &v in e {
            match emb.image_of(v) {
                Some(w) => img.push(w),
                None => return false,
            }
        }
        img.sort_unstable();
        if !host.contains_edge(&img) {
            return false;
        }
    }
    true
}
