//! Tight trees: proper orderings, trunks, leaf-attachment profiles,
//! enumeration up to isomorphism, and seeded samplers.
//!
//! A tight tree is an edge set admitting an ordering in which every edge
//! after the first brings exactly one new vertex while its remaining
//! vertices sit inside some earlier edge.

use std::collections::HashSet;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{is_subset, set_intersection, Hypergraph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("input is not a tight tree")]
    NotTightTree,
    #[error("trunk edge set is empty")]
    EmptyTrunk,
    #[error("edge index {0} out of range")]
    BadEdgeIndex(usize),
    #[error("operation requires uniformity 3")]
    NotUniformity3,
    #[error("enumeration limits exceeded: {0}")]
    LimitExceeded(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
}

/// Proof that an edge ordering is proper: the new vertex of every edge past
/// the first, and the position of an earlier edge containing the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightTreeWitness {
    /// Permutation of edge indices; `ordering[0]` is the root edge.
    pub ordering: Vec<usize>,
    /// `new_vertex[i-1]` is the vertex of `ordering[i]` absent from all
    /// earlier edges.
    pub new_vertex: Vec<u32>,
    /// `anchor[i-1]` is a position `< i` whose edge contains the rest of
    /// `ordering[i]`.
    pub anchor: Vec<usize>,
    /// Dead ends hit while searching; 0 means the first-choice greedy chain
    /// already completed.
    pub backtracks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderingRefutation {
    /// The sequence is not a permutation of all edge indices.
    NotPermutation,
    /// First position whose edge breaks the one-new-vertex-anchored rule.
    FailsAt { position: usize },
}

/// Checks one explicit ordering. Returns the witness or the first violating
/// position.
pub fn is_proper_ordering(
    h: &Hypergraph,
    ordering: &[usize],
) -> Result<TightTreeWitness, OrderingRefutation> {
    let t = h.edge_count();
    if ordering.len() != t {
        return Err(OrderingRefutation::NotPermutation);
    }
    let mut used = vec![false; t];
    for &i in ordering {
        if i >= t || used[i] {
            return Err(OrderingRefutation::NotPermutation);
        }
        used[i] = true;
    }

    let mut seen = vec![false; h.vertex_count()];
    let mut new_vertex = Vec::with_capacity(t.saturating_sub(1));
    let mut anchor = Vec::with_capacity(t.saturating_sub(1));
    for (pos, &ei) in ordering.iter().enumerate() {
        let e = h.edge(ei);
        if pos == 0 {
            for &v in e {
                seen[v as usize] = true;
            }
            continue;
        }
        let fresh: Vec<u32> = e.iter().copied().filter(|&v| !seen[v as usize]).collect();
        if fresh.len() != 1 {
            return Err(OrderingRefutation::FailsAt { position: pos });
        }
        let v = fresh[0];
        let rest: VertexSet = e.iter().copied().filter(|&w| w != v).collect();
        let anch = (0..pos).find(|&j| is_subset(&rest, h.edge(ordering[j])));
        match anch {
            Some(j) => {
                new_vertex.push(v);
                anchor.push(j);
                seen[v as usize] = true;
            }
            None => return Err(OrderingRefutation::FailsAt { position: pos }),
        }
    }
    Ok(TightTreeWitness { ordering: ordering.to_vec(), new_vertex, anchor, backtracks: 0 })
}

/// Searches for a proper ordering by backtracking over placeable edges (an
/// edge is placeable when exactly one vertex is unseen and the rest lie in
/// an already placed edge). Dead-end edge subsets are memoized, so the
/// search is exact. Returns `None` exactly when no proper ordering exists.
pub fn find_proper_ordering(h: &Hypergraph) -> Option<TightTreeWitness> {
    let t = h.edge_count();
    if t == 0 {
        return Some(TightTreeWitness {
            ordering: vec![],
            new_vertex: vec![],
            anchor: vec![],
            backtracks: 0,
        });
    }

    struct Search<'a> {
        h: &'a Hypergraph,
        placed: Vec<usize>,
        placed_flag: Vec<bool>,
        seen: Vec<bool>,
        new_vertex: Vec<u32>,
        anchor: Vec<usize>,
        dead: HashSet<Vec<u64>>,
        backtracks: usize,
    }

    impl Search<'_> {
        fn mask(&self) -> Vec<u64> {
            let mut m = vec![0u64; self.placed_flag.len().div_ceil(64)];
            for (i, &f) in self.placed_flag.iter().enumerate() {
                if f {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            m
        }

        fn dfs(&mut self) -> bool {
            let t = self.h.edge_count();
            if self.placed.len() == t {
                return true;
            }
            let key = self.mask();
            if self.dead.contains(&key) {
                return false;
            }
            for i in 0..t {
                if self.placed_flag[i] {
                    continue;
                }
                let e = self.h.edge(i);
                if self.placed.is_empty() {
                    self.placed.push(i);
                    self.placed_flag[i] = true;
                    for &v in e {
                        self.seen[v as usize] = true;
                    }
                    if self.dfs() {
                        return true;
                    }
                    self.placed.pop();
                    self.placed_flag[i] = false;
                    for &v in e {
                        self.seen[v as usize] = false;
                    }
                    continue;
                }
                let fresh: Vec<u32> =
                    e.iter().copied().filter(|&v| !self.seen[v as usize]).collect();
                if fresh.len() != 1 {
                    continue;
                }
                let v = fresh[0];
                let rest: VertexSet = e.iter().copied().filter(|&w| w != v).collect();
                let Some(anch) =
                    (0..self.placed.len()).find(|&j| is_subset(&rest, self.h.edge(self.placed[j])))
                else {
                    continue;
                };
                self.placed.push(i);
                self.placed_flag[i] = true;
                self.seen[v as usize] = true;
                self.new_vertex.push(v);
                self.anchor.push(anch);
                if self.dfs() {
                    return true;
                }
                self.placed.pop();
                self.placed_flag[i] = false;
                self.seen[v as usize] = false;
                self.new_vertex.pop();
                self.anchor.pop();
            }
            self.dead.insert(key);
            self.backtracks += 1;
            false
        }
    }

    let mut s = Search {
        h,
        placed: Vec::with_capacity(t),
        placed_flag: vec![false; t],
        seen: vec![false; h.vertex_count()],
        new_vertex: Vec::with_capacity(t - 1),
        anchor: Vec::with_capacity(t - 1),
        dead: HashSet::new(),
        backtracks: 0,
    };
    if s.dfs() {
        Some(TightTreeWitness {
            ordering: s.placed,
            new_vertex: s.new_vertex,
            anchor: s.anchor,
            backtracks: s.backtracks,
        })
    } else {
        None
    }
}

/// Vertices of degree exactly one.
pub fn leaves(t: &Hypergraph) -> VertexSet {
    t.vertex_degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 1)
        .map(|(v, _)| v as u32)
        .collect()
}

/// A verified trunk: a tight edge subset listable first in a proper ordering
/// of the whole tree, with everything outside it hanging as leaf edges.
#[derive(Debug, Clone)]
pub struct TrunkCertificate {
    /// Ascending edge indices of the trunk.
    pub trunk_edges: Vec<usize>,
    /// Proper ordering of the whole tree with the trunk edges first.
    pub witness: TightTreeWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrunkRefutation {
    /// The candidate edge set is not itself a tight tree.
    TrunkNotTight,
    /// A vertex outside the trunk has degree above one.
    OutsideVertexNotLeaf(u32),
    /// A non-trunk edge lies entirely inside the trunk vertex set.
    EdgeInsideTrunk(usize),
    /// A non-trunk edge has more than one vertex outside the trunk.
    EdgeAddsTwoOutside(usize),
    /// A non-trunk edge's inner vertices fit in no single trunk edge.
    PairNotInTrunkEdge(usize),
}

#[derive(Debug, Clone)]
pub enum TrunkCheck {
    Valid(TrunkCertificate),
    Refuted(TrunkRefutation),
}

/// Decides whether the edge subset `s` is a trunk of `t`. Errors when `t`
/// itself is not a tight tree.
pub fn is_trunk(t: &Hypergraph, s: &[usize]) -> Result<TrunkCheck, TreeError> {
    if find_proper_ordering(t).is_none() {
        return Err(TreeError::NotTightTree);
    }
    if s.is_empty() {
        return Err(TreeError::EmptyTrunk);
    }
    let mut trunk: Vec<usize> = s.to_vec();
    trunk.sort_unstable();
    trunk.dedup();
    if let Some(&bad) = trunk.iter().find(|&&i| i >= t.edge_count()) {
        return Err(TreeError::BadEdgeIndex(bad));
    }

    let sub = Hypergraph::new(
        t.uniformity(),
        t.vertex_count(),
        trunk.iter().map(|&i| t.edge(i).clone()),
    )
    .expect("subset of canonical edges");
    let Some(sub_witness) = find_proper_ordering(&sub) else {
        return Ok(TrunkCheck::Refuted(TrunkRefutation::TrunkNotTight));
    };

    let mut in_trunk_vertex = vec![false; t.vertex_count()];
    for &i in &trunk {
        for &v in t.edge(i) {
            in_trunk_vertex[v as usize] = true;
        }
    }
    let degrees = t.vertex_degrees();
    for v in 0..t.vertex_count() {
        if !in_trunk_vertex[v] && degrees[v] > 1 {
            return Ok(TrunkCheck::Refuted(TrunkRefutation::OutsideVertexNotLeaf(v as u32)));
        }
    }

    let trunk_set: HashSet<usize> = trunk.iter().copied().collect();
    for i in 0..t.edge_count() {
        if trunk_set.contains(&i) {
            continue;
        }
        let e = t.edge(i);
        let outside: Vec<u32> =
            e.iter().copied().filter(|&v| !in_trunk_vertex[v as usize]).collect();
        match outside.len() {
            0 => return Ok(TrunkCheck::Refuted(TrunkRefutation::EdgeInsideTrunk(i))),
            1 => {}
            _ => return Ok(TrunkCheck::Refuted(TrunkRefutation::EdgeAddsTwoOutside(i))),
        }
        let rest: VertexSet = e.iter().copied().filter(|&v| v != outside[0]).collect();
        if !trunk.iter().any(|&j| is_subset(&rest, t.edge(j))) {
            return Ok(TrunkCheck::Refuted(TrunkRefutation::PairNotInTrunkEdge(i)));
        }
    }

    // Trunk-first ordering: the sub-tree's ordering, then the leaf edges.
    let mut full_order: Vec<usize> =
        sub_witness.ordering.iter().map(|&k| trunk[k]).collect();
    for i in 0..t.edge_count() {
        if !trunk_set.contains(&i) {
            full_order.push(i);
        }
    }
    let witness = is_proper_ordering(t, &full_order)
        .expect("verified trunk conditions yield a proper ordering");
    Ok(TrunkCheck::Valid(TrunkCertificate { trunk_edges: trunk, witness }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrunkSize {
    Exact(usize),
    MoreThan(usize),
}

/// Smallest trunk size, searching subsets in increasing size up to `cap`.
pub fn min_trunk_size(t: &Hypergraph, cap: usize) -> Result<TrunkSize, TreeError> {
    if t.edge_count() < 2 {
        return Err(TreeError::InfeasibleParameters("need at least 2 edges".into()));
    }
    if find_proper_ordering(t).is_none() {
        return Err(TreeError::NotTightTree);
    }
    let bound = cap.min(t.edge_count());
    for k in 1..=bound {
        for s in (0..t.edge_count()).combinations(k) {
            if let TrunkCheck::Valid(_) = is_trunk(t, &s)? {
                return Ok(TrunkSize::Exact(k));
            }
        }
    }
    Ok(TrunkSize::MoreThan(cap))
}

/// The five vertex pairs spanned by a two-edge trunk `{x,y,u}`, `{x,y,v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TrunkPair {
    XY,
    XU,
    XV,
    YU,
    YV,
}

pub const TRUNK_PAIRS: [TrunkPair; 5] =
    [TrunkPair::XY, TrunkPair::XU, TrunkPair::XV, TrunkPair::YU, TrunkPair::YV];

/// Leaf-attachment profile of a trunk-2 tight 3-tree: which leaves hang off
/// each of the five trunk pairs. `x < y` are the shared vertices, `u` and
/// `v` the private tips of the two trunk edges.
#[derive(Debug, Clone)]
pub struct TrunkProfile {
    pub x: u32,
    pub y: u32,
    pub u: u32,
    pub v: u32,
    pub edge_count: usize,
    leaves_xy: Vec<u32>,
    leaves_xu: Vec<u32>,
    leaves_xv: Vec<u32>,
    leaves_yu: Vec<u32>,
    leaves_yv: Vec<u32>,
}

impl TrunkProfile {
    pub fn leaves(&self, p: TrunkPair) -> &[u32] {
        match p {
            TrunkPair::XY => &self.leaves_xy,
            TrunkPair::XU => &self.leaves_xu,
            TrunkPair::XV => &self.leaves_xv,
            TrunkPair::YU => &self.leaves_yu,
            TrunkPair::YV => &self.leaves_yv,
        }
    }

    /// Number of leaves attached to the pair.
    pub fn count(&self, p: TrunkPair) -> usize {
        self.leaves(p).len()
    }

    /// Actual vertex ids of the pair.
    pub fn pair_vertices(&self, p: TrunkPair) -> (u32, u32) {
        match p {
            TrunkPair::XY => (self.x, self.y),
            TrunkPair::XU => (self.x, self.u),
            TrunkPair::XV => (self.x, self.v),
            TrunkPair::YU => (self.y, self.u),
            TrunkPair::YV => (self.y, self.v),
        }
    }

    /// Degree of the shared pair in the tree.
    pub fn shared_pair_degree(&self) -> usize {
        self.leaves_xy.len() + 2
    }

    pub fn counts_sum(&self) -> usize {
        TRUNK_PAIRS.iter().map(|&p| self.count(p)).sum()
    }

    /// Renames the shared vertices: x and y change roles.
    pub fn swap_shared(&mut self) {
        std::mem::swap(&mut self.x, &mut self.y);
        std::mem::swap(&mut self.leaves_xu, &mut self.leaves_yu);
        std::mem::swap(&mut self.leaves_xv, &mut self.leaves_yv);
    }

    /// Renames the tips: u and v change roles (the trunk edges swap).
    pub fn swap_tips(&mut self) {
        std::mem::swap(&mut self.u, &mut self.v);
        std::mem::swap(&mut self.leaves_xu, &mut self.leaves_xv);
        std::mem::swap(&mut self.leaves_yu, &mut self.leaves_yv);
    }
}

/// Builds the attachment profile for the trunk `{e1, e2}`. The trunk is
/// re-verified; labels with `x < y` and `u` from `e1`, `v` from `e2`.
pub fn trunk_profile(t: &Hypergraph, e1: usize, e2: usize) -> Result<TrunkProfile, TreeError> {
    if t.uniformity() != 3 {
        return Err(TreeError::NotUniformity3);
    }
    let check = is_trunk(t, &[e1, e2])?;
    let TrunkCheck::Valid(_) = check else {
        return Err(TreeError::InfeasibleParameters("edge pair is not a trunk".into()));
    };
    let (a, b) = (t.edge(e1).clone(), t.edge(e2).clone());
    let shared = set_intersection(&a, &b);
    if shared.len() != 2 {
        return Err(TreeError::InfeasibleParameters("trunk edges must share two vertices".into()));
    }
    let (x, y) = (shared[0], shared[1]);
    let u = *a.iter().find(|v| !shared.contains(v)).expect("edge has a third vertex");
    let v = *b.iter().find(|v| !shared.contains(v)).expect("edge has a third vertex");

    let mut profile = TrunkProfile {
        x,
        y,
        u,
        v,
        edge_count: t.edge_count(),
        leaves_xy: vec![],
        leaves_xu: vec![],
        leaves_xv: vec![],
        leaves_yu: vec![],
        leaves_yv: vec![],
    };
    let core = [x, y, u, v];
    for i in 0..t.edge_count() {
        if i == e1 || i == e2 {
            continue;
        }
        let e = t.edge(i);
        let outside: Vec<u32> = e.iter().copied().filter(|w| !core.contains(w)).collect();
        assert_eq!(outside.len(), 1, "trunk certificate guarantees one leaf per edge");
        let leaf = outside[0];
        let pair: Vec<u32> = e.iter().copied().filter(|&w| w != leaf).collect();
        let slot = if pair == sorted_pair(x, y) {
            &mut profile.leaves_xy
        } else if pair == sorted_pair(x, u) {
            &mut profile.leaves_xu
        } else if pair == sorted_pair(x, v) {
            &mut profile.leaves_xv
        } else if pair == sorted_pair(y, u) {
            &mut profile.leaves_yu
        } else if pair == sorted_pair(y, v) {
            &mut profile.leaves_yv
        } else {
            unreachable!("certificate guarantees attachment to a trunk pair");
        };
        slot.push(leaf);
    }
    for p in TRUNK_PAIRS {
        let (pv, qv) = profile.pair_vertices(p);
        let deg = t.degree(&sorted_pair(pv, qv));
        let expect = if p == TrunkPair::XY { deg - 2 } else { deg - 1 };
        assert_eq!(profile.count(p), expect, "attachment counts match pair degrees");
    }
    assert_eq!(profile.counts_sum(), t.edge_count() - 2);
    Ok(profile)
}

fn sorted_pair(a: u32, b: u32) -> Vec<u32> {
    if a < b {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

/// First two-edge trunk in lexicographic index order, if any.
pub fn two_edge_trunk(t: &Hypergraph) -> Result<TrunkCertificate, TreeError> {
    if find_proper_ordering(t).is_none() {
        return Err(TreeError::NotTightTree);
    }
    for i in 0..t.edge_count() {
        for j in (i + 1)..t.edge_count() {
            if set_intersection(t.edge(i), t.edge(j)).len() != t.uniformity() - 1 {
                continue;
            }
            if let TrunkCheck::Valid(cert) = is_trunk(t, &[i, j])? {
                return Ok(cert);
            }
        }
    }
    Err(TreeError::InfeasibleParameters("no trunk of size 2".into()))
}

/// Exact isomorphism test via degree-guided backtracking. Intended for the
/// desk-scale graphs handled by the enumerator.
pub fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.uniformity() != b.uniformity()
        || a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
    {
        return false;
    }
    let da = a.vertex_degrees();
    let db = b.vertex_degrees();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let n = a.vertex_count();
    // Edges of `a` indexed by their maximum vertex, checked as soon as that
    // vertex gets an image.
    let mut edges_by_max: Vec<Vec<usize>> = vec![vec![]; n];
    for (i, e) in a.edges().iter().enumerate() {
        edges_by_max[*e.last().expect("nonempty edge") as usize].push(i);
    }

    fn assign(
        k: usize,
        a: &Hypergraph,
        b: &Hypergraph,
        da: &[usize],
        db: &[usize],
        edges_by_max: &[Vec<usize>],
        image: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.vertex_count();
        if k == n {
            return true;
        }
        for w in 0..n {
            if used[w] || db[w] != da[k] {
                continue;
            }
            image[k] = Some(w as u32);
            used[w] = true;
            let ok = edges_by_max[k].iter().all(|&ei| {
                let mut img: Vec<u32> =
                    a.edge(ei).iter().map(|&v| image[v as usize].expect("mapped")).collect();
                img.sort_unstable();
                b.contains_edge(&img)
            });
            if ok && assign(k + 1, a, b, da, db, edges_by_max, image, used) {
                return true;
            }
            image[k] = None;
            used[w] = false;
        }
        false
    }

    let mut image = vec![None; n];
    let mut used = vec![false; n];
    assign(0, a, b, &da, &db, &edges_by_max, &mut image, &mut used)
}

/// All tight `r`-trees with `t` edges up to isomorphism, grown edge by edge
/// and deduplicated per level. Output is sorted by edge list.
pub fn enumerate_tight_trees(r: usize, t: usize) -> Result<Vec<Hypergraph>, TreeError> {
    if r < 2 || t == 0 {
        return Err(TreeError::InfeasibleParameters("need r >= 2 and t >= 1".into()));
    }
    if r + t - 1 > 9 {
        return Err(TreeError::LimitExceeded(format!(
            "{} vertices exceeds the enumeration cap of 9",
            r + t - 1
        )));
    }
    let root = Hypergraph::new(r, r, vec![(0..r as u32).collect()]).expect("root edge");
    let mut current = vec![root];
    for level in 2..=t {
        let n = r + level - 1;
        let mut next: Vec<Hypergraph> = Vec::new();
        let mut keys: Vec<Vec<usize>> = Vec::new();
        for tree in &current {
            for e in tree.edges() {
                for sub in e.iter().copied().combinations(r - 1) {
                    let mut edge = sub.clone();
                    edge.push((n - 1) as u32);
                    let mut edges: Vec<VertexSet> = tree.edges().to_vec();
                    edges.push(edge);
                    let cand = Hypergraph::new(r, n, edges).expect("one fresh vertex per edge");
                    let mut key = cand.vertex_degrees();
                    key.sort_unstable();
                    let dup = next
                        .iter()
                        .zip(&keys)
                        .any(|(rep, k)| *k == key && isomorphic(rep, &cand));
                    if !dup {
                        next.push(cand);
                        keys.push(key);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..next.len()).collect();
        order.sort_by(|&i, &j| next[i].edges().cmp(next[j].edges()));
        current = order.into_iter().map(|i| next[i].clone()).collect();
    }
    Ok(current)
}

/// Deterministic trunk-2 tree with the given number of leaves on each of the
/// five trunk pairs, attached in pair order with consecutive fresh vertices.
pub fn tree_from_attachment_counts(
    counts: [usize; 5],
) -> Result<(Hypergraph, TrunkCertificate), TreeError> {
    let t = 2 + counts.iter().sum::<usize>();
    let n = t + 2;
    let pairs = [[0u32, 1], [0, 2], [0, 3], [1, 2], [1, 3]];
    let mut edges: Vec<VertexSet> = vec![vec![0, 1, 2], vec![0, 1, 3]];
    let mut fresh = 4u32;
    for (slot, &count) in counts.iter().enumerate() {
        for _ in 0..count {
            let mut e = pairs[slot].to_vec();
            e.push(fresh);
            fresh += 1;
            edges.push(e);
        }
    }
    let tree = Hypergraph::new(3, n, edges).expect("fresh leaf per edge");
    let i = tree.edges().iter().position(|e| e == &[0, 1, 2]).expect("trunk edge present");
    let j = tree.edges().iter().position(|e| e == &[0, 1, 3]).expect("trunk edge present");
    match is_trunk(&tree, &[i, j])? {
        TrunkCheck::Valid(cert) => Ok((tree, cert)),
        TrunkCheck::Refuted(_) => unreachable!("construction yields a trunk"),
    }
}

/// Seeded tight tree with a trunk of the requested size (1 or 2); leaf edges
/// attach to uniformly chosen trunk pairs, with replacement.
pub fn random_tight_tree_with_trunk_size(
    r: usize,
    t: usize,
    trunk_size: usize,
    seed: u64,
) -> Result<(Hypergraph, TrunkCertificate), TreeError> {
    if r < 2 {
        return Err(TreeError::InfeasibleParameters("need r >= 2".into()));
    }
    if trunk_size == 0 || trunk_size > 2 || trunk_size > t {
        return Err(TreeError::InfeasibleParameters("trunk size must be 1 or 2, at most t".into()));
    }
    if trunk_size == 2 && r != 3 {
        return Err(TreeError::InfeasibleParameters("trunk size 2 sampling requires r = 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t + r - 1;
    let mut edges: Vec<VertexSet> = Vec::with_capacity(t);
    let trunk_edge_sets: Vec<VertexSet>;
    let attach_pairs: Vec<VertexSet>;
    if trunk_size == 1 {
        let e0: VertexSet = (0..r as u32).collect();
        attach_pairs = e0.iter().copied().combinations(r - 1).collect();
        trunk_edge_sets = vec![e0.clone()];
        edges.push(e0);
    } else {
        trunk_edge_sets = vec![vec![0, 1, 2], vec![0, 1, 3]];
        attach_pairs =
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]];
        edges.extend(trunk_edge_sets.iter().cloned());
    }
    let mut fresh = (r as u32 - 1) + trunk_size as u32;
    while edges.len() < t {
        let pair = &attach_pairs[rng.gen_range(0..attach_pairs.len())];
        let mut e = pair.clone();
        e.push(fresh);
        fresh += 1;
        edges.push(e);
    }
    let tree = Hypergraph::new(r, n, edges).expect("fresh leaf per edge");
    let trunk_indices: Vec<usize> = trunk_edge_sets
        .iter()
        .map(|e| tree.edges().iter().position(|f| f == e).expect("trunk edge present"))
        .collect();
    match is_trunk(&tree, &trunk_indices)? {
        TrunkCheck::Valid(cert) => Ok((tree, cert)),
        TrunkCheck::Refuted(_) => unreachable!("construction yields a trunk"),
    }
}

/// Seeded tight tree with minimum trunk size at most `max_trunk`; the trunk
/// size is drawn uniformly among the permitted shapes.
pub fn random_tight_tree(
    r: usize,
    t: usize,
    max_trunk: usize,
    seed: u64,
) -> Result<(Hypergraph, TrunkCertificate), TreeError> {
    if max_trunk == 0 || max_trunk > 2 {
        return Err(TreeError::InfeasibleParameters("max_trunk must be 1 or 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let trunk_size = if t >= 2 && max_trunk == 2 { rng.gen_range(1..=2) } else { 1 };
    random_tight_tree_with_trunk_size(r, t, trunk_size, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(r: usize, n: usize, edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::new(r, n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn explicit_ordering_examples() {
        let g = h(3, 5, &[&[0, 1, 2], &[0, 1, 3], &[1, 3, 4]]);
        let w = is_proper_ordering(&g, &[0, 1, 2]).unwrap();
        assert_eq!(w.new_vertex, vec![3, 4]);
        assert_eq!(w.anchor, vec![0, 1]);

        let disjoint = h(3, 6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(
            is_proper_ordering(&disjoint, &[0, 1]),
            Err(OrderingRefutation::FailsAt { position: 1 })
        );
        assert_eq!(
            is_proper_ordering(&disjoint, &[0, 0]),
            Err(OrderingRefutation::NotPermutation)
        );
    }

    #[test]
    fn search_examples() {
        let path = h(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let w = find_proper_ordering(&path).unwrap();
        assert!(is_proper_ordering(&path, &w.ordering).is_ok());

        let loose_star = h(3, 7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert!(find_proper_ordering(&loose_star).is_none());
    }

    #[test]
    fn tight_tree_has_expected_vertex_count() {
        for seed in 0..20 {
            let (tree, _) = random_tight_tree(3, 9, 2, seed).unwrap();
            assert_eq!(tree.support().len(), 9 + 2);
        }
    }

    #[test]
    fn leaves_examples() {
        assert_eq!(leaves(&h(3, 3, &[&[0, 1, 2]])), vec![0, 1, 2]);
        assert_eq!(leaves(&h(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]])), vec![0, 4]);
        assert_eq!(leaves(&h(3, 5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]])), vec![2, 3, 4]);
    }

    #[test]
    fn trunk_examples() {
        let g = h(3, 4, &[&[0, 1, 2], &[0, 1, 3]]);
        assert!(matches!(is_trunk(&g, &[0]).unwrap(), TrunkCheck::Valid(_)));

        let path4 = h(3, 6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        match is_trunk(&path4, &[0, 1]).unwrap() {
            TrunkCheck::Refuted(r) => {
                assert!(matches!(
                    r,
                    TrunkRefutation::OutsideVertexNotLeaf(_) | TrunkRefutation::EdgeAddsTwoOutside(_)
                ));
            }
            TrunkCheck::Valid(_) => panic!("first two path edges are not a trunk"),
        }

        let g = h(3, 7, &[&[0, 1, 2], &[0, 1, 3], &[1, 2, 4], &[0, 3, 6]]);
        let i = g.edges().iter().position(|e| e == &[0, 1, 2]).unwrap();
        let j = g.edges().iter().position(|e| e == &[0, 1, 3]).unwrap();
        assert!(matches!(is_trunk(&g, &[i, j]).unwrap(), TrunkCheck::Valid(_)));

        let not_tight = h(3, 6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(matches!(is_trunk(&not_tight, &[0]), Err(TreeError::NotTightTree)));
    }

    #[test]
    fn min_trunk_examples() {
        let star = h(3, 5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        assert_eq!(min_trunk_size(&star, 3).unwrap(), TrunkSize::Exact(1));

        // The middle edge of the 3-edge tight path is a trunk on its own:
        // both endpoints outside it are leaves and both end edges attach to
        // pairs of the middle edge.
        let path3 = h(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        assert_eq!(min_trunk_size(&path3, 3).unwrap(), TrunkSize::Exact(1));

        let path4 = h(3, 6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        assert_eq!(min_trunk_size(&path4, 4).unwrap(), TrunkSize::Exact(2));
        assert_eq!(min_trunk_size(&path4, 1).unwrap(), TrunkSize::MoreThan(1));

        let g = h(3, 6, &[&[0, 1, 2], &[0, 1, 3], &[1, 2, 4], &[0, 3, 5]]);
        assert_eq!(min_trunk_size(&g, 4).unwrap(), TrunkSize::Exact(2));
    }

    #[test]
    fn profile_examples() {
        let two = h(3, 4, &[&[0, 1, 2], &[0, 1, 3]]);
        let p = trunk_profile(&two, 0, 1).unwrap();
        assert_eq!((p.x, p.y, p.u, p.v), (0, 1, 2, 3));
        assert_eq!(p.counts_sum(), 0);

        let g = h(3, 6, &[&[0, 1, 2], &[0, 1, 3], &[1, 2, 4], &[0, 3, 5]]);
        let i = g.edges().iter().position(|e| e == &[0, 1, 2]).unwrap();
        let j = g.edges().iter().position(|e| e == &[0, 1, 3]).unwrap();
        let p = trunk_profile(&g, i, j).unwrap();
        assert_eq!(p.count(TrunkPair::XY), 0);
        assert_eq!(p.count(TrunkPair::YU), 1);
        assert_eq!(p.count(TrunkPair::XV), 1);
        assert_eq!(p.counts_sum(), 2);

        let (broom, cert) = tree_from_attachment_counts([18, 0, 0, 0, 0]).unwrap();
        let p = trunk_profile(&broom, cert.trunk_edges[0], cert.trunk_edges[1]).unwrap();
        assert_eq!(p.count(TrunkPair::XY), 18);
        assert_eq!(p.counts_sum(), 18);
        assert_eq!(broom.edge_count(), 20);
    }

    #[test]
    fn profile_swaps_relabel_consistently() {
        let (g, cert) = tree_from_attachment_counts([1, 2, 3, 4, 5]).unwrap();
        let mut p = trunk_profile(&g, cert.trunk_edges[0], cert.trunk_edges[1]).unwrap();
        let (xu, xv, yu, yv) =
            (p.count(TrunkPair::XU), p.count(TrunkPair::XV), p.count(TrunkPair::YU), p.count(TrunkPair::YV));
        p.swap_shared();
        assert_eq!(p.count(TrunkPair::XU), yu);
        assert_eq!(p.count(TrunkPair::XV), yv);
        p.swap_tips();
        assert_eq!(p.count(TrunkPair::XU), yv);
        assert_eq!(p.count(TrunkPair::XV), yu);
        assert_eq!(p.count(TrunkPair::YU), xv);
        assert_eq!(p.count(TrunkPair::YV), xu);
        assert_eq!(p.counts_sum(), xu + xv + yu + yv + 1);
    }

    #[test]
    fn enumeration_small_counts() {
        assert_eq!(enumerate_tight_trees(3, 1).unwrap().len(), 1);
        assert_eq!(enumerate_tight_trees(3, 2).unwrap().len(), 1);
        assert!(enumerate_tight_trees(3, 8).is_err());
        for tree in enumerate_tight_trees(3, 4).unwrap() {
            assert!(find_proper_ordering(&tree).is_some());
            assert_eq!(tree.support().len(), 6);
        }
    }

    /// Independent count cross-check at t = 3: generate every 3-edge
    /// 3-graph on 5 labeled vertices, keep the tight ones, and deduplicate
    /// by the minimum edge list over all 120 vertex permutations.
    #[test]
    fn enumeration_count_matches_brute_force_at_t3() {
        let triples: Vec<VertexSet> = (0..5u32).combinations(3).collect();
        let mut canon_forms: std::collections::BTreeSet<Vec<VertexSet>> =
            std::collections::BTreeSet::new();
        for idxs in (0..triples.len()).combinations(3) {
            let edges: Vec<VertexSet> = idxs.iter().map(|&i| triples[i].clone()).collect();
            let g = Hypergraph::new(3, 5, edges).unwrap();
            if g.support().len() != 5 || find_proper_ordering(&g).is_none() {
                continue;
            }
            let canon = (0..5u32)
                .permutations(5)
                .map(|perm| {
                    let mut edges: Vec<VertexSet> = g
                        .edges()
                        .iter()
                        .map(|e| {
                            let mut img: VertexSet =
                                e.iter().map(|&v| perm[v as usize]).collect();
                            img.sort_unstable();
                            img
                        })
                        .collect();
                    edges.sort_unstable();
                    edges
                })
                .min()
                .unwrap();
            canon_forms.insert(canon);
        }
        assert_eq!(enumerate_tight_trees(3, 3).unwrap().len(), canon_forms.len());
        assert_eq!(canon_forms.len(), 2);
    }

    #[test]
    fn broom_generation_order_is_proper() {
        let (broom, _) = tree_from_attachment_counts([18, 0, 0, 0, 0]).unwrap();
        let identity: Vec<usize> = (0..broom.edge_count()).collect();
        assert!(is_proper_ordering(&broom, &identity).is_ok());
    }

    /// Constructive reachability: every attachment multiset (partition of
    /// 18 into at most five parts) is realized by a valid trunk-2 tree.
    #[test]
    fn every_attachment_multiset_is_constructible() {
        let mut partitions: Vec<[usize; 5]> = Vec::new();
        for a in 0..=18usize {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        let rest = 18usize.saturating_sub(a + b + c + d);
                        if rest <= d && a + b + c + d + rest == 18 {
                            partitions.push([a, b, c, d, rest]);
                        }
                    }
                }
            }
        }
        assert_eq!(partitions.len(), 141);
        for counts in partitions {
            let (tree, cert) = tree_from_attachment_counts(counts).unwrap();
            assert_eq!(tree.edge_count(), 20);
            let p = trunk_profile(&tree, cert.trunk_edges[0], cert.trunk_edges[1]).unwrap();
            let mut got = [
                p.count(TrunkPair::XY),
                p.count(TrunkPair::XU),
                p.count(TrunkPair::XV),
                p.count(TrunkPair::YU),
                p.count(TrunkPair::YV),
            ];
            got.sort_unstable_by(|x, y| y.cmp(x));
            let mut want = counts;
            want.sort_unstable_by(|x, y| y.cmp(x));
            assert_eq!(got, want);
        }
    }

    /// Sampler diversity: ten thousand seeds of the forced trunk-2 sampler
    /// hit a broad spread of attachment multisets. The threshold is frozen
    /// from an observed run.
    #[test]
    fn sampler_covers_many_attachment_multisets() {
        let mut seen: std::collections::BTreeSet<[usize; 5]> = std::collections::BTreeSet::new();
        for seed in 0..10_000u64 {
            let (tree, cert) = random_tight_tree_with_trunk_size(3, 20, 2, seed).unwrap();
            let p = trunk_profile(&tree, cert.trunk_edges[0], cert.trunk_edges[1]).unwrap();
            let mut counts = [
                p.count(TrunkPair::XY),
                p.count(TrunkPair::XU),
                p.count(TrunkPair::XV),
                p.count(TrunkPair::YU),
                p.count(TrunkPair::YV),
            ];
            counts.sort_unstable_by(|x, y| y.cmp(x));
            seen.insert(counts);
        }
        assert!(seen.len() >= 60, "only {} distinct multisets", seen.len());
    }

    #[test]
    fn random_trees_validate() {
        let (two, _) = random_tight_tree(3, 2, 2, 7).unwrap();
        assert_eq!(two.edge_count(), 2);

        for seed in [0, 1, 2, 42] {
            let (tree, cert) = random_tight_tree(3, 20, 2, seed).unwrap();
            assert_eq!(tree.edge_count(), 20);
            assert!(find_proper_ordering(&tree).is_some());
            assert!(matches!(is_trunk(&tree, &cert.trunk_edges).unwrap(), TrunkCheck::Valid(_)));
            assert!(cert.trunk_edges.len() <= 2);
        }
    }

    #[test]
    fn two_edge_trunk_search() {
        let (tree, _) = random_tight_tree_with_trunk_size(3, 12, 1, 5).unwrap();
        let cert = two_edge_trunk(&tree).unwrap();
        assert_eq!(cert.trunk_edges.len(), 2);

        let path4 = h(3, 6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        assert!(two_edge_trunk(&path4).is_ok());
    }

    #[test]
    fn isomorphism_basics() {
        let a = h(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let b = h(3, 5, &[&[2, 3, 4], &[1, 2, 3], &[0, 1, 2]]);
        assert!(isomorphic(&a, &b));
        let c = h(3, 5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        assert!(!isomorphic(&a, &c));
    }
}
