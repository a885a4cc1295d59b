//! Special-pair certificates via marking and discharging.
//!
//! Both finders classify edges as light (weight strictly below a threshold)
//! or heavy, mark edges from each light edge, redistribute charge from heavy
//! marked edges to their markers, and read the certified pair off an edge
//! whose final charge stays below the threshold. Every returned pair is
//! re-checked clause by clause by an independent verifier; if the
//! trace-faithful route ever disagrees with the verifier, an exhaustive scan
//! over adjacent edge pairs stands in, and the route is recorded.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::Zero;
use thiserror::Error;

use crate::embed::{PairKind, SpecialPair};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::rational::{rat_usize, recip_usize, Rational};

#[derive(Debug, Error)]
pub enum DischargeError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no qualifying pair exists, even by exhaustive search")]
    Exhausted,
}

/// Which path produced the certified pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinderRoute {
    /// A light edge marked another light edge; no discharging needed.
    LightPartner,
    /// Read off the charges after discharging.
    Discharge,
    /// Fallback scan over all adjacent edge pairs.
    Exhaustive,
}

/// Marking case applied to a light edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkCase {
    /// Both lower sides clear their floors: mark everything on the high side.
    M1,
    /// Low side at its floor: mark high-side edges missing the low-side twin.
    M2,
    /// Medium side at its floor: mark high-side edges missing the
    /// medium-side twin.
    M3,
    /// Minimum-codegree marking: the light edge marks its own minimum pair;
    /// `marked` lists the other edges through that pair.
    MinPair,
}

#[derive(Debug, Clone)]
pub struct MarkRecord {
    pub marker: usize,
    pub case: MarkCase,
    pub marked: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: Rational,
}

/// Complete record of one discharging run.
#[derive(Debug, Clone)]
pub struct DischargeTrace {
    pub threshold: Rational,
    pub light: Vec<bool>,
    pub marks: Vec<MarkRecord>,
    pub charge_before: Vec<Rational>,
    pub charge_after: Vec<Rational>,
    pub transfers: Vec<Transfer>,
    pub route: FinderRoute,
}

impl DischargeTrace {
    pub fn total_before(&self) -> Rational {
        self.charge_before.iter().cloned().sum()
    }

    pub fn total_after(&self) -> Rational {
        self.charge_after.iter().cloned().sum()
    }

    /// Exact conservation of total charge.
    pub fn conserved(&self) -> bool {
        self.total_before() == self.total_after()
    }

    /// Structural invariants every trace must satisfy: exact conservation
    /// and no heavy edge dropping below the threshold. For strong-pair
    /// traces, pass `m` to additionally check the per-case marking floors:
    /// M1 marks at least m edges, M2 at least (m+3)(m-3)/9, and M3 at least
    /// (2m+3)(m-3)/9.
    pub fn check_invariants(&self, strong_m: Option<usize>) -> Result<(), String> {
        if !self.conserved() {
            return Err(format!(
                "total charge changed: {} -> {}",
                self.total_before(),
                self.total_after()
            ));
        }
        for (i, light) in self.light.iter().enumerate() {
            if !light && self.charge_after[i] < self.threshold {
                return Err(format!("heavy edge {i} finished below the threshold"));
            }
        }
        if let Some(m) = strong_m {
            for rec in &self.marks {
                let floor = match rec.case {
                    MarkCase::M1 => m,
                    MarkCase::M2 => (m + 3) * m.saturating_sub(3) / 9,
                    MarkCase::M3 => (2 * m + 3) * m.saturating_sub(3) / 9,
                    MarkCase::MinPair => continue,
                };
                if rec.marked.len() < floor {
                    return Err(format!(
                        "edge {} ({:?}) marked {} edges, below the floor {}",
                        rec.marker,
                        rec.case,
                        rec.marked.len(),
                        floor
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Pair degrees and side labels of a light edge, ordered by degree with
/// lexicographic tie-breaks: `b` joins the low and medium sides, `a` the low
/// and high sides, `c` the medium and high sides.
struct Sides {
    a: u32,
    b: u32,
    c: u32,
    d_low: usize,
    d_med: usize,
    high: (u32, u32),
}

fn sides(edge: &[u32], codeg: &BTreeMap<VertexSet, usize>) -> Sides {
    let mut pairs: Vec<((u32, u32), usize)> = vec![
        ((edge[0], edge[1]), codeg[&vec![edge[0], edge[1]]]),
        ((edge[0], edge[2]), codeg[&vec![edge[0], edge[2]]]),
        ((edge[1], edge[2]), codeg[&vec![edge[1], edge[2]]]),
    ];
    pairs.sort_by_key(|&(p, d)| (d, p));
    let (low, med, high) = (pairs[0].0, pairs[1].0, pairs[2].0);
    let common = |p: (u32, u32), q: (u32, u32)| -> u32 {
        if p.0 == q.0 || p.0 == q.1 {
            p.0
        } else {
            p.1
        }
    };
    Sides {
        a: common(low, high),
        b: common(low, med),
        c: common(med, high),
        d_low: pairs[0].1,
        d_med: pairs[1].1,
        high,
    }
}

struct HostIndex {
    codeg: BTreeMap<VertexSet, usize>,
    pair_edges: BTreeMap<(u32, u32), Vec<usize>>,
    weights: Vec<Rational>,
}

fn index_host(g: &Hypergraph) -> HostIndex {
    let codeg = g.codegrees();
    let mut pair_edges: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        for &(x, y) in &[(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
            pair_edges.entry((x, y)).or_default().push(i);
        }
    }
    let weights = g
        .edges()
        .iter()
        .map(|e| {
            recip_usize(codeg[&vec![e[0], e[1]]])
                + recip_usize(codeg[&vec![e[0], e[2]]])
                + recip_usize(codeg[&vec![e[1], e[2]]])
        })
        .collect();
    HostIndex { codeg, pair_edges, weights }
}

fn third_vertex(edge: &[u32], pair: (u32, u32)) -> u32 {
    *edge.iter().find(|&&v| v != pair.0 && v != pair.1).expect("3-edge has a third vertex")
}

fn build_pair(
    g: &Hypergraph,
    e_idx: usize,
    f_idx: usize,
    a: u32,
    b: u32,
    c: u32,
    kind: PairKind,
) -> SpecialPair {
    let e = g.edge(e_idx).clone();
    let f = g.edge(f_idx).clone();
    let d = third_vertex(&f, (a.min(c), a.max(c)));
    SpecialPair::build(g, e, f, a, b, c, d, kind)
}

/// Finds adjacent edges `e = abc`, `f = adc` in a dense host with minimum
/// codegree above `m/3`, certifying: (a) `w(e) < 3/m` and `w(ac) < 1/m`;
/// (b) both b-side outside codegrees at least `floor(m/3)`; (c) the larger
/// at least `floor(2m/3)`; (d) either `3(w(f) - 3/m) < 3/m - w(e)` or a
/// d-side outside codegree at least `m - 1`. Requires `m >= 20`,
/// `e(G) > (m/3)|shadow|`, and minimum codegree above `m/3`.
pub fn find_strong_pair(
    g: &Hypergraph,
    m: usize,
) -> Result<(SpecialPair, DischargeTrace), DischargeError> {
    if m < 20 {
        return Err(DischargeError::Precondition(format!("m = {m} is below 20")));
    }
    find_strong_pair_relaxed(g, m)
}

/// The same search without the floor on `m`. The marking accounting is only
/// guaranteed from m = 20 up, so below that the verifier and the exhaustive
/// fallback carry the contract; every returned pair still certifies at the
/// actual `m`.
pub(crate) fn find_strong_pair_relaxed(
    g: &Hypergraph,
    m: usize,
) -> Result<(SpecialPair, DischargeTrace), DischargeError> {
    if g.uniformity() != 3 {
        return Err(DischargeError::Precondition("host must be 3-uniform".into()));
    }
    if m == 0 {
        return Err(DischargeError::Precondition("m must be positive".into()));
    }
    let idx = index_host(g);
    let shadow_size = idx.codeg.len();
    if 3 * (g.edge_count() as u128) <= (m as u128) * (shadow_size as u128) {
        return Err(DischargeError::Precondition(format!(
            "edge count {} does not exceed (m/3)*shadow = {}*{}/3",
            g.edge_count(),
            m,
            shadow_size
        )));
    }
    let delta2 = idx.codeg.values().copied().min().unwrap_or(0);
    if 3 * delta2 <= m {
        return Err(DischargeError::Precondition(format!(
            "minimum codegree {delta2} does not exceed m/3"
        )));
    }

    let threshold = Rational::new(3.into(), (m as i64).into());
    let light: Vec<bool> = idx.weights.iter().map(|w| *w < threshold).collect();
    let fl_m3 = m / 3;
    let fl_2m3 = 2 * m / 3;

    // Marking pass over every light edge.
    let mut marks: Vec<MarkRecord> = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        if !light[ei] {
            continue;
        }
        let s = sides(e, &idx.codeg);
        let high_edges = &idx.pair_edges[&s.high];
        let (case, marked): (MarkCase, Vec<usize>) =
            if s.d_low >= fl_m3 + 2 && s.d_med >= fl_2m3 + 2 {
                (MarkCase::M1, high_edges.iter().copied().filter(|&f| f != ei).collect())
            } else if s.d_low <= fl_m3 + 1 {
                let mut v = Vec::new();
                for &f in high_edges {
                    if f == ei {
                        continue;
                    }
                    let x = third_vertex(g.edge(f), s.high);
                    let mut probe = vec![s.a, s.b, x];
                    probe.sort_unstable();
                    if !g.contains_edge(&probe) {
                        v.push(f);
                    }
                }
                (MarkCase::M2, v)
            } else {
                let mut v = Vec::new();
                for &f in high_edges {
                    if f == ei {
                        continue;
                    }
                    let x = third_vertex(g.edge(f), s.high);
                    let mut probe = vec![s.b, s.c, x];
                    probe.sort_unstable();
                    if !g.contains_edge(&probe) {
                        v.push(f);
                    }
                }
                (MarkCase::M3, v)
            };
        marks.push(MarkRecord { marker: ei, case, marked });
    }

    let mut trace = DischargeTrace {
        threshold: threshold.clone(),
        light: light.clone(),
        marks,
        charge_before: idx.weights.clone(),
        charge_after: idx.weights.clone(),
        transfers: vec![],
        route: FinderRoute::LightPartner,
    };

    // A light edge marking a light edge settles it outright.
    let mut candidate: Option<(usize, usize)> = None;
    'scan: for rec in &trace.marks {
        for &f in &rec.marked {
            if light[f] {
                candidate = Some((rec.marker, f));
                break 'scan;
            }
        }
    }

    if candidate.is_none() {
        // Discharge: each marked heavy edge levels down to the threshold,
        // splitting its excess equally among its markers.
        let mut marked_by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for rec in &trace.marks {
            for &f in &rec.marked {
                marked_by.entry(f).or_default().push(rec.marker);
            }
        }
        for (&f, markers) in &marked_by {
            let q = markers.len();
            let amount = (idx.weights[f].clone() - threshold.clone()) / rat_usize(q);
            trace.charge_after[f] = threshold.clone();
            for &e in markers {
                trace.charge_after[e] += amount.clone();
                trace.transfers.push(Transfer { from: f, to: e, amount: amount.clone() });
            }
        }
        assert!(trace.conserved(), "discharging must conserve total charge exactly");
        trace.route = FinderRoute::Discharge;

        let deficient = (0..g.edge_count())
            .find(|&ei| light[ei] && trace.charge_after[ei] < threshold);
        if let Some(e_star) = deficient {
            let rec = trace.marks.iter().find(|r| r.marker == e_star).expect("light edges marked");
            let mut best: Option<(Rational, usize)> = None;
            for &f in &rec.marked {
                let q = marked_by[&f].len();
                let amount = (idx.weights[f].clone() - threshold.clone()) / rat_usize(q);
                if best.as_ref().is_none_or(|(ba, _)| amount < *ba) {
                    best = Some((amount, f));
                }
            }
            if let Some((_, f_star)) = best {
                candidate = Some((e_star, f_star));
            }
        }
    }

    if let Some((e_idx, f_idx)) = candidate {
        let s = sides(g.edge(e_idx), &idx.codeg);
        let pair = build_pair(g, e_idx, f_idx, s.a, s.b, s.c, PairKind::Strong);
        if verify_strong_pair(g, m, &pair).pass() {
            return Ok((pair, trace));
        }
    }

    // Exhaustive fallback over ordered adjacent pairs.
    trace.route = FinderRoute::Exhaustive;
    for (e_idx, e) in g.edges().iter().enumerate() {
        for &(x, y) in &[(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
            for &f_idx in &idx.pair_edges[&(x, y)] {
                if f_idx == e_idx {
                    continue;
                }
                let b = third_vertex(e, (x, y));
                let pair = build_pair(g, e_idx, f_idx, x, b, y, PairKind::Strong);
                if verify_strong_pair(g, m, &pair).pass() {
                    return Ok((pair, trace));
                }
            }
        }
    }
    Err(DischargeError::Exhausted)
}

/// Clause-by-clause re-derivation for a strong pair; ignores stored values
/// except to flag inconsistencies.
#[derive(Debug, Clone)]
pub struct StrongPairReport {
    pub well_formed: bool,
    pub stored_consistent: bool,
    pub clause_a: bool,
    pub clause_b: bool,
    pub clause_c: bool,
    pub clause_d: bool,
}

impl StrongPairReport {
    pub fn pass(&self) -> bool {
        self.well_formed && self.stored_consistent && self.clause_a && self.clause_b
            && self.clause_c && self.clause_d
    }
}

fn pair_well_formed(g: &Hypergraph, p: &SpecialPair) -> bool {
    let distinct = {
        let mut v = [p.a, p.b, p.c, p.d];
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    };
    distinct
        && g.contains_edge(&p.e)
        && g.contains_edge(&p.f)
        && {
            let mut e_expect = vec![p.a, p.b, p.c];
            e_expect.sort_unstable();
            e_expect == p.e
        }
        && {
            let mut f_expect = vec![p.a, p.c, p.d];
            f_expect.sort_unstable();
            f_expect == p.f
        }
}

fn stored_consistent(g: &Hypergraph, p: &SpecialPair) -> bool {
    let fresh = SpecialPair::build(g, p.e.clone(), p.f.clone(), p.a, p.b, p.c, p.d, p.kind);
    fresh.outside_codegrees == p.outside_codegrees
        && fresh.weight_e == p.weight_e
        && fresh.weight_f == p.weight_f
        && fresh.weight_shared == p.weight_shared
}

pub fn verify_strong_pair(g: &Hypergraph, m: usize, p: &SpecialPair) -> StrongPairReport {
    let well_formed = pair_well_formed(g, p);
    if !well_formed {
        return StrongPairReport {
            well_formed,
            stored_consistent: false,
            clause_a: false,
            clause_b: false,
            clause_c: false,
            clause_d: false,
        };
    }
    let consistent = stored_consistent(g, p);
    let fresh = SpecialPair::build(g, p.e.clone(), p.f.clone(), p.a, p.b, p.c, p.d, p.kind);
    let w_e = &fresh.weight_e;
    let w_f = &fresh.weight_f;
    let w_ac = &fresh.weight_shared;
    let t3m = Rational::new(3.into(), (m as i64).into());
    let t1m = recip_usize(m);

    let dab = fresh.dp(p.a, p.b);
    let dcb = fresh.dp(p.c, p.b);
    let dad = fresh.dp(p.a, p.d);
    let dcd = fresh.dp(p.c, p.d);

    let clause_a = *w_e < t3m && *w_ac < t1m;
    let clause_b = dab.min(dcb) >= m / 3;
    let clause_c = dab.max(dcb) >= 2 * m / 3;
    let clause_d = rat_usize(3) * (w_f.clone() - t3m.clone()) < (t3m.clone() - w_e.clone())
        || dad.max(dcd) >= m - 1;

    StrongPairReport {
        well_formed,
        stored_consistent: consistent,
        clause_a,
        clause_b,
        clause_c,
        clause_d,
    }
}

/// Finds adjacent edges `e`, `f` in a host with `e(G) > gamma*|shadow|`,
/// certifying: (1) `w(e) < 1/gamma`; (2) the shared pair realizes the
/// minimum codegree over the pairs of `e`; (3) `w(f) < 1/gamma +
/// (3/(dmin(e)-1)) (1/gamma - w(e))`. Every edge must have minimum pair
/// codegree at least 2.
pub fn find_min_codegree_pair(
    g: &Hypergraph,
    gamma: &Rational,
) -> Result<(SpecialPair, DischargeTrace), DischargeError> {
    if g.uniformity() != 3 {
        return Err(DischargeError::Precondition("host must be 3-uniform".into()));
    }
    if *gamma <= Rational::zero() {
        return Err(DischargeError::Precondition("gamma must be positive".into()));
    }
    let idx = index_host(g);
    let shadow_size = idx.codeg.len();
    if rat_usize(g.edge_count()) <= gamma.clone() * rat_usize(shadow_size) {
        return Err(DischargeError::Precondition(format!(
            "edge count {} does not exceed gamma*shadow",
            g.edge_count()
        )));
    }

    // Marked pair of each edge: its minimum-codegree pair, lexicographic on
    // ties. The certificate divides by dmin - 1, so dmin must be at least 2.
    let min_pair = |e: &VertexSet| -> ((u32, u32), usize) {
        let mut pairs: Vec<((u32, u32), usize)> = vec![
            ((e[0], e[1]), idx.codeg[&vec![e[0], e[1]]]),
            ((e[0], e[2]), idx.codeg[&vec![e[0], e[2]]]),
            ((e[1], e[2]), idx.codeg[&vec![e[1], e[2]]]),
        ];
        pairs.sort_by_key(|&(p, d)| (d, p));
        pairs[0]
    };
    for e in g.edges() {
        let (_, dmin) = min_pair(e);
        if dmin < 2 {
            return Err(DischargeError::Precondition(format!(
                "edge {e:?} has minimum pair codegree {dmin} < 2"
            )));
        }
    }

    let threshold = gamma.recip();
    let light: Vec<bool> = idx.weights.iter().map(|w| *w < threshold).collect();

    let mut marks: Vec<MarkRecord> = Vec::new();
    let mut marked_pair_of: BTreeMap<usize, (u32, u32)> = BTreeMap::new();
    for (ei, e) in g.edges().iter().enumerate() {
        if !light[ei] {
            continue;
        }
        let (pair, _) = min_pair(e);
        marked_pair_of.insert(ei, pair);
        let others: Vec<usize> =
            idx.pair_edges[&pair].iter().copied().filter(|&f| f != ei).collect();
        marks.push(MarkRecord { marker: ei, case: MarkCase::MinPair, marked: others });
    }

    let mut trace = DischargeTrace {
        threshold: threshold.clone(),
        light: light.clone(),
        marks,
        charge_before: idx.weights.clone(),
        charge_after: idx.weights.clone(),
        transfers: vec![],
        route: FinderRoute::LightPartner,
    };

    // Another light edge through a marked pair settles it outright.
    let mut candidate: Option<(usize, usize)> = None;
    'scan: for rec in &trace.marks {
        for &f in &rec.marked {
            if light[f] {
                candidate = Some((rec.marker, f));
                break 'scan;
            }
        }
    }

    if candidate.is_none() {
        // Discharge: each heavy edge sends a third of its excess to each
        // light edge whose marked pair it contains (at most three).
        let mut receivers: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for (&e, &pair) in &marked_pair_of {
            let prev = receivers.insert(pair, e);
            debug_assert!(prev.is_none(), "two light edges through one pair exit early");
        }
        for (f, fe) in g.edges().iter().enumerate() {
            if light[f] {
                continue;
            }
            for &(x, y) in &[(fe[0], fe[1]), (fe[0], fe[2]), (fe[1], fe[2])] {
                if let Some(&e) = receivers.get(&(x, y)) {
                    let amount =
                        (idx.weights[f].clone() - threshold.clone()) / rat_usize(3);
                    trace.charge_after[f] -= amount.clone();
                    trace.charge_after[e] += amount.clone();
                    trace.transfers.push(Transfer { from: f, to: e, amount });
                }
            }
        }
        assert!(trace.conserved(), "discharging must conserve total charge exactly");
        trace.route = FinderRoute::Discharge;

        let deficient = (0..g.edge_count())
            .find(|&ei| light[ei] && trace.charge_after[ei] < threshold);
        if let Some(e_star) = deficient {
            let pair = marked_pair_of[&e_star];
            let mut best: Option<(Rational, usize)> = None;
            for &f in &idx.pair_edges[&pair] {
                if f == e_star {
                    continue;
                }
                let w = idx.weights[f].clone();
                if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    best = Some((w, f));
                }
            }
            if let Some((_, f_star)) = best {
                candidate = Some((e_star, f_star));
            }
        }
    }

    if let Some((e_idx, f_idx)) = candidate {
        let pair = marked_pair_of[&e_idx];
        let b = third_vertex(g.edge(e_idx), pair);
        let sp = build_pair(g, e_idx, f_idx, pair.0, b, pair.1, PairKind::MinCodegree);
        if verify_min_codegree_pair(g, gamma, &sp).pass() {
            return Ok((sp, trace));
        }
    }

    trace.route = FinderRoute::Exhaustive;
    for (e_idx, e) in g.edges().iter().enumerate() {
        for &(x, y) in &[(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
            for &f_idx in &idx.pair_edges[&(x, y)] {
                if f_idx == e_idx {
                    continue;
                }
                let b = third_vertex(e, (x, y));
                let sp = build_pair(g, e_idx, f_idx, x, b, y, PairKind::MinCodegree);
                if verify_min_codegree_pair(g, gamma, &sp).pass() {
                    return Ok((sp, trace));
                }
            }
        }
    }
    Err(DischargeError::Exhausted)
}

#[derive(Debug, Clone)]
pub struct MinCodegreeReport {
    pub well_formed: bool,
    pub stored_consistent: bool,
    /// w(e) < 1/gamma.
    pub clause_light: bool,
    /// The shared pair realizes the minimum codegree of e.
    pub clause_min_pair: bool,
    /// w(f) < 1/gamma + (3/(dmin-1))(1/gamma - w(e)), with dmin >= 2.
    pub clause_partner_weight: bool,
}

impl MinCodegreeReport {
    pub fn pass(&self) -> bool {
        self.well_formed
            && self.stored_consistent
            && self.clause_light
            && self.clause_min_pair
            && self.clause_partner_weight
    }
}

pub fn verify_min_codegree_pair(
    g: &Hypergraph,
    gamma: &Rational,
    p: &SpecialPair,
) -> MinCodegreeReport {
    let well_formed = pair_well_formed(g, p);
    if !well_formed {
        return MinCodegreeReport {
            well_formed,
            stored_consistent: false,
            clause_light: false,
            clause_min_pair: false,
            clause_partner_weight: false,
        };
    }
    let consistent = stored_consistent(g, p);
    let threshold = gamma.recip();
    let w_e = g.edge_weight(&p.e).expect("e is a host edge");
    let w_f = g.edge_weight(&p.f).expect("f is a host edge");

    let dmin = p
        .e
        .iter()
        .combinations(2)
        .map(|pr| g.degree(&[*pr[0], *pr[1]]))
        .min()
        .expect("edge has pairs");
    let shared_deg = g.degree(&p.shared_pair());

    let clause_light = w_e < threshold;
    let clause_min_pair = shared_deg == dmin;
    let clause_partner_weight = dmin >= 2 && {
        let slack = Rational::new(3.into(), ((dmin - 1) as i64).into())
            * (threshold.clone() - w_e.clone());
        w_f < threshold.clone() + slack
    };

    MinCodegreeReport {
        well_formed,
        stored_consistent: consistent,
        clause_light,
        clause_min_pair,
        clause_partner_weight,
    }
}
