//! Constructive embedding of a trunk-2 tight 3-tree into a host whose edge
//! count exceeds ((t-1)/3) times its shadow size.
//!
//! Pipeline: peel the host to minimum codegree above m/3 (m = t-1), read the
//! tree's leaf-attachment profile, pick the route by how many leaves sit on
//! the shared trunk pair, obtain a certified special pair of host edges, and
//! place the trunk and then each leaf set greedily in the order the route
//! prescribes. Host-side codegree gates are re-verified at runtime and fail
//! loudly; tree-side attachment bounds are recorded as advisories (the
//! greedy placement itself is the binding feasibility check).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::embed::discharge::{
    find_min_codegree_pair, find_strong_pair_relaxed, DischargeError, DischargeTrace,
};
use crate::embed::{validate_embedding, Embedding, SpecialPair};
use crate::hypergraph::{set_intersection, Hypergraph};
use crate::rational::{format_rational, rat_usize, Rational};
use crate::trees::{
    is_trunk, trunk_profile, TreeError, TrunkCertificate, TrunkCheck, TrunkPair, TrunkProfile,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PreconditionFailure {
    #[error("tree and host must be 3-uniform")]
    NotUniformity3,
    #[error("trunk certificate must have exactly two edges, got {0}")]
    TrunkNotSizeTwo(usize),
    #[error("tree is not tight")]
    TreeNotTight,
    #[error("trunk certificate does not verify: {0}")]
    TrunkInvalid(String),
    #[error("host edge count {edges} does not exceed the bound {bound}")]
    BoundNotExceeded { edges: usize, bound: String },
    #[error("pair finder precondition: {0}")]
    PairFinder(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("precondition failed: {0}")]
    Precondition(PreconditionFailure),
    #[error("gate failed in {case}: {gate} requires {required}, got {actual}")]
    GateFailure { case: String, gate: String, required: String, actual: String },
    #[error(
        "greedy placement starved in {case}: tree pair {tree_pair} into host pair \
         ({host_a},{host_b}) placed {placed} of {needed}"
    )]
    GreedyExhausted {
        case: String,
        tree_pair: String,
        host_a: u32,
        host_b: u32,
        needed: usize,
        placed: usize,
    },
    #[error("hard diagnostic: {0}")]
    HardDiagnostic(String),
}

/// Which case of the analysis carried the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Two-edge tree: the trunk maps straight onto any adjacent host pair.
    TwoEdge,
    /// Many leaves on the shared pair; strong special pair. Cases 1-3.
    SharedHeavy1,
    SharedHeavy2 { mirror: bool },
    SharedHeavy3 { mirror: bool },
    /// Few leaves on the shared pair; minimum-codegree special pair.
    General11,
    General12,
    General21A,
    General21B,
    General22A,
    General22B,
}

impl Route {
    pub fn label(&self) -> String {
        match self {
            Route::TwoEdge => "two-edge".into(),
            Route::SharedHeavy1 => "shared-heavy case 1".into(),
            Route::SharedHeavy2 { mirror: false } => "shared-heavy case 2".into(),
            Route::SharedHeavy2 { mirror: true } => "shared-heavy case 2 (mirror)".into(),
            Route::SharedHeavy3 { mirror: false } => "shared-heavy case 3".into(),
            Route::SharedHeavy3 { mirror: true } => "shared-heavy case 3 (mirror)".into(),
            Route::General11 => "general case 1.1".into(),
            Route::General12 => "general case 1.2".into(),
            Route::General21A => "general case 2.1a".into(),
            Route::General21B => "general case 2.1b".into(),
            Route::General22A => "general case 2.2a".into(),
            Route::General22B => "general case 2.2b".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GateRecord {
    pub name: String,
    pub actual: String,
    pub required: String,
    pub hard: bool,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Placement {
    pub tree_pair: TrunkPair,
    pub host_pair: (u32, u32),
    /// (tree leaf, host vertex) in assignment order.
    pub assigned: Vec<(u32, u32)>,
}

/// Full execution record of one pipeline run.
#[derive(Debug, Clone)]
pub struct CaseTrace {
    pub m: usize,
    pub peel_rounds: usize,
    pub host_edges_after_peel: usize,
    pub route: Route,
    pub special: Option<SpecialPair>,
    pub discharge: Option<DischargeTrace>,
    /// The host labels a and c were exchanged to fix orientation.
    pub shared_label_swap: bool,
    /// Tree relabelings applied before case entry.
    pub tree_relabels: Vec<String>,
    pub gates: Vec<GateRecord>,
    pub placements: Vec<Placement>,
}

impl CaseTrace {
    fn new(m: usize) -> Self {
        CaseTrace {
            m,
            peel_rounds: 0,
            host_edges_after_peel: 0,
            route: Route::TwoEdge,
            special: None,
            discharge: None,
            shared_label_swap: false,
            tree_relabels: vec![],
            gates: vec![],
            placements: vec![],
        }
    }

    fn gate(
        &mut self,
        case: &str,
        name: &str,
        actual: usize,
        required: usize,
    ) -> Result<(), EmbedError> {
        let passed = actual >= required;
        self.gates.push(GateRecord {
            name: name.into(),
            actual: actual.to_string(),
            required: format!(">= {required}"),
            hard: true,
            passed,
        });
        if passed {
            Ok(())
        } else {
            Err(EmbedError::GateFailure {
                case: case.into(),
                gate: name.into(),
                required: format!(">= {required}"),
                actual: actual.to_string(),
            })
        }
    }

    fn advisory_max(&mut self, name: &str, actual: usize, cap: usize) {
        self.gates.push(GateRecord {
            name: name.into(),
            actual: actual.to_string(),
            required: format!("<= {cap}"),
            hard: false,
            passed: actual <= cap,
        });
    }

    fn advisory_min(&mut self, name: &str, actual: usize, floor: usize) {
        self.gates.push(GateRecord {
            name: name.into(),
            actual: actual.to_string(),
            required: format!(">= {floor}"),
            hard: false,
            passed: actual >= floor,
        });
    }
}

/// Host images of the four trunk vertices.
#[derive(Debug, Clone, Copy)]
struct TrunkImage {
    x: u32,
    y: u32,
    u: u32,
    v: u32,
}

impl TrunkImage {
    fn of(&self, profile: &TrunkProfile, p: TrunkPair) -> (u32, u32) {
        let (s, t) = profile.pair_vertices(p);
        let img = |w: u32| {
            if w == profile.x {
                self.x
            } else if w == profile.y {
                self.y
            } else if w == profile.u {
                self.u
            } else {
                self.v
            }
        };
        let (is, it) = (img(s), img(t));
        (is.min(it), is.max(it))
    }
}

pub fn embed_trunk2(
    tree: &Hypergraph,
    cert: &TrunkCertificate,
    host: &Hypergraph,
) -> Result<(Embedding, CaseTrace), EmbedError> {
    if tree.uniformity() != 3 || host.uniformity() != 3 {
        return Err(EmbedError::Precondition(PreconditionFailure::NotUniformity3));
    }
    if cert.trunk_edges.len() != 2 {
        return Err(EmbedError::Precondition(PreconditionFailure::TrunkNotSizeTwo(
            cert.trunk_edges.len(),
        )));
    }
    match is_trunk(tree, &cert.trunk_edges) {
        Ok(TrunkCheck::Valid(_)) => {}
        Ok(TrunkCheck::Refuted(r)) => {
            return Err(EmbedError::Precondition(PreconditionFailure::TrunkInvalid(format!(
                "{r:?}"
            ))))
        }
        Err(TreeError::NotTightTree) => {
            return Err(EmbedError::Precondition(PreconditionFailure::TreeNotTight))
        }
        Err(e) => {
            return Err(EmbedError::Precondition(PreconditionFailure::TrunkInvalid(format!(
                "{e}"
            ))))
        }
    }

    let t = tree.edge_count();
    let m = t - 1;
    let mut trace = CaseTrace::new(m);

    let q = Rational::new((m as i64).into(), 3.into());
    let bound = q.clone() * rat_usize(host.shadow_size());
    if rat_usize(host.edge_count()) <= bound {
        return Err(EmbedError::Precondition(PreconditionFailure::BoundNotExceeded {
            edges: host.edge_count(),
            bound: format_rational(&bound),
        }));
    }

    let peeled = host.peel_to_min_codegree(&q);
    trace.peel_rounds = peeled.rounds;
    trace.host_edges_after_peel = peeled.graph.edge_count();
    if peeled.empty {
        return Err(EmbedError::HardDiagnostic(
            "peeling emptied a host above the density bound".into(),
        ));
    }
    let g = &peeled.graph;
    let delta2 = g.min_p_degree(2).expect("peeled host is nonempty");
    trace.gate("peel", "min codegree after peel", delta2, m / 3 + 1)?;
    {
        let dens_ok = rat_usize(g.edge_count()) > q.clone() * rat_usize(g.shadow_size());
        trace.gates.push(GateRecord {
            name: "density after peel".into(),
            actual: format!("{} edges, shadow {}", g.edge_count(), g.shadow_size()),
            required: format!("> {}", format_rational(&(q.clone() * rat_usize(g.shadow_size())))),
            hard: true,
            passed: dens_ok,
        });
        if !dens_ok {
            return Err(EmbedError::HardDiagnostic(
                "peeling lost the density bound; this contradicts the peeling argument".into(),
            ));
        }
    }

    let mut profile = trunk_profile(tree, cert.trunk_edges[0], cert.trunk_edges[1])
        .map_err(|e| EmbedError::Precondition(PreconditionFailure::TrunkInvalid(format!("{e}"))))?;

    if t == 2 {
        let (image, route) = two_edge_route(g)?;
        trace.route = route;
        let emb = assemble(tree, g, &profile, image, &BTreeMap::new())?;
        return Ok((emb, trace));
    }

    let (image, order) = if profile.shared_pair_degree() >= m / 3 + 2 {
        shared_heavy_route(g, &mut profile, m, &mut trace)?
    } else {
        general_route(g, &mut profile, m, &mut trace)?
    };

    let assignments = place_leaves(g, &profile, image, &order, &mut trace)?;
    let emb = assemble(tree, g, &profile, image, &assignments)?;
    Ok((emb, trace))
}

/// Lexicographically least adjacent edge pair carries the two-edge tree.
fn two_edge_route(g: &Hypergraph) -> Result<(TrunkImage, Route), EmbedError> {
    for i in 0..g.edge_count() {
        for j in (i + 1)..g.edge_count() {
            let shared = set_intersection(g.edge(i), g.edge(j));
            if shared.len() != 2 {
                continue;
            }
            let u = *g.edge(i).iter().find(|v| !shared.contains(v)).expect("third vertex");
            let v = *g.edge(j).iter().find(|v| !shared.contains(v)).expect("third vertex");
            return Ok((TrunkImage { x: shared[0], y: shared[1], u, v }, Route::TwoEdge));
        }
    }
    Err(EmbedError::HardDiagnostic(
        "no adjacent edge pair in a host above the density bound".into(),
    ))
}

/// Route for trees with many leaves on the shared pair. The strong pair
/// supplies both b-side pools; cases split on the low b-side pool and the
/// smaller d-side pool.
fn shared_heavy_route(
    g: &Hypergraph,
    profile: &mut TrunkProfile,
    m: usize,
    trace: &mut CaseTrace,
) -> Result<(TrunkImage, Vec<TrunkPair>), EmbedError> {
    let (mut pair, dtrace) = find_strong_pair_relaxed(g, m).map_err(|e| match e {
        DischargeError::Precondition(msg) => {
            EmbedError::Precondition(PreconditionFailure::PairFinder(msg))
        }
        DischargeError::Exhausted => EmbedError::HardDiagnostic(
            "strong pair search exhausted; the host contradicts the discharging argument".into(),
        ),
    })?;
    trace.discharge = Some(dtrace);

    let fl_m3 = m / 3;
    let fl_2m3 = 2 * m / 3;
    // Orientation: the b-side pool at c must be the large one.
    if !(pair.dp(pair.a, pair.b) >= fl_m3 && pair.dp(pair.c, pair.b) >= fl_2m3) {
        pair.swap_shared_labels();
        trace.shared_label_swap = true;
    }
    let case_tag = "shared-heavy";
    trace.gate(case_tag, "outside codegree (a,b)", pair.dp(pair.a, pair.b), fl_m3)?;
    trace.gate(case_tag, "outside codegree (c,b)", pair.dp(pair.c, pair.b), fl_2m3)?;
    trace.gate(case_tag, "shared pair degree", g.degree(&pair.shared_pair()), m + 1)?;

    let (a, b, c, d) = (pair.a, pair.b, pair.c, pair.d);
    let dad = pair.dp(a, d);
    let dcd = pair.dp(c, d);
    // The d-side pools, small then large; ties break toward the
    // lexicographically smaller pair.
    let ad_key = (dad, (a.min(d), a.max(d)));
    let cd_key = (dcd, (c.min(d), c.max(d)));
    let (d1_vertex, d1_val, d2_vertex, d2_val) =
        if ad_key <= cd_key { (a, dad, c, dcd) } else { (c, dcd, a, dad) };
    trace.gate(case_tag, "outside codegree small d-side", d1_val, fl_m3.saturating_sub(1))?;
    trace.gate(case_tag, "outside codegree large d-side", d2_val, fl_m3)?;

    let cnt = |prof: &TrunkProfile, p: TrunkPair| prof.count(p);
    let dp_ab = pair.dp(a, b);

    let route;
    let image;
    let order;
    if dp_ab >= fl_2m3 {
        route = Route::SharedHeavy1;
        // Tip side u carries at least as much as v; within v, x carries at
        // least as much as y.
        if cnt(profile, TrunkPair::XU) + cnt(profile, TrunkPair::YU)
            < cnt(profile, TrunkPair::XV) + cnt(profile, TrunkPair::YV)
        {
            profile.swap_tips();
            trace.tree_relabels.push("swap tips".into());
        }
        if cnt(profile, TrunkPair::XV) < cnt(profile, TrunkPair::YV) {
            profile.swap_shared();
            trace.tree_relabels.push("swap shared".into());
        }
        trace.advisory_max(
            "count(xv)+count(yv) within floor(m/3)",
            cnt(profile, TrunkPair::XV) + cnt(profile, TrunkPair::YV),
            fl_m3,
        );
        trace.advisory_max(
            "6*count(yv) within m",
            6 * cnt(profile, TrunkPair::YV),
            m,
        );
        // y lands on the shared vertex of the small d-side pool.
        image = TrunkImage { x: d2_vertex, y: d1_vertex, u: b, v: d };
        order = vec![TrunkPair::YV, TrunkPair::XV, TrunkPair::YU, TrunkPair::XU, TrunkPair::XY];
    } else {
        let mirror = d1_vertex == a;
        let case3 = d1_val < fl_m3;
        route = if case3 {
            trace.gate(case_tag, "outside codegree large d-side, case 3", d2_val, fl_2m3)?;
            Route::SharedHeavy3 { mirror }
        } else {
            trace.gate(case_tag, "outside codegree large d-side, case 2", d2_val, m / 2)?;
            Route::SharedHeavy2 { mirror }
        };
        if !mirror {
            // Small pools receive the xu and yv leaf sets.
            if cnt(profile, TrunkPair::XU) + cnt(profile, TrunkPair::YV)
                > cnt(profile, TrunkPair::YU) + cnt(profile, TrunkPair::XV)
            {
                profile.swap_shared();
                trace.tree_relabels.push("swap shared".into());
            }
            let fix = if case3 {
                cnt(profile, TrunkPair::XU) < cnt(profile, TrunkPair::YV)
            } else {
                cnt(profile, TrunkPair::YU) < cnt(profile, TrunkPair::XV)
            };
            if fix {
                profile.swap_shared();
                profile.swap_tips();
                trace.tree_relabels.push("swap shared and tips".into());
            }
            let small_sum = cnt(profile, TrunkPair::XU) + cnt(profile, TrunkPair::YV);
            trace.advisory_max("count(xu)+count(yv) within floor(m/3)", small_sum, fl_m3);
            if case3 {
                trace.advisory_max("6*count(yv) within m", 6 * cnt(profile, TrunkPair::YV), m);
            } else {
                trace.advisory_max(
                    "count(xu)+count(yv)+count(xv) within floor(m/2)",
                    small_sum + cnt(profile, TrunkPair::XV),
                    m / 2,
                );
            }
            image = TrunkImage { x: a, y: c, u: b, v: d };
            order =
                vec![TrunkPair::YV, TrunkPair::XU, TrunkPair::XV, TrunkPair::YU, TrunkPair::XY];
        } else {
            // Small pools receive the xu and xv leaf sets.
            if cnt(profile, TrunkPair::XU) + cnt(profile, TrunkPair::XV)
                > cnt(profile, TrunkPair::YU) + cnt(profile, TrunkPair::YV)
            {
                profile.swap_shared();
                trace.tree_relabels.push("swap shared".into());
            }
            let fix = if case3 {
                cnt(profile, TrunkPair::XU) < cnt(profile, TrunkPair::XV)
            } else {
                cnt(profile, TrunkPair::YU) < cnt(profile, TrunkPair::YV)
            };
            if fix {
                profile.swap_tips();
                trace.tree_relabels.push("swap tips".into());
            }
            let small_sum = cnt(profile, TrunkPair::XU) + cnt(profile, TrunkPair::XV);
            trace.advisory_max("count(xu)+count(xv) within floor(m/3)", small_sum, fl_m3);
            if case3 {
                trace.advisory_max("6*count(xv) within m", 6 * cnt(profile, TrunkPair::XV), m);
            } else {
                trace.advisory_max(
                    "count(xu)+count(xv)+count(yv) within floor(m/2)",
                    small_sum + cnt(profile, TrunkPair::YV),
                    m / 2,
                );
            }
            image = TrunkImage { x: a, y: c, u: b, v: d };
            order =
                vec![TrunkPair::XV, TrunkPair::XU, TrunkPair::YV, TrunkPair::YU, TrunkPair::XY];
        }
    }
    trace.advisory_min(
        "count(xy) at least floor(m/3)",
        cnt(profile, TrunkPair::XY),
        fl_m3,
    );
    trace.route = route;
    trace.special = Some(pair);
    Ok((image, order))
}

/// Route for trees with few leaves on the shared pair. The minimum-codegree
/// pair supplies the pools; cases split on the left, right and center
/// degrees of the glued pair of host edges.
fn general_route(
    g: &Hypergraph,
    profile: &mut TrunkProfile,
    m: usize,
    trace: &mut CaseTrace,
) -> Result<(TrunkImage, Vec<TrunkPair>), EmbedError> {
    let gamma = Rational::new((m as i64).into(), 3.into());
    let (mut pair, dtrace) = find_min_codegree_pair(g, &gamma).map_err(|e| match e {
        DischargeError::Precondition(msg) => {
            EmbedError::Precondition(PreconditionFailure::PairFinder(msg))
        }
        DischargeError::Exhausted => EmbedError::HardDiagnostic(
            "minimum-codegree pair search exhausted; the host contradicts the discharging \
             argument"
                .into(),
        ),
    })?;
    trace.discharge = Some(dtrace);

    let deg = |x: u32, y: u32| g.degree(&[x.min(y), x.max(y)]);
    let (l_ab, l_cb) = (deg(pair.a, pair.b), deg(pair.c, pair.b));
    let (l_max, l_min) = (l_ab.max(l_cb), l_ab.min(l_cb));
    let case_tag = "general";
    trace.gate(case_tag, "larger b-side degree", l_max, m + 1)?;

    let cnt = |prof: &TrunkProfile, p: TrunkPair| prof.count(p);
    let fl = |num: usize, den: usize| num * m / den;

    let route;
    let order;
    if l_min > m {
        // Case 1: both b-side pools are full-size. Put the larger d-side
        // degree at a.
        if deg(pair.a, pair.d) < deg(pair.c, pair.d) {
            pair.swap_shared_labels();
            trace.shared_label_swap = true;
        }
        let (a, b, c, d) = (pair.a, pair.b, pair.c, pair.d);
        trace.gate(case_tag, "outside codegree (a,b)", pair.dp(a, b), m.saturating_sub(1))?;
        trace.gate(case_tag, "outside codegree (c,b)", pair.dp(c, b), m.saturating_sub(1))?;

        if cnt(profile, TrunkPair::XU) + cnt(profile, TrunkPair::YU)
            < cnt(profile, TrunkPair::XV) + cnt(profile, TrunkPair::YV)
        {
            profile.swap_tips();
            trace.tree_relabels.push("swap tips".into());
        }
        if cnt(profile, TrunkPair::XV) < cnt(profile, TrunkPair::YV) {
            profile.swap_shared();
            trace.tree_relabels.push("swap shared".into());
        }
        trace.advisory_max("count(yv) within floor(m/4)", cnt(profile, TrunkPair::YV), fl(1, 4));
        trace.advisory_max(
            "count(xv)+count(yv) within floor(m/2)-1",
            cnt(profile, TrunkPair::XV) + cnt(profile, TrunkPair::YV),
            fl(1, 2).saturating_sub(1),
        );
        trace.advisory_max(
            "count(yv)+count(xy) within floor(m/2)-1",
            cnt(profile, TrunkPair::YV) + cnt(profile, TrunkPair::XY),
            fl(1, 2).saturating_sub(1),
        );
        trace.advisory_max(
            "count(xv)+count(yv)+count(xy) within floor(2m/3)-1",
            cnt(profile, TrunkPair::XV)
                + cnt(profile, TrunkPair::YV)
                + cnt(profile, TrunkPair::XY),
            fl(2, 3).saturating_sub(1),
        );

        if 3 * deg(a, c) > 2 * m {
            route = Route::General11;
            trace.gate(case_tag, "outside codegree (a,c)", pair.dp(a, c), fl(2, 3).saturating_sub(1))?;
            trace.gate(case_tag, "outside codegree (a,d)", pair.dp(a, d), fl(1, 2).saturating_sub(1))?;
            trace.gate(case_tag, "outside codegree (c,d)", pair.dp(c, d), fl(1, 3).saturating_sub(1))?;
            order =
                vec![TrunkPair::YV, TrunkPair::XV, TrunkPair::XY, TrunkPair::YU, TrunkPair::XU];
        } else {
            route = Route::General12;
            trace.gate(case_tag, "outside codegree (a,c)", pair.dp(a, c), fl(1, 3).saturating_sub(1))?;
            trace.gate(case_tag, "outside codegree (a,d)", pair.dp(a, d), m.saturating_sub(1))?;
            trace.gate(case_tag, "outside codegree (c,d)", pair.dp(c, d), fl(1, 2).saturating_sub(1))?;
            // The shared attachment count must fit the center pool outright.
            let xy_cap = fl(1, 3).saturating_sub(1);
            let xy_cnt = cnt(profile, TrunkPair::XY);
            if xy_cnt > xy_cap {
                return Err(EmbedError::GateFailure {
                    case: "general case 1.2".into(),
                    gate: "count(xy) within floor(m/3)-1".into(),
                    required: format!("<= {xy_cap}"),
                    actual: xy_cnt.to_string(),
                });
            }
            order =
                vec![TrunkPair::XY, TrunkPair::YV, TrunkPair::XV, TrunkPair::YU, TrunkPair::XU];
        }
    } else {
        // Case 2: put the larger b-side degree at a.
        if l_ab < l_cb {
            pair.swap_shared_labels();
            trace.shared_label_swap = true;
        }
        let (a, b, c, d) = (pair.a, pair.b, pair.c, pair.d);
        trace.gate(case_tag, "outside codegree (a,b)", pair.dp(a, b), m.saturating_sub(1))?;
        trace.gate(case_tag, "outside codegree (c,b)", pair.dp(c, b), fl(2, 3).saturating_sub(1))?;
        trace.gate(case_tag, "outside codegree (a,c)", pair.dp(a, c), fl(1, 2).saturating_sub(1))?;

        let (r_ad, r_cd) = (deg(a, d), deg(c, d));
        let r_max = r_ad.max(r_cd);
        let a_side_large = r_ad >= r_cd;

        if r_max > m {
            if a_side_large {
                route = Route::General21A;
                trace.gate(case_tag, "outside codegree (a,d)", pair.dp(a, d), m.saturating_sub(1))?;
                trace.gate(case_tag, "outside codegree (c,d)", pair.dp(c, d), fl(3, 7).saturating_sub(1))?;
                relabel_sum_pair(
                    profile,
                    trace,
                    (TrunkPair::XU, TrunkPair::XV),
                    (TrunkPair::YU, TrunkPair::YV),
                    RelabelFix::Shared,
                );
                relabel_single(profile, trace, TrunkPair::YU, TrunkPair::YV, RelabelFix::Tips);
                advisory_221(profile, trace, m, TrunkPair::YV);
                order = vec![
                    TrunkPair::YV,
                    TrunkPair::XY,
                    TrunkPair::YU,
                    TrunkPair::XV,
                    TrunkPair::XU,
                ];
            } else {
                route = Route::General21B;
                trace.gate(case_tag, "outside codegree (a,d)", pair.dp(a, d), fl(3, 7).saturating_sub(1))?;
                trace.gate(case_tag, "outside codegree (c,d)", pair.dp(c, d), m.saturating_sub(1))?;
                relabel_sum_pair(
                    profile,
                    trace,
                    (TrunkPair::XU, TrunkPair::YV),
                    (TrunkPair::XV, TrunkPair::YU),
                    RelabelFix::Tips,
                );
                relabel_single(profile, trace, TrunkPair::YU, TrunkPair::XV, RelabelFix::Both);
                advisory_221(profile, trace, m, TrunkPair::XV);
                order = vec![
                    TrunkPair::XV,
                    TrunkPair::XY,
                    TrunkPair::YU,
                    TrunkPair::YV,
                    TrunkPair::XU,
                ];
            }
        } else {
            trace.gate(
                case_tag,
                "outside codegree (a,c), tight right side",
                pair.dp(a, c),
                fl(3, 4).saturating_sub(1),
            )?;
            if a_side_large {
                route = Route::General22A;
                trace.gate(case_tag, "outside codegree (a,d)", pair.dp(a, d), fl(6, 7).saturating_sub(1))?;
                trace.gate(case_tag, "outside codegree (c,d)", pair.dp(c, d), fl(3, 4).saturating_sub(1))?;
                relabel_sum_pair(
                    profile,
                    trace,
                    (TrunkPair::XU, TrunkPair::XV),
                    (TrunkPair::YU, TrunkPair::YV),
                    RelabelFix::Shared,
                );
                relabel_single(profile, trace, TrunkPair::XU, TrunkPair::XV, RelabelFix::Tips);
                trace.advisory_min(
                    "6*count(xu) at least m",
                    6 * cnt(profile, TrunkPair::XU),
                    m,
                );
                order = vec![
                    TrunkPair::YV,
                    TrunkPair::XY,
                    TrunkPair::YU,
                    TrunkPair::XV,
                    TrunkPair::XU,
                ];
            } else {
                route = Route::General22B;
                trace.gate(case_tag, "outside codegree (a,d)", pair.dp(a, d), fl(3, 4).saturating_sub(1))?;
                trace.gate(case_tag, "outside codegree (c,d)", pair.dp(c, d), fl(6, 7).saturating_sub(1))?;
                relabel_sum_pair(
                    profile,
                    trace,
                    (TrunkPair::XU, TrunkPair::YV),
                    (TrunkPair::XV, TrunkPair::YU),
                    RelabelFix::Tips,
                );
                relabel_single(profile, trace, TrunkPair::XU, TrunkPair::YV, RelabelFix::Both);
                trace.advisory_min(
                    "6*count(xu) at least m",
                    6 * cnt(profile, TrunkPair::XU),
                    m,
                );
                order = vec![
                    TrunkPair::YU,
                    TrunkPair::XY,
                    TrunkPair::XV,
                    TrunkPair::YV,
                    TrunkPair::XU,
                ];
            }
        }
    }
    let image = TrunkImage { x: pair.a, y: pair.c, u: pair.b, v: pair.d };
    trace.route = route;
    trace.special = Some(pair);
    Ok((image, order))
}

enum RelabelFix {
    Shared,
    Tips,
    Both,
}

/// Ensures count(left.0)+count(left.1) >= count(right.0)+count(right.1) by
/// applying the fixing relabel when needed.
fn relabel_sum_pair(
    profile: &mut TrunkProfile,
    trace: &mut CaseTrace,
    left: (TrunkPair, TrunkPair),
    right: (TrunkPair, TrunkPair),
    fix: RelabelFix,
) {
    let sum = |p: (TrunkPair, TrunkPair)| profile.count(p.0) + profile.count(p.1);
    if sum(left) < sum(right) {
        apply_fix(profile, trace, fix);
    }
}

/// Ensures count(big) >= count(small) by applying the fixing relabel.
fn relabel_single(
    profile: &mut TrunkProfile,
    trace: &mut CaseTrace,
    big: TrunkPair,
    small: TrunkPair,
    fix: RelabelFix,
) {
    if profile.count(big) < profile.count(small) {
        apply_fix(profile, trace, fix);
    }
}

fn apply_fix(profile: &mut TrunkProfile, trace: &mut CaseTrace, fix: RelabelFix) {
    match fix {
        RelabelFix::Shared => {
            profile.swap_shared();
            trace.tree_relabels.push("swap shared".into());
        }
        RelabelFix::Tips => {
            profile.swap_tips();
            trace.tree_relabels.push("swap tips".into());
        }
        RelabelFix::Both => {
            profile.swap_shared();
            profile.swap_tips();
            trace.tree_relabels.push("swap shared and tips".into());
        }
    }
}

/// The three advisory caps shared by the 2.1 sub-cases; `first` is the leaf
/// set placed before the shared set.
fn advisory_221(profile: &TrunkProfile, trace: &mut CaseTrace, m: usize, first: TrunkPair) {
    let c_first = profile.count(first);
    let c_xy = profile.count(TrunkPair::XY);
    let c_yu = profile.count(TrunkPair::YU);
    trace.advisory_max("first leaf set within floor(m/4)-1", c_first, (m / 4).saturating_sub(1));
    trace.advisory_max(
        "first+shared leaf sets within floor(m/2)-1",
        c_first + c_xy,
        (m / 2).saturating_sub(1),
    );
    trace.advisory_max(
        "first+shared+yu leaf sets within floor(2m/3)-1",
        c_first + c_xy + c_yu,
        (2 * m / 3).saturating_sub(1),
    );
}

/// Greedy leaf placement: pools are host neighborhoods of the image pairs,
/// minus the four special vertices and everything already used; each leaf
/// takes the smallest available vertex.
fn place_leaves(
    g: &Hypergraph,
    profile: &TrunkProfile,
    image: TrunkImage,
    order: &[TrunkPair],
    trace: &mut CaseTrace,
) -> Result<BTreeMap<u32, u32>, EmbedError> {
    let mut used: std::collections::BTreeSet<u32> =
        [image.x, image.y, image.u, image.v].into_iter().collect();
    let mut assignments: BTreeMap<u32, u32> = BTreeMap::new();
    for &tree_pair in order {
        let (ha, hb) = image.of(profile, tree_pair);
        let pool = g.neighborhood(&[ha, hb]).expect("pair query on a 3-graph");
        let mut placement =
            Placement { tree_pair, host_pair: (ha, hb), assigned: vec![] };
        let needed = profile.count(tree_pair);
        // Pool vertices are distinct, so a snapshot of what is still free
        // stays valid while this pool is consumed.
        let available: Vec<u32> = pool.into_iter().filter(|w| !used.contains(w)).collect();
        let mut next = available.into_iter();
        for &leaf in profile.leaves(tree_pair) {
            match next.next() {
                Some(w) => {
                    used.insert(w);
                    assignments.insert(leaf, w);
                    placement.assigned.push((leaf, w));
                }
                None => {
                    let placed = placement.assigned.len();
                    trace.placements.push(placement);
                    return Err(EmbedError::GreedyExhausted {
                        case: trace.route.label(),
                        tree_pair: format!("{tree_pair:?}"),
                        host_a: ha,
                        host_b: hb,
                        needed,
                        placed,
                    });
                }
            }
        }
        trace.placements.push(placement);
    }
    Ok(assignments)
}

/// Builds the embedding from the trunk image and leaf assignments, then
/// re-validates it from scratch.
fn assemble(
    tree: &Hypergraph,
    g: &Hypergraph,
    profile: &TrunkProfile,
    image: TrunkImage,
    assignments: &BTreeMap<u32, u32>,
) -> Result<Embedding, EmbedError> {
    let mut map: Vec<Option<u32>> = vec![None; tree.vertex_count()];
    map[profile.x as usize] = Some(image.x);
    map[profile.y as usize] = Some(image.y);
    map[profile.u as usize] = Some(image.u);
    map[profile.v as usize] = Some(image.v);
    for (&leaf, &w) in assignments {
        map[leaf as usize] = Some(w);
    }
    let mut edge_images = Vec::with_capacity(tree.edge_count());
    for e in tree.edges() {
        let mut img: Vec<u32> = e
            .iter()
            .map(|&v| map[v as usize].ok_or(()).expect("all tree vertices are mapped"))
            .collect();
        img.sort_unstable();
        edge_images.push(img);
    }
    let emb = Embedding { map, edge_images };
    if !validate_embedding(tree, g, &emb) {
        return Err(EmbedError::HardDiagnostic(
            "assembled embedding failed validation; placement logic is inconsistent".into(),
        ));
    }
    Ok(emb)
}
