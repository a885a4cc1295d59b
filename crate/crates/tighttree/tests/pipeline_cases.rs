//! End-to-end pipeline runs engineered to land in specific cases of the
//! analysis, cross-checked against the backtracking oracle.

use tighttree::embed::{
    embed_backtracking, embed_trunk2, validate_embedding, EmbedError, PreconditionFailure, Route,
};
use tighttree::hypergraph::{Hypergraph, VertexSet};
use tighttree::sampling::complete_minus;
use tighttree::trees::{random_tight_tree, tree_from_attachment_counts, two_edge_trunk};

/// Complete graph on `n` vertices minus the edges {0,1,k} for k in the
/// given range: drives the codegree of the pair {0,1} down while keeping
/// everything else dense.
fn complete_minus_star(n: usize, drop: std::ops::Range<u32>) -> Hypergraph {
    let dropped: Vec<VertexSet> = drop.map(|k| vec![0, 1, k]).collect();
    let edges: Vec<VertexSet> = Hypergraph::complete(3, n)
        .edges()
        .iter()
        .filter(|e| !dropped.contains(e))
        .cloned()
        .collect();
    Hypergraph::new(3, n, edges).unwrap()
}

#[test]
fn shared_heavy_case_two_on_engineered_host() {
    // Host: K30 minus 14 edges through {0,1}. Every edge is light at
    // m = 20; the light partner on the high side has its low b-side pool
    // strictly below floor(2m/3), which forces case 2 of the shared-heavy
    // analysis.
    let host = complete_minus_star(30, 4..18);
    assert_eq!(host.degree(&[0, 1]), 14);

    // 21 edges, heavy shared pair: d_T(xy) = 15 >= floor(20/3)+2.
    let (tree, cert) = tree_from_attachment_counts([13, 2, 1, 2, 1]).unwrap();
    assert_eq!(tree.edge_count(), 21);

    let (emb, trace) = embed_trunk2(&tree, &cert, &host).unwrap();
    assert!(matches!(trace.route, Route::SharedHeavy2 { .. }), "route was {:?}", trace.route);
    assert!(validate_embedding(&tree, &host, &emb));
    assert!(trace.discharge.as_ref().unwrap().conserved());
    // The oracle agrees a copy exists.
    assert!(embed_backtracking(&tree, &host, 50_000_000).found().is_some());
}

#[test]
fn shared_heavy_case_two_base_variant_on_engineered_host() {
    // Same shape as above, but with the pair {2,3} additionally thinned so
    // the smaller d-side pool sits at the c-vertex: the non-mirrored
    // placement order runs.
    let mut edges: Vec<VertexSet> = complete_minus_star(30, 4..18).edges().to_vec();
    for k in [20u32, 21, 22] {
        edges.retain(|e| e != &vec![2, 3, k]);
    }
    let host = Hypergraph::new(3, 30, edges).unwrap();
    assert_eq!(host.degree(&[2, 3]), 25);

    let (tree, cert) = tree_from_attachment_counts([13, 2, 1, 2, 1]).unwrap();
    let (emb, trace) = embed_trunk2(&tree, &cert, &host).unwrap();
    assert_eq!(trace.route, Route::SharedHeavy2 { mirror: false }, "route was {:?}", trace.route);
    assert!(validate_embedding(&tree, &host, &emb));
}

#[test]
fn general_case_one_two_on_engineered_host() {
    // Host: K29 minus 15 edges through {0,1}. The minimum-codegree pair of
    // the light edge {0,1,2} is {0,1} with degree 12 <= 2m/3, while both
    // b-sides stay above m: case 1.2 of the general analysis.
    let host = complete_minus_star(29, 4..19);
    assert_eq!(host.degree(&[0, 1]), 12);

    let (tree, cert) = tree_from_attachment_counts([5, 4, 4, 3, 2]).unwrap();
    assert_eq!(tree.edge_count(), 20);

    let (emb, trace) = embed_trunk2(&tree, &cert, &host).unwrap();
    assert_eq!(trace.route, Route::General12, "route was {:?}", trace.route);
    assert!(validate_embedding(&tree, &host, &emb));
    assert!(embed_backtracking(&tree, &host, 50_000_000).found().is_some());
}

#[test]
fn routes_cover_multiple_cases_on_deleted_hosts() {
    // Random dense hosts below completeness spread the found pairs around;
    // collect the routes actually taken and make sure the analysis is not
    // collapsing into a single case.
    let mut seen = std::collections::BTreeSet::new();
    let mut instances = 0;
    for host_seed in 0..8u64 {
        let host = complete_minus_star_or_random(host_seed);
        for tree_seed in 0..6u64 {
            let (tree, cert) = trunk2_tree(20, tree_seed);
            let (emb, trace) = embed_trunk2(&tree, &cert, &host)
                .unwrap_or_else(|e| panic!("seed ({host_seed},{tree_seed}): {e}"));
            assert!(validate_embedding(&tree, &host, &emb));
            seen.insert(trace.route.label());
            instances += 1;
        }
    }
    assert_eq!(instances, 48);
    eprintln!("routes covered: {seen:?}");
    assert!(seen.len() >= 3, "only saw routes {seen:?}");
}

fn complete_minus_star_or_random(seed: u64) -> Hypergraph {
    if seed.is_multiple_of(2) {
        complete_minus(22, 40 + 3 * seed as usize, seed)
    } else {
        complete_minus(23, 120, seed)
    }
}

fn trunk2_tree(t: usize, seed: u64) -> (Hypergraph, tighttree::trees::TrunkCertificate) {
    let (tree, cert) = random_tight_tree(3, t, 2, seed).unwrap();
    if cert.trunk_edges.len() == 2 {
        (tree, cert)
    } else {
        let cert = two_edge_trunk(&tree).unwrap();
        (tree, cert)
    }
}

#[test]
fn below_bound_is_precondition_not_failure() {
    // A linear host can never contain a trunk-2 tree (its two trunk edges
    // would share a pair), and its density sits far below the bound.
    let host = tighttree::sampling::random_linear_host(26, 5);
    let (tree, cert) = trunk2_tree(20, 0);
    match embed_trunk2(&tree, &cert, &host) {
        Err(EmbedError::Precondition(PreconditionFailure::BoundNotExceeded { .. })) => {}
        other => panic!("expected bound precondition, got {other:?}"),
    }
    assert!(embed_backtracking(&tree, &host, 50_000_000).proves_no_copy());
}

#[test]
fn trace_reports_placements_and_gates() {
    let host = Hypergraph::complete(3, 22);
    let (tree, cert) = tree_from_attachment_counts([3, 4, 4, 4, 3]).unwrap();
    let (_, trace) = embed_trunk2(&tree, &cert, &host).unwrap();
    assert_eq!(trace.placements.len(), 5);
    assert!(trace.gates.iter().any(|g| g.hard));
    assert!(trace.gates.iter().filter(|g| g.hard).all(|g| g.passed));
    let placed: usize = trace.placements.iter().map(|p| p.assigned.len()).sum();
    assert_eq!(placed, 18);
}
