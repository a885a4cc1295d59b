//! Cross-checks against classical values and definition-level oracles
//! beyond the acceptance scale.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tighttree::hypergraph::{is_subset, Hypergraph, VertexSet};
use tighttree::trees::{enumerate_tight_trees, find_proper_ordering};

fn proper_by_definition(g: &Hypergraph, ordering: &[usize]) -> bool {
    let mut seen: std::collections::BTreeSet<u32> = std::collections::BTreeSet::new();
    for (pos, &i) in ordering.iter().enumerate() {
        let e = g.edge(i);
        if pos == 0 {
            seen.extend(e.iter().copied());
            continue;
        }
        let fresh: Vec<u32> = e.iter().copied().filter(|v| !seen.contains(v)).collect();
        if fresh.len() != 1 {
            return false;
        }
        let rest: Vec<u32> = e.iter().copied().filter(|&v| v != fresh[0]).collect();
        if !(0..pos).any(|j| is_subset(&rest, g.edge(ordering[j]))) {
            return false;
        }
        seen.insert(fresh[0]);
    }
    true
}

/// At uniformity 2, tight trees are ordinary graph trees; the enumerator
/// must reproduce the classical unlabeled tree counts.
#[test]
fn graph_tree_counts_via_r2_enumeration() {
    let expect = [1usize, 1, 2, 3, 6, 11, 23];
    for (t, &want) in (1..=7).zip(expect.iter()) {
        assert_eq!(enumerate_tight_trees(2, t).unwrap().len(), want, "t={t}");
    }
}

/// Seeded sample of five-edge 3-graphs on seven vertices (the smallest
/// vertex count where five-edge tight trees exist), checked against the
/// factorial definition oracle.
#[test]
fn five_edge_ordering_sample_on_seven_vertices() {
    let triples: Vec<VertexSet> = (0..7u32).combinations(3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut n_tight = 0u64;
    for _ in 0..4000 {
        let mut idxs: Vec<usize> = (0..triples.len()).collect();
        idxs.shuffle(&mut rng);
        idxs.truncate(5);
        let edges: Vec<VertexSet> = idxs.iter().map(|&i| triples[i].clone()).collect();
        let g = Hypergraph::new(3, 7, edges).unwrap();
        let found = find_proper_ordering(&g);
        let oracle = (0..5).permutations(5).any(|ord| proper_by_definition(&g, &ord));
        assert_eq!(found.is_some(), oracle, "disagreement on {:?}", g.edges());
        if let Some(w) = &found {
            assert!(proper_by_definition(&g, &w.ordering));
            n_tight += 1;
        }
    }
    // Tight five-edge trees do appear in the sample.
    assert!(n_tight > 0, "sample contained no tight trees");
    // Every enumerated five-edge tree passes the definition oracle too.
    for tree in enumerate_tight_trees(3, 5).unwrap() {
        let w = find_proper_ordering(&tree).unwrap();
        assert!(proper_by_definition(&tree, &w.ordering));
    }
}

/// Second enumeration cross-check, at four edges: all labeled 4-edge
/// 3-graphs on six vertices with full support, deduplicated by min-lex
/// canonical form over all 720 permutations.
#[test]
fn enumeration_count_matches_brute_force_at_t4() {
    let triples: Vec<VertexSet> = (0..6u32).combinations(3).collect();
    let mut canon_forms: std::collections::BTreeSet<Vec<VertexSet>> =
        std::collections::BTreeSet::new();
    for idxs in (0..triples.len()).combinations(4) {
        let edges: Vec<VertexSet> = idxs.iter().map(|&i| triples[i].clone()).collect();
        let g = Hypergraph::new(3, 6, edges).unwrap();
        if g.support().len() != 6 || find_proper_ordering(&g).is_none() {
            continue;
        }
        let canon = (0..6u32)
            .permutations(6)
            .map(|perm| {
                let mut edges: Vec<VertexSet> = g
                    .edges()
                    .iter()
                    .map(|e| {
                        let mut img: VertexSet = e.iter().map(|&v| perm[v as usize]).collect();
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
    assert_eq!(enumerate_tight_trees(3, 4).unwrap().len(), canon_forms.len());
    assert_eq!(canon_forms.len(), 5);
}
