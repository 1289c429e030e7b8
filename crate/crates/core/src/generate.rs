//! Seeded random hypergraph families used by the cross-check suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{connected_components, Hypergraph};

fn random_edge<R: Rng>(rng: &mut R, k: usize, n: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all.sort_unstable();
    all
}

/// Up to `edges` distinct uniformly random edges; `n >= k` required.
pub fn random_hypergraph<R: Rng>(rng: &mut R, k: usize, n: usize, edges: usize) -> Hypergraph {
    assert!(n >= k, "need n >= k");
    let mut set = BTreeSet::new();
    let mut attempts = 0;
    while set.len() < edges && attempts < edges * 50 {
        set.insert(random_edge(rng, k, n));
        attempts += 1;
    }
    Hypergraph::new(k, n, set.into_iter().collect()).expect("generated edges are valid")
}

/// A connected hypergraph: a random edge tree covering every vertex, plus
/// `extra` additional random edges.
pub fn random_connected_hypergraph<R: Rng>(
    rng: &mut R,
    k: usize,
    n: usize,
    extra: usize,
) -> Hypergraph {
    assert!(n >= k, "need n >= k");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut covered: Vec<usize> = order[..k].to_vec();
    let mut set = BTreeSet::new();
    let mut first = covered.clone();
    first.sort_unstable();
    set.insert(first);
    let mut next = k;
    while next < n {
        // one or more old vertices glue the new edge to the tree
        let fresh = rng.gen_range(1..=(k - 1).min(n - next));
        let mut edge: Vec<usize> = order[next..next + fresh].to_vec();
        let mut old = covered.clone();
        old.shuffle(rng);
        edge.extend(old.into_iter().take(k - fresh));
        edge.sort_unstable();
        covered.extend_from_slice(&order[next..next + fresh]);
        next += fresh;
        set.insert(edge);
    }
    for _ in 0..extra {
        set.insert(random_edge(rng, k, n));
    }
    Hypergraph::new(k, n, set.into_iter().collect()).expect("generated edges are valid")
}

/// A connected hm-bipartite hypergraph: every edge has one head from the
/// first `heads` vertices and `k - 1` vertices from the rest. Returns the
/// head set alongside the hypergraph.
pub fn random_hm_bipartite<R: Rng>(
    rng: &mut R,
    k: usize,
    heads: usize,
    masses: usize,
    edges: usize,
) -> (Hypergraph, Vec<usize>) {
    assert!(heads >= 1 && masses >= k - 1);
    let n = heads + masses;
    let mut edges = edges;
    for attempt in 1.. {
        if attempt % 100 == 0 {
            edges += 1;
        }
        let mut set = BTreeSet::new();
        // every head gets at least one edge
        let mut head_order: Vec<usize> = (0..heads).collect();
        head_order.shuffle(rng);
        let total = edges.max(heads);
        for i in 0..total * 20 {
            if set.len() >= total {
                break;
            }
            let head = if i < heads {
                head_order[i]
            } else {
                rng.gen_range(0..heads)
            };
            let mut mass = random_edge(rng, k - 1, masses);
            mass.iter_mut().for_each(|v| *v += heads);
            mass.push(head);
            mass.sort_unstable();
            set.insert(mass);
        }
        let h = Hypergraph::new(k, n, set.into_iter().collect()).expect("valid edges");
        if connected_components(&h).len() == 1 {
            return (h, (0..heads).collect());
        }
    }
    unreachable!()
}
