//! Brute-force oracle and seeded corpora shared by the integration suites.
//! The oracle walks every phase vector directly; it uses nothing from the
//! solver beyond the hypergraph type.

#![allow(dead_code)]

use std::collections::HashSet;

use hyperzero::generate::{random_connected_hypergraph, random_hypergraph};
use hyperzero::hypergraph::{connected_components, Hypergraph};
use hyperzero::ZeroOperator;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BRUTE_FORCE_CAP: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OracleCounts {
    pub solutions: u64,
    pub classes: u64,
    pub h: u64,
    pub n_pairs: u64,
}

/// Edge test in doubled units so the signless target `k/2` stays integral:
/// `2·Σα ≡ 0` (laplacian) or `≡ k` (signless) modulo `2k`.
fn edge_ok(sum: u64, k: u64, op: ZeroOperator) -> bool {
    let target = match op {
        ZeroOperator::Laplacian => 0,
        ZeroOperator::Signless => k,
    };
    (2 * sum) % (2 * k) == target
}

fn next(alpha: &mut [u64], k: u64) -> bool {
    for a in alpha.iter_mut().rev() {
        *a += 1;
        if *a < k {
            return true;
        }
        *a = 0;
    }
    false
}

/// Counts over all `k^m` phase vectors of one vertex set. Panics if the
/// conjugation pairing of N classes is not perfect.
pub fn oracle_vertex_set(h: &Hypergraph, vertices: &[usize], op: ZeroOperator) -> OracleCounts {
    let k = h.k() as u64;
    let pos = |v: usize| vertices.iter().position(|&u| u == v);
    let edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| pos(v).is_some()))
        .map(|e| e.iter().map(|&v| pos(v).unwrap()).collect())
        .collect();
    let m = vertices.len();
    let mut alpha = vec![0u64; m];
    let mut out = OracleCounts::default();
    let mut canonical = HashSet::new();
    loop {
        if edges
            .iter()
            .all(|e| edge_ok(e.iter().map(|&i| alpha[i]).sum(), k, op))
        {
            out.solutions += 1;
            if alpha[0] == 0 {
                canonical.insert(alpha.clone());
            }
        }
        if !next(&mut alpha, k) {
            break;
        }
    }
    out.classes = canonical.len() as u64;
    let is_real = |a: &[u64]| a.iter().all(|&x| x == 0 || (k.is_multiple_of(2) && x == k / 2));
    let mut n = 0;
    for a in &canonical {
        if is_real(a) {
            out.h += 1;
            continue;
        }
        n += 1;
        let shift = (k - a[0]) % k;
        let conj: Vec<u64> = a.iter().map(|&x| ((k - x) % k + shift) % k).collect();
        assert!(canonical.contains(&conj), "conjugate missing");
        assert_ne!(&conj, a, "self-conjugate N class");
    }
    assert_eq!(n % 2, 0);
    out.n_pairs = n / 2;
    out
}

/// Per-component oracle counts plus the number of solutions over all `k^n`
/// phase vectors of the whole vertex set.
pub fn oracle(h: &Hypergraph, op: ZeroOperator) -> (Vec<OracleCounts>, u64) {
    let per: Vec<OracleCounts> = connected_components(h)
        .iter()
        .map(|c| oracle_vertex_set(h, &c.vertices, op))
        .collect();
    let all: Vec<usize> = (0..h.n()).collect();
    let whole = oracle_vertex_set_solutions(h, &all, op);
    (per, whole)
}

fn oracle_vertex_set_solutions(h: &Hypergraph, vertices: &[usize], op: ZeroOperator) -> u64 {
    let k = h.k() as u64;
    let mut alpha = vec![0u64; vertices.len()];
    let mut count = 0;
    loop {
        if h
            .edges()
            .iter()
            .all(|e| edge_ok(e.iter().map(|&v| alpha[v]).sum(), k, op))
        {
            count += 1;
        }
        if !next(&mut alpha, k) {
            break;
        }
    }
    count
}

pub fn fixture(name: &str) -> Hypergraph {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    hyperzero::hypergraph::load_hypergraph(std::fs::File::open(path).unwrap()).unwrap()
}

pub fn max_n(k: usize) -> usize {
    let mut n = 1;
    while (k as u64).pow(n as u32 + 1) <= BRUTE_FORCE_CAP {
        n += 1;
    }
    n
}

/// Seeded instances with `k^n` within the brute-force cap, k in {3, 4, 5},
/// half connected and half arbitrary.
pub fn random_corpus(seed: u64, per_k: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 3..=5 {
        for i in 0..per_k {
            let n = rng.gen_range(k..=max_n(k));
            let h = if i % 2 == 0 {
                {
                    let extra = rng.gen_range(0..3);
                    random_connected_hypergraph(&mut rng, k, n, extra)
                }
            } else {
                {
                    let edges = rng.gen_range(0..=n);
                    random_hypergraph(&mut rng, k, n, edges)
                }
            };
            out.push(h);
        }
    }
    out
}

/// Paper fixtures, the single-edge family and a seeded random corpus.
pub fn full_corpus(seed: u64) -> Vec<Hypergraph> {
    let mut out = vec![fixture("example_2_1.json"), fixture("example_6_1.json")];
    for k in 3..=6 {
        out.push(fixture(&format!("single_edge_k{k}.json")));
    }
    out.push(Hypergraph::new(3, 3, vec![]).unwrap());
    out.push(Hypergraph::from_one_based(4, 7, vec![vec![1, 2, 3, 4]]).unwrap());
    out.extend(random_corpus(seed, 20));
    out
}
