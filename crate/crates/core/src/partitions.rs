//! Direct combinatorial detection of the configured components: hm-, odd- and
//! even-bipartitions, and the tri-, quadri- and pentapartition patterns.
//!
//! Multipartitions are checked under two predicates. `Literal` transcribes the
//! fixed edge clause lists verbatim, including clauses that do not correspond to
//! zero-eigenvalue phase patterns. `Residue` accepts an edge when the part
//! indices of its vertices sum to the operator's residue modulo `k`, and is the
//! predicate that matches the eigenvector classes exactly.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Component, Hypergraph};
use crate::zk_solver::{Kind, ZeroOperator, ZkAssignment};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("sets do not partition the component: {0}")]
    NotAPartition(String),
    #[error("odd/even bipartitions are defined for even k only, got k = {0}")]
    FlavorRequiresEvenK(usize),
    #[error("{kind} partitions require k = {expected}, got k = {found}")]
    WrongUniformity {
        kind: MultipartitionKind,
        expected: usize,
        found: usize,
    },
    #[error("brute force needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Hm,
    Odd,
    Even,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Hm => "hm",
            Flavor::Odd => "odd",
            Flavor::Even => "even",
        }
    }

    fn edge_ok(self, in_v1: usize) -> bool {
        match self {
            Flavor::Hm => in_v1 == 1,
            Flavor::Odd => in_v1 % 2 == 1,
            Flavor::Even => in_v1.is_multiple_of(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartitionWitness {
    pub component: usize,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub flavor: Flavor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MultipartitionKind {
    #[serde(rename = "tri")]
    Tripartite,
    #[serde(rename = "lquad")]
    LQuad,
    #[serde(rename = "slquad")]
    SlQuad,
    #[serde(rename = "penta")]
    Penta,
}

impl std::fmt::Display for MultipartitionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

// Per-part intersection sizes |e ∩ V_1|, ..., |e ∩ V_p| of the listed clauses.
const TRI_CLAUSES: &[&[usize]] = &[&[1, 1, 1]];
const LQUAD_CLAUSES: &[&[usize]] = &[&[2, 0, 2, 0], &[0, 2, 0, 2], &[2, 1, 0, 1], &[0, 1, 2, 1]];
const SLQUAD_CLAUSES: &[&[usize]] = &[
    &[3, 0, 1, 0],
    &[1, 0, 3, 0],
    &[0, 3, 0, 1],
    &[0, 1, 0, 3],
    &[2, 2, 0, 0],
    &[0, 2, 2, 0],
    &[0, 0, 2, 2],
    &[1, 1, 1, 1],
];
const PENTA_CLAUSES: &[&[usize]] = &[
    &[1, 2, 0, 0, 2],
    &[1, 0, 2, 2, 0],
    &[3, 1, 0, 0, 1],
    &[3, 0, 1, 1, 0],
    &[0, 3, 0, 1, 1],
    &[1, 0, 3, 1, 0],
    &[1, 1, 0, 3, 0],
    &[0, 1, 1, 0, 3],
    &[1, 1, 1, 1, 1],
];

impl MultipartitionKind {
    pub const ALL: [MultipartitionKind; 4] = [
        MultipartitionKind::Tripartite,
        MultipartitionKind::LQuad,
        MultipartitionKind::SlQuad,
        MultipartitionKind::Penta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MultipartitionKind::Tripartite => "tri",
            MultipartitionKind::LQuad => "lquad",
            MultipartitionKind::SlQuad => "slquad",
            MultipartitionKind::Penta => "penta",
        }
    }

    /// Both the uniformity and the number of parts.
    pub fn uniformity(self) -> usize {
        match self {
            MultipartitionKind::Tripartite => 3,
            MultipartitionKind::LQuad | MultipartitionKind::SlQuad => 4,
            MultipartitionKind::Penta => 5,
        }
    }

    pub fn operator(self) -> ZeroOperator {
        match self {
            MultipartitionKind::SlQuad => ZeroOperator::Signless,
            _ => ZeroOperator::Laplacian,
        }
    }

    pub fn min_nonempty(self) -> usize {
        match self {
            MultipartitionKind::Tripartite | MultipartitionKind::Penta => 3,
            MultipartitionKind::LQuad | MultipartitionKind::SlQuad => 2,
        }
    }

    pub fn literal_clauses(self) -> &'static [&'static [usize]] {
        match self {
            MultipartitionKind::Tripartite => TRI_CLAUSES,
            MultipartitionKind::LQuad => LQUAD_CLAUSES,
            MultipartitionKind::SlQuad => SLQUAD_CLAUSES,
            MultipartitionKind::Penta => PENTA_CLAUSES,
        }
    }

    /// The configured kind for a uniformity/operator pair, if any.
    pub fn for_operator(k: usize, op: ZeroOperator) -> Option<Self> {
        match (k, op) {
            (3, ZeroOperator::Laplacian) => Some(MultipartitionKind::Tripartite),
            (4, ZeroOperator::Laplacian) => Some(MultipartitionKind::LQuad),
            (4, ZeroOperator::Signless) => Some(MultipartitionKind::SlQuad),
            (5, ZeroOperator::Laplacian) => Some(MultipartitionKind::Penta),
            _ => None,
        }
    }

    fn rhs(self) -> usize {
        match self.operator() {
            ZeroOperator::Laplacian => 0,
            ZeroOperator::Signless => self.uniformity() / 2,
        }
    }

    /// Edge test under the fixed clause list: inside one part, or one of
    /// the listed intersection patterns.
    pub fn literal_edge_ok(self, counts: &[usize]) -> bool {
        let k = self.uniformity();
        counts.contains(&k) || self.literal_clauses().contains(&counts)
    }

    /// Edge test under the phase residue condition.
    pub fn residue_edge_ok(self, counts: &[usize]) -> bool {
        let k = self.uniformity();
        counts.iter().enumerate().map(|(j, c)| j * c).sum::<usize>() % k == self.rhs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    Literal,
    Residue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultipartitionWitness {
    pub component: usize,
    /// `parts[j]` holds the vertices of `V_{j+1}`; parts may be empty.
    pub parts: Vec<Vec<usize>>,
    pub kind: MultipartitionKind,
}

fn check_partition(comp: &Component, sets: &[&[usize]]) -> Result<(), PartitionError> {
    let mut seen = HashSet::new();
    for set in sets {
        for &v in *set {
            if comp.local_index(v).is_none() {
                return Err(PartitionError::NotAPartition(format!(
                    "vertex {} is outside the component",
                    v + 1
                )));
            }
            if !seen.insert(v) {
                return Err(PartitionError::NotAPartition(format!(
                    "vertex {} appears twice",
                    v + 1
                )));
            }
        }
    }
    if seen.len() != comp.len() {
        return Err(PartitionError::NotAPartition(format!(
            "{} of {} vertices covered",
            seen.len(),
            comp.len()
        )));
    }
    Ok(())
}

fn local_edges(h: &Hypergraph, comp: &Component) -> Vec<Vec<usize>> {
    comp.edges
        .iter()
        .map(|&e| {
            h.edges()[e]
                .iter()
                .map(|&v| comp.local_index(v).expect("edge inside component"))
                .collect()
        })
        .collect()
}

fn check_budget(base: u128, exp: usize, budget: u64) -> Result<(), PartitionError> {
    let required = base.checked_pow(exp as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(PartitionError::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn bipartition_ok(edges: &[Vec<usize>], in_v1: &[bool], flavor: Flavor) -> bool {
    edges
        .iter()
        .all(|e| flavor.edge_ok(e.iter().filter(|&&v| in_v1[v]).count()))
}

pub fn validate_bipartition(
    h: &Hypergraph,
    comp: &Component,
    w: &BipartitionWitness,
) -> Result<bool, PartitionError> {
    if w.flavor != Flavor::Hm && !h.k().is_multiple_of(2) {
        return Err(PartitionError::FlavorRequiresEvenK(h.k()));
    }
    check_partition(comp, &[&w.v1, &w.v2])?;
    if comp.edges.is_empty() {
        return Ok(true);
    }
    if w.v1.is_empty() || w.v2.is_empty() {
        return Ok(false);
    }
    let mut in_v1 = vec![false; comp.len()];
    for &v in &w.v1 {
        in_v1[comp.local_index(v).unwrap()] = true;
    }
    Ok(bipartition_ok(&local_edges(h, comp), &in_v1, w.flavor))
}

fn witness_from_mask(comp: &Component, id: usize, mask: u64, flavor: Flavor) -> BipartitionWitness {
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    for (i, &v) in comp.vertices.iter().enumerate() {
        if mask >> i & 1 == 1 {
            v1.push(v);
        } else {
            v2.push(v);
        }
    }
    BipartitionWitness {
        component: id,
        v1,
        v2,
        flavor,
    }
}

/// Every valid bipartition of one component by exhaustive search. Odd and
/// even witnesses are identified with their swap and reported with the
/// lowest vertex in `v1`; hm witnesses are ordered (`v1` holds the heads).
/// An edgeless component has exactly one, trivial, witness.
pub fn enumerate_bipartitions(
    h: &Hypergraph,
    comp: &Component,
    component_id: usize,
    flavor: Flavor,
    budget: u64,
) -> Result<Vec<BipartitionWitness>, PartitionError> {
    if flavor != Flavor::Hm && !h.k().is_multiple_of(2) {
        return Err(PartitionError::FlavorRequiresEvenK(h.k()));
    }
    if comp.edges.is_empty() {
        let all = comp.vertices.clone();
        let (v1, v2) = match flavor {
            Flavor::Hm => (Vec::new(), all),
            _ => (all, Vec::new()),
        };
        return Ok(vec![BipartitionWitness {
            component: component_id,
            v1,
            v2,
            flavor,
        }]);
    }
    let m = comp.len();
    check_budget(2, m, budget)?;
    let edges = local_edges(h, comp);
    let full = (1u64 << m) - 1;
    let mut out = Vec::new();
    let mut in_v1 = vec![false; m];
    for mask in 1..full {
        if flavor != Flavor::Hm && mask & 1 == 0 {
            continue;
        }
        for (i, slot) in in_v1.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
        }
        if bipartition_ok(&edges, &in_v1, flavor) {
            out.push(witness_from_mask(comp, component_id, mask, flavor));
        }
    }
    Ok(out)
}

/// Number of bipartitions summed over components (the per-component
/// multiplicity convention).
pub fn count_bipartitions(
    h: &Hypergraph,
    comps: &[Component],
    flavor: Flavor,
    budget: u64,
) -> Result<usize, PartitionError> {
    comps.iter().enumerate().try_fold(0, |acc, (id, c)| {
        Ok(acc + enumerate_bipartitions(h, c, id, flavor, budget)?.len())
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Head,
    Mass,
}

struct HmSearch<'a> {
    edges: &'a [Vec<usize>],
    incident: Vec<Vec<usize>>,
    roles: Vec<Role>,
}

impl HmSearch<'_> {
    fn edge_consistent(&self, e: usize) -> bool {
        let (mut heads, mut free) = (0, 0);
        for &v in &self.edges[e] {
            match self.roles[v] {
                Role::Head => heads += 1,
                Role::Free => free += 1,
                Role::Mass => {}
            }
        }
        heads <= 1 && (heads == 1 || free > 0)
    }

    fn consistent_around(&self, changed: &[usize]) -> bool {
        changed
            .iter()
            .flat_map(|&v| &self.incident[v])
            .all(|&e| self.edge_consistent(e))
    }

    fn assign(&mut self, edge: usize, head: Option<usize>) -> Vec<usize> {
        let mut changed = Vec::new();
        for &v in &self.edges[edge] {
            if self.roles[v] == Role::Free {
                self.roles[v] = if Some(v) == head { Role::Head } else { Role::Mass };
                changed.push(v);
            }
        }
        changed
    }

    fn undo(&mut self, changed: &[usize]) {
        for &v in changed {
            self.roles[v] = Role::Free;
        }
    }

    fn solve(&mut self, edge: usize) -> bool {
        if edge == self.edges.len() {
            return true;
        }
        let has_head = self.edges[edge].iter().any(|&v| self.roles[v] == Role::Head);
        let choices: Vec<Option<usize>> = if has_head {
            vec![None]
        } else {
            self.edges[edge]
                .iter()
                .filter(|&&v| self.roles[v] == Role::Free)
                .map(|&v| Some(v))
                .collect()
        };
        for head in choices {
            let changed = self.assign(edge, head);
            if self.consistent_around(&changed) && self.solve(edge + 1) {
                return true;
            }
            self.undo(&changed);
        }
        false
    }
}

/// Backtracking search for one head per edge, trying lower vertex ids
/// first. Vertices in no edge go to `v2`.
pub fn find_hm_bipartition(
    h: &Hypergraph,
    comp: &Component,
    component_id: usize,
) -> Option<BipartitionWitness> {
    let edges = local_edges(h, comp);
    let mut incident = vec![Vec::new(); comp.len()];
    for (e, edge) in edges.iter().enumerate() {
        for &v in edge {
            incident[v].push(e);
        }
    }
    let mut search = HmSearch {
        edges: &edges,
        incident,
        roles: vec![Role::Free; comp.len()],
    };
    if !search.solve(0) {
        return None;
    }
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    for (i, &v) in comp.vertices.iter().enumerate() {
        if search.roles[i] == Role::Head {
            v1.push(v);
        } else {
            v2.push(v);
        }
    }
    Some(BipartitionWitness {
        component: component_id,
        v1,
        v2,
        flavor: Flavor::Hm,
    })
}

/// Union of per-component head sets, or `None` if some component has no
/// hm-bipartition.
pub fn find_global_hm_heads(h: &Hypergraph, comps: &[Component]) -> Option<Vec<usize>> {
    let mut heads = Vec::new();
    for (id, c) in comps.iter().enumerate() {
        heads.extend(find_hm_bipartition(h, c, id)?.v1);
    }
    heads.sort_unstable();
    Some(heads)
}

/// Scalable to real: the used part indices are one value, or two values
/// `k/2` apart.
fn labels_are_real(used: &[bool], k: usize) -> bool {
    let idx: Vec<usize> = (0..used.len()).filter(|&j| used[j]).collect();
    match idx[..] {
        [_] => true,
        [a, b] => k.is_multiple_of(2) && b - a == k / 2,
        _ => false,
    }
}

fn labels_ok(
    edges: &[Vec<usize>],
    labels: &[usize],
    kind: MultipartitionKind,
    predicate: Predicate,
) -> bool {
    let p = kind.uniformity();
    let mut used = vec![false; p];
    for &l in labels {
        used[l] = true;
    }
    if used.iter().filter(|&&u| u).count() < kind.min_nonempty() {
        return false;
    }
    if predicate == Predicate::Residue && labels_are_real(&used, p) {
        return false;
    }
    let mut counts = vec![0; p];
    edges.iter().all(|e| {
        counts.iter_mut().for_each(|c| *c = 0);
        for &v in e {
            counts[labels[v]] += 1;
        }
        match predicate {
            Predicate::Literal => kind.literal_edge_ok(&counts),
            Predicate::Residue => kind.residue_edge_ok(&counts),
        }
    })
}

fn check_kind(h: &Hypergraph, kind: MultipartitionKind) -> Result<(), PartitionError> {
    if h.k() != kind.uniformity() {
        return Err(PartitionError::WrongUniformity {
            kind,
            expected: kind.uniformity(),
            found: h.k(),
        });
    }
    Ok(())
}

fn witness_labels(
    comp: &Component,
    w: &MultipartitionWitness,
) -> Result<Vec<usize>, PartitionError> {
    if w.parts.len() != w.kind.uniformity() {
        return Err(PartitionError::NotAPartition(format!(
            "{} needs {} parts, got {}",
            w.kind,
            w.kind.uniformity(),
            w.parts.len()
        )));
    }
    let sets: Vec<&[usize]> = w.parts.iter().map(Vec::as_slice).collect();
    check_partition(comp, &sets)?;
    let mut labels = vec![0; comp.len()];
    for (j, part) in w.parts.iter().enumerate() {
        for &v in part {
            labels[comp.local_index(v).unwrap()] = j;
        }
    }
    Ok(labels)
}

/// Under `Residue`, a witness must also not be scalable to a real phase
/// vector: those classes are the bipartitions.
pub fn validate_multipartition(
    h: &Hypergraph,
    comp: &Component,
    w: &MultipartitionWitness,
    predicate: Predicate,
) -> Result<bool, PartitionError> {
    check_kind(h, w.kind)?;
    let labels = witness_labels(comp, w)?;
    Ok(labels_ok(&local_edges(h, comp), &labels, w.kind, predicate))
}

/// Lexicographically smallest image under `j -> ±j + t (mod p)`.
fn orbit_key(labels: &[usize], p: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for sign in [false, true] {
        for t in 0..p {
            let img: Vec<usize> = labels
                .iter()
                .map(|&l| {
                    let base = if sign { (p - l) % p } else { l };
                    (base + t) % p
                })
                .collect();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

fn witness_from_labels(
    comp: &Component,
    id: usize,
    labels: &[usize],
    kind: MultipartitionKind,
) -> MultipartitionWitness {
    let mut parts = vec![Vec::new(); kind.uniformity()];
    for (i, &l) in labels.iter().enumerate() {
        parts[l].push(comp.vertices[i]);
    }
    MultipartitionWitness {
        component: id,
        parts,
        kind,
    }
}

/// Exhaustive enumeration of part labelings, identified under index shift
/// and negation. Each orbit is reported once, by its lexicographically first
/// valid labeling.
pub fn enumerate_multipartitions(
    h: &Hypergraph,
    comp: &Component,
    component_id: usize,
    kind: MultipartitionKind,
    predicate: Predicate,
    budget: u64,
) -> Result<Vec<MultipartitionWitness>, PartitionError> {
    check_kind(h, kind)?;
    let p = kind.uniformity();
    let m = comp.len();
    check_budget(p as u128, m, budget)?;
    let edges = local_edges(h, comp);
    let mut labels = vec![0usize; m];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        if labels_ok(&edges, &labels, kind, predicate) && seen.insert(orbit_key(&labels, p)) {
            out.push(witness_from_labels(comp, component_id, &labels, kind));
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < p {
                break;
            }
            labels[i] = 0;
        }
    }
}

/// What a phase class looks like as a vertex partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionWitness {
    /// Constant phases: the all-ones vector on the component.
    AllOnes { component: usize, vertices: Vec<usize> },
    Bipartition(BipartitionWitness),
    Multipartition(MultipartitionWitness),
    /// Phase classes for a uniformity without a configured pattern.
    Phase {
        component: usize,
        modulus: u64,
        parts: Vec<Vec<usize>>,
    },
}

/// Parts are the phase-value classes of the canonical representative.
pub fn partition_from_assignment(
    a: &ZkAssignment,
    op: ZeroOperator,
    component_id: usize,
) -> PartitionWitness {
    let a = a.shift_canonicalize();
    let k = a.modulus;
    let mut parts = vec![Vec::new(); k as usize];
    for (&v, &alpha) in a.support.iter().zip(&a.alpha) {
        parts[alpha as usize].push(v);
    }
    if a.is_constant() {
        return PartitionWitness::AllOnes {
            component: component_id,
            vertices: a.support.clone(),
        };
    }
    if a.classify() == Kind::H {
        let half = (k / 2) as usize;
        let flavor = match op {
            ZeroOperator::Laplacian => Flavor::Even,
            ZeroOperator::Signless => Flavor::Odd,
        };
        return PartitionWitness::Bipartition(BipartitionWitness {
            component: component_id,
            v1: std::mem::take(&mut parts[0]),
            v2: std::mem::take(&mut parts[half]),
            flavor,
        });
    }
    match MultipartitionKind::for_operator(k as usize, op) {
        Some(kind) => PartitionWitness::Multipartition(MultipartitionWitness {
            component: component_id,
            parts,
            kind,
        }),
        None => PartitionWitness::Phase {
            component: component_id,
            modulus: k,
            parts,
        },
    }
}

/// Inverse of [`partition_from_assignment`]: part `j` gets phase `j`, a
/// bipartition gets phases `0` and `k/2`.
pub fn assignment_from_witness(w: &PartitionWitness, k: u64) -> ZkAssignment {
    let mut pairs: Vec<(usize, u64)> = match w {
        PartitionWitness::AllOnes { vertices, .. } => vertices.iter().map(|&v| (v, 0)).collect(),
        PartitionWitness::Bipartition(b) => b
            .v1
            .iter()
            .map(|&v| (v, 0))
            .chain(b.v2.iter().map(|&v| (v, k / 2)))
            .collect(),
        PartitionWitness::Multipartition(MultipartitionWitness { parts, .. })
        | PartitionWitness::Phase { parts, .. } => parts
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.iter().map(move |&v| (v, j as u64)))
            .collect(),
    };
    pairs.sort_unstable();
    let (support, alpha) = pairs.into_iter().unzip();
    ZkAssignment::new(k, support, alpha)
}

/// An edge intersection pattern on which the two predicates disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternDisagreement {
    /// `|e ∩ V_j|` for each part.
    pub counts: Vec<usize>,
    /// The same pattern as a sorted multiset of phase values.
    pub values: Vec<u64>,
    pub literal: bool,
    pub residue: bool,
}

/// A concrete edge on which the predicates disagree under a given witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeDisagreement {
    /// 1-based vertex ids.
    pub edge: Vec<usize>,
    pub counts: Vec<usize>,
    pub literal: bool,
    pub residue: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub kind: MultipartitionKind,
    pub patterns: Vec<PatternDisagreement>,
    pub edges: Vec<EdgeDisagreement>,
}

impl DiscrepancyReport {
    pub fn flags_values(&self, values: &[u64]) -> bool {
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        self.patterns.iter().any(|p| p.values == sorted)
    }

    pub fn flags_counts(&self, counts: &[usize]) -> bool {
        self.patterns.iter().any(|p| p.counts == counts)
    }
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() + 1 == parts {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for c in 0..=total {
        prefix.push(c);
        compositions(total - c, parts, prefix, out);
        prefix.pop();
    }
}

/// Classifies every `k`-element multiset of part indices under both
/// predicates and keeps the disagreements.
pub fn discrepancy_scan(kind: MultipartitionKind) -> DiscrepancyReport {
    let k = kind.uniformity();
    let mut all = Vec::new();
    compositions(k, k, &mut Vec::new(), &mut all);
    let patterns = all
        .into_iter()
        .filter_map(|counts| {
            let literal = kind.literal_edge_ok(&counts);
            let residue = kind.residue_edge_ok(&counts);
            (literal != residue).then(|| PatternDisagreement {
                values: counts
                    .iter()
                    .enumerate()
                    .flat_map(|(j, &c)| std::iter::repeat_n(j as u64, c))
                    .collect(),
                counts,
                literal,
                residue,
            })
        })
        .collect();
    DiscrepancyReport {
        kind,
        patterns,
        edges: Vec::new(),
    }
}

/// The pattern scan plus the induced edges of `comp` on which the witness
/// satisfies one predicate but not the other.
pub fn discrepancy_scan_witness(
    h: &Hypergraph,
    comp: &Component,
    w: &MultipartitionWitness,
) -> Result<DiscrepancyReport, PartitionError> {
    check_kind(h, w.kind)?;
    let labels = witness_labels(comp, w)?;
    let mut report = discrepancy_scan(w.kind);
    for (local, &e) in local_edges(h, comp).iter().zip(&comp.edges) {
        let mut counts = vec![0; w.kind.uniformity()];
        for &v in local {
            counts[labels[v]] += 1;
        }
        let literal = w.kind.literal_edge_ok(&counts);
        let residue = w.kind.residue_edge_ok(&counts);
        if literal != residue {
            report.edges.push(EdgeDisagreement {
                edge: h.edges()[e].iter().map(|v| v + 1).collect(),
                counts,
                literal,
                residue,
            });
        }
    }
    Ok(report)
}

/// `{"kind", "parts", "predicate", "valid"}` with 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessExport {
    pub kind: String,
    pub parts: Vec<Vec<usize>>,
    pub predicate: Predicate,
    pub valid: bool,
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

impl WitnessExport {
    pub fn bipartition(w: &BipartitionWitness, valid: bool) -> Self {
        Self {
            kind: w.flavor.name().into(),
            parts: vec![one_based(&w.v1), one_based(&w.v2)],
            predicate: Predicate::Literal,
            valid,
        }
    }

    pub fn multipartition(w: &MultipartitionWitness, predicate: Predicate, valid: bool) -> Self {
        Self {
            kind: w.kind.name().into(),
            parts: w.parts.iter().map(|p| one_based(p)).collect(),
            predicate,
            valid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::connected_components;
    use crate::zk_solver::DEFAULT_BRUTE_FORCE_BUDGET as BUDGET;

    fn from(k: usize, n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_one_based(k, n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn example_2_1() -> Hypergraph {
        from(4, 6, &[&[1, 2, 3, 4], &[1, 3, 5, 6], &[1, 2, 3, 6]])
    }

    fn example_6_1() -> Hypergraph {
        from(3, 7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]])
    }

    fn zb(ids: &[usize]) -> Vec<usize> {
        ids.iter().map(|v| v - 1).collect()
    }

    fn bip(v1: &[usize], v2: &[usize], flavor: Flavor) -> BipartitionWitness {
        BipartitionWitness {
            component: 0,
            v1: zb(v1),
            v2: zb(v2),
            flavor,
        }
    }

    fn multi(parts: &[&[usize]], kind: MultipartitionKind) -> MultipartitionWitness {
        MultipartitionWitness {
            component: 0,
            parts: parts.iter().map(|p| zb(p)).collect(),
            kind,
        }
    }

    fn first_component(h: &Hypergraph) -> Component {
        connected_components(h).components.remove(0)
    }

    #[test]
    fn validates_bipartitions() {
        let h = example_2_1();
        let c = first_component(&h);
        let w = bip(&[1, 2, 5], &[3, 4, 6], Flavor::Even);
        assert_eq!(validate_bipartition(&h, &c, &w), Ok(true));
        let w = bip(&[1], &[2, 3, 4, 5, 6], Flavor::Even);
        assert_eq!(validate_bipartition(&h, &c, &w), Ok(false));
        let w = bip(&[1], &[2, 3, 4, 5], Flavor::Even);
        assert!(matches!(
            validate_bipartition(&h, &c, &w),
            Err(PartitionError::NotAPartition(_))
        ));

        let e = from(3, 3, &[&[1, 2, 3]]);
        let c = first_component(&e);
        assert_eq!(validate_bipartition(&e, &c, &bip(&[1], &[2, 3], Flavor::Hm)), Ok(true));
        assert_eq!(
            validate_bipartition(&e, &c, &bip(&[1], &[2, 3], Flavor::Odd)),
            Err(PartitionError::FlavorRequiresEvenK(3))
        );
    }

    #[test]
    fn enumerates_bipartitions() {
        let h = example_2_1();
        let c = first_component(&h);
        let even = enumerate_bipartitions(&h, &c, 0, Flavor::Even, BUDGET).unwrap();
        assert_eq!(even.len(), 3);

        let e4 = from(4, 4, &[&[1, 2, 3, 4]]);
        let c = first_component(&e4);
        assert_eq!(enumerate_bipartitions(&e4, &c, 0, Flavor::Odd, BUDGET).unwrap().len(), 4);
        assert_eq!(enumerate_bipartitions(&e4, &c, 0, Flavor::Even, BUDGET).unwrap().len(), 3);
        assert_eq!(enumerate_bipartitions(&e4, &c, 0, Flavor::Hm, BUDGET).unwrap().len(), 4);
        assert!(matches!(
            enumerate_bipartitions(&e4, &c, 0, Flavor::Odd, 8),
            Err(PartitionError::BudgetExceeded { required: 16, budget: 8 })
        ));

        let isolated = Hypergraph::new(4, 1, vec![]).unwrap();
        let c = first_component(&isolated);
        let w = enumerate_bipartitions(&isolated, &c, 0, Flavor::Even, BUDGET).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(validate_bipartition(&isolated, &c, &w[0]), Ok(true));
    }

    #[test]
    fn hm_search_examples() {
        let e = from(3, 3, &[&[1, 2, 3]]);
        let w = find_hm_bipartition(&e, &first_component(&e), 0).unwrap();
        assert_eq!(w.v1, vec![0]);

        let h = from(3, 5, &[&[1, 2, 3], &[1, 4, 5]]);
        let c = first_component(&h);
        let w = find_hm_bipartition(&h, &c, 0).unwrap();
        assert_eq!(w.v1, vec![0]);
        assert_eq!(validate_bipartition(&h, &c, &w), Ok(true));

        // complete 3-uniform on 4 vertices; exhaustive check says no head set works
        let k4 = from(3, 4, &[&[1, 2, 3], &[2, 3, 4], &[1, 3, 4], &[1, 2, 4]]);
        let c = first_component(&k4);
        assert!(enumerate_bipartitions(&k4, &c, 0, Flavor::Hm, BUDGET).unwrap().is_empty());
        assert!(find_hm_bipartition(&k4, &c, 0).is_none());

        let isolated = Hypergraph::new(3, 1, vec![]).unwrap();
        let w = find_hm_bipartition(&isolated, &first_component(&isolated), 0).unwrap();
        assert!(w.v1.is_empty());
        assert_eq!(w.v2, vec![0]);
    }

    #[test]
    fn validates_multipartitions() {
        use MultipartitionKind::*;
        let h = example_6_1();
        let c = first_component(&h);
        for parts in [
            [&[1usize][..], &[2], &[3, 4, 5, 6, 7]],
            [&[1, 2, 3], &[4], &[5, 6, 7]],
            [&[1, 2, 3, 4, 5], &[6], &[7]],
            [&[1, 4, 7], &[2, 5], &[3, 6]],
        ] {
            let w = multi(&parts, Tripartite);
            assert_eq!(validate_multipartition(&h, &c, &w, Predicate::Literal), Ok(true));
            assert_eq!(validate_multipartition(&h, &c, &w, Predicate::Residue), Ok(true));
        }
        let w = multi(&[&[1, 2], &[3, 4, 5], &[6, 7]], Tripartite);
        assert_eq!(validate_multipartition(&h, &c, &w, Predicate::Literal), Ok(false));

        let e4 = from(4, 4, &[&[1, 2, 3, 4]]);
        let c = first_component(&e4);
        let w = multi(&[&[1], &[2], &[3], &[4]], LQuad);
        assert_eq!(validate_multipartition(&e4, &c, &w, Predicate::Literal), Ok(false));
        assert_eq!(validate_multipartition(&e4, &c, &w, Predicate::Residue), Ok(false));
        // the same split is an sL-quadripartition under both predicates
        let w = multi(&[&[1], &[2], &[3], &[4]], SlQuad);
        assert_eq!(validate_multipartition(&e4, &c, &w, Predicate::Literal), Ok(true));
        assert_eq!(validate_multipartition(&e4, &c, &w, Predicate::Residue), Ok(true));

        assert!(matches!(
            validate_multipartition(&h, &first_component(&h), &w, Predicate::Literal),
            Err(PartitionError::WrongUniformity { .. })
        ));
    }

    #[test]
    fn enumerates_multipartitions() {
        let e = from(3, 3, &[&[1, 2, 3]]);
        let c = first_component(&e);
        let w = enumerate_multipartitions(&e, &c, 0, MultipartitionKind::Tripartite, Predicate::Residue, BUDGET)
            .unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].parts, vec![vec![0], vec![1], vec![2]]);

        let h = example_6_1();
        let c = first_component(&h);
        for predicate in [Predicate::Residue, Predicate::Literal] {
            let w = enumerate_multipartitions(&h, &c, 0, MultipartitionKind::Tripartite, predicate, BUDGET)
                .unwrap();
            assert_eq!(w.len(), 13);
            assert!(w
                .iter()
                .all(|x| validate_multipartition(&h, &c, x, predicate) == Ok(true)));
        }
    }

    #[test]
    fn tripartite_residue_never_uses_two_values() {
        let h = example_6_1();
        let c = first_component(&h);
        let w = enumerate_multipartitions(&h, &c, 0, MultipartitionKind::Tripartite, Predicate::Residue, BUDGET)
            .unwrap();
        assert!(w.iter().all(|x| x.parts.iter().all(|p| !p.is_empty())));
    }

    #[test]
    fn partition_assignment_round_trip() {
        let a = ZkAssignment::new(3, vec![0, 1, 2], vec![0, 1, 2]);
        let w = partition_from_assignment(&a, ZeroOperator::Laplacian, 0);
        match &w {
            PartitionWitness::Multipartition(m) => {
                assert_eq!(m.kind, MultipartitionKind::Tripartite);
                assert_eq!(m.parts, vec![vec![0], vec![1], vec![2]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(assignment_from_witness(&w, 3), a);

        let a = ZkAssignment::new(4, vec![0, 1, 2, 3], vec![0, 2, 2, 0]);
        let w = partition_from_assignment(&a, ZeroOperator::Laplacian, 0);
        assert!(matches!(&w, PartitionWitness::Bipartition(b) if b.flavor == Flavor::Even));
        assert_eq!(assignment_from_witness(&w, 4), a);
        let w = partition_from_assignment(&a, ZeroOperator::Signless, 0);
        assert!(matches!(&w, PartitionWitness::Bipartition(b) if b.flavor == Flavor::Odd));

        let a = ZkAssignment::new(5, vec![3, 4], vec![2, 2]);
        let w = partition_from_assignment(&a, ZeroOperator::Laplacian, 0);
        assert!(matches!(w, PartitionWitness::AllOnes { .. }));
        assert_eq!(assignment_from_witness(&w, 5), a.shift_canonicalize());
    }

    #[test]
    fn discrepancy_examples() {
        let l = discrepancy_scan(MultipartitionKind::LQuad);
        assert!(l.flags_values(&[0, 1, 1, 2]));
        let p = l.patterns.iter().find(|p| p.values == vec![0, 1, 1, 2]).unwrap();
        assert!(p.residue && !p.literal);

        let s = discrepancy_scan(MultipartitionKind::SlQuad);
        assert!(s.flags_values(&[0, 0, 3, 3]));

        let t = discrepancy_scan(MultipartitionKind::Tripartite);
        assert!(t.patterns.is_empty());

        let penta = discrepancy_scan(MultipartitionKind::Penta);
        assert!(penta.flags_counts(&[1, 0, 3, 1, 0]));
        let p = penta.patterns.iter().find(|p| p.counts == vec![1, 0, 3, 1, 0]).unwrap();
        assert!(p.literal && !p.residue);
    }

    #[test]
    fn witness_scan_reports_edges() {
        let e4 = from(4, 4, &[&[1, 2, 3, 4]]);
        let c = first_component(&e4);
        let w = multi(&[&[1], &[2, 3], &[4], &[]], MultipartitionKind::LQuad);
        let report = discrepancy_scan_witness(&e4, &c, &w).unwrap();
        assert_eq!(report.edges.len(), 1);
        assert_eq!(report.edges[0].counts, vec![1, 2, 1, 0]);
        assert!(report.edges[0].residue && !report.edges[0].literal);
    }
}
