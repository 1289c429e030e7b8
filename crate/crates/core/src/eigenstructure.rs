//! Minimal canonical eigenvector classes of the zero eigenvalue, their H/N
//! classification and conjugate pairing, closed-form counts, and the
//! cross-check against direct partition counts.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{Float, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{connected_components, Component, Hypergraph};
use crate::partitions::{
    enumerate_bipartitions, enumerate_multipartitions, Flavor, MultipartitionKind, PartitionError,
    Predicate,
};
use crate::tensor_ops::{Eigenpair, Operator, TensorError};
use crate::zk_solver::{
    build_zero_eig_system, enumerate_solutions, serialize_count, solve_mod_k, Kind, ZeroEigSystem,
    ZeroOperator, ZkAssignment, ZkLinearSystem,
};

/// Default tolerance for realized eigenvector residuals.
pub const DEFAULT_RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum EigenstructureError {
    #[error("component {component} has {required} phase solutions, enumeration budget is {budget}")]
    BudgetExceeded {
        component: usize,
        required: BigUint,
        budget: u64,
    },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("H count cross-check failed on {} component(s)", .0.discrepancies.len())]
    HCrosscheckMismatch(Box<HCountReport>),
}

/// One minimal canonical zero eigenvector, up to scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvectorClass {
    pub component: usize,
    pub operator: ZeroOperator,
    /// Shift-canonical; support is the whole component.
    pub representative: ZkAssignment,
    pub kind: Kind,
    /// Index of the conjugate class in the same list; H classes point at
    /// themselves.
    pub conjugate_partner: usize,
}

fn system_for(h: &Hypergraph, comp: &Component, op: ZeroOperator) -> Option<ZkLinearSystem> {
    match build_zero_eig_system(h, comp, op) {
        ZeroEigSystem::System(s) => Some(s),
        ZeroEigSystem::NoZeroEigenvalue => None,
    }
}

/// Classes of one component by enumeration of its solution set;
/// `conjugate_partner` indexes into the returned list.
pub fn component_zero_eigenvectors(
    h: &Hypergraph,
    comp: &Component,
    id: usize,
    op: ZeroOperator,
    budget: u64,
) -> Result<Vec<EigenvectorClass>, EigenstructureError> {
    let Some(sys) = system_for(h, comp, op) else {
        return Ok(Vec::new());
    };
    let desc = solve_mod_k(&sys);
    if !desc.feasible {
        return Ok(Vec::new());
    }
    if desc.solution_count > BigUint::from(budget) {
        return Err(EigenstructureError::BudgetExceeded {
            component: id,
            required: desc.solution_count,
            budget,
        });
    }
    let mut reps: Vec<ZkAssignment> = enumerate_solutions(&desc, usize::MAX)
        .expect("feasible")
        .filter(|a| a.alpha[0] == 0)
        .collect();
    reps.sort();
    let index: HashMap<ZkAssignment, usize> =
        reps.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    reps.iter()
        .map(|rep| {
            let partner = index
                .get(&rep.conjugate().shift_canonicalize())
                .copied()
                .ok_or_else(|| {
                    EigenstructureError::Verification(format!(
                        "conjugate of {:?} is not a solution",
                        rep.alpha
                    ))
                })?;
            Ok(EigenvectorClass {
                component: id,
                operator: op,
                representative: rep.clone(),
                kind: rep.classify(),
                conjugate_partner: partner,
            })
        })
        .collect()
}

/// All minimal canonical zero-eigenvector classes, ordered by component and
/// then by representative. `conjugate_partner` indexes into the returned
/// list. Components whose solution count exceeds `budget` are an error.
pub fn minimal_zero_eigenvectors(
    h: &Hypergraph,
    op: ZeroOperator,
    budget: u64,
) -> Result<Vec<EigenvectorClass>, EigenstructureError> {
    let mut out = Vec::new();
    for (id, comp) in connected_components(h).components.iter().enumerate() {
        let offset = out.len();
        for mut class in component_zero_eigenvectors(h, comp, id, op, budget)? {
            class.conjugate_partner += offset;
            out.push(class);
        }
    }
    Ok(out)
}

/// Closed-form counts for one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCounts {
    pub component: usize,
    /// 1-based.
    pub vertices: Vec<usize>,
    #[serde(serialize_with = "serialize_count")]
    pub solution_count: BigUint,
    #[serde(serialize_with = "serialize_count")]
    pub class_count: BigUint,
    #[serde(serialize_with = "serialize_count")]
    pub h_count: BigUint,
    #[serde(serialize_with = "serialize_count")]
    pub n_pair_count: BigUint,
    /// Odd `k`, signless operator, component with an edge.
    pub no_zero_eigenvalue: bool,
}

/// H classes without enumeration: real phase vectors are the solutions with
/// values in `{0, k/2}`, two per class.
fn closed_form_h(sys: &ZkLinearSystem, comp: &Component) -> BigUint {
    if comp.is_singleton() {
        return BigUint::from(1u8);
    }
    match sys.real_phase_subsystem() {
        Some(sub) => solve_mod_k(&sub).solution_count / 2u8,
        None => BigUint::from(u8::from(sys.rhs == 0)),
    }
}

pub fn component_counts(
    h: &Hypergraph,
    comp: &Component,
    id: usize,
    op: ZeroOperator,
) -> ComponentCounts {
    let vertices = comp.vertices.iter().map(|v| v + 1).collect();
    let Some(sys) = system_for(h, comp, op) else {
        return ComponentCounts {
            component: id,
            vertices,
            solution_count: BigUint::zero(),
            class_count: BigUint::zero(),
            h_count: BigUint::zero(),
            n_pair_count: BigUint::zero(),
            no_zero_eigenvalue: true,
        };
    };
    let desc = solve_mod_k(&sys);
    let (classes, h_count) = if desc.feasible {
        (&desc.solution_count / sys.modulus, closed_form_h(&sys, comp))
    } else {
        (BigUint::zero(), BigUint::zero())
    };
    let n_pairs = (&classes - &h_count) / 2u8;
    ComponentCounts {
        component: id,
        vertices,
        solution_count: desc.solution_count,
        class_count: classes,
        h_count,
        n_pair_count: n_pairs,
        no_zero_eigenvalue: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCounts {
    pub operator: ZeroOperator,
    pub components: Vec<ComponentCounts>,
    #[serde(serialize_with = "serialize_count")]
    pub h_total: BigUint,
    #[serde(serialize_with = "serialize_count")]
    pub n_pair_total: BigUint,
}

pub fn structure_counts(h: &Hypergraph, op: ZeroOperator) -> StructureCounts {
    let components: Vec<ComponentCounts> = connected_components(h)
        .components
        .iter()
        .enumerate()
        .map(|(id, c)| component_counts(h, c, id, op))
        .collect();
    let h_total = components.iter().map(|c| &c.h_count).sum();
    let n_pair_total = components.iter().map(|c| &c.n_pair_count).sum();
    StructureCounts {
        operator: op,
        components,
        h_total,
        n_pair_total,
    }
}

/// One component where the algebraic and combinatorial counts differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountDiscrepancy {
    pub component: usize,
    pub vertices: Vec<usize>,
    pub operator: ZeroOperator,
    pub algebraic: String,
    pub combinatorial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HCountReport {
    pub operator: ZeroOperator,
    #[serde(serialize_with = "serialize_count")]
    pub count: BigUint,
    #[serde(serialize_with = "serialize_count")]
    pub expected: BigUint,
    pub per_component: Vec<(usize, u64)>,
    pub discrepancies: Vec<CountDiscrepancy>,
}

impl HCountReport {
    pub fn matched(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// The per-component share of the proposition's right-hand side, from the
/// partition enumerators.
pub fn expected_h_count(
    h: &Hypergraph,
    comp: &Component,
    id: usize,
    op: ZeroOperator,
    budget: u64,
) -> Result<u64, PartitionError> {
    let even_k = h.k().is_multiple_of(2);
    Ok(match (even_k, op) {
        (true, ZeroOperator::Signless) => {
            enumerate_bipartitions(h, comp, id, Flavor::Odd, budget)?.len() as u64
        }
        (true, ZeroOperator::Laplacian) => {
            let even = enumerate_bipartitions(h, comp, id, Flavor::Even, budget)?.len() as u64;
            even + 1 - u64::from(comp.is_singleton())
        }
        (false, ZeroOperator::Laplacian) => 1,
        (false, ZeroOperator::Signless) => u64::from(comp.is_singleton()),
    })
}

/// H count per component (enumerated when within `budget`, closed form
/// otherwise, and required to agree), checked against the partition count.
/// A mismatch is returned as [`EigenstructureError::HCrosscheckMismatch`].
pub fn count_minimal_h(
    h: &Hypergraph,
    op: ZeroOperator,
    budget: u64,
) -> Result<HCountReport, EigenstructureError> {
    let comps = connected_components(h).components;
    let mut report = HCountReport {
        operator: op,
        count: BigUint::zero(),
        expected: BigUint::zero(),
        per_component: Vec::new(),
        discrepancies: Vec::new(),
    };
    for (id, comp) in comps.iter().enumerate() {
        let counts = component_counts(h, comp, id, op);
        if counts.solution_count <= BigUint::from(budget) {
            let enumerated = component_zero_eigenvectors(h, comp, id, op, budget)?
                .iter()
                .filter(|c| c.kind == Kind::H)
                .count();
            if BigUint::from(enumerated) != counts.h_count {
                return Err(EigenstructureError::Verification(format!(
                    "component {}: {} enumerated H classes, closed form gives {}",
                    id, enumerated, counts.h_count
                )));
            }
        }
        let expected = expected_h_count(h, comp, id, op, budget)?;
        if counts.h_count != BigUint::from(expected) {
            report.discrepancies.push(CountDiscrepancy {
                component: id,
                vertices: counts.vertices.clone(),
                operator: op,
                algebraic: counts.h_count.to_string(),
                combinatorial: expected.to_string(),
            });
        }
        report.per_component.push((id, expected));
        report.count += &counts.h_count;
        report.expected += expected;
    }
    if report.matched() {
        Ok(report)
    } else {
        Err(EigenstructureError::HCrosscheckMismatch(Box::new(report)))
    }
}

/// Number of conjugate pairs of N classes, from the closed-form counts.
pub fn count_n_pairs(h: &Hypergraph, op: ZeroOperator) -> BigUint {
    structure_counts(h, op).n_pair_total
}

/// Residue-predicate multipartition count for one component, when the
/// uniformity/operator pair has a configured pattern. Odd `k` with the
/// signless operator has no N classes at all and reports zero.
pub fn expected_n_pairs(
    h: &Hypergraph,
    comp: &Component,
    id: usize,
    op: ZeroOperator,
    budget: u64,
) -> Result<Option<u64>, PartitionError> {
    if h.k() % 2 == 1 && op == ZeroOperator::Signless {
        return Ok(Some(0));
    }
    match MultipartitionKind::for_operator(h.k(), op) {
        Some(kind) => {
            let w = enumerate_multipartitions(h, comp, id, kind, Predicate::Residue, budget)?;
            Ok(Some(w.len() as u64))
        }
        None => Ok(None),
    }
}

/// `λ = 0`, `x_j = e^{2πi α_j / k}` on the class's component, zero
/// elsewhere. Fails unless every edge sum meets the residue exactly and the
/// numeric residual is within `tolerance`.
pub fn realize_complex<F: Float>(
    h: &Hypergraph,
    class: &EigenvectorClass,
    tolerance: F,
) -> Result<Eigenpair<F>, EigenstructureError> {
    let comps = connected_components(h).components;
    let comp = comps.get(class.component).ok_or_else(|| {
        EigenstructureError::Verification(format!("no component {}", class.component))
    })?;
    let rep = &class.representative;
    if rep.support != comp.vertices {
        return Err(EigenstructureError::Verification(format!(
            "class support {:?} is not component {}",
            rep.support, class.component
        )));
    }
    let sys = system_for(h, comp, class.operator).ok_or_else(|| {
        EigenstructureError::Verification("operator has no zero eigenvalue here".into())
    })?;
    if !sys.is_satisfied_by(&rep.alpha) {
        return Err(EigenstructureError::Verification(format!(
            "phases {:?} fail the residue condition",
            rep.alpha
        )));
    }
    let k = rep.modulus as f64;
    let mut x = vec![Complex::new(F::zero(), F::zero()); h.n()];
    for (&v, &a) in rep.support.iter().zip(&rep.alpha) {
        let angle = F::from(2.0 * PI * a as f64 / k).unwrap();
        x[v] = Complex::from_polar(F::one(), angle);
    }
    let pair = Eigenpair::new(
        h,
        Operator::from(class.operator),
        Complex::new(F::zero(), F::zero()),
        x,
    )?;
    if !pair.is_verified(tolerance) {
        return Err(EigenstructureError::Verification(format!(
            "residual {:e} exceeds {:e}",
            pair.residual.to_f64().unwrap_or(f64::NAN),
            tolerance.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(pair)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub expected: u64,
    pub matched: bool,
}

/// `{"vertices", "operator", "H_count", "N_pair_count", "crosscheck"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub operator: ZeroOperator,
    #[serde(rename = "H_count", serialize_with = "serialize_count")]
    pub h_count: BigUint,
    #[serde(rename = "N_pair_count", serialize_with = "serialize_count")]
    pub n_pair_count: BigUint,
    /// `None` when the partition enumeration is over budget.
    pub crosscheck: Option<Crosscheck>,
}

/// Per-component report rows with the H cross-check evaluated. Mismatches
/// appear as `matched: false` rather than an error.
pub fn component_reports(h: &Hypergraph, op: ZeroOperator, budget: u64) -> Vec<ComponentReport> {
    connected_components(h)
        .components
        .iter()
        .enumerate()
        .map(|(id, comp)| {
            let counts = component_counts(h, comp, id, op);
            let crosscheck = expected_h_count(h, comp, id, op, budget)
                .ok()
                .map(|expected| Crosscheck {
                    expected,
                    matched: counts.h_count == BigUint::from(expected),
                });
            ComponentReport {
                vertices: counts.vertices,
                operator: op,
                h_count: counts.h_count,
                n_pair_count: counts.n_pair_count,
                crosscheck,
            }
        })
        .collect()
}
