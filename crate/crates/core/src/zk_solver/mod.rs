//! Exact solution sets of the edge-sum phase systems
//! `sum_{j in e} α_j ≡ c (mod k)`, one system per connected component.
//!
//! A zero-eigenvalue eigenvector on a component is `x_j = γ·exp(2πiα_j/k)`
//! where `α` solves the system with `c = 0` (Laplacian) or `c = k/2`
//! (signless Laplacian). The coefficient matrix is reduced with an integer
//! Smith normal form and only then read modulo `k`, so composite moduli need
//! no special casing.

pub mod smith;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::hypergraph::{Component, Hypergraph};
use crate::tensor_ops::Operator;
pub use smith::{smith_normal_form, IntMatrix, SmithDecomposition};

/// Default cap on brute-force enumeration sizes.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 200_000;

/// The two operators with a zero eigenvalue of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroOperator {
    Laplacian,
    Signless,
}

impl From<ZeroOperator> for Operator {
    fn from(op: ZeroOperator) -> Self {
        match op {
            ZeroOperator::Laplacian => Operator::Laplacian,
            ZeroOperator::Signless => Operator::Signless,
        }
    }
}

impl std::fmt::Display for ZeroOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        Operator::from(*self).fmt(f)
    }
}

/// Which side of the H/N dichotomy an eigenvector class falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    H,
    N,
}

/// `rows[e]` lists the local variables of edge `e`; every row has `k` ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZkLinearSystem {
    pub modulus: u64,
    /// Global vertex id of each variable, ascending.
    pub vertices: Vec<usize>,
    pub rows: Vec<Vec<usize>>,
    pub rhs: u64,
}

impl ZkLinearSystem {
    pub fn vars(&self) -> usize {
        self.vertices.len()
    }

    pub fn coefficient_matrix(&self) -> IntMatrix<BigInt> {
        let mut m = IntMatrix::zeros(self.rows.len(), self.vars());
        for (r, row) in self.rows.iter().enumerate() {
            for &j in row {
                m[(r, j)] = BigInt::one();
            }
        }
        m
    }

    /// Exact integer check of every row.
    pub fn is_satisfied_by(&self, alpha: &[u64]) -> bool {
        alpha.len() == self.vars()
            && self
                .rows
                .iter()
                .all(|row| row.iter().map(|&j| alpha[j]).sum::<u64>() % self.modulus == self.rhs)
    }

    /// The system restricted to phases in `{0, k/2}`, written over `Z_2`.
    /// Only meaningful for even `k`.
    pub fn real_phase_subsystem(&self) -> Option<ZkLinearSystem> {
        if !self.modulus.is_multiple_of(2) {
            return None;
        }
        let half = self.modulus / 2;
        Some(ZkLinearSystem {
            modulus: 2,
            vertices: self.vertices.clone(),
            rows: self.rows.clone(),
            rhs: (self.rhs / half) % 2,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroEigSystem {
    System(ZkLinearSystem),
    /// Odd `k`, signless operator, component with an edge.
    NoZeroEigenvalue,
}

impl ZeroEigSystem {
    pub fn system(&self) -> Option<&ZkLinearSystem> {
        match self {
            ZeroEigSystem::System(s) => Some(s),
            ZeroEigSystem::NoZeroEigenvalue => None,
        }
    }
}

pub const NO_SIGNLESS_ZERO_NOTE: &str =
    "zero is not an eigenvalue of the signless Laplacian of a connected k-uniform hypergraph with odd k";

/// The phase system of one component; singletons get a row-free system.
pub fn build_zero_eig_system(h: &Hypergraph, comp: &Component, op: ZeroOperator) -> ZeroEigSystem {
    let k = h.k() as u64;
    let rhs = match op {
        ZeroOperator::Laplacian => 0,
        ZeroOperator::Signless if k.is_multiple_of(2) => k / 2,
        ZeroOperator::Signless if comp.edges.is_empty() => 0,
        ZeroOperator::Signless => return ZeroEigSystem::NoZeroEigenvalue,
    };
    let rows = comp
        .edges
        .iter()
        .map(|&e| {
            h.edges()[e]
                .iter()
                .map(|&v| comp.local_index(v).expect("edge lies in its component"))
                .collect()
        })
        .collect();
    ZeroEigSystem::System(ZkLinearSystem {
        modulus: k,
        vertices: comp.vertices.clone(),
        rows,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelGenerator {
    pub vector: Vec<u64>,
    pub order: u64,
}

/// Every solution is `particular + sum_i t_i·kernel[i]` with
/// `0 <= t_i < kernel[i].order`, each exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionDescription {
    pub modulus: u64,
    pub vertices: Vec<usize>,
    pub feasible: bool,
    pub particular: Vec<u64>,
    pub kernel: Vec<KernelGenerator>,
    /// Diagonal of the integer Smith form of the coefficient matrix.
    pub invariant_factors: Vec<BigInt>,
    pub solution_count: BigUint,
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

pub fn solve_mod_k(sys: &ZkLinearSystem) -> SolutionDescription {
    let k = BigInt::from(sys.modulus);
    let m = sys.vars();
    let matrix = sys.coefficient_matrix();
    let snf = smith_normal_form(&matrix);
    let factors = snf.invariant_factors();
    let rhs = vec![BigInt::from(sys.rhs); sys.rows.len()];
    let rhs = snf.u.mul_vec(&rhs);

    let infeasible = |factors: Vec<BigInt>| SolutionDescription {
        modulus: sys.modulus,
        vertices: sys.vertices.clone(),
        feasible: false,
        particular: Vec::new(),
        kernel: Vec::new(),
        invariant_factors: factors,
        solution_count: BigUint::zero(),
    };

    // S β ≡ U c (mod k), coordinate by coordinate
    let mut beta = vec![BigInt::zero(); m];
    let mut steps: Vec<(usize, BigInt, u64)> = Vec::new();
    for (i, c) in rhs.iter().enumerate() {
        let d = factors.get(i).cloned().unwrap_or_else(BigInt::zero);
        let g = d.gcd(&k);
        if !c.is_multiple_of(&g) {
            return infeasible(factors);
        }
        if i < m {
            let reduced = &k / &g;
            let inv = mod_inverse(&(&d / &g).mod_floor(&reduced), &reduced);
            beta[i] = ((c / &g) * inv).mod_floor(&reduced);
            steps.push((i, reduced, g.to_u64().expect("order fits u64")));
        }
    }
    for i in sys.rows.len()..m {
        steps.push((i, BigInt::one(), sys.modulus));
    }

    let to_alpha = |b: &[BigInt]| -> Vec<u64> {
        snf.v
            .mul_vec(b)
            .into_iter()
            .map(|a| a.mod_floor(&k).to_u64().unwrap())
            .collect()
    };
    let particular = to_alpha(&beta);
    let mut count = BigUint::one();
    let mut kernel = Vec::new();
    for (i, step, order) in steps {
        if order == 1 {
            continue;
        }
        let mut e = vec![BigInt::zero(); m];
        e[i] = step;
        kernel.push(KernelGenerator {
            vector: to_alpha(&e),
            order,
        });
        count *= BigUint::from(order);
    }
    SolutionDescription {
        modulus: sys.modulus,
        vertices: sys.vertices.clone(),
        feasible: true,
        particular,
        kernel,
        invariant_factors: factors,
        solution_count: count,
    }
}

/// A phase exponent vector on a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZkAssignment {
    pub modulus: u64,
    /// Ascending global vertex ids.
    pub support: Vec<usize>,
    pub alpha: Vec<u64>,
}

impl ZkAssignment {
    pub fn new(modulus: u64, support: Vec<usize>, alpha: Vec<u64>) -> Self {
        assert_eq!(support.len(), alpha.len());
        assert!(!support.is_empty(), "assignment support must be nonempty");
        let alpha = alpha.into_iter().map(|a| a % modulus).collect();
        Self {
            modulus,
            support,
            alpha,
        }
    }

    /// Adds `t` to every exponent.
    pub fn shifted(&self, t: u64) -> Self {
        let k = self.modulus;
        Self {
            modulus: k,
            support: self.support.clone(),
            alpha: self.alpha.iter().map(|a| (a + t % k) % k).collect(),
        }
    }

    /// Lexicographically smallest member of the shift orbit: the one with
    /// `α = 0` at the first support vertex.
    pub fn shift_canonicalize(&self) -> Self {
        let k = self.modulus;
        self.shifted((k - self.alpha[0]) % k)
    }

    pub fn is_canonical(&self) -> bool {
        self.alpha[0] == 0
    }

    /// Entrywise negation (complex conjugation of the eigenvector), then
    /// canonicalization.
    pub fn conjugate(&self) -> Self {
        let k = self.modulus;
        Self {
            modulus: k,
            support: self.support.clone(),
            alpha: self.alpha.iter().map(|a| (k - a) % k).collect(),
        }
        .shift_canonicalize()
    }

    /// H iff every pairwise difference is `0` or `k/2`, i.e. the vector is a
    /// complex multiple of a real one.
    pub fn classify(&self) -> Kind {
        let k = self.modulus;
        let base = self.alpha[0];
        let real = self.alpha.iter().all(|&a| {
            let diff = (a + k - base) % k;
            diff == 0 || 2 * diff == k
        });
        if real {
            Kind::H
        } else {
            Kind::N
        }
    }

    pub fn is_constant(&self) -> bool {
        self.alpha.iter().all(|&a| a == self.alpha[0])
    }
}

pub fn shift_canonicalize(a: &ZkAssignment) -> ZkAssignment {
    a.shift_canonicalize()
}

pub fn conjugate_assignment(a: &ZkAssignment) -> ZkAssignment {
    a.conjugate()
}

pub fn classify_h_or_n(a: &ZkAssignment) -> Kind {
    a.classify()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot enumerate an infeasible system")]
pub struct InfeasibleSystem;

/// Mixed-radix walk over kernel coordinates, last coordinate fastest.
#[derive(Debug, Clone)]
pub struct SolutionIter<'a> {
    desc: &'a SolutionDescription,
    coords: Vec<u64>,
    current: Vec<u64>,
    remaining: usize,
    done: bool,
}

impl Iterator for SolutionIter<'_> {
    type Item = ZkAssignment;

    fn next(&mut self) -> Option<ZkAssignment> {
        if self.done || self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let k = self.desc.modulus;
        let out = ZkAssignment {
            modulus: k,
            support: self.desc.vertices.clone(),
            alpha: self.current.clone(),
        };
        // order·generator ≡ 0, so wrapping a coordinate needs no correction
        let mut i = self.coords.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let g = &self.desc.kernel[i];
            for (a, &step) in self.current.iter_mut().zip(&g.vector) {
                *a = (*a + step) % k;
            }
            self.coords[i] += 1;
            if self.coords[i] < g.order {
                break;
            }
            self.coords[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_solutions(
    desc: &SolutionDescription,
    limit: usize,
) -> Result<SolutionIter<'_>, InfeasibleSystem> {
    if !desc.feasible {
        return Err(InfeasibleSystem);
    }
    Ok(SolutionIter {
        desc,
        coords: vec![0; desc.kernel.len()],
        current: desc.particular.clone(),
        remaining: limit,
        done: false,
    })
}

/// Emits a count as a JSON integer when it fits in `u64`, otherwise as a
/// decimal string.
pub fn serialize_count<S: Serializer>(count: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match count.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&count.to_string()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassExport {
    pub alpha: Vec<u64>,
    pub kind: Kind,
}

/// `{"k", "component", "rhs", "count", "classes": [{"alpha", "kind"}]}`.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionExport {
    pub k: u64,
    pub component: Vec<usize>,
    pub rhs: u64,
    #[serde(serialize_with = "serialize_count")]
    pub count: BigUint,
    pub classes: Vec<ClassExport>,
}

impl SolutionExport {
    pub fn new(sys: &ZkLinearSystem, desc: &SolutionDescription, classes: &[ZkAssignment]) -> Self {
        Self {
            k: sys.modulus,
            component: sys.vertices.iter().map(|v| v + 1).collect(),
            rhs: sys.rhs,
            count: desc.solution_count.clone(),
            classes: classes
                .iter()
                .map(|c| ClassExport {
                    alpha: c.alpha.clone(),
                    kind: c.classify(),
                })
                .collect(),
        }
    }
}
