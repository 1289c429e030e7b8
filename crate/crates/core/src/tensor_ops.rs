//! Adjacency, Laplacian and signless Laplacian tensors of a hypergraph.
//!
//! The implicit path never forms the `n^k` table: `(A x^{k-1})_i` is the sum
//! over incident edges of the product of the other `k - 1` coordinates. Dense
//! tables are available for small instances, generic over the entry type so the
//! diagonal similarity can be checked in exact rational arithmetic.

use std::f64::consts::PI;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{connected_components, degrees, Hypergraph};

/// Default cap on `n^k` for dense materialization.
pub const DEFAULT_DENSE_BUDGET: usize = 10_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("vector has dimension {found}, hypergraph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigenvector must be nonzero")]
    ZeroVector,
    #[error("dense tensor needs {required} entries, budget is {budget}")]
    BudgetExceeded { required: u128, budget: usize },
    #[error("sign matrix entries must be +1 or -1, got {0}")]
    InvalidSign(i8),
    #[error("vertex set is not an hm-bipartition: {0}")]
    InvalidBipartition(String),
    #[error("eigenpair is for the {found} operator, expected {expected}")]
    WrongOperator { expected: Operator, found: Operator },
    #[error("input eigenpair residual {residual:e} exceeds tolerance {tolerance:e}")]
    UnverifiedPair { residual: f64, tolerance: f64 },
    #[error("transformed residual {after:e} exceeds input residual {before:e} plus slack")]
    ReflectionFailed { before: f64, after: f64 },
    #[error("power iteration requires a connected hypergraph with at least one edge")]
    NotConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Adjacency,
    Laplacian,
    Signless,
}

impl std::fmt::Display for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Operator::Adjacency => "adjacency",
            Operator::Laplacian => "laplacian",
            Operator::Signless => "signless",
        })
    }
}

fn check_dim<T>(h: &Hypergraph, x: &[T]) -> Result<(), TensorError> {
    if x.len() != h.n() {
        return Err(TensorError::DimensionMismatch {
            expected: h.n(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `(A x^{k-1})_i = sum_{e ∋ i} prod_{j ∈ e \ {i}} x_j`, in `O(k|E|)`.
pub fn apply_adjacency<F: Float>(
    h: &Hypergraph,
    x: &[Complex<F>],
) -> Result<Vec<Complex<F>>, TensorError> {
    check_dim(h, x)?;
    let one = Complex::new(F::one(), F::zero());
    let mut out = vec![Complex::new(F::zero(), F::zero()); h.n()];
    let mut suffix = vec![one; h.k() + 1];
    for edge in h.edges() {
        for pos in (0..edge.len()).rev() {
            suffix[pos] = suffix[pos + 1] * x[edge[pos]];
        }
        let mut prefix = one;
        for (pos, &v) in edge.iter().enumerate() {
            out[v] = out[v] + prefix * suffix[pos + 1];
            prefix = prefix * x[v];
        }
    }
    Ok(out)
}

fn diagonal_term<F: Float>(h: &Hypergraph, x: &[Complex<F>]) -> Vec<Complex<F>> {
    let d = degrees(h);
    let power = (h.k() - 1) as u32;
    x.iter()
        .zip(&d.0)
        .map(|(xi, &di)| xi.powu(power) * F::from(di).expect("degree fits"))
        .collect()
}

/// `d_i x_i^{k-1} - (A x^{k-1})_i`.
pub fn apply_laplacian<F: Float>(
    h: &Hypergraph,
    x: &[Complex<F>],
) -> Result<Vec<Complex<F>>, TensorError> {
    let adj = apply_adjacency(h, x)?;
    Ok(diagonal_term(h, x)
        .into_iter()
        .zip(adj)
        .map(|(d, a)| d - a)
        .collect())
}

/// `d_i x_i^{k-1} + (A x^{k-1})_i`.
pub fn apply_signless<F: Float>(
    h: &Hypergraph,
    x: &[Complex<F>],
) -> Result<Vec<Complex<F>>, TensorError> {
    let adj = apply_adjacency(h, x)?;
    Ok(diagonal_term(h, x)
        .into_iter()
        .zip(adj)
        .map(|(d, a)| d + a)
        .collect())
}

pub fn apply<F: Float>(
    h: &Hypergraph,
    op: Operator,
    x: &[Complex<F>],
) -> Result<Vec<Complex<F>>, TensorError> {
    match op {
        Operator::Adjacency => apply_adjacency(h, x),
        Operator::Laplacian => apply_laplacian(h, x),
        Operator::Signless => apply_signless(h, x),
    }
}

/// Max-norm residual of `λ x^{[k-1]} = T x^{k-1}` after scaling `x` to unit
/// max modulus.
pub fn eig_residual<F: Float>(
    h: &Hypergraph,
    op: Operator,
    lambda: Complex<F>,
    x: &[Complex<F>],
) -> Result<F, TensorError> {
    check_dim(h, x)?;
    let scale = x.iter().map(|v| v.norm()).fold(F::zero(), F::max);
    if scale == F::zero() {
        return Err(TensorError::ZeroVector);
    }
    let y: Vec<Complex<F>> = x.iter().map(|v| v / scale).collect();
    let ty = apply(h, op, &y)?;
    let power = (h.k() - 1) as u32;
    Ok(y.iter()
        .zip(&ty)
        .map(|(yi, ti)| (lambda * yi.powu(power) - ti).norm())
        .fold(F::zero(), F::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<F> {
    pub operator: Operator,
    pub lambda: Complex<F>,
    pub vector: Vec<Complex<F>>,
    pub residual: F,
}

impl<F: Float> Eigenpair<F> {
    /// Computes the residual and packages the pair.
    pub fn new(
        h: &Hypergraph,
        operator: Operator,
        lambda: Complex<F>,
        vector: Vec<Complex<F>>,
    ) -> Result<Self, TensorError> {
        let residual = eig_residual(h, operator, lambda, &vector)?;
        Ok(Self {
            operator,
            lambda,
            vector,
            residual,
        })
    }

    pub fn is_verified(&self, tolerance: F) -> bool {
        self.residual <= tolerance
    }
}

/// JSON form: `{"operator", "lambda": [re, im], "vector": [[re, im], ...], "residual"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenpairExport {
    pub operator: Operator,
    pub lambda: [f64; 2],
    pub vector: Vec<[f64; 2]>,
    pub residual: f64,
}

impl<F: Float> From<&Eigenpair<F>> for EigenpairExport {
    fn from(p: &Eigenpair<F>) -> Self {
        let pair = |c: &Complex<F>| [c.re.to_f64().unwrap(), c.im.to_f64().unwrap()];
        Self {
            operator: p.operator,
            lambda: pair(&p.lambda),
            vector: p.vector.iter().map(pair).collect(),
            residual: p.residual.to_f64().unwrap(),
        }
    }
}

/// Order-`k`, dimension-`n` tensor stored as a flat row-major table.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<T> {
    order: usize,
    dim: usize,
    entries: Vec<T>,
}

impl<T: Clone + Num> DenseTensor<T> {
    pub fn zeros(order: usize, dim: usize, budget: usize) -> Result<Self, TensorError> {
        let required = (dim as u128).pow(order as u32);
        if required > budget as u128 {
            return Err(TensorError::BudgetExceeded { required, budget });
        }
        Ok(Self {
            order,
            dim,
            entries: vec![T::zero(); required as usize],
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    fn flat(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.order);
        index.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, index: &[usize]) -> &T {
        &self.entries[self.flat(index)]
    }

    pub fn set(&mut self, index: &[usize], value: T) {
        let f = self.flat(index);
        self.entries[f] = value;
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Nonzero entries with their multi-indices, in row-major order.
    pub fn nonzeros(&self) -> Vec<(Vec<usize>, T)> {
        let mut idx = vec![0; self.order];
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(f, e)| {
                self.unflatten(f, &mut idx);
                (idx.clone(), e.clone())
            })
            .collect()
    }

    /// Dense contraction `(T x^{k-1})_i = sum t_{i i2..ik} x_{i2} ... x_{ik}`.
    pub fn contract<F: Float>(&self, x: &[Complex<F>]) -> Result<Vec<Complex<F>>, TensorError>
    where
        T: ToPrimitive,
    {
        if x.len() != self.dim {
            return Err(TensorError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut out = vec![Complex::new(F::zero(), F::zero()); self.dim];
        let mut idx = vec![0; self.order];
        for (f, t) in self.entries.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            self.unflatten(f, &mut idx);
            let coeff = F::from(t.clone()).expect("entry converts to float");
            let prod = idx[1..]
                .iter()
                .fold(Complex::new(coeff, F::zero()), |acc, &j| acc * x[j]);
            out[idx[0]] = out[idx[0]] + prod;
        }
        Ok(out)
    }
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Explicit `A`, `D - A` or `D + A`; adjacency entries are `1/(k-1)!` on every
/// permutation of every edge.
pub fn materialize_dense<T>(
    h: &Hypergraph,
    op: Operator,
    budget: usize,
) -> Result<DenseTensor<T>, TensorError>
where
    T: Clone + Num + Neg<Output = T> + FromPrimitive,
{
    let k = h.k();
    let mut t = DenseTensor::zeros(k, h.n(), budget)?;
    let weight = T::one() / T::from_u64(factorial(k - 1)).expect("factorial fits");
    let weight = match op {
        Operator::Laplacian => -weight,
        _ => weight,
    };
    for edge in h.edges() {
        for perm in itertools::Itertools::permutations(edge.iter().copied(), k) {
            t.set(&perm, weight.clone());
        }
    }
    if op != Operator::Adjacency {
        for (v, &d) in degrees(h).0.iter().enumerate() {
            t.set(&vec![v; k], T::from_usize(d).expect("degree fits"));
        }
    }
    Ok(t)
}

/// Diagonal matrix with `±1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSignMatrix(Vec<i8>);

impl DiagonalSignMatrix {
    pub fn new(signs: Vec<i8>) -> Result<Self, TensorError> {
        if let Some(&bad) = signs.iter().find(|s| s.abs() != 1) {
            return Err(TensorError::InvalidSign(bad));
        }
        Ok(Self(signs))
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// `+1` on the head set, `-1` elsewhere.
    pub fn from_heads(n: usize, heads: &[usize]) -> Self {
        let mut signs = vec![-1; n];
        for &v in heads {
            signs[v] = 1;
        }
        Self(signs)
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }
}

/// `(P^{-1} T P)_{i1..ik} = p_{i1}^{1-k} t_{i1..ik} p_{i2} ... p_{ik}`; for
/// `±1` entries `p^{1-k} = p^{k-1}`.
pub fn diag_similarity<T>(
    t: &DenseTensor<T>,
    p: &DiagonalSignMatrix,
) -> Result<DenseTensor<T>, TensorError>
where
    T: Clone + Num + Neg<Output = T>,
{
    if p.0.len() != t.dim {
        return Err(TensorError::DimensionMismatch {
            expected: t.dim,
            found: p.0.len(),
        });
    }
    let mut out = t.clone();
    let mut idx = vec![0; t.order];
    for (f, entry) in out.entries.iter_mut().enumerate() {
        if entry.is_zero() {
            continue;
        }
        t.unflatten(f, &mut idx);
        let lead = if (t.order - 1).is_multiple_of(2) { 1 } else { p.0[idx[0]] };
        let sign = idx[1..].iter().fold(lead, |acc, &j| acc * p.0[j]);
        if sign < 0 {
            *entry = -entry.clone();
        }
    }
    Ok(out)
}

/// Checks that every edge meets `heads` in exactly one vertex.
pub fn check_hm_heads(h: &Hypergraph, heads: &[usize]) -> Result<(), TensorError> {
    let mut is_head = vec![false; h.n()];
    for &v in heads {
        if v >= h.n() {
            return Err(TensorError::InvalidBipartition(format!(
                "vertex {} out of range",
                v + 1
            )));
        }
        is_head[v] = true;
    }
    if h.edge_count() == 0 {
        return Ok(());
    }
    for edge in h.edges() {
        let count = edge.iter().filter(|&&v| is_head[v]).count();
        if count != 1 {
            let ids: Vec<usize> = edge.iter().map(|v| v + 1).collect();
            return Err(TensorError::InvalidBipartition(format!(
                "edge {ids:?} has {count} heads"
            )));
        }
    }
    Ok(())
}

/// Multiplies the head coordinates by `ω^r` (`ω = e^{2πi/k}`), mapping an
/// adjacency eigenpair `(λ, x)` to `(ω^r λ, y)`.
pub fn hm_spectral_reflection<F: Float>(
    h: &Hypergraph,
    heads: &[usize],
    pair: &Eigenpair<F>,
    r: usize,
    tolerance: F,
) -> Result<Eigenpair<F>, TensorError> {
    check_hm_heads(h, heads)?;
    if pair.operator != Operator::Adjacency {
        return Err(TensorError::WrongOperator {
            expected: Operator::Adjacency,
            found: pair.operator,
        });
    }
    let before = eig_residual(h, Operator::Adjacency, pair.lambda, &pair.vector)?;
    if before > tolerance {
        return Err(TensorError::UnverifiedPair {
            residual: before.to_f64().unwrap(),
            tolerance: tolerance.to_f64().unwrap(),
        });
    }
    let k = h.k();
    let angle = F::from(2.0 * PI * (r % k) as f64 / k as f64).unwrap();
    let root = Complex::from_polar(F::one(), angle);
    let mut y = pair.vector.clone();
    for &v in heads {
        y[v] = y[v] * root;
    }
    let out = Eigenpair::new(h, Operator::Adjacency, pair.lambda * root, y)?;
    if out.residual > before + F::from(1e-10).unwrap() {
        return Err(TensorError::ReflectionFailed {
            before: before.to_f64().unwrap(),
            after: out.residual.to_f64().unwrap(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct PowerIterationOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PowerIteration<F> {
    pub pair: Eigenpair<F>,
    pub converged: bool,
    pub iterations: usize,
    /// Collatz-Wielandt bounds on the spectral radius at termination.
    pub lower: F,
    pub upper: F,
}

/// NQZ power iteration for the nonnegative adjacency tensor, run on the
/// shifted tensor `A + I` so that connected instances are primitive. The
/// returned vector is positive with unit max norm.
pub fn nqz_spectral_radius<F: Float>(
    h: &Hypergraph,
    opts: PowerIterationOptions,
) -> Result<PowerIteration<F>, TensorError> {
    if h.edge_count() == 0 || connected_components(h).len() != 1 {
        return Err(TensorError::NotConnected);
    }
    let power = F::from(h.k() - 1).unwrap();
    let inv_power = F::one() / power;
    let tol = F::from(opts.tolerance).unwrap();
    let mut x: Vec<F> = vec![F::one(); h.n()];
    let mut lower = F::zero();
    let mut upper = F::infinity();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        let cx: Vec<Complex<F>> = x.iter().map(|&v| Complex::new(v, F::zero())).collect();
        let ax = apply_adjacency(h, &cx)?;
        let y: Vec<F> = ax
            .iter()
            .zip(&x)
            .map(|(a, &xi)| a.re + xi.powf(power))
            .collect();
        let (lo, hi) = y.iter().zip(&x).fold((F::infinity(), F::zero()), |(lo, hi), (&yi, &xi)| {
            let q = yi / xi.powf(power);
            (lo.min(q), hi.max(q))
        });
        lower = lo - F::one();
        upper = hi - F::one();
        let next: Vec<F> = y.iter().map(|&v| v.powf(inv_power)).collect();
        let scale = next.iter().copied().fold(F::zero(), F::max);
        x = next.into_iter().map(|v| v / scale).collect();
        if upper - lower <= tol {
            converged = true;
            break;
        }
    }
    let lambda = (lower + upper) / F::from(2.0).unwrap();
    let vector = x.iter().map(|&v| Complex::new(v, F::zero())).collect();
    let pair = Eigenpair::new(h, Operator::Adjacency, Complex::new(lambda, F::zero()), vector)?;
    Ok(PowerIteration {
        pair,
        converged,
        iterations,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn ones(n: usize) -> Vec<Complex<f64>> {
        vec![c(1.0); n]
    }

    fn example_6_1() -> Hypergraph {
        Hypergraph::from_one_based(3, 7, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap()
    }

    fn single_edge(k: usize) -> Hypergraph {
        Hypergraph::new(k, k, vec![(0..k).collect()]).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let y = apply_adjacency(&example_6_1(), &ones(7)).unwrap();
        let re: Vec<f64> = y.iter().map(|v| v.re).collect();
        assert_eq!(re, vec![1.0, 1.0, 2.0, 1.0, 2.0, 1.0, 1.0]);

        let y = apply_adjacency(&single_edge(3), &[c(1.0), c(2.0), c(3.0)]).unwrap();
        assert_eq!(y, vec![c(6.0), c(3.0), c(2.0)]);

        let y = apply_adjacency(&example_6_1(), &[c(0.0); 7]).unwrap();
        assert!(y.iter().all(|v| v.norm() == 0.0));

        assert_eq!(
            apply_adjacency(&single_edge(3), &ones(2)),
            Err(TensorError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn laplacian_examples() {
        let h = example_6_1();
        assert!(apply_laplacian(&h, &ones(7)).unwrap().iter().all(|v| v.norm() == 0.0));
        let w = Complex::from_polar(1.0, 2.0 * PI / 3.0);
        let x = vec![w, w * w, c(1.0), w, w * w, c(1.0), w];
        assert!(apply_laplacian(&h, &x).unwrap().iter().all(|v| v.norm() < 1e-12));
        let q = apply_signless(&single_edge(3), &ones(3)).unwrap();
        assert_eq!(q, vec![c(2.0); 3]);
    }

    #[test]
    fn residual_examples() {
        let h = example_6_1();
        assert_eq!(eig_residual(&h, Operator::Laplacian, c(0.0), &ones(7)).unwrap(), 0.0);
        let w = Complex::from_polar(1.0, 2.0 * PI / 3.0);
        let x = vec![w, w * w, c(1.0), w, w * w, c(1.0), w];
        assert!(eig_residual(&h, Operator::Laplacian, c(0.0), &x).unwrap() <= 1e-12);
        assert_eq!(
            eig_residual(&single_edge(3), Operator::Adjacency, c(1.0), &ones(3)).unwrap(),
            0.0
        );
        assert_eq!(
            eig_residual(&h, Operator::Laplacian, c(0.0), &[c(0.0); 7]),
            Err(TensorError::ZeroVector)
        );
        // scale invariance
        let scaled: Vec<_> = x.iter().map(|v| v * 7.5).collect();
        assert!(eig_residual(&h, Operator::Laplacian, c(0.0), &scaled).unwrap() <= 1e-12);
    }

    #[test]
    fn dense_examples() {
        let t: DenseTensor<Rational64> =
            materialize_dense(&single_edge(3), Operator::Adjacency, DEFAULT_DENSE_BUDGET).unwrap();
        let nz = t.nonzeros();
        assert_eq!(nz.len(), 6);
        assert!(nz.iter().all(|(_, v)| *v == Rational64::new(1, 2)));

        let l: DenseTensor<Rational64> =
            materialize_dense(&single_edge(3), Operator::Laplacian, DEFAULT_DENSE_BUDGET).unwrap();
        for v in 0..3 {
            assert_eq!(*l.get(&[v, v, v]), Rational64::from_integer(1));
        }
        assert_eq!(*l.get(&[0, 2, 1]), Rational64::new(-1, 2));
        assert_eq!(l.nonzero_count(), 9);

        let h = Hypergraph::from_one_based(
            4,
            6,
            vec![vec![1, 2, 3, 4], vec![1, 3, 5, 6], vec![1, 2, 3, 6]],
        )
        .unwrap();
        let a: DenseTensor<Rational64> =
            materialize_dense(&h, Operator::Adjacency, DEFAULT_DENSE_BUDGET).unwrap();
        assert_eq!(a.nonzero_count(), 72);
        assert!(a.nonzeros().iter().all(|(_, v)| *v == Rational64::new(1, 6)));

        assert!(matches!(
            materialize_dense::<f64>(&h, Operator::Adjacency, 100),
            Err(TensorError::BudgetExceeded { required: 1296, .. })
        ));
    }

    #[test]
    fn similarity_examples() {
        let h = single_edge(4);
        let l: DenseTensor<Rational64> =
            materialize_dense(&h, Operator::Laplacian, DEFAULT_DENSE_BUDGET).unwrap();
        let q: DenseTensor<Rational64> =
            materialize_dense(&h, Operator::Signless, DEFAULT_DENSE_BUDGET).unwrap();
        assert_eq!(diag_similarity(&l, &DiagonalSignMatrix::identity(4)).unwrap(), l);
        let p = DiagonalSignMatrix::new(vec![1, -1, -1, -1]).unwrap();
        let pl = diag_similarity(&l, &p).unwrap();
        assert_eq!(pl, q);
        assert_eq!(diag_similarity(&pl, &p).unwrap(), l);
        assert_eq!(DiagonalSignMatrix::new(vec![1, 0]), Err(TensorError::InvalidSign(0)));
        assert!(diag_similarity(&l, &DiagonalSignMatrix::identity(3)).is_err());
    }

    #[test]
    fn reflection_examples() {
        let h = single_edge(3);
        let pair = Eigenpair::new(&h, Operator::Adjacency, c(1.0), ones(3)).unwrap();
        let same = hm_spectral_reflection(&h, &[0], &pair, 0, 1e-9).unwrap();
        assert_eq!(same.lambda, pair.lambda);
        assert_eq!(same.vector, pair.vector);

        let w = Complex::from_polar(1.0, 2.0 * PI / 3.0);
        let out = hm_spectral_reflection(&h, &[0], &pair, 1, 1e-9).unwrap();
        assert!((out.lambda - w).norm() < 1e-15);
        assert!((out.vector[0] - w).norm() < 1e-15);
        assert_eq!(out.vector[1], c(1.0));
        assert!(out.residual <= 1e-12);

        // composing r = 1 three times returns the original eigenvalue
        let mut cur = pair.clone();
        for _ in 0..3 {
            cur = hm_spectral_reflection(&h, &[0], &cur, 1, 1e-9).unwrap();
        }
        assert!((cur.lambda - pair.lambda).norm() < 1e-12);

        assert!(matches!(
            hm_spectral_reflection(&h, &[0, 1], &pair, 1, 1e-9),
            Err(TensorError::InvalidBipartition(_))
        ));
        let bad = Eigenpair::new(&h, Operator::Adjacency, c(2.0), ones(3)).unwrap();
        assert!(matches!(
            hm_spectral_reflection(&h, &[0], &bad, 1, 1e-9),
            Err(TensorError::UnverifiedPair { .. })
        ));
    }

    #[test]
    fn power_iteration_examples() {
        for k in [3, 4] {
            let out = nqz_spectral_radius::<f64>(&single_edge(k), Default::default()).unwrap();
            assert!(out.converged);
            assert!((out.pair.lambda.re - 1.0).abs() < 1e-12);
            assert!(out.pair.vector.iter().all(|v| (v.re - 1.0).abs() < 1e-12));
        }
        let out = nqz_spectral_radius::<f64>(&example_6_1(), Default::default()).unwrap();
        assert!(out.converged);
        assert!(out.pair.residual <= 1e-8);
        // independent numpy NQZ run on the shifted tensor
        assert!((out.pair.lambda.re - 1.378_240_772_489_21).abs() < 1e-9);

        let disconnected =
            Hypergraph::from_one_based(3, 6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(
            nqz_spectral_radius::<f64>(&disconnected, Default::default()).unwrap_err(),
            TensorError::NotConnected
        );
    }

    #[test]
    fn works_in_single_precision() {
        let h = example_6_1();
        let x = vec![Complex::new(1.0f32, 0.0); 7];
        assert_eq!(eig_residual(&h, Operator::Laplacian, Complex::new(0.0, 0.0), &x).unwrap(), 0.0);
        let out = nqz_spectral_radius::<f32>(
            &h,
            PowerIterationOptions {
                max_iterations: 10_000,
                tolerance: 1e-5,
            },
        )
        .unwrap();
        assert!((out.pair.lambda.re - 1.378_240_8).abs() < 1e-4);
    }
}
