//! Exact zero-eigenvalue eigenvector classes of the Laplacian and signless
//! Laplacian tensors of k-uniform hypergraphs, cross-checked against direct
//! combinatorial detection of the matching vertex partitions.

pub mod cli;
pub mod eigenstructure;
pub mod generate;
pub mod hypergraph;
pub mod partitions;
pub mod tensor_ops;
pub mod zk_solver;

pub use hypergraph::{Component, ComponentDecomposition, DegreeVector, Hypergraph, HypergraphError};
pub use tensor_ops::{DenseTensor, DiagonalSignMatrix, Eigenpair, Operator, TensorError};
pub use zk_solver::{Kind, SolutionDescription, ZeroOperator, ZkAssignment, ZkLinearSystem};

/// Double-precision complex scalar used for residual checks.
pub type C64 = num_complex::Complex<f64>;
/// Double-precision eigenpair.
pub type Eigenpair64 = Eigenpair<f64>;
/// Dense tensor with exact rational entries.
pub type ExactTensor = DenseTensor<num_rational::Rational64>;
/// Dense tensor with `f64` entries.
pub type FloatTensor = DenseTensor<f64>;
/// Smith decomposition over arbitrary-precision integers.
pub type IntegerSmith = zk_solver::SmithDecomposition<num_bigint::BigInt>;
