//! Dense complex linear algebra.

pub mod eigen;
pub mod matrix;
pub mod solve;
pub mod svd;
pub mod tolerance;
pub mod tuple;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use matrix::{inner, norm, ComplexMatrix};
pub use solve::{inverse, solve, Lu};
pub use svd::{
    nullspace, real_nullspace, solve_homogeneous, svd, HomogeneousSolution, KernelBasis, RealMatrix,
    RealNullspace, Svd,
};
pub use tolerance::ToleranceProfile;
pub use tuple::{direct_sum, GeneralTuple, HermitianTuple};
