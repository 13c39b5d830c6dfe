//! Free spectrahedra, matrix convex sets over the ball, and extreme point
//! certification in dense double (or single) precision.
//!
//! Every numerical routine is generic over [`Real`]; the aliases at the crate
//! root fix the scalar to `f64`.

pub mod acceptance;
pub mod ballsets;
pub mod cli;
pub mod drops;
pub mod duality;
pub mod error;
pub mod extremality;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod pencil;
pub mod sampling;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, GeneralTuple, HermitianTuple, KernelBasis, ToleranceProfile};
pub use scalar::Real;

pub use num_complex::Complex;

pub type Matrix = ComplexMatrix<f64>;
pub type Tuple = HermitianTuple<f64>;
pub type Tolerances = ToleranceProfile<f64>;
pub type C64 = Complex<f64>;
