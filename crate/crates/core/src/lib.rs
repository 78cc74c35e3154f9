//! Exact Clifford and Hermitian Clifford algebra, Dirac calculus on
//! polynomials, and reproducing kernels for spherical (h-)monogenics.

pub mod cli;
pub mod clifford;
pub mod cliffpoly;
pub mod error;
pub mod exactnum;
pub mod kernels;
pub mod linalg;
pub mod orthopoly;
pub mod report;
pub mod suites;
pub mod spaces;
pub mod textfmt;

pub use clifford::Multivector;
pub use error::{Error, Result};
pub use exactnum::{GaussianRational, Rational};
