//! Algebraic restrictions of differential 2-forms to quasi-homogeneous curve
//! germs, the symplectic invariants derived from them, and normal-form
//! classification for the T7, T8, A_k, D_k and E6 families.

pub mod classifier;
pub mod error;
pub mod germ;
pub mod invariants;
pub mod linalg;
pub mod forms;
pub mod output;
pub mod parse;
pub mod poly;
pub mod restriction;
pub mod scenario;
pub mod tables;
pub mod tangent;

pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar};
pub use poly::{Monomial, Order, Polynomial, QuasiDegree, UniPoly, VarSet};
