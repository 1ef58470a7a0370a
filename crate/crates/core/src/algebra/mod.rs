//! Exact field, polynomial and linear algebra.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod sparse;
pub mod symbolic;

pub use field::{FieldElem, QuadExt};
pub use matrix::Matrix;
pub use monomial::Monomial;
pub use poly::{associates, Poly};
