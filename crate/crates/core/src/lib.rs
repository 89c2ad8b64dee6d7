//! Exact factorization of `GL_n` matrices along factorization schemes,
//! twist maps, chamber-minor formulas and total positivity criteria.

pub mod bruhat;
pub mod identities;
pub mod linalg;
pub mod network;
pub mod perm;
pub mod poly;
pub mod positivity;
pub mod product;
pub mod sampling;
pub mod schemes;
pub mod solver;
pub mod twist;

pub use linalg::{ExactScalar, IndexSet, Matrix};
pub use perm::Permutation;
pub use schemes::{Arrangement, FactorizationScheme};
