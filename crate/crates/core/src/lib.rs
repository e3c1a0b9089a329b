//! Decorated-tree operads over exact rationals.
//!
//! Terms of the free operad, the Perm/ComTrias corolla calculus, di-/tri-
//! replication of identity systems, pre-/post- splitting, finite-dimensional
//! instances and degree-bounded consequence spaces.

pub mod algebra;
pub mod comtrias;
pub mod consequence;
pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod lincomb;
pub mod morphism;
pub mod presets;
pub mod rational;
pub mod samples;
pub mod replication;
pub mod signature;
pub mod splitting;
pub mod subset;
pub mod term;

pub use algebra::{FiniteAlgebra, LinearOperator};
pub use error::{Error, Result};
pub use lincomb::{Identity, IdentitySystem, LinComb};
pub use rational::Q;
pub use signature::{Mode, OpDecl, OpFlags, Signature};
pub use subset::{Perm, Subset};
pub use term::{OpSym, Term};
