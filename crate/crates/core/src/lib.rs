//! Exact linear algebra for alternating 3-forms and their congruences of lines.

pub mod analysis;
pub mod catalog;
pub mod congruence;
pub mod degeneracy;
pub mod enumerative;
pub mod error;
pub mod exterior;
pub mod field;
pub mod form_analysis;
pub mod formfile;
pub mod matrix;
pub mod pfaffian;
pub mod poly;
pub mod projective;
pub mod report;
pub mod residual;
pub mod seeds;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{AlternatingTensor, IndexSet, SpaceContext, Variance};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use subspace::{Ambient, LinearSubspace};
