//! Visible rank of stencils and the algebra around it.

pub mod bitset;
pub mod error;
pub mod field;
pub mod generators;
pub mod io;
pub mod spanoid;
pub mod stencil;
pub mod tensor;
pub mod vrank;

pub use bitset::BitSet;
pub use error::{ParseError, StencilError};
pub use stencil::{Label, PermutationPair, Stencil};
pub use vrank::{Budget, DiagonalCertificate, VrankResult};
