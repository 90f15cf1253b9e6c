//! Exact linear algebra over `F_p` and over `Z/p^e`.
//!
//! Everything here is dense and sized for desk-scale problems: the modules we
//! decompose have a handful of dimensions per degree.

mod fp;
mod pgroup;
mod prime;
mod subspace;
mod zpe;

pub use fp::{enumerate_vectors, FpMatrix, Solution};
pub use pgroup::PGroupHom;
pub use prime::Prime;
pub use subspace::{AffineSubspace, Subspace};
pub use zpe::{Smith, ZpeMatrix};
