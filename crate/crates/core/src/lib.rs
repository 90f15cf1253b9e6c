//! Classification of graded Hopf algebras over `F_p` through their
//! Dieudonné-side modules: exact linear algebra over `F_p` and `Z/p^e`,
//! decomposition of `F_p[s,t]/(st)`-modules into string modules, modules over
//! `Z_p[s,t]/(st - p)` attached to graphs, and algebra presentations.
//!
//! The commonly used types are re-exported at the crate root.

pub mod acceptance;
pub mod error;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod presentation;
pub mod string;
pub mod witt;

pub use error::{Error, Result, Verdict};
pub use format::{read_module_file, write_module_file, ModuleData, ModuleFile};
pub use graph::{enumerate_graphs, ArrowKind, HopfGraph, Tail};
pub use linalg::{FpMatrix, PGroupHom, Prime, Subspace};
pub use presentation::{hilbert_series, presentation_torsion, report, HopfPresentation, HopfReport};
pub use string::{decompose, Decomposition, GradedFpModule, StringIndex};
pub use witt::{classify_basic, module_from_graph, DieudonneModule, WittModule};
