//! Finite graded modules over `Z_p[s,t]/(st - p)` (Witt-side modules), their
//! graded Dieudonné counterparts, basic modules attached to graphs, and the
//! hom computations used to test indecomposability.

mod basic;
mod big;
mod dieudonne;
mod hom;
mod module;

pub use basic::{
    arrow_profile, classify_basic, injectivity_profile, is_cofree_coalgebra, is_free_algebra, module_from_graph,
    ClassifiedBasic, InjectivityProfile, StepProfile,
};
pub use big::{big_indecomposable, big_window, extension_graph, gamma};
pub use dieudonne::{random_dieudonne, DieudonneModule};
pub use hom::{endomorphism_ring, hom_group, idempotent_search, EndomorphismRing, HomGroup, WittMap};
pub use module::WittModule;

#[cfg(test)]
mod tests;
