//! Graded modules over `k[s,t]/(st)` and their decomposition into string
//! modules `M(m, I)`.

mod chain;
mod decompose;
mod hom;
mod index;
mod initial;
mod module;
pub mod oracle;
mod random;
mod split;

pub use chain::{greedy_pure_chain, is_pure_string_injection, is_pure_submodule, StringChain};
pub use decompose::{decompose, decompose_traced, Decomposition, Summand};
pub use hom::{hom_space, GradedMap, HomSpace};
pub use index::{index_compare, IndexOrder, Length, Letter, StringIndex};
pub use initial::initial_index;
pub use module::{string_module, GradedFpModule, Violation};
pub use random::{random_module, random_s_module, random_string_sum, scramble_iso};
pub use split::{split_off, SplitOff};
