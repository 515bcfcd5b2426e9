//! Roman and global Roman domination toolkit.
//!
//! * [`graph`], [`format`]: simple graphs and their text formats.
//! * [`labeling`]: Roman labelings and the RDF / GRDF checks.
//! * [`solver`]: exact searches for γ_R, γ_gR and γ, plus decision versions.
//! * [`cover`]: exact 3- and 4-cover instances and a backtracking solver.
//! * [`cograph`]: cotrees and the cotree recurrences for cographs.
//! * [`reductions`]: hardness-reduction gadgets with witness lifting.
//! * [`generators`]: seeded instance generators.
//! * [`lemmas`]: the reproducibility suite behind `romandom lemmas`.

pub mod bitset;
pub mod cli;
pub mod cograph;
pub mod cover;
pub mod format;
pub mod generators;
pub mod graph;
pub mod labeling;
pub mod lemmas;
pub mod reductions;
pub mod solver;

#[cfg(test)]
mod testutil;

pub use bitset::BitSet;
pub use cover::{solve_exact_cover, SetCoverInstance};
pub use graph::{ComponentProfile, Graph, GraphBuilder};
pub use labeling::{check_grdf, check_rdf, Mode, RomanLabeling, Verdict};
pub use solver::{decide, solve_ds, solve_exact, Decision, SolveResult};
