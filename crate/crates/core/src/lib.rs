//! Explicit solutions of quadratic equations `[u1,v1]...[uh,vh] = RHS` in
//! free groups, with exact verification and abelianized-index classification.

pub mod abelian;
pub mod cli;
pub mod doc;
pub mod equation;
pub mod error;
pub mod oracle;
pub mod rewrite;
pub mod solvers;
pub mod word;

pub use abelian::{abelianize, image_index, is_primitive, solution_index, AbelianVector, IndexValue, SubgroupImage};
pub use equation::{
    build_rhs, classify, min_h_bound, min_h_family, root_report, verify, EquationSpec, Family,
    MrDiscrepancy, RootReport, Solution,
};
pub use error::{Error, Result};
pub use oracle::{brute_force_solve, brute_force_solve_word, wicks_is_commutator, SearchResult, WicksWitness};
pub use rewrite::{peel_pairs, tech_split, PeelStep, Peeled, Peeler, TechSplit};
pub use word::{basic_commutator, Generator, Kind, Letter, Word};
