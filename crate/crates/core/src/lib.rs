//! Sum and difference sets of finite integer sets, with a focus on MSTD
//! ("more sums than differences") sets: exact profiles, explicit
//! constructions, reductions modulo `n`, fringe constructions with prescribed
//! deficiencies, exhaustive classification and density sampling.

mod bits;
pub mod constructions;
pub mod error;
pub mod fringe;
pub mod modular;
pub mod search;
pub mod sets;
pub mod stats;

pub use error::{MstdError, Result};
pub use sets::{
    canonical_form, diffset, normalize, profile, representation_counts, sumset, symmetry_report,
    DiffSet, IntSet, SumDiffProfile, SymmetryReport,
};
