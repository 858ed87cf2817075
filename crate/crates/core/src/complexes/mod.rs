//! Order complexes, exact reduced homology, Cohen–Macaulay evidence and
//! recursive atom orderings.

mod cm;
mod homology;
mod rao;
mod simplicial;
mod snf;

use thiserror::Error;

pub use cm::{cm_verdict, homological_cm_check, CmReport, CmVerdict, CmWitness};
pub use homology::{reduced_homology, HomologyGroup, HomologyProfile};
pub use rao::{find_rao, verify_rao, IntervalKey, RecursiveAtomOrdering};
pub use simplicial::{flag_complex, SimplicialComplex};
pub use snf::{rank_profile, smith_normal_form, Matrix, RankProfile, SmithForm, SparseRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("the poset has no global minimum to drop")]
    NoMinimum,
    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Vec<u32>),
    #[error("poset is not bounded and graded: {0}")]
    NotBoundedGraded(String),
}

/// The dual of `P` with a new global maximum adjoined, i.e. `ZO_n` / `ZA_n`
/// when `P` is `WO_n` / `WA_n`.
pub fn bounded_dual(p: &crate::whitehead::Poset) -> crate::whitehead::Poset {
    p.adjoin_top().dual()
}
