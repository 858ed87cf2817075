//! Exact combinatorics for the McCool groups `PSAut_n` and `PSOut_n`.
//!
//! The crate builds every finite object that enters the density/emptiness
//! picture for the BNSR-invariants of these groups and checks the
//! surrounding criteria mechanically:
//!
//! * [`freegroup`]: reduced words, pure symmetric automorphisms, the McCool
//!   relators.
//! * [`whitehead`]: hypertrees, the Whitehead posets `WO_n` / `WA_n`, folding
//!   order, meets, generic finite-poset tools and an on-disk cache.
//! * [`stabilizers`]: the partitions `P(T, j)` and the abelian subgroups
//!   `H(T)`, `H_A(T)` as exact integer lattices.
//! * [`complexes`]: flag complexes, integer homology by Smith normal form,
//!   Cohen–Macaulay checks and recursive atom orderings.
//! * [`sigma`]: characters and the Σ-criteria (genericity, density
//!   certificates, Orlandi-Korner, Euler characteristic, RAAG criteria,
//!   commutation criterion for quotients).
//! * [`words`]: unreduced words, prefix minima and Σ²-certificate checking.

pub mod complexes;
pub mod freegroup;
pub mod labels;
pub mod sigma;
pub mod stabilizers;
pub mod whitehead;
pub mod words;

pub use labels::LabelSet;
