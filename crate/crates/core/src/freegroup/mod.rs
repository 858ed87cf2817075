//! Free reduction in `F_n` and the algebra of pure symmetric automorphisms.
//!
//! Automorphisms compose as functions: `compose(a, b)` is `a ∘ b`, so a
//! formal product `g_1 g_2 ... g_k` of Whitehead symbols evaluates to
//! `g_1 ∘ g_2 ∘ ... ∘ g_k`.

mod automorphism;
mod relations;
mod word;

use thiserror::Error;

pub use automorphism::{
    commutes, compose, evaluate_formal, whitehead_aut, FormalGeneratorWord, PureSymAut, WhiteheadSymbol,
};
pub use relations::{
    mccool_relators, verify_mccool_relations, McCoolRelator, RelationFamily, RelationReport, RelatorFailure,
};
pub use word::{reduce, Letter, ReducedWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("letter {letter} is not a generator of the free group of rank {rank}")]
    LetterOutOfRange { letter: Letter, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid Whitehead symbol {symbol} for rank {rank}")]
    InvalidSymbol { symbol: String, rank: usize },
}
