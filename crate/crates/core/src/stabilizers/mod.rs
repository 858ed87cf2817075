//! The partitions `P(T, j)` and the abelian subgroups `H(T) ≤ PSOut_n`,
//! `H_A(T) ≤ PSAut_n` as exact integer lattices.
//!
//! An element of `H(T)` is recorded per base `j` as an exponent vector
//! `v ∈ Z^labels` with `v_j = 0`, standing for `∏_i α_{i,j}^{v_i}`. Base `j`
//! contributes the lattice spanned by the block indicators of `P(T, j)`.
//!
//! * OUT: the inner automorphism `α_{[n]∖{j},j}` is the all-ones vector of
//!   base `j`. Every base lattice contains it, so membership and inclusion are
//!   unaffected by the quotient and the rank is `Σ_j (rank L_j − 1)`.
//! * AUT: `T ∈ WA_n` lives on `n + 1` labels with `n + 1` a leaf. A class has
//!   a representative fixing `x_{n+1}` iff its base-`(n+1)` part is inner and
//!   each base-`j` part can be shifted to vanish at `n + 1`. That leaves
//!   `L_j ∩ {v_{n+1} = 0}` for `j ≤ n`, with no further quotient.

mod aux;
mod lattice;

use num_bigint::BigInt;
use thiserror::Error;

use crate::freegroup::{FreeGroupError, PureSymAut, ReducedWord, WhiteheadSymbol};
use crate::labels::LabelSet;
use crate::whitehead::{Family, HyperTree};

pub use aux::{aux_graph, aux_graph_from_lattice, reconstruct, AuxGraph};
pub use lattice::IntLattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("tree {tree} is not in the AUT family on {n} letters")]
    NotInAutFamily { tree: String, n: usize },
    #[error("family or size mismatch between lattices")]
    Mismatch,
    #[error(transparent)]
    Symbol(#[from] FreeGroupError),
    #[error("cannot reconstruct a hypertree: {0}")]
    Reconstruct(String),
}

/// `P(T, j)`: labels other than `j`, grouped by component of `T − j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelPartition {
    pub base: usize,
    pub blocks: Vec<LabelSet>,
}

impl LabelPartition {
    /// Whether `set` is a (possibly empty) union of blocks.
    pub fn is_union_of_blocks(&self, set: LabelSet) -> bool {
        self.blocks.iter().all(|b| b.is_subset(set) || b.is_disjoint(set))
            && set.is_subset(self.blocks.iter().fold(LabelSet::EMPTY, |a, b| a | *b))
    }
}

pub fn partition(t: &HyperTree, j: usize) -> Result<LabelPartition, StabilizerError> {
    if j == 0 || j > t.n() {
        return Err(StabilizerError::LabelOutOfRange { label: j, n: t.n() });
    }
    Ok(LabelPartition {
        base: j,
        blocks: t.components_without(j),
    })
}

/// `I` is `(T, j)`-complete: a union of blocks of `P(T, j)`.
pub fn is_complete(set: LabelSet, t: &HyperTree, j: usize) -> Result<bool, StabilizerError> {
    Ok(partition(t, j)?.is_union_of_blocks(set))
}

fn indicator(len: usize, set: LabelSet) -> Vec<BigInt> {
    (0..len).map(|i| BigInt::from(u8::from(set.contains(i)))).collect()
}

/// `H(T)` or `H_A(T)`, one lattice per base. Vectors are indexed by label
/// (slot 0 unused), so they have length `labels + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerLattice {
    family: Family,
    n: usize,
    bases: Vec<IntLattice>,
}

impl StabilizerLattice {
    pub fn of(t: &HyperTree, family: Family) -> Result<Self, StabilizerError> {
        let labels = t.n();
        let n = match family {
            Family::Out => labels,
            Family::Aut => {
                if labels < 2 || !t.is_leaf(labels) {
                    return Err(StabilizerError::NotInAutFamily {
                        tree: t.encode(),
                        n: labels.saturating_sub(1),
                    });
                }
                labels - 1
            }
        };
        let width = labels + 1;
        let cut = (family == Family::Aut).then(|| {
            let keep: Vec<Vec<BigInt>> = (1..=n).map(|i| indicator(width, LabelSet::singleton(i))).collect();
            IntLattice::from_generators(width, keep)
        });
        let mut bases = vec![IntLattice::zero(width)];
        for j in 1..=n {
            let blocks = t.components_without(j);
            let l = IntLattice::from_generators(width, blocks.into_iter().map(|b| indicator(width, b)));
            bases.push(match &cut {
                Some(c) => l.intersection(c),
                None => l,
            });
        }
        Ok(StabilizerLattice { family, n, bases })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Presentation size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self, j: usize) -> &IntLattice {
        &self.bases[j]
    }

    pub fn rank(&self) -> usize {
        let total: usize = self.bases[1..].iter().map(IntLattice::rank).sum();
        match self.family {
            Family::Out => total - self.n,
            Family::Aut => total,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    fn compatible(&self, other: &Self) -> Result<(), StabilizerError> {
        if self.family != other.family || self.n != other.n {
            return Err(StabilizerError::Mismatch);
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, StabilizerError> {
        self.compatible(other)?;
        Ok(self.bases.iter().zip(&other.bases).all(|(a, b)| a.is_subset(b)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, StabilizerError> {
        self.compatible(other)?;
        Ok(StabilizerLattice {
            family: self.family,
            n: self.n,
            bases: self
                .bases
                .iter()
                .zip(&other.bases)
                .map(|(a, b)| a.intersection(b))
                .collect(),
        })
    }

    /// Membership of `α_{I,j}^e`.
    pub fn contains_symbol(&self, symbol: &WhiteheadSymbol) -> Result<bool, StabilizerError> {
        symbol.validate(self.n)?;
        if symbol.exponent == 0 || symbol.moved.is_empty() {
            return Ok(true);
        }
        let base = &self.bases[symbol.base];
        let v: Vec<BigInt> = indicator(base.dim(), symbol.moved)
            .into_iter()
            .map(|x| x * symbol.exponent)
            .collect();
        Ok(base.contains(&v))
    }

    /// One automorphism per basis vector of each base lattice.
    pub fn generator_automorphisms(&self) -> Vec<PureSymAut> {
        let mut out = Vec::new();
        for j in 1..=self.n {
            for row in self.bases[j].basis() {
                let conjugators = (1..=self.n)
                    .map(|i| {
                        let e = i64::try_from(&row[i]).expect("small exponent");
                        if i == j {
                            ReducedWord::identity(self.n)
                        } else {
                            ReducedWord::generator_power(self.n, j, e).expect("valid generator")
                        }
                    })
                    .collect();
                out.push(PureSymAut::from_conjugators(self.n, conjugators).expect("rank matches"));
            }
        }
        out
    }
}

/// Rank of `H(T)` or `H_A(T)`. For OUT this is checked against `deg(T)`.
pub fn rank(t: &HyperTree, family: Family) -> Result<usize, StabilizerError> {
    let r = StabilizerLattice::of(t, family)?.rank();
    if family == Family::Out {
        let blocks: usize = (1..=t.n()).map(|j| t.label_degree(j) - 1).sum();
        assert_eq!(blocks, r, "block count and lattice rank disagree for {t}");
        assert_eq!(r, t.degree(), "rank of H(T) differs from deg(T) for {t}");
    }
    Ok(r)
}

/// Whether `α_{I,j}^e` lies in `H(T)` (OUT) or `H_A(T)` (AUT).
pub fn contains(t: &HyperTree, symbol: &WhiteheadSymbol, family: Family) -> Result<bool, StabilizerError> {
    let lat = StabilizerLattice::of(t, family)?;
    let by_lattice = lat.contains_symbol(symbol)?;
    if family == Family::Out {
        let by_blocks = symbol.exponent == 0 || is_complete(symbol.moved, t, symbol.base)?;
        assert_eq!(by_blocks, by_lattice, "completeness and lattice membership disagree");
    }
    Ok(by_lattice)
}

pub fn intersect(t: &HyperTree, u: &HyperTree, family: Family) -> Result<StabilizerLattice, StabilizerError> {
    StabilizerLattice::of(t, family)?.intersection(&StabilizerLattice::of(u, family)?)
}
