//! Hypertrees, the Whitehead posets `WO_n` and `WA_n`, and finite-poset tools.
//!
//! `WA_n` is stored as the subposet of `WO_{n+1}` of trees in which the label
//! `n + 1` is a leaf, so intervals are literally shared with `WO_{n+1}`.

mod cache;
mod enumerate;
mod poset;
mod tree;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labels::LabelSet;

pub use cache::{cache_path, load_poset, order_digest, save_poset, CacheError};
pub use enumerate::enumerate_hypertrees;
pub use poset::Poset;
pub use tree::HyperTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhiteheadError {
    #[error("invalid hypertree: {0}")]
    InvalidTree(String),
    #[error("size mismatch: trees on {left} and {right} labels")]
    SizeMismatch { left: usize, right: usize },
    #[error("n = {n} is outside the supported range {min}..={max} for {family}")]
    LimitExceeded {
        n: usize,
        min: usize,
        max: usize,
        family: Family,
    },
    #[error("tree {0} is not an element of the poset")]
    NotInPoset(String),
    #[error("no unique meet for {0} and {1}")]
    NoUniqueMeet(String, String),
}

/// Which McCool group a construction belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `PSAut_n`, poset `WA_n`.
    Aut,
    /// `PSOut_n`, poset `WO_n`.
    Out,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Aut => "aut",
            Family::Out => "out",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "aut" => Ok(Family::Aut),
            "out" => Ok(Family::Out),
            _ => Err(format!("unknown family {s:?} (expected aut or out)")),
        }
    }
}

impl Family {
    /// Number of tree labels used for presentation size `n`.
    pub fn ambient_labels(self, n: usize) -> usize {
        match self {
            Family::Aut => n + 1,
            Family::Out => n,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::Aut => 1,
            Family::Out => 2,
        }
    }
}

/// Bounds on what [`WhiteheadPoset::enumerate`] will attempt.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimit {
    /// Largest number of tree labels (`n` for OUT, `n + 1` for AUT).
    pub max_labels: usize,
    /// Posets with more elements keep the order lazy instead of as a matrix.
    pub dense_max_elements: usize,
}

impl Default for EnumerationLimit {
    fn default() -> Self {
        EnumerationLimit {
            max_labels: 7,
            dense_max_elements: 5000,
        }
    }
}

/// `block_of[j][i]`: the block of `P(T, j)` containing label `i`.
type PartitionTable = Vec<Vec<LabelSet>>;

fn partition_table(t: &HyperTree) -> PartitionTable {
    let n = t.n();
    let mut table = vec![vec![LabelSet::EMPTY; n + 1]; n + 1];
    for (j, row) in table.iter_mut().enumerate().skip(1) {
        for block in t.components_without(j) {
            for i in block {
                row[i] = block;
            }
        }
    }
    table
}

fn refines(t: &PartitionTable, u: &PartitionTable) -> bool {
    let n = t.len() - 1;
    (1..=n).all(|j| (1..=n).filter(|&i| i != j).all(|i| u[j][i].is_subset(t[j][i])))
}

/// The folding order: `T ⪯ U` iff for every label `j`, each block of
/// `P(T, j)` is a union of blocks of `P(U, j)`.
pub fn leq(t: &HyperTree, u: &HyperTree) -> Result<bool, WhiteheadError> {
    if t.n() != u.n() {
        return Err(WhiteheadError::SizeMismatch {
            left: t.n(),
            right: u.n(),
        });
    }
    Ok(refines(&partition_table(t), &partition_table(u)))
}

/// `WO_n` or `WA_n` with its folding order.
pub struct WhiteheadPoset {
    n: usize,
    family: Family,
    elements: Vec<HyperTree>,
    index: HashMap<HyperTree, usize>,
    partitions: Vec<PartitionTable>,
    dense: Option<Poset>,
}

impl WhiteheadPoset {
    pub fn enumerate(n: usize, family: Family) -> Result<Self, WhiteheadError> {
        Self::enumerate_with(n, family, EnumerationLimit::default())
    }

    pub fn enumerate_with(n: usize, family: Family, limit: EnumerationLimit) -> Result<Self, WhiteheadError> {
        let max = limit.max_labels.saturating_sub(family.ambient_labels(0));
        if n < family.min_n() || family.ambient_labels(n) > limit.max_labels {
            return Err(WhiteheadError::LimitExceeded {
                n,
                min: family.min_n(),
                max,
                family,
            });
        }
        let labels = family.ambient_labels(n);
        let mut trees = enumerate_hypertrees(labels);
        if family == Family::Aut {
            trees.retain(|t| t.is_leaf(labels));
        }
        Ok(Self::from_elements(n, family, trees, limit.dense_max_elements))
    }

    /// Build from already canonical, sorted, distinct elements.
    pub(crate) fn from_elements(n: usize, family: Family, elements: Vec<HyperTree>, dense_max: usize) -> Self {
        let partitions: Vec<PartitionTable> = elements.par_iter().map(partition_table).collect();
        let index = elements.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let dense = (elements.len() <= dense_max).then(|| {
            let rows: Vec<_> = (0..elements.len())
                .into_par_iter()
                .map(|x| {
                    let mut row = fixedbitset::FixedBitSet::with_capacity(elements.len());
                    for y in 0..elements.len() {
                        if refines(&partitions[x], &partitions[y]) {
                            row.insert(y);
                        }
                    }
                    row
                })
                .collect();
            Poset::from_up_sets(rows)
        });
        WhiteheadPoset {
            n,
            family,
            elements,
            index,
            partitions,
            dense,
        }
    }

    /// Presentation size: the `n` of `PSAut_n` or `PSOut_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of labels on each tree.
    pub fn labels(&self) -> usize {
        self.family.ambient_labels(self.n)
    }

    pub fn elements(&self) -> &[HyperTree] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, t: &HyperTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    pub fn leq_index(&self, x: usize, y: usize) -> bool {
        match &self.dense {
            Some(p) => p.leq(x, y),
            None => refines(&self.partitions[x], &self.partitions[y]),
        }
    }

    pub fn leq(&self, t: &HyperTree, u: &HyperTree) -> Result<bool, WhiteheadError> {
        Ok(self.leq_index(self.require(t)?, self.require(u)?))
    }

    fn require(&self, t: &HyperTree) -> Result<usize, WhiteheadError> {
        self.index_of(t).ok_or_else(|| WhiteheadError::NotInPoset(t.encode()))
    }

    /// The order as a dense [`Poset`] indexed like [`Self::elements`].
    pub fn poset(&self) -> Poset {
        match &self.dense {
            Some(p) => p.clone(),
            None => Poset::from_fn(self.len(), |x, y| self.leq_index(x, y)),
        }
    }

    /// Greatest lower bound, by search over all common lower bounds.
    pub fn meet(&self, t: &HyperTree, u: &HyperTree) -> Result<HyperTree, WhiteheadError> {
        let (x, y) = (self.require(t)?, self.require(u)?);
        let lower: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq_index(z, x) && self.leq_index(z, y))
            .collect();
        let greatest: Vec<usize> = lower
            .iter()
            .copied()
            .filter(|&g| lower.iter().all(|&z| self.leq_index(z, g)))
            .collect();
        match greatest.as_slice() {
            [g] => Ok(self.elements[*g].clone()),
            _ => Err(WhiteheadError::NoUniqueMeet(t.encode(), u.encode())),
        }
    }

    /// Index of the degree-0 tree.
    pub fn minimum(&self) -> usize {
        self.elements
            .iter()
            .position(|t| t.degree() == 0)
            .expect("the star is always enumerated")
    }
}
