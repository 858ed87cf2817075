//! The auxiliary graph of a hypertree and the inverse construction.

use crate::labels::LabelSet;
use crate::whitehead::{Family, HyperTree};

use super::{StabilizerError, StabilizerLattice};

/// A simple graph on labels `1..=n`; `adjacent[i]` is the neighbourhood of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxGraph {
    n: usize,
    adjacent: Vec<LabelSet>,
}

impl AuxGraph {
    pub fn new(n: usize) -> Self {
        AuxGraph {
            n,
            adjacent: vec![LabelSet::EMPTY; n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j && i <= self.n && j <= self.n && i > 0 && j > 0);
        self.adjacent[i].insert(j);
        self.adjacent[j].insert(i);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacent[i].contains(j)
    }

    pub fn neighbours(&self, i: usize) -> LabelSet {
        self.adjacent[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacent.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), sorted.
    pub fn maximal_cliques(&self) -> Vec<LabelSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(LabelSet::EMPTY, LabelSet::full(self.n), LabelSet::EMPTY, &mut out);
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    fn bron_kerbosch(&self, r: LabelSet, mut p: LabelSet, mut x: LabelSet, out: &mut Vec<LabelSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = (p | x)
            .iter()
            .max_by_key(|&u| (p & self.adjacent[u]).len())
            .expect("p or x is nonempty");
        for v in p - self.adjacent[pivot] {
            let nv = self.adjacent[v];
            self.bron_kerbosch(r.with(v), p & nv, x & nv, out);
            p = p.without(v);
            x.insert(v);
        }
    }
}

/// Edge `{i, j}` iff `i` and `j` share a petal.
pub fn aux_graph(t: &HyperTree) -> AuxGraph {
    let mut g = AuxGraph::new(t.n());
    for p in t.petals() {
        for i in *p {
            for j in p.iter().filter(|&j| j > i) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// The same graph read off `H(T)`: `{i, j}` is an edge iff for every other
/// base `k`, every vector of `L_k` has equal `i` and `j` coordinates.
pub fn aux_graph_from_lattice(lat: &StabilizerLattice) -> Result<AuxGraph, StabilizerError> {
    if lat.family() != Family::Out {
        return Err(StabilizerError::Mismatch);
    }
    let n = lat.n();
    let mut g = AuxGraph::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let tied = (1..=n)
                .filter(|&k| k != i && k != j)
                .all(|k| lat.base(k).basis().iter().all(|row| row[i] == row[j]));
            if tied {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// One petal per maximal clique.
pub fn reconstruct(g: &AuxGraph) -> Result<HyperTree, StabilizerError> {
    let cliques = g.maximal_cliques();
    HyperTree::new(g.n(), cliques).map_err(|e| StabilizerError::Reconstruct(e.to_string()))
}
