use std::cmp::Ordering;
use std::fmt;

use crate::labels::{LabelSet, MAX_LABEL};

use super::WhiteheadError;

/// A bipartite labeled tree on `[n]`, stored as its petals: one label set per
/// unlabeled vertex (the labels adjacent to it).
///
/// Canonical form: petals sorted lexicographically as integer sequences.
/// Two trees are equal iff their petal lists are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HyperTree {
    n: usize,
    petals: Vec<LabelSet>,
}

fn canonicalize(petals: &mut [LabelSet]) {
    petals.sort_unstable_by(|a, b| a.lex_cmp(*b));
}

/// Union-find over labels `0..=n`.
pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(size: usize) -> Self {
        Dsu((0..size).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl HyperTree {
    /// Validate and canonicalize a petal system on `[n]`.
    pub fn new(n: usize, mut petals: Vec<LabelSet>) -> Result<Self, WhiteheadError> {
        let bad = |why: String| Err(WhiteheadError::InvalidTree(why));
        if n == 0 || n > MAX_LABEL {
            return bad(format!("label count {n} outside 1..={MAX_LABEL}"));
        }
        if petals.is_empty() {
            return bad("no unlabeled vertices".into());
        }
        let all = LabelSet::full(n);
        let mut covered = LabelSet::EMPTY;
        let mut edges = 0;
        for p in &petals {
            if p.len() < 2 {
                return bad(format!("petal {p} has fewer than two labels"));
            }
            if !p.is_subset(all) {
                return bad(format!("petal {p} uses labels outside 1..={n}"));
            }
            covered = covered | *p;
            edges += p.len();
        }
        if covered != all {
            return bad(format!("labels {} are not covered", all - covered));
        }
        for (a, p) in petals.iter().enumerate() {
            for q in &petals[a + 1..] {
                if (*p & *q).len() > 1 {
                    return bad(format!("petals {p} and {q} share more than one label"));
                }
            }
        }
        if edges != n + petals.len() - 1 {
            return bad(format!(
                "edge count {edges} != labels + petals - 1 = {}",
                n + petals.len() - 1
            ));
        }
        let mut dsu = Dsu::new(n + 1);
        let mut merges = 0;
        for p in &petals {
            let first = p.min().expect("non-empty");
            for i in p.iter().skip(1) {
                if dsu.union(first, i) {
                    merges += 1;
                }
            }
        }
        if merges != n - 1 {
            return bad("incidence graph is disconnected".into());
        }
        canonicalize(&mut petals);
        Ok(HyperTree { n, petals })
    }

    /// The degree-0 tree: one unlabeled vertex joined to every label.
    pub fn star(n: usize) -> Self {
        assert!((2..=MAX_LABEL).contains(&n), "a star needs at least two labels");
        HyperTree {
            n,
            petals: vec![LabelSet::full(n)],
        }
    }

    /// Parse petals written as `1,2,3|3,4`.
    pub fn parse(n: usize, text: &str) -> Result<Self, WhiteheadError> {
        let mut petals = Vec::new();
        for part in text.split('|') {
            let mut p = LabelSet::EMPTY;
            for tok in part.split(',') {
                let i: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| WhiteheadError::InvalidTree(format!("bad label {tok:?}")))?;
                if i == 0 || i > MAX_LABEL {
                    return Err(WhiteheadError::InvalidTree(format!("bad label {i}")));
                }
                p.insert(i);
            }
            petals.push(p);
        }
        Self::new(n, petals)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn petals(&self) -> &[LabelSet] {
        &self.petals
    }

    /// Number of unlabeled vertices minus one.
    pub fn degree(&self) -> usize {
        self.petals.len() - 1
    }

    /// Number of petals containing label `j`.
    pub fn label_degree(&self, j: usize) -> usize {
        self.petals.iter().filter(|p| p.contains(j)).count()
    }

    pub fn is_leaf(&self, j: usize) -> bool {
        self.label_degree(j) == 1
    }

    /// Labels of `[n] \ {j}` grouped by connected component of the tree with
    /// the vertex labeled `j` removed. Blocks are sorted lexicographically.
    pub fn components_without(&self, j: usize) -> Vec<LabelSet> {
        // the unlabeled vertex of a petal survives the deletion of j, so it
        // still joins the remaining labels of its petal
        let mut dsu = Dsu::new(self.n + 1);
        for p in &self.petals {
            let rest = p.without(j);
            if let Some(first) = rest.min() {
                for i in rest.iter().skip(1) {
                    dsu.union(first, i);
                }
            }
        }
        let mut blocks: Vec<LabelSet> = Vec::new();
        let mut root_of_block: Vec<usize> = Vec::new();
        for i in (1..=self.n).filter(|&i| i != j) {
            let r = dsu.find(i);
            match root_of_block.iter().position(|&x| x == r) {
                Some(k) => blocks[k].insert(i),
                None => {
                    root_of_block.push(r);
                    blocks.push(LabelSet::singleton(i));
                }
            }
        }
        canonicalize(&mut blocks);
        blocks
    }

    /// All trees obtained by one folding: merge two petals that share a label.
    pub fn foldings(&self) -> Vec<HyperTree> {
        let mut out = Vec::new();
        for a in 0..self.petals.len() {
            for b in a + 1..self.petals.len() {
                if !self.petals[a].is_disjoint(self.petals[b]) {
                    out.push(self.merge_petals(a, b));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn merge_petals(&self, a: usize, b: usize) -> HyperTree {
        let mut petals: Vec<LabelSet> = self
            .petals
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != a && k != b)
            .map(|(_, p)| *p)
            .collect();
        petals.push(self.petals[a] | self.petals[b]);
        canonicalize(&mut petals);
        HyperTree { n: self.n, petals }
    }

    /// All trees `U` such that this tree is a folding of `U`.
    pub fn unfoldings(&self) -> Vec<HyperTree> {
        let mut out = Vec::new();
        for (k, &p) in self.petals.iter().enumerate() {
            if p.len() < 3 {
                continue;
            }
            for v in p {
                let rest = p.without(v);
                let anchor = rest.min().expect("petal has >= 3 labels");
                // unordered splits {A, B}: force the anchor into A
                for a in rest.subsets() {
                    if !a.contains(anchor) || a == rest {
                        continue;
                    }
                    let b = rest - a;
                    let mut petals: Vec<LabelSet> = self
                        .petals
                        .iter()
                        .enumerate()
                        .filter(|&(q, _)| q != k)
                        .map(|(_, x)| *x)
                        .collect();
                    petals.push(a.with(v));
                    petals.push(b.with(v));
                    canonicalize(&mut petals);
                    out.push(HyperTree { n: self.n, petals });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The folding used as the unique parent during enumeration: merge the
    /// first pair of petals (in canonical order) that share a label.
    pub(crate) fn canonical_parent(&self) -> Option<HyperTree> {
        for a in 0..self.petals.len() {
            for b in a + 1..self.petals.len() {
                if !self.petals[a].is_disjoint(self.petals[b]) {
                    return Some(self.merge_petals(a, b));
                }
            }
        }
        None
    }

    /// Canonical text encoding, e.g. `1,2,3|3,4`.
    pub fn encode(&self) -> String {
        self.petals
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn petal_lists(&self) -> Vec<Vec<usize>> {
        self.petals.iter().map(|p| p.to_vec()).collect()
    }
}

impl Ord for HyperTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.petals.iter().zip(&other.petals) {
                match a.lex_cmp(*b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            self.petals.len().cmp(&other.petals.len())
        })
    }
}

impl PartialOrd for HyperTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for HyperTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HyperTree({})", self.encode())
    }
}

impl fmt::Display for HyperTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.petals {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> LabelSet {
        xs.iter().copied().collect()
    }

    fn fig1() -> HyperTree {
        HyperTree::new(4, vec![set(&[3, 4]), set(&[1, 2, 3])]).unwrap()
    }

    #[test]
    fn canonical_order() {
        let t = fig1();
        assert_eq!(t.petals(), &[set(&[1, 2, 3]), set(&[3, 4])]);
        assert_eq!(t.encode(), "1,2,3|3,4");
        assert_eq!(HyperTree::parse(4, "3,4|1,2,3").unwrap(), t);
    }

    #[test]
    fn invalid_trees_rejected() {
        // petal of size 1
        assert!(HyperTree::new(3, vec![set(&[1, 2, 3]), set(&[3])]).is_err());
        // cycle: two petals sharing two labels
        assert!(HyperTree::new(3, vec![set(&[1, 2]), set(&[1, 2, 3])]).is_err());
        // uncovered label
        assert!(HyperTree::new(4, vec![set(&[1, 2, 3])]).is_err());
        // disconnected (edge count also fails)
        assert!(HyperTree::new(4, vec![set(&[1, 2]), set(&[3, 4])]).is_err());
        // triangle of petals
        assert!(HyperTree::new(3, vec![set(&[1, 2]), set(&[2, 3]), set(&[1, 3])]).is_err());
    }

    #[test]
    fn degree_values() {
        assert_eq!(HyperTree::star(5).degree(), 0);
        assert_eq!(fig1().degree(), 1);
    }

    #[test]
    fn figure_one_folding() {
        assert_eq!(fig1().foldings(), vec![HyperTree::star(4)]);
        assert!(HyperTree::star(4).foldings().is_empty());
    }

    #[test]
    fn components() {
        let t = fig1();
        assert_eq!(t.components_without(3), vec![set(&[1, 2]), set(&[4])]);
        assert_eq!(t.components_without(1), vec![set(&[2, 3, 4])]);
        assert_eq!(HyperTree::star(4).components_without(2), vec![set(&[1, 3, 4])]);
    }

    #[test]
    fn unfoldings_invert_foldings() {
        let star = HyperTree::star(4);
        let ups = star.unfoldings();
        assert!(ups.contains(&fig1()));
        for u in &ups {
            assert_eq!(u.degree(), 1);
            assert!(u.foldings().contains(&star));
        }
    }
}
