use rayon::prelude::*;

use super::tree::HyperTree;

/// Every hypertree on `[n]` in canonical order.
///
/// Trees are grown from the star by unfoldings. A child is kept only when the
/// tree it came from is its canonical parent, so each tree is produced exactly
/// once and no global deduplication is needed.
pub fn enumerate_hypertrees(n: usize) -> Vec<HyperTree> {
    if n < 2 {
        return Vec::new();
    }
    let mut level = vec![HyperTree::star(n)];
    let mut all = level.clone();
    for _ in 0..n - 2 {
        let mut next: Vec<HyperTree> = level
            .par_iter()
            .flat_map_iter(|t| {
                t.unfoldings()
                    .into_iter()
                    .filter(move |u| u.canonical_parent().as_ref() == Some(t))
            })
            .collect();
        next.sort();
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::LabelSet;

    /// Exhaustive search: all sets of k distinct subsets of size >= 2 that
    /// form a valid tree.
    fn brute_force(n: usize) -> Vec<HyperTree> {
        let candidates: Vec<LabelSet> = LabelSet::full(n).subsets().filter(|s| s.len() >= 2).collect();
        let mut out = Vec::new();
        fn rec(
            n: usize,
            cands: &[LabelSet],
            start: usize,
            chosen: &mut Vec<LabelSet>,
            edges: usize,
            out: &mut Vec<HyperTree>,
        ) {
            if !chosen.is_empty() && edges == n + chosen.len() - 1 {
                if let Ok(t) = HyperTree::new(n, chosen.clone()) {
                    out.push(t);
                }
            }
            for k in start..cands.len() {
                let c = cands[k];
                // adding a petal adds |c| edges and one vertex; edges can
                // exceed the tree bound only through a cycle
                if edges + c.len() > n + chosen.len() {
                    continue;
                }
                chosen.push(c);
                rec(n, cands, k + 1, chosen, edges + c.len(), out);
                chosen.pop();
            }
        }
        rec(n, &candidates, 0, &mut Vec::new(), 0, &mut out);
        out.sort();
        out
    }

    #[test]
    fn counts_match_brute_force() {
        for (n, expected) in [(2, 1), (3, 4), (4, 29), (5, 311)] {
            let fast = enumerate_hypertrees(n);
            assert_eq!(fast.len(), expected, "n = {n}");
            assert_eq!(fast, brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn aut_filter_n2() {
        let wa2 = enumerate_hypertrees(3).into_iter().filter(|t| t.is_leaf(3)).count();
        assert_eq!(wa2, 3);
    }
}
